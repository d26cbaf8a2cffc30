#include "hyperpack/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hyperpack/error.hpp"

namespace hyperpack::app {

using nlohmann::json;

bool isRelevantN(int n) noexcept { return std::find(std::begin(kRelevantN), std::end(kRelevantN), n) != std::end(kRelevantN); }

std::optional<int> genusFor(int n, int k, bool orientable) noexcept {
  if (k < 1 || n < 7) return std::nullopt;
  // Euler characteristic 2 - g (non-orientable) or 2 - 2g, with kN = 6(k - chi).
  const int num = k * (n - 6) + 12;
  const int den = orientable ? 12 : 6;
  if (num % den != 0) return std::nullopt;
  const int g = num / den;
  if (g < (orientable ? 2 : 3)) return std::nullopt;
  return g;
}

PrimitivePair primitivePair(int n, bool orientable) {
  if (!isRelevantN(n)) throw Error(ErrorCode::NotRelevantN, "N=" + std::to_string(n) + " admits no second packing");
  for (int k = 1;; ++k) {
    if (const auto g = genusFor(n, k, orientable)) return {k, *g};
  }
}

namespace {

[[noreturn]] void reject(const std::string& what) { throw Error(ErrorCode::ConfigRejected, what); }

void checkKey(const PipelineConfig& c, EdgeKey e, const std::string& where) {
  if (e.poly < 0 || e.poly >= c.k || e.edge < 0 || e.edge >= c.n)
    reject(where + ": edge " + toString(e) + " outside the domain");
}

std::string selector(EdgeKey e) { return std::to_string(e.poly + 1) + ":" + std::to_string(e.edge); }

int parseInt(std::string_view s, std::string_view whole) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) reject("bad edge selector '" + std::string(whole) + "'");
  return v;
}

}  // namespace

EdgeKey parseEdgeSelector(std::string_view text) {
  std::string_view poly, edge;
  if (text.substr(0, 3) == "pol") {
    const auto open = text.find('[');
    if (open == std::string_view::npos || text.back() != ']') reject("bad edge selector '" + std::string(text) + "'");
    poly = text.substr(3, open - 3);
    edge = text.substr(open + 1, text.size() - open - 2);
  } else {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) reject("bad edge selector '" + std::string(text) + "'");
    poly = text.substr(0, colon);
    edge = text.substr(colon + 1);
  }
  const int p = parseInt(poly, text);
  if (p < 1) reject("polygons are numbered from 1 in '" + std::string(text) + "'");
  return {p - 1, parseInt(edge, text)};
}

void validate(const PipelineConfig& c) {
  if (!isRelevantN(c.n)) reject("N=" + std::to_string(c.n) + " is not one of 7,8,9,10,11,12,14,16,18,24,30");
  if (!genusFor(c.n, c.k, c.orientable))
    reject("k=" + std::to_string(c.k) + " gives no integer genus in range for N=" + std::to_string(c.n));
  if (c.attachments.size() + 1 != static_cast<std::size_t>(c.k))
    reject("expected " + std::to_string(c.k - 1) + " attachments, got " + std::to_string(c.attachments.size()));
  for (std::size_t i = 0; i < c.attachments.size(); ++i) {
    const Attachment& a = c.attachments[i];
    if (a.parent < 0 || static_cast<std::size_t>(a.parent) > i)
      reject("attachment " + std::to_string(i + 1) + " names a parent not yet placed");
    if (a.parentEdge < 0 || a.parentEdge >= c.n) reject("attachment " + std::to_string(i + 1) + ": bad edge");
  }
  if (c.depth < 1) reject("depth must be at least 1");
  if (!(c.matchTol > 0.0) || !(c.dedupTol > 0.0)) reject("tolerances must be positive");
  if (c.seedPairs) {
    if (c.seedPairs->size() != 2) reject("seed_pairs needs exactly two entries");
    for (const SeedSpec& s : *c.seedPairs) {
      checkKey(c, s.src, "seed_pairs");
      checkKey(c, s.dst, "seed_pairs");
      if (s.src == s.dst) reject("seed pairing maps " + toString(s.src) + " to itself");
    }
  }
  for (const Identification& id : c.requireIdentifications) {
    checkKey(c, id.a, "require_identifications");
    checkKey(c, id.b, "require_identifications");
  }
  if (c.preferNear && !(std::abs(*c.preferNear) < 1.0)) reject("prefer_near must lie inside the unit disk");
}

namespace {

const std::set<std::string>& knownKeys() {
  static const std::set<std::string> keys{
      "n",     "k",         "attachments", "frame_rotation", "depth",       "match_tol",
      "orientable", "seed_pairs", "seed_pair_limit", "limit",  "max_nodes",   "dedup_tol",
      "prefer_near", "require_identifications", "output_dir", "workers"};
  return keys;
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

json toJsonValue(const PipelineConfig& c, bool forHash) {
  json j = json::object();
  j["n"] = c.n;
  j["k"] = c.k;
  json att = json::array();
  for (const Attachment& a : c.attachments) att.push_back({{"parent", a.parent + 1}, {"edge", a.parentEdge}});
  j["attachments"] = att;
  j["frame_rotation"] = c.frameRotation;
  j["depth"] = c.depth;
  j["match_tol"] = c.matchTol;
  j["orientable"] = c.orientable;
  if (c.seedPairs) {
    json seeds = json::array();
    for (const SeedSpec& s : *c.seedPairs)
      seeds.push_back({{"src", selector(s.src)}, {"dst", selector(s.dst)}, {"reversing", s.reversing}});
    j["seed_pairs"] = seeds;
  }
  j["seed_pair_limit"] = c.seedPairLimit;
  j["limit"] = c.limit;
  j["max_nodes"] = c.maxNodes;
  j["dedup_tol"] = c.dedupTol;
  if (c.preferNear) j["prefer_near"] = {c.preferNear->real(), c.preferNear->imag()};
  if (!c.requireIdentifications.empty()) {
    json ids = json::array();
    for (const Identification& id : c.requireIdentifications)
      ids.push_back({{"a", selector(id.a)}, {"b", selector(id.b)}, {"reversing", id.reversing}});
    j["require_identifications"] = ids;
  }
  // Neither changes any result, so neither enters the hash.
  if (!forHash) {
    j["output_dir"] = c.outputDir;
    j["workers"] = c.workers;
  }
  return j;
}

}  // namespace

PipelineConfig parseConfig(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    reject(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) reject("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!knownKeys().count(key)) reject("unknown config key '" + key + "'");
  }
  PipelineConfig c;
  try {
    read(j, "n", c.n);
    read(j, "k", c.k);
    if (j.contains("attachments")) {
      for (const json& a : j.at("attachments"))
        c.attachments.push_back({a.at("parent").get<int>() - 1, a.at("edge").get<int>()});
    }
    read(j, "frame_rotation", c.frameRotation);
    read(j, "depth", c.depth);
    read(j, "match_tol", c.matchTol);
    read(j, "orientable", c.orientable);
    if (j.contains("seed_pairs")) {
      std::vector<SeedSpec> seeds;
      for (const json& s : j.at("seed_pairs")) {
        seeds.push_back({parseEdgeSelector(s.at("src").get<std::string>()),
                         parseEdgeSelector(s.at("dst").get<std::string>()), s.value("reversing", false)});
      }
      c.seedPairs = std::move(seeds);
    }
    read(j, "seed_pair_limit", c.seedPairLimit);
    read(j, "limit", c.limit);
    read(j, "max_nodes", c.maxNodes);
    read(j, "dedup_tol", c.dedupTol);
    if (j.contains("prefer_near")) {
      const auto& p = j.at("prefer_near");
      if (!p.is_array() || p.size() != 2) reject("prefer_near must be [re, im]");
      c.preferNear = Point{p[0].get<double>(), p[1].get<double>()};
    }
    if (j.contains("require_identifications")) {
      for (const json& r : j.at("require_identifications")) {
        EdgeKey a = parseEdgeSelector(r.at("a").get<std::string>());
        EdgeKey b = parseEdgeSelector(r.at("b").get<std::string>());
        if (b < a) std::swap(a, b);
        c.requireIdentifications.push_back({a, b, r.value("reversing", false)});
      }
      std::sort(c.requireIdentifications.begin(), c.requireIdentifications.end());
    }
    read(j, "output_dir", c.outputDir);
    read(j, "workers", c.workers);
  } catch (const json::exception& e) {
    reject(std::string("config field has the wrong shape: ") + e.what());
  }
  validate(c);
  return c;
}

PipelineConfig loadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parseConfig(buf.str());
}

std::string toJson(const PipelineConfig& cfg) { return toJsonValue(cfg, false).dump(2) + "\n"; }

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string configHash(const PipelineConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(toJsonValue(cfg, true).dump())));
  return buf;
}

}  // namespace hyperpack::app
