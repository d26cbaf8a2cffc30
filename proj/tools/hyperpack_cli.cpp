// hyperpack: command-line driver for the packing pipeline.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperpack/app/config.hpp"
#include "hyperpack/app/pipeline.hpp"
#include "hyperpack/error.hpp"

namespace {

using namespace hyperpack;
using namespace hyperpack::app;

struct Overrides {
  std::string config;
  std::optional<std::string> out;
  std::optional<int> depth;
  std::optional<double> tol;
  std::optional<std::size_t> limit;
  std::optional<std::string> seedSrc;
  std::optional<std::string> seedDst;
  std::optional<std::string> seedReversing;
  std::optional<unsigned> workers;
  bool noFigures = false;
  bool quiet = false;
};

std::vector<std::string> splitCommas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) out.push_back(item);
  return out;
}

bool parseFlag(const std::string& s) {
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no") return false;
  throw Error(ErrorCode::ConfigRejected, "expected a boolean, got '" + s + "'");
}

PipelineConfig resolve(const Overrides& o) {
  PipelineConfig cfg = loadConfig(o.config);
  if (o.out) cfg.outputDir = *o.out;
  if (o.depth) cfg.depth = *o.depth;
  if (o.tol) cfg.matchTol = *o.tol;
  if (o.limit) cfg.limit = *o.limit;
  if (o.workers) cfg.workers = *o.workers;
  if (o.seedSrc || o.seedDst || o.seedReversing) {
    if (!o.seedSrc || !o.seedDst)
      throw Error(ErrorCode::ConfigRejected, "--seed-src and --seed-dst must be given together");
    const auto src = splitCommas(*o.seedSrc);
    const auto dst = splitCommas(*o.seedDst);
    const auto rev = o.seedReversing ? splitCommas(*o.seedReversing) : std::vector<std::string>(src.size(), "0");
    if (src.size() != dst.size() || src.size() != rev.size())
      throw Error(ErrorCode::ConfigRejected, "seed lists differ in length");
    std::vector<SeedSpec> seeds;
    for (std::size_t i = 0; i < src.size(); ++i)
      seeds.push_back({parseEdgeSelector(src[i]), parseEdgeSelector(dst[i]), parseFlag(rev[i])});
    cfg.seedPairs = std::move(seeds);
  }
  validate(cfg);
  return cfg;
}

void addCommon(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("-o,--out", o.out, "Output directory");
  sub->add_option("--depth", o.depth, "Distance-set depth");
  sub->add_option("--tol", o.tol, "Distance match tolerance");
  sub->add_option("--limit", o.limit, "Solutions kept per candidate (0 = all)");
  sub->add_option("--seed-src", o.seedSrc, "Seed sources, comma separated (e.g. 1:13,1:2)");
  sub->add_option("--seed-dst", o.seedDst, "Seed targets, comma separated");
  sub->add_option("--seed-reversing", o.seedReversing, "Seed orientation flags, comma separated (e.g. 1,0)");
  sub->add_option("--workers", o.workers, "Worker threads (0 = hardware)");
  sub->add_flag("--no-figures", o.noFigures, "Skip SVG output");
  sub->add_flag("-q,--quiet", o.quiet, "No progress lines");
}

int runStage(const Overrides& o, Stage stopAfter) {
  const PipelineConfig cfg = resolve(o);
  RunOptions opts;
  opts.stopAfter = stopAfter;
  opts.renderFigures = !o.noFigures;
  opts.log = o.quiet ? nullptr : &std::cerr;
  const RunSummary s = runPipeline(cfg, opts);
  if (s.exitCode == kExitError) {
    std::cerr << "error in stage " << s.errorStage << " [" << s.errorCode << "]: " << s.errorMessage << '\n';
  } else if (!o.quiet) {
    for (const auto& p : s.artifacts) std::cerr << "wrote " << p.string() << '\n';
  }
  return s.exitCode;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second extremal packings on hyperbolic surfaces"};
  app.require_subcommand(1);
  Overrides o;

  struct StageCommand {
    const char* name;
    const char* help;
    Stage stage;
  };
  const StageCommand commands[] = {
      {"distances", "Admissible centre distances", Stage::Distances},
      {"domain", "Build the fundamental domain", Stage::Domain},
      {"pairings", "Enumerate axial side pairings", Stage::Pairings},
      {"candidates", "Candidate centres and the per-candidate filter", Stage::Filtering},
      {"search", "Complete side-pairing sets for good candidates", Stage::Completion},
      {"certify", "Full pipeline through the second-packing certificate", Stage::Certificate},
  };
  std::optional<Stage> chosen;
  for (const StageCommand& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    addCommon(sub, o);
    sub->callback([&chosen, stage = c.stage] { chosen = stage; });
  }

  bool renderOnly = false;
  CLI::App* render = app.add_subcommand("render", "Redraw the SVG figures from existing artifacts");
  render->add_option("-c,--config", o.config, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  render->add_option("-o,--out", o.out, "Output directory");
  render->callback([&renderOnly] { renderOnly = true; });

  std::string certificate;
  CLI::App* verify = app.add_subcommand("verify", "Re-check a certificate from its stored matrices and words");
  verify->add_option("certificate", certificate, "certificate.json")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (chosen) return runStage(o, *chosen);
    if (renderOnly) {
      const PipelineConfig cfg = resolve(o);
      for (const auto& p : renderFigures(cfg)) std::cerr << "wrote " << p.string() << '\n';
      return 0;
    }
    const VerifyReport r = verifyCertificateFile(certificate);
    std::printf("%s: %zu generators, max residual %.3g, swap error %.3g\n", r.ok ? "ok" : "FAILED", r.generators,
                r.maxResidual, r.swapError);
    for (const std::string& p : r.problems) std::printf("  %s\n", p.c_str());
    return r.ok ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error [" << toString(e.code()) << "]: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
