#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "angle_rigidity/cli/commands.hpp"

namespace ar = angle_rigidity;

int main(int argc, char** argv) {
  CLI::App app{"Angle rigidity analysis and formation simulation"};
  app.require_subcommand(1);

  std::vector<std::string> scenarios;
  std::string out;
  std::uint64_t seed = 0;
  bool batch = false;
  std::string source;

  std::vector<CLI::Option*> seed_options;
  const auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--scenario", scenarios, "scenario file (repeatable with --batch)")->required();
    auto* o = sub->add_option("--out", out, "output directory");
    if (needs_out) o->required();
    seed_options.push_back(sub->add_option("--seed-override", seed, "replace every seed named in the scenario"));
    sub->add_flag("--batch", batch, "run several scenarios in parallel, one output subdirectory each");
  };

  auto* analyze = app.add_subcommand("analyze", "rigidity verdicts for a scenario");
  add_common(analyze, false);
  auto* indexset = app.add_subcommand("indexset", "build an angle index set");
  add_common(indexset, false);
  indexset->add_option("--source", source, "full|algorithm1|laman_minimal|laman_global|triangle_formation|explicit");
  auto* sim = app.add_subcommand("simulate", "integrate the formation controller");
  add_common(sim, true);
  auto* selftest = app.add_subcommand("selftest", "run the embedded property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ar::cli::kParse;
  }

  if (selftest->parsed()) return ar::cli::cmd_selftest(std::cout);

  ar::cli::Options opt;
  if (!out.empty()) opt.out = out;
  for (const auto* o : seed_options) {
    if (o->count() > 0) opt.seed_override = seed;
  }
  if (!source.empty()) {
    opt.source = ar::io::parse_angle_source(source);
    if (!opt.source) {
      std::cerr << "parse error: unknown --source '" << source << "'\n";
      return ar::cli::kParse;
    }
  }

  ar::cli::Command command = analyze->parsed() ? ar::cli::cmd_analyze
                             : indexset->parsed() ? ar::cli::cmd_indexset
                                                  : ar::cli::cmd_simulate;
  if (batch) return ar::cli::run_batch(command, opt, scenarios, std::cout, std::cerr);
  if (scenarios.size() != 1) {
    std::cerr << "validation error: several --scenario values need --batch\n";
    return ar::cli::kValidation;
  }
  opt.scenario = scenarios.front();
  return command(opt, std::cout, std::cerr);
}
