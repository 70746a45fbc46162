#include <cstdio>

#include "CLI11.hpp"
#include "ordmetrics/cli.hpp"

namespace ordmetrics {

int cli_main(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"ordinal election metrics: generation, distances, k-Kemeny, indices, maps"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
    sub->add_option("--solver", cfg.solver, "greedy|local_search|combined|best_of")
        ->capture_default_str();
    sub->add_option("--mode", cfg.mode, "exact|heuristic")->capture_default_str();
    sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    sub->add_option("--budget", cfg.budget, "exact-solver enumeration budget")
        ->capture_default_str();
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  };

  auto* generate = app.add_subcommand("generate", "sample elections from a manifest");
  generate->add_option("manifest", cfg.inputs, "manifest json")->required()->expected(1);
  add_common(generate);

  auto* indices = app.add_subcommand("indices", "agreement/diversity/polarization per election");
  indices->add_option("dir", cfg.inputs, "election directory")->required()->expected(1);
  add_common(indices);

  auto* kkemeny = app.add_subcommand("kkemeny", "k-Kemeny profile per election");
  kkemeny->add_option("dir", cfg.inputs, "election directory")->required()->expected(1);
  add_common(kkemeny);

  auto* compare = app.add_subcommand("compare-kkemeny", "greedy/local-search/combined profiles");
  compare->add_option("dir", cfg.inputs, "election directory")->required()->expected(1);
  add_common(compare);

  auto* distance = app.add_subcommand("distance", "isomorphic swap distance of two elections");
  distance->add_option("elections", cfg.inputs, "two election files")->required()->expected(2);
  add_common(distance);

  auto* map_cmd = app.add_subcommand("map", "2D map of a dataset");
  map_cmd->add_option("dir", cfg.inputs, "election directory")->required()->expected(1);
  add_common(map_cmd);

  auto* prefmap = app.add_subcommand("prefmap", "2D map of one election's votes");
  prefmap->add_option("election", cfg.inputs, "election file")->required()->expected(1);
  add_common(prefmap);

  auto* correlate = app.add_subcommand("correlate", "indices vs distance-from-compass");
  correlate->add_option("inputs", cfg.inputs, "indices csv and election directory")
      ->required()
      ->expected(2);
  add_common(correlate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    run_command(cfg);
  } catch (const BudgetExceeded& ex) {
    std::fprintf(stderr, "budget exceeded: %s\n", ex.what());
    return 2;
  } catch (const ValidationError& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
  return 0;
}

}  // namespace ordmetrics
