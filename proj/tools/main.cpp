#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "deltasys/app.hpp"

namespace {

using deltasys::RunConfig;

struct Lists {
  std::string a, b, center;
};

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, "random seed (default 0)");
  sub->add_option("--budget", cfg.budget, "node budget for exact searches (default $DELTASYS_BUDGET or 1e8)");
  sub->add_option("--threads", cfg.threads, "worker threads, 0 = all cores (results do not depend on it)");
}

void add_input(CLI::App* sub, RunConfig& cfg, bool required = true) {
  auto* opt = sub->add_option("--input", cfg.input, "hypergraph file: header 'n k', then one edge per line");
  if (required) opt->required();
}

} // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  Lists lists;
  CLI::App app{"Search and verification tools for sunflowers, (a,d)-systems and intersecting families of uniform "
               "hypergraphs. Writes a JSON report to stdout. Exit codes: 0 verified/found, 1 refuted/none, "
               "2 budget exhausted, 3 input error."};
  app.require_subcommand(1);

  auto* shadow = app.add_subcommand("shadow", "i-th shadow of a hypergraph");
  add_input(shadow, cfg);
  shadow->add_option("--i", cfg.i, "shadow index, 0 <= i <= k-1 (default 1)");

  auto* weight = app.add_subcommand("weight-check", "edge weights and the identity sum = |first shadow|");
  add_input(weight, cfg);

  auto* sunflower = app.add_subcommand("find-sunflower", "exact search for an s-sunflower with a given center");
  add_input(sunflower, cfg);
  sunflower->add_option("--center", lists.center, "center vertices, comma separated (empty for none)");
  sunflower->add_option("--s", cfg.s, "number of petals (default 2)");

  auto* avd = app.add_subcommand("find-avd", "exact search for an (a,d)-system");
  add_input(avd, cfg);
  avd->add_option("--a", lists.a, "part sizes of the host partition, comma separated")->required();
  avd->add_option("--d", cfg.d, "total number of non-host edges")->required();

  auto* semi = app.add_subcommand("complete-semi", "extract an (a,b)-system from a semi-(a,c)-system");
  semi->add_option("--witness", cfg.witness, "JSON file with host, blocks and groups")->required();
  semi->add_option("--b", lists.b, "target group sizes, comma separated")->required();

  auto* nontrivial = app.add_subcommand("find-nontrivial", "exact search for a non-trivial d-wise intersecting subfamily");
  add_input(nontrivial, cfg);
  nontrivial->add_option("--size,-t", cfg.size, "subfamily size t >= 3")->required();
  nontrivial->add_option("--wise,-d", cfg.wise, "d >= 2 (default 2)");

  auto* check = app.add_subcommand("check-intersecting", "is the whole family d-wise intersecting, and non-trivial");
  add_input(check, cfg);
  check->add_option("--wise,-d", cfg.wise, "d >= 2 (default 2)");

  auto* classify = app.add_subcommand("classify-km", "place an intersecting 3-graph with >= 11 edges in a template");
  add_input(classify, cfg);

  auto* steiner = app.add_subcommand("build-steiner", "simple triple system with every pair in lambda blocks");
  steiner->add_option("--n", cfg.n, "number of points")->required();
  steiner->add_option("--lambda", cfg.lambda, "pair multiplicity")->required();
  steiner->add_option("--output,-o", cfg.output, "write the design in hypergraph text format");

  auto* build = app.add_subcommand("build-counterexample", "design with multiplicity m-1 plus a complement matching");
  build->add_option("--n", cfg.n, "number of vertices, divisible by 3")->required();
  build->add_option("--m", cfg.m, "m >= 4")->required();
  build->add_option("--output,-o", cfg.output, "write the hypergraph in text format");

  auto* verify = app.add_subcommand("verify-counterexample",
                                    "check that no non-trivial intersecting subfamily of size 3m+1 exists");
  add_input(verify, cfg, false);
  verify->add_option("--n", cfg.n, "build the construction on n vertices instead of reading --input");
  verify->add_option("--m", cfg.m, "m >= 4")->required();
  verify->add_option("--mode", cfg.mode, "degree-argument, exhaustive or both (default both)");
  verify->add_option("--output,-o", cfg.output, "write the built hypergraph in text format");

  auto* extremal = app.add_subcommand("extremal", "largest k-graph on [n] avoiding a configuration");
  extremal->add_option("--n", cfg.n, "number of vertices")->required();
  extremal->add_option("--k", cfg.k, "uniformity")->required();
  extremal->add_option("--config", cfg.config, "nontrivial:t,d | simplex:d | avd:a1,a2,...;d")->required();

  auto* stability = app.add_subcommand("stability-scan", "max-degree vertex and the edges missing it");
  add_input(stability, cfg);
  stability->add_option("--epsilon", cfg.epsilon, "rational, e.g. 1/10 (default 0)");
  stability->add_option("--delta", cfg.delta, "rational allowance factor for delta*n^(k-1) (default 0)");

  auto* homogeneous = app.add_subcommand("homogeneous-extract", "find an s-homogeneous subgraph with a certificate");
  add_input(homogeneous, cfg);
  homogeneous->add_option("--s", cfg.s, "sunflower size (default 2)");
  homogeneous->add_option("--restarts", cfg.restarts, "random restarts (default 16)");

  for (auto* sub : app.get_subcommands({})) add_common(sub, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : deltasys::kExitInput;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (!lists.a.empty()) cfg.a = deltasys::detail::parse_int_list(lists.a);
    if (!lists.b.empty()) cfg.b = deltasys::detail::parse_int_list(lists.b);
    if (!lists.center.empty()) cfg.center = deltasys::detail::parse_int_list(lists.center);
  } catch (const deltasys::ParameterError& e) {
    std::cerr << cfg.command << ": input error: " << e.what() << '\n';
    return deltasys::kExitInput;
  }
  return deltasys::run(cfg, std::cout, std::cerr);
}
