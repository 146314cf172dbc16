// Command-line front end: exact counts, sampled estimates with Hoeffding
// intervals, sample-size formulas, degree-tail profiles and the inequality
// check suite.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "subcount/subcount.hpp"

namespace {

void add_graph(CLI::App* cmd, subcount::RunConfig& c) {
  cmd->add_option("--graph", c.graph_path, "host graph edge-list file");
}

void add_pattern(CLI::App* cmd, subcount::RunConfig& c) {
  cmd->add_option("--pattern", c.pattern_spec,
                  "edge | path:k | star:k | cycle:k | clique:k | file:<path>[:root=<v>]")
      ->capture_default_str();
  cmd->add_option("--root", c.root, "pattern root vertex (default 0)");
}

void add_format(CLI::App* cmd, subcount::RunConfig& c) {
  cmd->add_option("--format", c.output_format, "text | csv")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, subcount::OutputFormat>{{"text", subcount::OutputFormat::text},
                                                        {"csv", subcount::OutputFormat::csv}}))
      ->option_text("FORMAT");
}

void add_estimate_flags(CLI::App* cmd, subcount::RunConfig& c) {
  add_graph(cmd, c);
  add_pattern(cmd, c);
  cmd->add_option("--tree", c.tree_strategy, "bfs | dfs | min_internal")
      ->transform(CLI::CheckedTransformer(std::map<std::string, subcount::TreeStrategy>{
          {"bfs", subcount::TreeStrategy::bfs},
          {"dfs", subcount::TreeStrategy::dfs},
          {"min_internal", subcount::TreeStrategy::min_internal}}))
      ->option_text("STRATEGY");
  cmd->add_option("--delta", c.delta, "degree truncation threshold (>= 1)");
  cmd->add_option("--samples", c.samples, "number of samples N");
  cmd->add_option("--epsilon", c.epsilon, "relative half-width; N from s = epsilon E[D^(h-1)]");
  cmd->add_option("--s", c.s, "absolute half-width; N from the Hoeffding bound");
  cmd->add_option("--p", c.p_conf, "failure probability p in (0,1]")->capture_default_str();
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  cmd->add_option("--lambda", c.lambda, "override lambda (default: E[D^(h-1) 1{D>=delta}])");
  cmd->add_option("--threads", c.threads, "worker threads for counting");
  cmd->add_option("--exact-limit", c.exact_limit,
                  "report the exact value when the host has at most this many vertices")
      ->capture_default_str();
  add_format(cmd, c);
}

}  // namespace

int main(int argc, char** argv) {
  subcount::RunConfig config;
  if (const char* env = std::getenv("SUBCOUNT_THREADS")) {
    try {
      config.threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "error: SUBCOUNT_THREADS must be a non-negative integer\n";
      return subcount::kExitUsage;
    }
  }

  CLI::App app{"Subgraph counting by degree-truncated sampling"};
  app.require_subcommand(1);
  // "--h" is the pattern size, so help gets no short form. Subcommands
  // inherit this setting.
  app.set_help_flag("--help", "print this help message and exit");

  auto* exact = app.add_subcommand("exact", "exact emb(H,G) and hom(H,G)");
  add_graph(exact, config);
  add_pattern(exact, config);
  add_format(exact, config);
  exact->callback([&] { config.command = subcount::Command::exact; });

  auto* est = app.add_subcommand("estimate", "estimate emb(H,G)/n from uniform vertices");
  add_estimate_flags(est, config);
  est->callback([&] { config.command = subcount::Command::estimate; });

  auto* anc = app.add_subcommand("estimate-anchored",
                                 "estimate emb(H,G)/emb(O,G) from uniform anchor embeddings");
  add_estimate_flags(anc, config);
  anc->add_option("--anchor", config.anchor_spec,
                  "root | edge[:a-b] | wedge[:a-b-c] | star | all | vertices:.. | edges:..")
      ->capture_default_str();
  anc->add_option("--sampler", config.sampler, "vertex | edge | wedge | enumerated");
  anc->callback([&] { config.command = subcount::Command::estimate_anchored; });

  auto* size = app.add_subcommand("sample-size", "minimum N from the Hoeffding bounds");
  size->add_option("--delta", config.delta, "degree truncation threshold (>= 1)");
  size->add_option("--h", config.h, "pattern size");
  size->add_option("--s", config.s, "absolute half-width");
  size->add_option("--epsilon", config.epsilon, "relative half-width");
  size->add_option("--moment", config.moment, "E[D^(h-1)] for --epsilon");
  size->add_option("--anchor-size", config.anchor_size, "|V(O)| for the anchored bound");
  size->add_option("--p", config.p_conf, "failure probability p in (0,1]")->capture_default_str();
  add_graph(size, config);
  add_format(size, config);
  size->callback([&] { config.command = subcount::Command::sample_size; });

  auto* deg = app.add_subcommand("degrees", "degree-tail profile: lambda and minimum N per delta");
  add_graph(deg, config);
  deg->add_option("--degrees-csv", config.degrees_csv_path, "degree,count CSV file");
  deg->add_option("--h", config.h, "pattern size (default 3)");
  deg->add_option("--s", config.s, "absolute half-width");
  deg->add_option("--epsilon", config.epsilon, "relative half-width");
  deg->add_option("--anchor-size", config.anchor_size, "|V(O)| for the anchored bound");
  deg->add_option("--p", config.p_conf, "failure probability p in (0,1]")->capture_default_str();
  add_format(deg, config);
  deg->callback([&] { config.command = subcount::Command::degrees; });

  auto* ver = app.add_subcommand("verify", "check the homomorphism inequalities on random instances");
  ver->add_option("--trials", config.trials, "number of random instances")->capture_default_str();
  ver->add_option("--seed", config.seed, "random seed")->capture_default_str();
  ver->callback([&] { config.command = subcount::Command::verify; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return subcount::kExitUsage;
  }
  return subcount::run(config, std::cout, std::cerr);
}
