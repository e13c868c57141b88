#include "ruleforge/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ruleforge/bench.hpp"

namespace rf {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << content;
}

struct RunFlags {
  uint64_t seed = 0;
  bool seed_set = false;
  int max_steps = -1;
  double epsilon = -1;
  int window = -1;
  double alpha = -1, gamma = -1, q0 = std::numeric_limits<double>::quiet_NaN();
  int retrain_period = -1;
  int budget_steps = -1;
  double beta1 = -1, beta2 = -1;
  int pair_cap = -1;
  std::string save_policy, load_policy, trace_path, out_path;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "run seed (falls back to RULEFORGE_SEED)")
        ->each([this](const std::string&) { seed_set = true; });
    cmd->add_option("--max-steps", max_steps, "step cap");
    cmd->add_option("--epsilon", epsilon, "stop threshold on the optimality window");
    cmd->add_option("--window", window, "stop-criterion window length");
    cmd->add_option("--alpha", alpha, "learning rate");
    cmd->add_option("--gamma", gamma, "discount");
    cmd->add_option("--q0", q0, "initial q value");
    cmd->add_option("--retrain-period", retrain_period, "model retrain periodicity");
    cmd->add_option("--budget-steps", budget_steps, "rewrite step budget");
    cmd->add_option("--beta1", beta1, "program coding-length weight");
    cmd->add_option("--beta2", beta2, "evidence coding-length weight");
    cmd->add_option("--pair-cap", pair_cap, "programs considered for pairwise union (0 = all)");
    cmd->add_option("--save-policy", save_policy, "write the final Q table as CSV");
    cmd->add_option("--trace", trace_path, "write the step trace as CSV");
    cmd->add_option("--out", out_path, "write the report to a file as well");
  }

  LearnConfig to_config(const Problem& p) const {
    LearnConfig cfg;
    cfg.apply_overrides(p.config);
    if (seed_set) {
      cfg.seed = seed;
    } else if (const char* env = std::getenv("RULEFORGE_SEED")) {
      cfg.seed = std::strtoull(env, nullptr, 10);
    }
    if (max_steps >= 0) cfg.max_steps = max_steps;
    if (epsilon >= 0) cfg.epsilon = epsilon;
    if (window >= 0) cfg.window_n = window;
    if (alpha >= 0) cfg.rl.alpha = alpha;
    if (gamma >= 0) cfg.rl.gamma = gamma;
    if (!std::isnan(q0)) cfg.rl.q0 = q0;
    if (retrain_period >= 0) cfg.rl.retrain_period = retrain_period;
    if (budget_steps >= 0) cfg.budget.max_rewrite_steps = budget_steps;
    if (beta1 >= 0) cfg.scoring.beta1 = beta1;
    if (beta2 >= 0) cfg.scoring.beta2 = beta2;
    if (pair_cap >= 0) cfg.pair_cap = pair_cap;
    return cfg;
  }
};

int do_run(const std::string& problem_path, const RunFlags& flags, const QTable* imported) {
  Problem problem = load_problem(problem_path);
  LearnConfig cfg = flags.to_config(problem);
  auto t0 = std::chrono::steady_clock::now();
  LearnResult res = run(problem, cfg, imported);
  auto t1 = std::chrono::steady_clock::now();
  double wall = std::chrono::duration<double, std::milli>(t1 - t0).count();
  std::string report = run_report(problem, cfg, res, wall);
  std::cout << report;
  if (!flags.out_path.empty()) write_file(flags.out_path, report);
  if (!flags.trace_path.empty()) write_file(flags.trace_path, trace_to_csv(res.trace));
  if (!flags.save_policy.empty()) export_policy(res.q_table, flags.save_policy);
  return 0;
}

int do_eval(const std::string& problem_path, const std::string& program_path) {
  Problem problem = load_problem(problem_path);
  std::vector<Rule> prog = load_program_file(program_path);
  if (prog.empty()) throw ParseError(program_path + ": empty program file");
  LearnConfig cfg;
  cfg.apply_overrides(problem.config);
  CoverageReport rep =
      coverage_counts(prog, problem.e_pos, problem.e_neg, problem.k, cfg.budget);
  std::cout << "problem: " << problem.name << "\n";
  for (const auto& r : prog) std::cout << "rule: " << print_rule(r) << "\n";
  for (size_t i = 0; i < problem.e_pos.size(); ++i)
    std::cout << "pos " << i + 1 << ": "
              << (rep.covered_pos.count(static_cast<int>(i)) ? "covered" : "NOT covered")
              << "  " << print_rule(problem.e_pos[i]) << "\n";
  for (size_t i = 0; i < problem.e_neg.size(); ++i)
    std::cout << "neg " << i + 1 << ": "
              << (rep.covered_neg.count(static_cast<int>(i)) ? "COVERED" : "excluded") << "  "
              << print_rule(problem.e_neg[i]) << "\n";
  std::cout << "cov_pos: " << rep.covered_pos.size() << "/" << problem.e_pos.size() << "\n";
  std::cout << "cov_neg: " << rep.covered_neg.size() << "/" << problem.e_neg.size() << "\n";
  bool complete = rep.covered_pos.size() == problem.e_pos.size() && rep.covered_neg.empty();
  return complete ? 0 : 1;
}

int do_bench(const std::string& suite, int seeds, const std::string& out_path) {
  if (suite != "transfer") throw ParseError("unknown bench suite '" + suite + "'");
  if (seeds < 2)
    std::cerr << "warning: fewer than 2 seeds, p-values omitted\n";
  TransferBenchResult res = run_transfer_bench(seeds);
  std::string csv = transfer_bench_csv(res, seeds);
  if (out_path.empty())
    std::cout << csv;
  else
    write_file(out_path, csv);
  std::cerr << "cells with mean reuse <= scratch: " << res.cells_improved << "/25, overall "
            << fmt(res.mean_scratch_all) << " -> " << fmt(res.mean_reuse_all) << " steps\n";
  return 0;
}

int do_dump_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto dump = [&](const Problem& p, const std::string& file) {
    write_file(dir + "/" + file, problem_to_text(p));
  };
  dump(last_problem(), "last.prob");
  dump(odd_one_out_problem(), "ooo.prob");
  dump(raven_demo_problem(), "raven_demo.prob");
  for (const auto& fx : series_fixtures()) {
    Problem p = series_problem(fx);
    dump(p, p.name + ".prob");
  }
  for (TransformKind k : {TransformKind::DToC, TransformKind::EToIng, TransformKind::DToPez,
                          TransformKind::PrefixOver, TransformKind::SuffixMark}) {
    Problem p = transform_problem(k, {}, {});
    dump(p, "trans_" + p.name + ".prob");
  }
  return 0;
}

}  // namespace

std::vector<Rule> load_program_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open program file '" + path + "'");
  std::vector<Rule> prog;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = line.find_first_not_of(" \t\r\n") == std::string::npos;
    if (blank) continue;
    try {
      prog.push_back(parse_rule(line));
    } catch (const ParseError& e) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return prog;
}

std::string run_report(const Problem& problem, const LearnConfig& cfg, const LearnResult& res,
                       double wall_ms) {
  std::ostringstream os;
  os << "problem: " << problem.name << "\n";
  os << "seed: " << cfg.seed << "\n";
  os << "config: max_steps=" << cfg.max_steps << " epsilon=" << fmt(cfg.epsilon)
     << " window=" << cfg.window_n << " alpha=" << fmt(cfg.rl.alpha)
     << " gamma=" << fmt(cfg.rl.gamma) << " q0=" << fmt(cfg.rl.q0)
     << " retrain_period=" << cfg.rl.retrain_period
     << " budget_steps=" << cfg.budget.max_rewrite_steps << " beta1=" << fmt(cfg.scoring.beta1)
     << " beta2=" << fmt(cfg.scoring.beta2) << " pair_cap=" << cfg.pair_cap << "\n";
  os << "steps: " << res.steps << "\n";

  const ScoredProgram& best = best_solution(res);
  // coverage recomputed from scratch rather than trusted from the trace
  std::vector<Rule> prog;
  for (int id : best.rule_ids) prog.push_back(res.rules[id].rule);
  CoverageReport rep =
      coverage_counts(prog, problem.e_pos, problem.e_neg, problem.k, cfg.budget);
  os << "best_program:\n";
  for (const auto& r : prog) os << "  " << print_rule(r) << "\n";
  os << "opt: " << fmt(best.opt) << "\n";
  os << "cov_pos: " << rep.covered_pos.size() << "/" << problem.e_pos.size() << "\n";
  os << "cov_neg: " << rep.covered_neg.size() << "/" << problem.e_neg.size() << "\n";
  bool complete = rep.covered_pos.size() == problem.e_pos.size() && rep.covered_neg.empty();
  os << "status: " << (complete ? "complete" : "incomplete") << "\n";
  if (res.solution_step) os << "solution_step: " << *res.solution_step << "\n";
  os << "# wall-time-ms: " << fmt(wall_ms) << "\n";
  return os.str();
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"rule learning with user-defined rewrite operators"};
  app.require_subcommand(1);

  RunFlags learn_flags, transfer_flags;
  std::string learn_problem, transfer_problem_path, transfer_policy;
  std::string eval_problem, eval_program;
  std::string bench_suite = "transfer", bench_out;
  int bench_seeds = 5;
  std::string dump_dir;

  CLI::App* learn = app.add_subcommand("learn", "learn a problem from a problem file");
  learn->add_option("problem", learn_problem, "problem file")->required();
  learn_flags.add_to(learn);

  CLI::App* transfer =
      app.add_subcommand("transfer", "learn with a previously saved policy table");
  transfer->add_option("policy", transfer_policy, "Q-table CSV from --save-policy")->required();
  transfer->add_option("problem", transfer_problem_path, "problem file")->required();
  transfer_flags.add_to(transfer);

  CLI::App* eval = app.add_subcommand("eval", "evaluate a program file against a problem");
  eval->add_option("problem", eval_problem, "problem file")->required();
  eval->add_option("program", eval_program, "program file, one rule per line")->required();

  CLI::App* bench = app.add_subcommand("bench", "run a benchmark suite");
  bench->add_option("suite", bench_suite, "suite name (transfer)");
  bench->add_option("--seeds", bench_seeds, "seeds per cell");
  bench->add_option("--out", bench_out, "write the aggregate CSV here");

  CLI::App* dump = app.add_subcommand("dump-corpus", "write the bundled problem files");
  dump->add_option("dir", dump_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
    if (learn->parsed()) return do_run(learn_problem, learn_flags, nullptr);
    if (transfer->parsed()) {
      QTable imported = import_policy(transfer_policy);
      return do_run(transfer_problem_path, transfer_flags, &imported);
    }
    if (eval->parsed()) return do_eval(eval_problem, eval_program);
    if (bench->parsed()) return do_bench(bench_suite, bench_seeds, bench_out);
    if (dump->parsed()) return do_dump_corpus(dump_dir);
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BKError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const QPolicyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace rf
