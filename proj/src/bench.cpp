#include "ruleforge/bench.hpp"

#include <chrono>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "ruleforge/stats.hpp"

namespace rf {

namespace {

const std::vector<TransformKind>& bench_kinds() {
  static const std::vector<TransformKind> kinds = {
      TransformKind::DToC, TransformKind::EToIng, TransformKind::DToPez,
      TransformKind::PrefixOver, TransformKind::SuffixMark};
  return kinds;
}

std::vector<int> sample_instances(TransformKind kind, int seed) {
  SplitRng rng(static_cast<uint64_t>(seed), "sample:" + transform_kind_name(kind));
  std::vector<int> perm = rng.permutation(20);
  perm.resize(10);
  std::sort(perm.begin(), perm.end());
  return perm;
}

}  // namespace

TransferBenchResult run_transfer_bench(int seeds, int max_steps) {
  const auto& kinds = bench_kinds();
  const int nk = static_cast<int>(kinds.size());

  // steps[t][i] from scratch, tables[s][i] the source policies
  std::vector<std::vector<double>> scratch(nk, std::vector<double>(seeds, 0));
  std::vector<std::vector<QTable>> tables(nk, std::vector<QTable>(seeds));
  std::vector<std::vector<std::vector<double>>> reuse(
      nk, std::vector<std::vector<double>>(nk, std::vector<double>(seeds, 0)));

  auto run_one = [&](TransformKind kind, int seed, const QTable* policy) {
    std::vector<int> order_perm = SplitRng(static_cast<uint64_t>(seed), "order").permutation(20);
    std::vector<int> order(20);
    for (int i = 0; i < 20; ++i) order[i] = order_perm[i] + 1;
    Problem p = transform_problem(kind, sample_instances(kind, seed), order);
    LearnConfig cfg;
    cfg.apply_overrides(p.config);
    cfg.max_steps = max_steps;
    cfg.stop_on_complete = true;
    cfg.epsilon = 0;
    cfg.seed = static_cast<uint64_t>(seed * 1000 + static_cast<int>(kind));
    return run(p, cfg, policy);
  };

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) collapse(2)
#endif
  for (int t = 0; t < nk; ++t)
    for (int i = 0; i < seeds; ++i) {
      LearnResult r = run_one(kinds[t], i + 1, nullptr);
      scratch[t][i] = r.solution_step ? *r.solution_step : max_steps;
      tables[t][i] = std::move(r.q_table);
    }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) collapse(2)
#endif
  for (int st = 0; st < nk * nk; ++st)
    for (int i = 0; i < seeds; ++i) {
      int s = st / nk, t = st % nk;
      LearnResult r = run_one(kinds[t], i + 1, &tables[s][i]);
      reuse[s][t][i] = r.solution_step ? *r.solution_step : max_steps;
    }

  TransferBenchResult res;
  double sum_scratch = 0, sum_reuse = 0;
  for (int s = 0; s < nk; ++s)
    for (int t = 0; t < nk; ++t) {
      TransferCell cell;
      cell.source = transform_kind_name(kinds[s]);
      cell.target = transform_kind_name(kinds[t]);
      cell.scratch_steps = scratch[t];
      cell.reuse_steps = reuse[s][t];
      cell.mean_scratch = std::accumulate(scratch[t].begin(), scratch[t].end(), 0.0) / seeds;
      cell.mean_reuse =
          std::accumulate(reuse[s][t].begin(), reuse[s][t].end(), 0.0) / seeds;
      if (seeds >= 2)
        cell.p_value = wilcoxon_signed_rank(cell.scratch_steps, cell.reuse_steps).p_value;
      if (cell.mean_reuse <= cell.mean_scratch) ++res.cells_improved;
      sum_scratch += cell.mean_scratch;
      sum_reuse += cell.mean_reuse;
      res.cells.push_back(std::move(cell));
    }
  res.mean_scratch_all = sum_scratch / (nk * nk);
  res.mean_reuse_all = sum_reuse / (nk * nk);
  return res;
}

std::string transfer_bench_csv(const TransferBenchResult& r, int seeds) {
  std::ostringstream os;
  char buf[64];
  os << "source,target,mean_steps_scratch,mean_steps_reuse,p_value\n";
  for (const auto& c : r.cells) {
    std::snprintf(buf, sizeof buf, "%.9g", c.mean_scratch);
    os << c.source << ',' << c.target << ',' << buf << ',';
    std::snprintf(buf, sizeof buf, "%.9g", c.mean_reuse);
    os << buf << ',';
    if (seeds >= 2) {
      std::snprintf(buf, sizeof buf, "%.9g", c.p_value);
      os << buf;
    }
    os << '\n';
  }
  std::snprintf(buf, sizeof buf, "%.9g", r.mean_scratch_all);
  os << "all,all," << buf << ',';
  std::snprintf(buf, sizeof buf, "%.9g", r.mean_reuse_all);
  os << buf << ",\n";
  return os.str();
}

int kernel_bench_main(int repeat) {
  using clock = std::chrono::steady_clock;
  auto ms = [](clock::time_point a, clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };

  Problem ooo = odd_one_out_problem();
  std::vector<Rule> prog{ooo_hamming_rule()};
  EvalBudget budget;

  auto t0 = clock::now();
  CoverageReport serial;
  for (int i = 0; i < repeat; ++i)
    serial = coverage_counts_serial(prog, ooo.e_pos, ooo.e_neg, ooo.k, budget);
  auto t1 = clock::now();
  CoverageReport parallel;
  for (int i = 0; i < repeat; ++i)
    parallel = coverage_counts(prog, ooo.e_pos, ooo.e_neg, ooo.k, budget);
  auto t2 = clock::now();

  bool agree = serial.covered_pos == parallel.covered_pos &&
               serial.covered_neg == parallel.covered_neg;
  std::printf("coverage_counts  serial %8.2f ms  parallel %8.2f ms  speedup %5.2fx  %s\n",
              ms(t0, t1) / repeat, ms(t1, t2) / repeat,
              ms(t0, t1) / std::max(1e-9, ms(t1, t2)),
              agree ? "agree" : "MISMATCH");

  // program-combination style workload: unit-rule coverage across the last corpus
  Problem last = last_problem();
  auto eval_all = [&](bool par) {
    double acc = 0;
    for (const auto& e : last.e_pos) {
      std::vector<Rule> unit{e};
      CoverageReport rep = par ? coverage_counts(unit, last.e_pos, last.e_neg, last.k, budget)
                               : coverage_counts_serial(unit, last.e_pos, last.e_neg, last.k,
                                                        budget);
      acc += static_cast<double>(rep.covered_pos.size());
    }
    return acc;
  };
  t0 = clock::now();
  double a = 0;
  for (int i = 0; i < repeat; ++i) a = eval_all(false);
  t1 = clock::now();
  double b = 0;
  for (int i = 0; i < repeat; ++i) b = eval_all(true);
  t2 = clock::now();
  std::printf("unit_rule_scan   serial %8.2f ms  parallel %8.2f ms  speedup %5.2fx  %s\n",
              ms(t0, t1) / repeat, ms(t1, t2) / repeat,
              ms(t0, t1) / std::max(1e-9, ms(t1, t2)), a == b ? "agree" : "MISMATCH");
  return (agree && a == b) ? 0 : 1;
}

}  // namespace rf
