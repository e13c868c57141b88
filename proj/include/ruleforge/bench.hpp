#pragma once

#include "ruleforge/corpus.hpp"
#include "ruleforge/search.hpp"

namespace rf {

struct TransferCell {
  std::string source, target;
  std::vector<double> scratch_steps;  // per seed, target learned from scratch
  std::vector<double> reuse_steps;    // per seed, with the source policy imported
  double mean_scratch = 0, mean_reuse = 0;
  double p_value = 1;  // Wilcoxon signed-rank, two-sided
};

struct TransferBenchResult {
  std::vector<TransferCell> cells;  // 5x5, row-major source x target
  double mean_scratch_all = 0, mean_reuse_all = 0;
  int cells_improved = 0;  // mean reuse <= mean scratch
};

// The 5-problem transfer matrix: per seed, each problem gets a 10-instance
// sample and a shared operator-id permutation; the scratch run's table is
// the policy transferred to every target. Unsolved runs count max_steps.
TransferBenchResult run_transfer_bench(int seeds, int max_steps = 400);

std::string transfer_bench_csv(const TransferBenchResult& r, int seeds);

// Serial vs parallel coverage and program-combination kernels on the
// bundled corpora; prints one line per kernel with timings and a check
// that both paths agree.
int kernel_bench_main(int repeat);

}  // namespace rf
