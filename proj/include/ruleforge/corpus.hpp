#pragma once

#include <array>
#include <optional>

#include "ruleforge/problem.hpp"

namespace rf {

// ---- letter series ---------------------------------------------------------

// thurstone(prefix_k) -> next char for k = 2..|series|; the last instance is
// the input example itself. Throws for series shorter than 3.
std::vector<Rule> decompose_series(const Rule& example);

struct SeriesFixture {
  int id;                   // 1..15, 7 has no solution
  std::string series;       // letters shown to the solver
  char answer;              // the next letter
  int k_min;                // shortest prefix the solution pattern defines
  std::vector<int> holes;   // prefix lengths the pattern cannot produce
  std::vector<std::string> solution;  // rule texts, guarded cases first
};

const std::vector<SeriesFixture>& series_fixtures();
std::vector<Rule> series_solution(const SeriesFixture& fx);
// Bundled problem: decomposed instances restricted to the lengths the
// series pattern defines, with the standard letter-series operator set.
Problem series_problem(const SeriesFixture& fx);

// ---- odd one out -----------------------------------------------------------

struct OddOneOutItem {
  std::vector<std::string> items;  // lowercase recodings
  int solution;                    // 1-based outlier index
};

const std::vector<OddOneOutItem>& odd_one_out_items();
Problem odd_one_out_problem();
Rule ooo_hamming_rule();
Rule ooo_diffobj_rule();

// ---- Raven matrices ---------------------------------------------------------

struct RavenFigure {
  TermPtr shape, size, quantity, position, type;
};
using RavenCell = std::vector<RavenFigure>;

TermPtr cell_term(const RavenCell& cell);

struct RavenGrid {
  // 3x3 cell terms; the bottom-right entry is the gap (null).
  std::array<std::array<TermPtr, 3>, 3> cells{};
};

struct RavenDecomposition {
  std::vector<Rule> train;               // complete row/column pairs
  std::vector<std::vector<Rule>> tests;  // per candidate: row-wise, column-wise
};

// Training examples pair each complete row (column) with the prefix of
// another; test examples fill the gap with each candidate.
RavenDecomposition decompose_matrix(const RavenGrid& grid,
                                    const std::vector<TermPtr>& candidates);

// The worked 3x3 example: shapes and fills distribute over rows and columns,
// the rest of the attributes stay constant. Candidate 8 is correct.
RavenGrid demo_matrix();
std::vector<TermPtr> demo_candidates();
int demo_correct_candidate();  // 1-based
Problem raven_demo_problem();
std::vector<Rule> raven_demo_solution();
std::vector<OperatorDef> raven_operators();

enum class RavenRel { None, Identity, Distrib3, Progressive, Addition, Distrib2 };

struct RavenTableRow {
  int id;  // matrix identifier, 25..59
  std::array<RavenRel, 5> rels;  // per attribute: shape,size,quantity,position,type
};

const std::vector<RavenTableRow>& raven_table_rows();

struct RavenTableFixture {
  RavenGrid grid;
  std::vector<TermPtr> candidates;
  int correct;  // 1-based
  std::vector<Rule> solution;
};

// Synthesizes a grid consistent with the row's relations, eight candidates
// and the solution program.
RavenTableFixture raven_table_fixture(const RavenTableRow& row);

// ---- list transformation suite ----------------------------------------------

enum class TransformKind { DToC, EToIng, DToPez, PrefixOver, SuffixMark };

const std::vector<std::string>& transform_word_list();
std::string transform_kind_name(TransformKind k);
std::optional<TransformKind> transform_kind_from_name(const std::string& name);

// Deterministic instances driven by the embedded word list; words without
// the trigger pattern are skipped.
std::vector<Rule> gen_transform_suite(TransformKind kind, int count);

// The shared 20-operator set; `op_order[i]` is the id given to form i.
std::vector<OperatorDef> transform_operators(const std::vector<int>& op_order);
Problem transform_problem(TransformKind kind, const std::vector<int>& instance_indices,
                          const std::vector<int>& op_order);
Rule transform_solution(TransformKind kind);

// ---- last element -----------------------------------------------------------

Problem last_problem();
std::vector<Rule> last_solution();

// Serialises a problem in the problem-file grammar.
std::string problem_to_text(const Problem& p);

}  // namespace rf
