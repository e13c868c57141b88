#pragma once

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

#include "ruleforge/features.hpp"
#include "ruleforge/rng.hpp"

namespace rf {

struct RLConfig {
  double alpha = 0.5;
  double gamma = 0.5;
  double q0 = 1.0;
  int retrain_period = 10;
};

struct QRow {
  StateFeatures state;
  int op_id = 0;
  RuleFeatures rule;
  double q = 0;
};

// One row per (state, op, rule-abstraction) key, updated in place.
// Insertion order is preserved; export writes rows in that order.
class QTable {
 public:
  QRow& upsert(const StateFeatures& s, int op_id, const RuleFeatures& rf, double q_init);
  QRow* find(const StateFeatures& s, int op_id, const RuleFeatures& rf);
  const std::vector<QRow>& rows() const { return rows_; }
  size_t size() const { return rows_.size(); }

 private:
  std::vector<QRow> rows_;
  std::unordered_map<uint64_t, std::vector<size_t>> index_;
  static uint64_t key_hash(const StateFeatures& s, int op_id, const RuleFeatures& rf);
  static bool key_equal(const QRow& row, const StateFeatures& s, int op_id,
                        const RuleFeatures& rf);
};

// Linear model over [state(3), one-hot op, rule(8), intercept]. The op
// identifier is one-hot encoded; a raw id would impose an ordinal structure
// the table does not carry. Tables whose q values are all equal fit the
// exact constant model so ties stay exact.
class QModel {
 public:
  double predict(const StateFeatures& s, int op_id, const RuleFeatures& rf) const;

  bool constant = false;
  double constant_value = 0;
  std::vector<int> op_ids;          // one-hot column order
  std::vector<double> weights;      // 3 + |op_ids| + 8 + 1
};

struct QPolicyError : std::runtime_error {
  explicit QPolicyError(const std::string& m) : std::runtime_error(m) {}
};

// One row per (state, op, distinct rule abstraction), all at q0.
QTable init_q(const StateFeatures& s0, const std::vector<RuleFeatures>& rules,
              const std::vector<int>& op_ids, double q0);

// Least squares on the encoded features; ridge (lambda = 1e-6) when the
// normal system is singular. `extra_op_ids` widens the one-hot universe to
// the current problem's operators.
QModel train_model(const QTable& table, const std::vector<int>& extra_op_ids = {});

struct Candidate {
  int op_id = 0;
  int rule_index = 0;  // caller-side rule identifier
  RuleFeatures rule;
};

// Argmax of predicted q; exact ties (including shared abstractions) are
// broken uniformly via rng. Returns an index into `candidates`.
int select_action(const QModel& model, const StateFeatures& s,
                  const std::vector<Candidate>& candidates, SplitRng& rng);

// Q[s,a] <- alpha * (reward + gamma * max_next) + (1 - alpha) * Q[s,a];
// the row is created at q0 when missing. max_next is the model's best
// prediction over the successor candidates (0 when there are none).
void update_q(QTable& table, const QModel& model, const StateFeatures& s_t,
              int op_id, const RuleFeatures& rule_t, double reward,
              const StateFeatures& s_next, const std::vector<Candidate>& next_candidates,
              const RLConfig& cfg);

// CSV with header phi1,phi2,phi3,op_id,vphi1..vphi8,q; reals carry 9
// significant digits and round-trip exactly.
void export_policy(const QTable& table, const std::string& path);
QTable import_policy(const std::string& path);

std::string policy_to_csv(const QTable& table);
QTable policy_from_csv(const std::string& csv, const std::string& origin = "<string>");

}  // namespace rf
