#include "ruleforge/qpolicy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

namespace rf {

namespace {

uint64_t mix_double(uint64_t h, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) {
    h ^= (bits >> (i * 8)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

uint64_t QTable::key_hash(const StateFeatures& s, int op_id, const RuleFeatures& rf) {
  uint64_t h = 14695981039346656037ull;
  for (double v : s.vec()) h = mix_double(h, v);
  h = mix_double(h, static_cast<double>(op_id));
  for (double v : rf.vec()) h = mix_double(h, v);
  return h;
}

bool QTable::key_equal(const QRow& row, const StateFeatures& s, int op_id,
                       const RuleFeatures& rf) {
  return row.op_id == op_id && row.state == s && row.rule.same_abstraction(rf);
}

QRow& QTable::upsert(const StateFeatures& s, int op_id, const RuleFeatures& rf, double q_init) {
  uint64_t h = key_hash(s, op_id, rf);
  auto& bucket = index_[h];
  for (size_t i : bucket)
    if (key_equal(rows_[i], s, op_id, rf)) return rows_[i];
  bucket.push_back(rows_.size());
  rows_.push_back(QRow{s, op_id, rf, q_init});
  return rows_.back();
}

QRow* QTable::find(const StateFeatures& s, int op_id, const RuleFeatures& rf) {
  auto it = index_.find(key_hash(s, op_id, rf));
  if (it == index_.end()) return nullptr;
  for (size_t i : it->second)
    if (key_equal(rows_[i], s, op_id, rf)) return &rows_[i];
  return nullptr;
}

QTable init_q(const StateFeatures& s0, const std::vector<RuleFeatures>& rules,
              const std::vector<int>& op_ids, double q0) {
  if (rules.empty() || op_ids.empty()) throw QPolicyError("init_q: empty rules or operators");
  QTable t;
  for (int op : op_ids)
    for (const auto& rf : rules) t.upsert(s0, op, rf, q0);
  return t;
}

double QModel::predict(const StateFeatures& s, int op_id, const RuleFeatures& rf) const {
  if (constant) return constant_value;
  size_t nops = op_ids.size();
  double acc = 0;
  auto sv = s.vec();
  for (int i = 0; i < 3; ++i) acc += weights[i] * sv[i];
  for (size_t i = 0; i < nops; ++i)
    if (op_ids[i] == op_id) {
      acc += weights[3 + i];
      break;
    }
  auto rv = rf.vec();
  for (int i = 0; i < 8; ++i) acc += weights[3 + nops + i] * rv[i];
  acc += weights[3 + nops + 8];
  return acc;
}

QModel train_model(const QTable& table, const std::vector<int>& extra_op_ids) {
  const auto& rows = table.rows();
  if (rows.empty()) throw QPolicyError("train_model: empty table");

  QModel m;
  bool all_equal = std::all_of(rows.begin(), rows.end(),
                               [&](const QRow& r) { return r.q == rows.front().q; });
  std::set<int> ops;
  for (const auto& r : rows) ops.insert(r.op_id);
  for (int o : extra_op_ids) ops.insert(o);
  m.op_ids.assign(ops.begin(), ops.end());
  if (all_equal) {
    m.constant = true;
    m.constant_value = rows.front().q;
    return m;
  }

  size_t nops = m.op_ids.size();
  size_t dim = 3 + nops + 8 + 1;
  Eigen::MatrixXd X(rows.size(), dim);
  Eigen::VectorXd y(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const QRow& r = rows[i];
    auto sv = r.state.vec();
    for (int j = 0; j < 3; ++j) X(i, j) = sv[j];
    for (size_t j = 0; j < nops; ++j) X(i, 3 + j) = m.op_ids[j] == r.op_id ? 1.0 : 0.0;
    auto rv = r.rule.vec();
    for (int j = 0; j < 8; ++j) X(i, 3 + nops + j) = rv[j];
    X(i, dim - 1) = 1.0;
    y(i) = r.q;
  }
  Eigen::MatrixXd xtx = X.transpose() * X;
  Eigen::VectorXd xty = X.transpose() * y;
  Eigen::VectorXd w = xtx.ldlt().solve(xty);
  bool ok = w.allFinite() && (xtx * w - xty).norm() <= 1e-6 * (1.0 + xty.norm());
  if (!ok) {
    Eigen::MatrixXd ridge = xtx + 1e-6 * Eigen::MatrixXd::Identity(dim, dim);
    w = ridge.ldlt().solve(xty);
  }
  if (!w.allFinite()) {  // degenerate fit: fall back to the mean-q constant
    double mean = 0;
    for (const auto& r : rows) mean += r.q;
    m.constant = true;
    m.constant_value = mean / static_cast<double>(rows.size());
    return m;
  }
  m.weights.assign(w.data(), w.data() + dim);
  return m;
}

int select_action(const QModel& model, const StateFeatures& s,
                  const std::vector<Candidate>& candidates, SplitRng& rng) {
  if (candidates.empty()) throw QPolicyError("select_action: no candidates");
  std::vector<double> preds(candidates.size());
  double best = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < candidates.size(); ++i) {
    preds[i] = model.predict(s, candidates[i].op_id, candidates[i].rule);
    best = std::max(best, preds[i]);
  }
  std::vector<int> ties;
  for (size_t i = 0; i < candidates.size(); ++i)
    if (preds[i] == best) ties.push_back(static_cast<int>(i));
  return ties[rng.below(ties.size())];
}

void update_q(QTable& table, const QModel& model, const StateFeatures& s_t, int op_id,
              const RuleFeatures& rule_t, double reward, const StateFeatures& s_next,
              const std::vector<Candidate>& next_candidates, const RLConfig& cfg) {
  double max_next = 0;
  if (!next_candidates.empty()) {
    max_next = -std::numeric_limits<double>::infinity();
    for (const auto& c : next_candidates)
      max_next = std::max(max_next, model.predict(s_next, c.op_id, c.rule));
  }
  QRow& row = table.upsert(s_t, op_id, rule_t, cfg.q0);
  row.q = cfg.alpha * (reward + cfg.gamma * max_next) + (1.0 - cfg.alpha) * row.q;
}

std::string policy_to_csv(const QTable& table) {
  std::ostringstream os;
  os << "phi1,phi2,phi3,op_id,vphi1,vphi2,vphi3,vphi4,vphi5,vphi6,vphi7,vphi8,q\n";
  for (const auto& r : table.rows()) {
    auto sv = r.state.vec();
    os << fmt_real(sv[0]) << ',' << fmt_real(sv[1]) << ',' << fmt_real(sv[2]) << ',' << r.op_id;
    for (double v : r.rule.vec()) os << ',' << fmt_real(v);
    os << ',' << fmt_real(r.q) << '\n';
  }
  return os.str();
}

QTable policy_from_csv(const std::string& csv, const std::string& origin) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line))
    throw QPolicyError(origin + ": empty policy file");
  if (line != "phi1,phi2,phi3,op_id,vphi1,vphi2,vphi3,vphi4,vphi5,vphi6,vphi7,vphi8,q")
    throw QPolicyError(origin + ": bad header row");
  QTable t;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> fields;
    size_t start = 0;
    while (start <= line.size()) {
      size_t comma = line.find(',', start);
      std::string cell = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                       : comma - start);
      char* end = nullptr;
      double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw QPolicyError(origin + ": row " + std::to_string(lineno) + ": bad value '" +
                           cell + "'");
      fields.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 13)
      throw QPolicyError(origin + ": row " + std::to_string(lineno) + ": expected 13 columns, got " +
                         std::to_string(fields.size()));
    StateFeatures s{fields[0], fields[1], fields[2]};
    RuleFeatures rf;
    rf.size = fields[4];
    rf.pos_cov = fields[5];
    rf.neg_cov = fields[6];
    rf.num_vars = fields[7];
    rf.num_cons = fields[8];
    rf.num_funcs = fields[9];
    rf.num_structs = fields[10];
    rf.is_rec = fields[11];
    QRow& row = t.upsert(s, static_cast<int>(fields[3]), rf, fields[12]);
    row.q = fields[12];
  }
  if (t.size() == 0) throw QPolicyError(origin + ": policy has no rows");
  return t;
}

void export_policy(const QTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw QPolicyError("cannot write policy file '" + path + "'");
  out << policy_to_csv(table);
}

QTable import_policy(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw QPolicyError("cannot read policy file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return policy_from_csv(ss.str(), path);
}

}  // namespace rf
