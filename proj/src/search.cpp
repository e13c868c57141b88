#include "ruleforge/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "ruleforge/stats.hpp"

namespace rf {

void LearnConfig::apply_overrides(const std::map<std::string, double>& cfg) {
  for (const auto& [key, v] : cfg) {
    if (key == "max_steps") max_steps = static_cast<int>(v);
    else if (key == "epsilon") epsilon = v;
    else if (key == "window") window_n = static_cast<int>(v);
    else if (key == "budget_steps") budget.max_rewrite_steps = static_cast<int>(v);
    else if (key == "budget_depth") budget.max_term_depth = static_cast<int>(v);
    else if (key == "beta1") scoring.beta1 = v;
    else if (key == "beta2") scoring.beta2 = v;
    else if (key == "alpha") rl.alpha = v;
    else if (key == "gamma") rl.gamma = v;
    else if (key == "q0") rl.q0 = v;
    else if (key == "retrain_period") rl.retrain_period = static_cast<int>(v);
    else if (key == "pair_cap") pair_cap = static_cast<int>(v);
    else if (key == "stop_on_complete") stop_on_complete = v != 0;
    else throw ParseError("unknown config key '" + key + "'");
  }
}

bool LearnResult::solved(size_t n_pos) const {
  for (const auto& p : programs)
    if (p.cov_pos == static_cast<int>(n_pos) && p.cov_neg == 0) return true;
  return false;
}

bool stop_criterion(const std::vector<double>& generated_opts, int t, double epsilon,
                    int window_n, int max_steps) {
  if (t >= max_steps) return true;
  if (t < window_n) return false;
  if (generated_opts.size() < static_cast<size_t>(window_n)) return false;
  std::vector<double> tail(generated_opts.end() - window_n, generated_opts.end());
  return sample_stdev(tail) <= epsilon;
}

std::vector<ScoredRule> generate_rule(const OperatorDef& op, const Rule& rule,
                                      const std::vector<ScoredRule>& existing,
                                      const Problem& problem, const LearnConfig& cfg) {
  std::vector<ScoredRule> out;
  std::vector<Rule> produced = apply_operator(op, rule, {}, problem.k, cfg.budget);
  for (auto& r : produced) {
    bool dup = false;
    for (const auto& ex : existing)
      if (rules_equivalent(ex.rule, r)) {
        dup = true;
        break;
      }
    if (!dup)
      for (const auto& prev : out)
        if (rules_equivalent(prev.rule, r)) {
          dup = true;
          break;
        }
    if (dup) continue;
    RuleFeatures f =
        abstract_rule(r, problem.e_pos, problem.e_neg, problem.k, cfg.budget, problem.sig,
                      cfg.scoring);
    out.push_back(ScoredRule{std::move(r), f});
  }
  return out;
}

namespace {

struct ProgEval {
  double opt = 0;
  double msg_len = 0;
  int cov_pos = 0;
  int cov_neg = 0;
};

class Engine {
 public:
  Engine(const Problem& p, const LearnConfig& cfg) : p_(p), cfg_(cfg) {}

  ProgEval eval_ids(const std::vector<int>& ids, const std::vector<ScoredRule>& rules) {
    auto it = cache_.find(ids);
    if (it != cache_.end()) return it->second;
    ProgEval ev = eval_uncached(ids, rules);
    cache_.emplace(ids, ev);
    return ev;
  }

  // Evaluates several candidate rule-id sets, reusing the cache.
  void eval_batch(const std::vector<std::vector<int>>& idsets,
                  const std::vector<ScoredRule>& rules) {
    std::vector<const std::vector<int>*> missing;
    for (const auto& ids : idsets)
      if (!cache_.count(ids)) missing.push_back(&ids);
    std::sort(missing.begin(), missing.end(),
              [](auto* a, auto* b) { return *a < *b; });
    missing.erase(std::unique(missing.begin(), missing.end(),
                              [](auto* a, auto* b) { return *a == *b; }),
                  missing.end());
    std::vector<ProgEval> evs(missing.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < static_cast<int>(missing.size()); ++i)
      evs[i] = eval_uncached(*missing[i], rules);
    for (size_t i = 0; i < missing.size(); ++i) cache_.emplace(*missing[i], evs[i]);
  }

 private:
  ProgEval eval_uncached(const std::vector<int>& ids, const std::vector<ScoredRule>& rules) {
    std::vector<Rule> prog;
    prog.reserve(ids.size());
    for (int id : ids) prog.push_back(rules[id].rule);
    ProgEval ev;
    ev.msg_len = msg_len_program(prog, p_.sig);
    CoverageReport rep = coverage_counts_serial(prog, p_.e_pos, p_.e_neg, p_.k, cfg_.budget);
    ev.cov_pos = static_cast<int>(rep.covered_pos.size());
    ev.cov_neg = static_cast<int>(rep.covered_neg.size());
    double residual = 0;
    for (size_t i = 0; i < p_.e_pos.size(); ++i)
      if (!rep.covered_pos.count(static_cast<int>(i)))
        residual += msg_len_rule(p_.e_pos[i], p_.sig);
    for (int i : rep.covered_neg) residual += msg_len_rule(p_.e_neg[i], p_.sig);
    ev.opt = -cfg_.scoring.beta1 * ev.msg_len - cfg_.scoring.beta2 * residual;
    return ev;
  }

  const Problem& p_;
  const LearnConfig& cfg_;
  std::map<std::vector<int>, ProgEval> cache_;
};

std::vector<int> union_ids(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

LearnResult run(const Problem& problem, const LearnConfig& cfg, const QTable* imported) {
  if (problem.e_pos.empty()) throw ParseError("run: no positive examples");
  if (problem.operators.empty()) throw ParseError("run: no operators");

  LearnResult res;
  Engine engine(problem, cfg);
  SplitRng tie_rng(cfg.seed, "tie_break");
  const std::vector<int> op_ids = problem.op_ids();

  // R from the positive evidence, P as unit programs
  for (const auto& e : problem.e_pos) {
    bool dup = false;
    for (const auto& r : res.rules)
      if (rules_equivalent(r.rule, e)) {
        dup = true;
        break;
      }
    if (dup) continue;
    RuleFeatures f = abstract_rule(e, problem.e_pos, problem.e_neg, problem.k, cfg.budget,
                                   problem.sig, cfg.scoring);
    res.rules.push_back(ScoredRule{e, f});
  }
  std::map<std::vector<int>, size_t> program_keys;
  auto add_program = [&](const std::vector<int>& ids, const ProgEval& ev) -> bool {
    if (program_keys.count(ids)) return false;
    program_keys.emplace(ids, res.programs.size());
    res.programs.push_back(ScoredProgram{ids, ev.opt, ev.msg_len, ev.cov_pos, ev.cov_neg});
    return true;
  };
  for (size_t i = 0; i < res.rules.size(); ++i) {
    std::vector<int> ids{static_cast<int>(i)};
    add_program(ids, engine.eval_ids(ids, res.rules));
  }

  auto current_state = [&]() {
    std::vector<RuleFeatures> rf;
    std::vector<double> opts;
    std::vector<int> sizes;
    for (const auto& r : res.rules) rf.push_back(r.feats);
    for (const auto& p : res.programs) {
      opts.push_back(p.opt);
      sizes.push_back(static_cast<int>(p.rule_ids.size()));
    }
    return abstract_state(rf, opts, sizes);
  };

  auto candidates_now = [&]() {
    std::vector<Candidate> cands;
    cands.reserve(op_ids.size() * res.rules.size());
    for (int op : op_ids)
      for (size_t i = 0; i < res.rules.size(); ++i)
        cands.push_back(Candidate{op, static_cast<int>(i), res.rules[i].feats});
    return cands;
  };

  StateFeatures s0 = current_state();
  std::vector<RuleFeatures> seed_feats;
  for (const auto& r : res.rules) seed_feats.push_back(r.feats);
  res.q_table = init_q(s0, seed_feats, op_ids, cfg.rl.q0);
  if (imported) {
    // transferred rows first, then this task's initialisation at q0
    QTable merged;
    for (const auto& row : imported->rows())
      merged.upsert(row.state, row.op_id, row.rule, row.q).q = row.q;
    for (const auto& row : res.q_table.rows())
      merged.upsert(row.state, row.op_id, row.rule, row.q);
    res.q_table = std::move(merged);
  }
  QModel model = train_model(res.q_table, op_ids);

  const int n_pos = static_cast<int>(problem.e_pos.size());
  auto complete_consistent = [&](const ProgEval& ev) {
    return ev.cov_pos == n_pos && ev.cov_neg == 0;
  };
  for (const auto& p : res.programs)
    if (p.cov_pos == n_pos && p.cov_neg == 0 && !res.solution_step) res.solution_step = 0;

  std::vector<double> generated_opts;
  StateFeatures s_t = current_state();
  int t = 1;
  while (!stop_criterion(generated_opts, t, cfg.epsilon, cfg.window_n, cfg.max_steps)) {
    if (cfg.rl.retrain_period > 0 && t % cfg.rl.retrain_period == 1)
      model = train_model(res.q_table, op_ids);

    std::vector<Candidate> cands = candidates_now();
    int pick = select_action(model, s_t, cands, tie_rng);
    const Candidate& action = cands[pick];
    const OperatorDef* op = nullptr;
    for (const auto& o : problem.operators)
      if (o.id == action.op_id) op = &o;

    std::vector<ScoredRule> fresh =
        generate_rule(*op, res.rules[action.rule_index].rule, res.rules, problem, cfg);

    double reward;
    uint64_t new_hash = 0;
    if (!fresh.empty()) {
      // highest unit-optimality result drives combination and reward
      size_t driver = 0;
      for (size_t i = 1; i < fresh.size(); ++i)
        if (fresh[i].feats.opt > fresh[driver].feats.opt) driver = i;
      int driver_id = -1;
      for (size_t i = 0; i < fresh.size(); ++i) {
        res.rules.push_back(fresh[i]);
        if (i == driver) driver_id = static_cast<int>(res.rules.size()) - 1;
      }
      reward = fresh[driver].feats.opt;
      new_hash = rule_hash(fresh[driver].rule);

      // program generator: best pairwise union, best join with the new rule,
      // or the new rule's unit program
      std::vector<size_t> order(res.programs.size());
      for (size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return res.programs[a].opt > res.programs[b].opt;
      });
      size_t cap = cfg.pair_cap > 0 ? std::min<size_t>(cfg.pair_cap, order.size()) : order.size();

      std::vector<int> unit{driver_id};
      std::vector<std::vector<int>> pair_cands, join_cands;
      for (size_t a = 0; a < cap; ++a)
        for (size_t b = a + 1; b < cap; ++b)
          pair_cands.push_back(union_ids(res.programs[order[a]].rule_ids,
                                         res.programs[order[b]].rule_ids));
      for (const auto& p : res.programs) join_cands.push_back(union_ids(unit, p.rule_ids));

      std::vector<std::vector<int>> all = pair_cands;
      all.insert(all.end(), join_cands.begin(), join_cands.end());
      all.push_back(unit);
      engine.eval_batch(all, res.rules);

      auto best_of = [&](const std::vector<std::vector<int>>& xs,
                         const std::vector<int>** key) -> std::optional<ProgEval> {
        std::optional<ProgEval> best;
        for (const auto& ids : xs) {
          ProgEval ev = engine.eval_ids(ids, res.rules);
          if (!best || ev.opt > best->opt) {
            best = ev;
            *key = &ids;
          }
        }
        return best;
      };
      const std::vector<int>* k1 = nullptr;
      const std::vector<int>* k2 = nullptr;
      auto p1 = best_of(pair_cands, &k1);
      auto p2 = best_of(join_cands, &k2);
      ProgEval unit_ev = engine.eval_ids(unit, res.rules);

      const std::vector<int>* chosen_ids = &unit;
      ProgEval chosen = unit_ev;
      if (p2 && p2->opt > chosen.opt) {
        chosen = *p2;
        chosen_ids = k2;
      }
      if (p1 && p1->opt > chosen.opt) {
        chosen = *p1;
        chosen_ids = k1;
      }
      add_program(*chosen_ids, chosen);
      generated_opts.push_back(chosen.opt);
      if (complete_consistent(chosen) && !res.solution_step) res.solution_step = t;
    } else {
      // no new rule: penalise with the worst unit-rule optimality present
      reward = res.rules.front().feats.opt;
      for (const auto& r : res.rules) reward = std::min(reward, r.feats.opt);
    }

    StateFeatures s_next = current_state();
    // rows for abstractions that just entered R
    for (const auto& f : fresh)
      for (int opid : op_ids) res.q_table.upsert(s_next, opid, f.feats, cfg.rl.q0);

    update_q(res.q_table, model, s_t, action.op_id, action.rule, reward, s_next,
             candidates_now(), cfg.rl);

    double gopt = 0;
    for (const auto& p : res.programs) gopt += p.opt;
    gopt /= static_cast<double>(res.programs.size());
    res.trace.push_back(TraceRow{t, action.op_id, new_hash, reward, gopt, false});

    s_t = s_next;
    ++t;
    if (cfg.stop_on_complete && res.solution_step) break;
  }
  res.steps = t - 1;
  if (!res.trace.empty())
    res.trace.back().stop_flag =
        stop_criterion(generated_opts, t, cfg.epsilon, cfg.window_n, cfg.max_steps) ||
        (cfg.stop_on_complete && res.solution_step.has_value());

  // final ranking: optimality descending, coding length ascending
  std::stable_sort(res.programs.begin(), res.programs.end(),
                   [](const ScoredProgram& a, const ScoredProgram& b) {
                     if (a.opt != b.opt) return a.opt > b.opt;
                     return a.msg_len < b.msg_len;
                   });
  return res;
}

const ScoredProgram& best_solution(const LearnResult& result) {
  if (result.programs.empty()) throw ParseError("no programs in result");
  return result.programs.front();
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream os;
  os << "step,op_id,rule_hash,reward,global_opt,stop_flag\n";
  char buf[64];
  for (const auto& r : trace) {
    os << r.step << ',' << r.op_id << ',';
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(r.rule_hash));
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.9g", r.reward);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.9g", r.global_opt);
    os << buf << ',' << (r.stop_flag ? 1 : 0) << '\n';
  }
  return os.str();
}

}  // namespace rf
