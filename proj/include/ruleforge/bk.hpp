#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ruleforge/term.hpp"

namespace rf {

// Background functions are pure; a Stuck result leaves the redex in place.
enum class BKStatus { Ok, Stuck };

struct BKResult {
  BKStatus status = BKStatus::Stuck;
  std::vector<TermPtr> values;  // non-empty when Ok; multi-valued only for nSust

  static BKResult ok(TermPtr v) { return {BKStatus::Ok, {std::move(v)}}; }
  static BKResult ok_many(std::vector<TermPtr> vs) { return {BKStatus::Ok, std::move(vs)}; }
  static BKResult stuck() { return {}; }
};

struct BKError : std::runtime_error {
  explicit BKError(const std::string& msg) : std::runtime_error(msg) {}
};

class BKRegistry {
 public:
  using Evaluator = std::function<BKResult(const std::vector<TermPtr>&)>;
  struct Entry {
    int arity;
    bool multi_valued;
    Evaluator fn;
  };

  // The fixed built-in registry; rule-form background knowledge lives in K
  // and is handled by the rewrite engine.
  static const BKRegistry& builtin();

  const Entry* find(const std::string& name) const;
  // Throws BKError on unknown name or arity mismatch; domain errors are Stuck.
  BKResult eval(const std::string& name, const std::vector<TermPtr>& args) const;

  void add(const std::string& name, int arity, bool multi_valued, Evaluator fn);

 private:
  std::map<std::string, Entry> entries_;
};

// Fully applied single/multi symbol substitution results, e.g.
// oneSust([a,b,c],[d,b,c]) -> {[d,b,c]}.
std::vector<TermPtr> list_diffs(const std::string& kind, const TermPtr& l1, const TermPtr& l2);
// Fully applied prefix/suffix affixing.
TermPtr affix(const std::string& kind, const TermPtr& l1, const TermPtr& l2);

}  // namespace rf
