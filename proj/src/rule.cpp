#include "ruleforge/rule.hpp"

#include <sstream>

namespace rf {

std::string print_rule(const Rule& r) {
  std::ostringstream os;
  os << print_term(r.lhs);
  if (!r.guards.empty()) {
    os << " when ";
    for (size_t i = 0; i < r.guards.size(); ++i) {
      if (i) os << ", ";
      os << print_term(r.guards[i]);
    }
  }
  os << " -> ";
  for (const auto& b : r.body) {
    if (b->kind == TermKind::Apply && b->sym == "=" && b->args.size() == 2)
      os << print_term(b->args[0]) << " = " << print_term(b->args[1]);
    else
      os << print_term(b);
    os << ", ";
  }
  os << print_term(r.rhs);
  return os.str();
}

namespace {

void enumerate_term(const TermPtr& t, RulePosition base, std::vector<RulePosition>& out) {
  out.push_back(base);
  for (size_t i = 0; i < t->args.size(); ++i) {
    RulePosition child = base;
    child.path.push_back(static_cast<int>(i) + 1);
    enumerate_term(t->args[i], child, out);
  }
}

// Components of the Rt node: body items then rhs.
std::vector<TermPtr> right_items(const Rule& r) {
  std::vector<TermPtr> items = r.body;
  items.push_back(r.rhs);
  return items;
}

std::optional<TermPtr> descend(TermPtr t, const std::vector<int>& path, size_t from) {
  for (size_t i = from; i < path.size(); ++i) {
    int idx = path[i];
    if (idx < 1 || static_cast<size_t>(idx) > t->args.size()) return std::nullopt;
    t = t->args[idx - 1];
  }
  return t;
}

TermPtr rebuild(const TermPtr& t, const std::vector<int>& path, size_t from, const TermPtr& repl) {
  if (from == path.size()) return repl;
  int idx = path[from];
  auto n = std::make_shared<Term>(*t);
  n->args[idx - 1] = rebuild(t->args[idx - 1], path, from + 1, repl);
  return std::const_pointer_cast<const Term>(std::shared_ptr<Term>(std::move(n)));
}

// Sequence positions inside a term: argument slots of Apply/Tuple and the
// head slot of a cons cell (inserting there splices into the chain).
std::optional<TermPtr> insert_in_term(const TermPtr& t, const std::vector<int>& path,
                                      size_t from, const TermPtr& ins) {
  int idx = path[from];
  if (from + 1 == path.size()) {
    if (t->kind == TermKind::Apply || t->kind == TermKind::Tuple) {
      if (idx < 1 || static_cast<size_t>(idx) > t->args.size() + 1) return std::nullopt;
      auto n = std::make_shared<Term>(*t);
      n->args.insert(n->args.begin() + (idx - 1), ins);
      return std::const_pointer_cast<const Term>(std::shared_ptr<Term>(std::move(n)));
    }
    if (t->kind == TermKind::Cons && idx == 1) return cons(ins, t);
    return std::nullopt;
  }
  if (idx < 1 || static_cast<size_t>(idx) > t->args.size()) return std::nullopt;
  auto sub = insert_in_term(t->args[idx - 1], path, from + 1, ins);
  if (!sub) return std::nullopt;
  auto n = std::make_shared<Term>(*t);
  n->args[idx - 1] = *sub;
  return std::const_pointer_cast<const Term>(std::shared_ptr<Term>(std::move(n)));
}

}  // namespace

std::vector<RulePosition> positions(const Rule& r) {
  std::vector<RulePosition> out;
  enumerate_term(r.lhs, {PosRoot::L, {}}, out);
  out.push_back({PosRoot::G, {}});
  for (size_t i = 0; i < r.guards.size(); ++i)
    enumerate_term(r.guards[i], {PosRoot::G, {static_cast<int>(i) + 1}}, out);
  out.push_back({PosRoot::Rt, {}});
  auto items = right_items(r);
  for (size_t i = 0; i < items.size(); ++i)
    enumerate_term(items[i], {PosRoot::Rt, {static_cast<int>(i) + 1}}, out);
  return out;
}

std::optional<TermPtr> subpart(const Rule& r, const RulePosition& pos) {
  switch (pos.root) {
    case PosRoot::L:
      return descend(r.lhs, pos.path, 0);
    case PosRoot::G: {
      if (pos.path.empty()) return list_of(r.guards);
      int idx = pos.path[0];
      if (idx < 1 || static_cast<size_t>(idx) > r.guards.size()) return std::nullopt;
      return descend(r.guards[idx - 1], pos.path, 1);
    }
    case PosRoot::Rt: {
      auto items = right_items(r);
      if (pos.path.empty()) return r.body.empty() ? r.rhs : list_of(items);
      int idx = pos.path[0];
      if (idx < 1 || static_cast<size_t>(idx) > items.size()) return std::nullopt;
      return descend(items[idx - 1], pos.path, 1);
    }
  }
  return std::nullopt;
}

std::optional<Rule> splice(const Rule& r, const RulePosition& pos, SpliceMode mode,
                           const TermPtr& term) {
  Rule out = r;
  switch (mode) {
    case SpliceMode::Replace: {
      if (!term) return std::nullopt;
      switch (pos.root) {
        case PosRoot::L: {
          if (pos.path.empty()) {
            out.lhs = term;
            return out;
          }
          if (!descend(r.lhs, pos.path, 0)) return std::nullopt;
          out.lhs = rebuild(r.lhs, pos.path, 0, term);
          return out;
        }
        case PosRoot::G: {
          if (pos.path.empty()) return std::nullopt;
          int idx = pos.path[0];
          if (idx < 1 || static_cast<size_t>(idx) > r.guards.size()) return std::nullopt;
          if (!descend(r.guards[idx - 1], pos.path, 1)) return std::nullopt;
          out.guards[idx - 1] = rebuild(r.guards[idx - 1], pos.path, 1, term);
          return out;
        }
        case PosRoot::Rt: {
          auto items = right_items(r);
          if (pos.path.empty()) {
            if (!r.body.empty()) return std::nullopt;
            out.rhs = term;
            return out;
          }
          int idx = pos.path[0];
          if (idx < 1 || static_cast<size_t>(idx) > items.size()) return std::nullopt;
          if (!descend(items[idx - 1], pos.path, 1)) return std::nullopt;
          TermPtr replaced = rebuild(items[idx - 1], pos.path, 1, term);
          if (static_cast<size_t>(idx) == items.size())
            out.rhs = replaced;
          else
            out.body[idx - 1] = replaced;
          return out;
        }
      }
      return std::nullopt;
    }
    case SpliceMode::Insert: {
      if (!term || pos.path.empty()) return std::nullopt;
      int idx = pos.path[0];
      switch (pos.root) {
        case PosRoot::G: {
          if (pos.path.size() != 1) break;  // deep inserts resolve inside the guard term
          if (idx < 1 || static_cast<size_t>(idx) > r.guards.size() + 1) return std::nullopt;
          out.guards.insert(out.guards.begin() + (idx - 1), term);
          return out;
        }
        case PosRoot::Rt: {
          if (pos.path.size() != 1) break;
          // inserting at the Right sequence: prior items become body items
          auto items = right_items(r);
          if (idx < 1 || static_cast<size_t>(idx) > items.size() + 1) return std::nullopt;
          items.insert(items.begin() + (idx - 1), term);
          out.rhs = items.back();
          items.pop_back();
          out.body = items;
          return out;
        }
        case PosRoot::L:
          break;
      }
      // insert inside a term at a sequence slot
      switch (pos.root) {
        case PosRoot::L: {
          auto n = insert_in_term(r.lhs, pos.path, 0, term);
          if (!n) return std::nullopt;
          out.lhs = *n;
          return out;
        }
        case PosRoot::G: {
          if (idx < 1 || static_cast<size_t>(idx) > r.guards.size()) return std::nullopt;
          auto n = insert_in_term(r.guards[idx - 1], pos.path, 1, term);
          if (!n) return std::nullopt;
          out.guards[idx - 1] = *n;
          return out;
        }
        case PosRoot::Rt: {
          auto items = right_items(r);
          if (idx < 1 || static_cast<size_t>(idx) > items.size()) return std::nullopt;
          auto n = insert_in_term(items[idx - 1], pos.path, 1, term);
          if (!n) return std::nullopt;
          if (static_cast<size_t>(idx) == items.size())
            out.rhs = *n;
          else
            out.body[idx - 1] = *n;
          return out;
        }
      }
      return std::nullopt;
    }
    case SpliceMode::Delete: {
      if (pos.path.size() != 1) return std::nullopt;
      int idx = pos.path[0];
      if (pos.root == PosRoot::G) {
        if (idx < 1 || static_cast<size_t>(idx) > r.guards.size()) return std::nullopt;
        out.guards.erase(out.guards.begin() + (idx - 1));
        return out;
      }
      if (pos.root == PosRoot::Rt) {
        // only body items may go; the rhs is structural
        if (idx < 1 || static_cast<size_t>(idx) > r.body.size()) return std::nullopt;
        out.body.erase(out.body.begin() + (idx - 1));
        return out;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool is_recursive(const Rule& r) {
  if (r.lhs->kind != TermKind::Apply) return false;
  const std::string& f = r.lhs->sym;
  for (const auto& b : r.body)
    if (contains_functor(b, f)) return true;
  return contains_functor(r.rhs, f);
}

namespace {

TermPtr rename_term(const TermPtr& t, const std::string& suffix) {
  if (t->kind == TermKind::Variable) return var(t->sym + suffix);
  if (t->args.empty()) return t;
  auto n = std::make_shared<Term>(*t);
  for (auto& a : n->args) a = rename_term(a, suffix);
  return std::const_pointer_cast<const Term>(std::shared_ptr<Term>(std::move(n)));
}

TermPtr canon_term(const TermPtr& t, Substitution& map) {
  if (t->kind == TermKind::Variable) {
    auto it = map.find(t->sym);
    if (it == map.end()) {
      auto fresh = var("V" + std::to_string(map.size() + 1));
      map.emplace(t->sym, fresh);
      return fresh;
    }
    return it->second;
  }
  if (t->args.empty()) return t;
  auto n = std::make_shared<Term>(*t);
  for (auto& a : n->args) a = canon_term(a, map);
  return std::const_pointer_cast<const Term>(std::shared_ptr<Term>(std::move(n)));
}

}  // namespace

Rule rename_apart(const Rule& r, unsigned salt) {
  std::string suffix = "_" + std::to_string(salt);
  Rule out;
  out.lhs = rename_term(r.lhs, suffix);
  for (const auto& g : r.guards) out.guards.push_back(rename_term(g, suffix));
  for (const auto& b : r.body) out.body.push_back(rename_term(b, suffix));
  out.rhs = rename_term(r.rhs, suffix);
  return out;
}

Rule canonical(const Rule& r) {
  Substitution map;
  Rule out;
  out.lhs = canon_term(r.lhs, map);
  for (const auto& g : r.guards) out.guards.push_back(canon_term(g, map));
  for (const auto& b : r.body) out.body.push_back(canon_term(b, map));
  out.rhs = canon_term(r.rhs, map);
  return out;
}

bool rules_equal(const Rule& a, const Rule& b) {
  if (a.guards.size() != b.guards.size() || a.body.size() != b.body.size()) return false;
  if (!equal(a.lhs, b.lhs) || !equal(a.rhs, b.rhs)) return false;
  for (size_t i = 0; i < a.guards.size(); ++i)
    if (!equal(a.guards[i], b.guards[i])) return false;
  for (size_t i = 0; i < a.body.size(); ++i)
    if (!equal(a.body[i], b.body[i])) return false;
  return true;
}

bool rules_equivalent(const Rule& a, const Rule& b) {
  return rules_equal(canonical(a), canonical(b));
}

uint64_t rule_hash(const Rule& r) {
  Rule c = canonical(r);
  uint64_t h = 14695981039346656037ull;
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (i * 8)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(c.lhs->hash());
  mix(0x9e3779b97f4a7c15ull);
  for (const auto& g : c.guards) mix(g->hash());
  mix(0xc2b2ae3d27d4eb4full);
  for (const auto& b : c.body) mix(b->hash());
  mix(c.rhs->hash());
  return h;
}

}  // namespace rf
