#include "ruleforge/bk.hpp"

#include <algorithm>
#include <map>

namespace rf {

namespace {

using Args = std::vector<TermPtr>;

std::optional<std::vector<TermPtr>> ground_list(const TermPtr& t) {
  auto elems = list_elems(t);
  if (!elems) return std::nullopt;
  return elems;
}

bool char_atom(const TermPtr& t, char* out) {
  if (t->kind != TermKind::Atom || t->sym.size() != 1) return false;
  char c = t->sym[0];
  if (c < 'a' || c > 'z') return false;
  if (out) *out = c;
  return true;
}

// --- list structure -------------------------------------------------------

BKResult bk_head(const Args& a) {
  if (a[0]->kind != TermKind::Cons) return BKResult::stuck();
  return BKResult::ok(a[0]->args[0]);
}

BKResult bk_tail(const Args& a) {
  if (a[0]->kind != TermKind::Cons) return BKResult::stuck();
  return BKResult::ok(a[0]->args[1]);
}

BKResult bk_last(const Args& a) {
  auto l = ground_list(a[0]);
  if (!l || l->empty()) return BKResult::stuck();
  return BKResult::ok(l->back());
}

BKResult bk_init(const Args& a) {
  auto l = ground_list(a[0]);
  if (!l || l->empty()) return BKResult::stuck();
  l->pop_back();
  return BKResult::ok(list_of(*l));
}

BKResult bk_length(const Args& a) {
  auto l = ground_list(a[0]);
  if (!l) return BKResult::stuck();
  return BKResult::ok(integer(static_cast<long long>(l->size())));
}

BKResult bk_append(const Args& a) {
  auto l = ground_list(a[0]);
  if (!l) return BKResult::stuck();
  TermPtr t = a[1];
  for (auto it = l->rbegin(); it != l->rend(); ++it) t = cons(*it, t);
  return BKResult::ok(t);
}

// --- arithmetic and booleans ----------------------------------------------

BKResult bk_mod(const Args& a) {
  if (a[0]->kind != TermKind::Integer || a[1]->kind != TermKind::Integer || a[1]->ival == 0)
    return BKResult::stuck();
  long long m = a[1]->ival;
  long long r = ((a[0]->ival % m) + m) % m;
  return BKResult::ok(integer(r));
}

BKResult bk_eq(const Args& a) {
  if (!is_ground(a[0]) || !is_ground(a[1])) return BKResult::stuck();
  return BKResult::ok(equal(a[0], a[1]) ? atom_true() : atom_false());
}

BKResult bk_neq(const Args& a) {
  if (!is_ground(a[0]) || !is_ground(a[1])) return BKResult::stuck();
  return BKResult::ok(equal(a[0], a[1]) ? atom_false() : atom_true());
}

BKResult bk_not(const Args& a) {
  if (equal(a[0], atom_true())) return BKResult::ok(atom_false());
  if (equal(a[0], atom_false())) return BKResult::ok(atom_true());
  return BKResult::stuck();
}

// --- alphabet and periodicity ----------------------------------------------

BKResult bk_next(const Args& a) {
  char c;
  if (!char_atom(a[0], &c) || c == 'z') return BKResult::stuck();
  return BKResult::ok(atom(std::string(1, static_cast<char>(c + 1))));
}

BKResult bk_previous(const Args& a) {
  char c;
  if (!char_atom(a[0], &c) || c == 'a') return BKResult::stuck();
  return BKResult::ok(atom(std::string(1, static_cast<char>(c - 1))));
}

BKResult position_value(const Args& a, bool negate) {
  auto l = ground_list(a[0]);
  if (!l || a[1]->kind != TermKind::Integer || a[1]->ival <= 0) return BKResult::stuck();
  bool hit = (static_cast<long long>(l->size()) + 1) % a[1]->ival == 0;
  if (negate) hit = !hit;
  return BKResult::ok(hit ? atom_true() : atom_false());
}

BKResult bk_position(const Args& a) { return position_value(a, false); }
BKResult bk_notposition(const Args& a) { return position_value(a, true); }

// --- symbol substitution ----------------------------------------------------

struct Diff {
  size_t index;
  TermPtr from;
};

std::optional<Diff> first_diff(const std::vector<TermPtr>& l1, const std::vector<TermPtr>& l2) {
  size_t n = std::min(l1.size(), l2.size());
  for (size_t i = 0; i < n; ++i)
    if (!equal(l1[i], l2[i])) return Diff{i, l1[i]};
  return std::nullopt;
}

BKResult bk_one_sust(const Args& a) {
  auto l1 = ground_list(a[0]);
  auto l2 = ground_list(a[1]);
  if (!l1 || !l2) return BKResult::stuck();
  auto d = first_diff(*l1, *l2);
  if (!d) return BKResult::ok(a[0]);  // identical: identity result
  return BKResult::ok(apply("map", {mapping(d->from, (*l2)[d->index]), a[0]}));
}

BKResult bk_n_sust(const Args& a) {
  auto l1 = ground_list(a[0]);
  auto l2 = ground_list(a[1]);
  if (!l1 || !l2) return BKResult::stuck();
  auto d = first_diff(*l1, *l2);
  if (!d) return BKResult::ok(a[0]);
  std::vector<TermPtr> rem(l2->begin() + d->index, l2->end());
  std::vector<TermPtr> out;
  for (size_t len = 2; len <= rem.size(); ++len) {
    std::vector<TermPtr> prefix(rem.begin(), rem.begin() + len);
    out.push_back(apply("map", {mapping(d->from, list_of(prefix)), a[0]}));
  }
  if (out.empty()) return BKResult::stuck();
  return BKResult::ok_many(std::move(out));
}

// Residue of l2 after deleting the first occurrence of each element of l1.
std::vector<TermPtr> residue(const std::vector<TermPtr>& l1, const std::vector<TermPtr>& l2) {
  std::vector<TermPtr> rest = l2;
  for (const auto& e : l1) {
    auto it = std::find_if(rest.begin(), rest.end(),
                           [&](const TermPtr& x) { return equal(x, e); });
    if (it != rest.end()) rest.erase(it);
  }
  return rest;
}

BKResult bk_add_prefix(const Args& a) {
  auto l1 = ground_list(a[0]);
  auto l2 = ground_list(a[1]);
  if (!l1 || !l2) return BKResult::stuck();
  return BKResult::ok(apply("append", {a[0], list_of(residue(*l1, *l2))}));
}

BKResult bk_add_suffix(const Args& a) {
  auto l1 = ground_list(a[0]);
  auto l2 = ground_list(a[1]);
  if (!l1 || !l2) return BKResult::stuck();
  return BKResult::ok(apply("append", {list_of(residue(*l1, *l2)), a[0]}));
}

// --- map ---------------------------------------------------------------------

BKResult bk_map(const Args& a) {
  const TermPtr& f = a[0];
  auto l = ground_list(a[1]);
  if (!l) return BKResult::stuck();
  std::vector<TermPtr> out;
  if (f->kind == TermKind::Mapping) {
    const TermPtr& from = f->args[0];
    const TermPtr& to = f->args[1];
    auto to_elems = list_elems(to);
    for (const auto& e : *l) {
      if (!equal(e, from)) {
        out.push_back(e);
      } else if (to_elems) {
        for (const auto& s : *to_elems) out.push_back(s);  // multi-symbol splice
      } else {
        out.push_back(to);
      }
    }
    return BKResult::ok(list_of(out));
  }
  std::string name;
  if (f->kind == TermKind::BKRef) name = f->sym;
  else if (f->kind == TermKind::Atom && BKRegistry::builtin().find(f->sym)) name = f->sym;
  else return BKResult::stuck();
  const auto* entry = BKRegistry::builtin().find(name);
  if (!entry || (entry->arity != 1 && entry->arity != 2)) return BKResult::stuck();
  for (const auto& e : *l) {
    Args call = entry->arity == 1 ? Args{e} : Args{e, a[1]};
    BKResult r = entry->fn(call);
    if (r.status != BKStatus::Ok) return BKResult::stuck();
    out.push_back(r.values.front());
  }
  return BKResult::ok(list_of(out));
}

// --- odd-one-out scoring -------------------------------------------------------
//
// Pairwise distance: positional mismatches (shorter item padded so overhang
// always mismatches) plus the symmetric difference of the two items'
// repetition profiles (multiset of symbol occurrence counts). Score of an
// item is the distance to its nearest other item; the published coverage
// figures single out this reading.

int pos_mismatches(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  size_t n = std::max(a.size(), b.size());
  int d = 0;
  for (size_t i = 0; i < n; ++i) {
    if (i >= a.size() || i >= b.size() || !equal(a[i], b[i])) ++d;
  }
  return d;
}

std::map<int, int> repetition_profile(const std::vector<TermPtr>& items) {
  std::vector<std::pair<TermPtr, int>> counts;
  for (const auto& e : items) {
    bool found = false;
    for (auto& [v, c] : counts) {
      if (equal(v, e)) {
        ++c;
        found = true;
        break;
      }
    }
    if (!found) counts.emplace_back(e, 1);
  }
  std::map<int, int> profile;
  for (const auto& [v, c] : counts) ++profile[c];
  return profile;
}

int profile_diff(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  auto pa = repetition_profile(a);
  auto pb = repetition_profile(b);
  int d = 0;
  for (const auto& [k, v] : pa) {
    auto it = pb.find(k);
    d += std::abs(v - (it == pb.end() ? 0 : it->second));
  }
  for (const auto& [k, v] : pb)
    if (!pa.count(k)) d += v;
  return d;
}

int item_pair_distance(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  return pos_mismatches(a, b) + profile_diff(a, b);
}

BKResult bk_hamming(const Args& a) {
  auto item = ground_list(a[0]);
  auto ctx = ground_list(a[1]);
  if (!item || !ctx || ctx->empty()) return BKResult::stuck();
  std::vector<std::vector<TermPtr>> others;
  bool self_skipped = false;
  for (const auto& c : *ctx) {
    auto ce = ground_list(c);
    if (!ce) return BKResult::stuck();
    if (!self_skipped && equal(c, a[0])) {
      self_skipped = true;
      continue;
    }
    others.push_back(*ce);
  }
  if (others.empty()) return BKResult::ok(integer(0));
  int best = -1;
  for (const auto& o : others) {
    int d = item_pair_distance(*item, o);
    if (best < 0 || d < best) best = d;
  }
  return BKResult::ok(integer(best));
}

BKResult bk_diff_obj(const Args& a) {
  auto item = ground_list(a[0]);
  if (!item) return BKResult::stuck();
  std::vector<TermPtr> distinct_syms;
  for (const auto& e : *item) {
    bool seen = false;
    for (const auto& d : distinct_syms)
      if (equal(d, e)) {
        seen = true;
        break;
      }
    if (!seen) distinct_syms.push_back(e);
  }
  return BKResult::ok(integer(static_cast<long long>(distinct_syms.size())));
}

BKResult bk_distinct(const Args& a) {
  auto scores = ground_list(a[0]);
  if (!scores || scores->empty()) return BKResult::stuck();
  std::vector<long long> v;
  for (const auto& s : *scores) {
    if (s->kind != TermKind::Integer) return BKResult::stuck();
    v.push_back(s->ival);
  }
  std::map<long long, int> freq;
  for (long long x : v) ++freq[x];
  long long unique_value = 0;
  int unique_count = 0;
  for (const auto& [val, n] : freq)
    if (n == 1) {
      unique_value = val;
      ++unique_count;
    }
  if (unique_count != 1) return BKResult::stuck();  // no unique outlier
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] == unique_value) return BKResult::ok(integer(static_cast<long long>(i) + 1));
  return BKResult::stuck();
}

// --- Raven relations -----------------------------------------------------------

int att_index(const TermPtr& att) {
  static const std::map<std::string, int> idx = {
      {"shape", 0}, {"size", 1}, {"quantity", 2}, {"position", 3}, {"type", 4}};
  if (att->kind != TermKind::Atom) return -1;
  auto it = idx.find(att->sym);
  return it == idx.end() ? -1 : it->second;
}

// Rows of attribute values; the last row is the partial one to extend.
struct AttGrid {
  std::vector<std::vector<TermPtr>> complete;
  std::vector<TermPtr> partial;
  size_t ncols = 0;
};

std::optional<AttGrid> att_grid(const TermPtr& att, const TermPtr& matrix) {
  int k = att_index(att);
  if (k < 0) return std::nullopt;
  auto rows = list_elems(matrix);
  if (!rows || rows->size() < 2) return std::nullopt;
  AttGrid g;
  auto cell_value = [&](const TermPtr& cell) -> TermPtr {
    auto figs = list_elems(cell);
    if (!figs || figs->size() != 1) return nullptr;
    const TermPtr& fig = (*figs)[0];
    if (fig->kind != TermKind::Tuple || fig->args.size() != 5) return nullptr;
    return fig->args[k];
  };
  for (size_t i = 0; i < rows->size(); ++i) {
    auto cells = list_elems((*rows)[i]);
    if (!cells) return std::nullopt;
    std::vector<TermPtr> values;
    for (const auto& c : *cells) {
      TermPtr v = cell_value(c);
      if (!v) return std::nullopt;
      values.push_back(v);
    }
    if (i == 0) g.ncols = values.size();
    if (i + 1 < rows->size()) {
      if (values.size() != g.ncols) return std::nullopt;
      g.complete.push_back(std::move(values));
    } else {
      if (values.size() >= g.ncols) return std::nullopt;  // nothing to predict
      g.partial = std::move(values);
    }
  }
  if (g.ncols < 2 || g.complete.empty()) return std::nullopt;
  return g;
}

BKResult bk_identity(const Args& a) {
  auto g = att_grid(a[0], a[1]);
  if (!g) return BKResult::stuck();
  for (const auto& row : g->complete)
    for (const auto& v : row)
      if (!equal(v, row[0])) return BKResult::stuck();
  if (g->partial.empty()) return BKResult::stuck();
  for (const auto& v : g->partial)
    if (!equal(v, g->partial[0])) return BKResult::stuck();
  return BKResult::ok(g->partial[0]);
}

BKResult bk_distrib3val(const Args& a) {
  auto g = att_grid(a[0], a[1]);
  if (!g) return BKResult::stuck();
  const auto& base = g->complete[0];
  auto in_base = [&](const TermPtr& v) {
    return std::any_of(base.begin(), base.end(), [&](const TermPtr& b) { return equal(b, v); });
  };
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = i + 1; j < base.size(); ++j)
      if (equal(base[i], base[j])) return BKResult::stuck();
  for (const auto& row : g->complete) {
    for (const auto& v : row)
      if (!in_base(v)) return BKResult::stuck();
    for (size_t i = 0; i < row.size(); ++i)
      for (size_t j = i + 1; j < row.size(); ++j)
        if (equal(row[i], row[j])) return BKResult::stuck();
  }
  if (g->partial.size() != g->ncols - 1) return BKResult::stuck();
  for (size_t i = 0; i < g->partial.size(); ++i) {
    if (!in_base(g->partial[i])) return BKResult::stuck();
    for (size_t j = i + 1; j < g->partial.size(); ++j)
      if (equal(g->partial[i], g->partial[j])) return BKResult::stuck();
  }
  for (const auto& v : base) {
    bool seen = std::any_of(g->partial.begin(), g->partial.end(),
                            [&](const TermPtr& p) { return equal(p, v); });
    if (!seen) return BKResult::ok(v);
  }
  return BKResult::stuck();
}

BKResult bk_progressive(const Args& a) {
  auto g = att_grid(a[0], a[1]);
  if (!g) return BKResult::stuck();
  auto ival = [](const TermPtr& t, long long* out) {
    if (t->kind != TermKind::Integer) return false;
    *out = t->ival;
    return true;
  };
  long long d = 0;
  bool have_d = false;
  for (const auto& row : g->complete) {
    for (size_t i = 0; i + 1 < row.size(); ++i) {
      long long x, y;
      if (!ival(row[i], &x) || !ival(row[i + 1], &y)) return BKResult::stuck();
      if (!have_d) {
        d = y - x;
        have_d = true;
      } else if (y - x != d) {
        return BKResult::stuck();
      }
    }
  }
  if (!have_d || d == 0 || g->partial.empty()) return BKResult::stuck();
  for (size_t i = 0; i + 1 < g->partial.size(); ++i) {
    long long x, y;
    if (!ival(g->partial[i], &x) || !ival(g->partial[i + 1], &y) || y - x != d)
      return BKResult::stuck();
  }
  long long lastv;
  if (!ival(g->partial.back(), &lastv)) return BKResult::stuck();
  return BKResult::ok(integer(lastv + d));
}

// Figure addition: none acts as the empty figure, integers add, equal atoms
// absorb. Returns nullptr when the pair has no sum.
TermPtr or_combine(const TermPtr& x, const TermPtr& y) {
  TermPtr none = atom("none");
  if (equal(x, none)) return y;
  if (equal(y, none)) return x;
  if (x->kind == TermKind::Integer && y->kind == TermKind::Integer)
    return integer(x->ival + y->ival);
  if (equal(x, y)) return x;
  return nullptr;
}

// Distribution of two values: equal values cancel to none.
TermPtr xor_combine(const TermPtr& x, const TermPtr& y) {
  TermPtr none = atom("none");
  if (equal(x, y)) return none;
  if (equal(x, none)) return y;
  if (equal(y, none)) return x;
  return nullptr;
}

BKResult pairwise_relation(const Args& a, TermPtr (*combine)(const TermPtr&, const TermPtr&)) {
  auto g = att_grid(a[0], a[1]);
  if (!g || g->ncols != 3) return BKResult::stuck();
  for (const auto& row : g->complete) {
    TermPtr expect = combine(row[0], row[1]);
    if (!expect || !equal(expect, row[2])) return BKResult::stuck();
  }
  if (g->partial.size() != 2) return BKResult::stuck();
  TermPtr v = combine(g->partial[0], g->partial[1]);
  if (!v) return BKResult::stuck();
  return BKResult::ok(v);
}

BKResult bk_addition(const Args& a) { return pairwise_relation(a, or_combine); }
BKResult bk_distrib2val(const Args& a) { return pairwise_relation(a, xor_combine); }

}  // namespace

void BKRegistry::add(const std::string& name, int arity, bool multi_valued, Evaluator fn) {
  entries_[name] = Entry{arity, multi_valued, std::move(fn)};
}

const BKRegistry::Entry* BKRegistry::find(const std::string& name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

BKResult BKRegistry::eval(const std::string& name, const std::vector<TermPtr>& args) const {
  const Entry* e = find(name);
  if (!e) throw BKError("unknown background function '" + name + "'");
  if (static_cast<int>(args.size()) != e->arity)
    throw BKError("arity mismatch for '" + name + "': got " + std::to_string(args.size()) +
                  ", want " + std::to_string(e->arity));
  return e->fn(args);
}

const BKRegistry& BKRegistry::builtin() {
  static const BKRegistry reg = [] {
    BKRegistry r;
    r.add("head", 1, false, bk_head);
    r.add("tail", 1, false, bk_tail);
    r.add("last", 1, false, bk_last);
    r.add("init", 1, false, bk_init);
    r.add("length", 1, false, bk_length);
    r.add("append", 2, false, bk_append);
    r.add("mod", 2, false, bk_mod);
    r.add("eq", 2, false, bk_eq);
    r.add("neq", 2, false, bk_neq);
    r.add("not", 1, false, bk_not);
    r.add("next", 1, false, bk_next);
    r.add("previous", 1, false, bk_previous);
    r.add("position", 2, false, bk_position);
    r.add("notposition", 2, false, bk_notposition);
    r.add("oneSust", 2, false, bk_one_sust);
    r.add("nSust", 2, true, bk_n_sust);
    r.add("addPrefix", 2, false, bk_add_prefix);
    r.add("addSuffix", 2, false, bk_add_suffix);
    r.add("map", 2, false, bk_map);
    r.add("distinct", 1, false, bk_distinct);
    r.add("hamming", 2, false, bk_hamming);
    r.add("diffObj", 2, false, bk_diff_obj);
    r.add("identity", 2, false, bk_identity);
    r.add("distrib3val", 2, false, bk_distrib3val);
    r.add("progressive", 2, false, bk_progressive);
    r.add("addition", 2, false, bk_addition);
    r.add("distrib2val", 2, false, bk_distrib2val);
    return r;
  }();
  return reg;
}

std::vector<TermPtr> list_diffs(const std::string& kind, const TermPtr& l1, const TermPtr& l2) {
  const auto& reg = BKRegistry::builtin();
  BKResult step = reg.eval(kind, {l1, l2});
  if (step.status != BKStatus::Ok) throw BKError(kind + ": not applicable");
  std::vector<TermPtr> out;
  for (const auto& v : step.values) {
    if (v->kind == TermKind::Apply && v->sym == "map") {
      BKResult applied = reg.eval("map", v->args);
      if (applied.status != BKStatus::Ok) throw BKError(kind + ": substitution failed");
      out.push_back(applied.values.front());
    } else {
      out.push_back(v);  // identity result
    }
  }
  return out;
}

TermPtr affix(const std::string& kind, const TermPtr& l1, const TermPtr& l2) {
  const auto& reg = BKRegistry::builtin();
  BKResult step = reg.eval(kind, {l1, l2});
  if (step.status != BKStatus::Ok) throw BKError(kind + ": not applicable");
  BKResult applied = reg.eval("append", step.values.front()->args);
  if (applied.status != BKStatus::Ok) throw BKError(kind + ": append failed");
  return applied.values.front();
}

}  // namespace rf
