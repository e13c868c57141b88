#include "ruleforge/term.hpp"

#include <algorithm>
#include <sstream>

namespace rf {

namespace {

std::shared_ptr<Term> make(TermKind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

uint64_t fnv1a(uint64_t h, uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= (v >> (i * 8)) & 0xff;
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t fnv1a_str(uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string RulePosition::str() const {
  std::string s = root == PosRoot::L ? "L" : root == PosRoot::G ? "G" : "Rt";
  for (size_t i = 0; i < path.size(); ++i) {
    s += (i == 0 ? "" : ".");
    s += std::to_string(path[i]);
  }
  return s;
}

uint64_t Term::hash() const {
  if (hash_ != 0) return hash_;
  uint64_t h = 14695981039346656037ull;
  h = fnv1a(h, static_cast<uint64_t>(kind));
  h = fnv1a_str(h, sym);
  h = fnv1a(h, static_cast<uint64_t>(ival));
  if (kind == TermKind::PosRef) {
    h = fnv1a(h, static_cast<uint64_t>(pos.root));
    for (int p : pos.path) h = fnv1a(h, static_cast<uint64_t>(p));
  }
  for (const auto& a : args) h = fnv1a(h, a->hash());
  if (h == 0) h = 1;
  hash_ = h;
  return h;
}

TermPtr var(std::string name) {
  auto t = make(TermKind::Variable);
  t->sym = std::move(name);
  return t;
}

TermPtr atom(std::string name) {
  auto t = make(TermKind::Atom);
  t->sym = std::move(name);
  return t;
}

TermPtr integer(long long v) {
  auto t = make(TermKind::Integer);
  t->ival = v;
  return t;
}

TermPtr nil() {
  static const TermPtr n = make(TermKind::Nil);
  return n;
}

TermPtr cons(TermPtr head, TermPtr tail) {
  auto t = make(TermKind::Cons);
  t->args = {std::move(head), std::move(tail)};
  return t;
}

TermPtr tuple(std::vector<TermPtr> elems) {
  auto t = make(TermKind::Tuple);
  t->args = std::move(elems);
  return t;
}

TermPtr apply(std::string functor, std::vector<TermPtr> args) {
  auto t = make(TermKind::Apply);
  t->sym = std::move(functor);
  t->args = std::move(args);
  return t;
}

TermPtr mapping(TermPtr from, TermPtr to) {
  auto t = make(TermKind::Mapping);
  t->args = {std::move(from), std::move(to)};
  return t;
}

TermPtr bkref(std::string name) {
  auto t = make(TermKind::BKRef);
  t->sym = std::move(name);
  return t;
}

TermPtr posref(RulePosition p) {
  auto t = make(TermKind::PosRef);
  t->pos = std::move(p);
  return t;
}

TermPtr atom_true() {
  static const TermPtr t = atom("true");
  return t;
}

TermPtr atom_false() {
  static const TermPtr t = atom("false");
  return t;
}

TermPtr str_list(std::string_view s) {
  TermPtr t = nil();
  for (auto it = s.rbegin(); it != s.rend(); ++it) t = cons(atom(std::string(1, *it)), t);
  return t;
}

TermPtr list_of(const std::vector<TermPtr>& elems) {
  TermPtr t = nil();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) t = cons(*it, t);
  return t;
}

std::optional<std::vector<TermPtr>> list_elems(const TermPtr& t) {
  std::vector<TermPtr> out;
  const Term* cur = t.get();
  TermPtr hold = t;
  while (cur->kind == TermKind::Cons) {
    out.push_back(cur->args[0]);
    hold = cur->args[1];
    cur = hold.get();
  }
  if (cur->kind != TermKind::Nil) return std::nullopt;
  return out;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  if (a->hash() != b->hash()) return false;
  switch (a->kind) {
    case TermKind::Variable:
    case TermKind::Atom:
    case TermKind::BKRef:
      return a->sym == b->sym;
    case TermKind::Integer:
      return a->ival == b->ival;
    case TermKind::Nil:
      return true;
    case TermKind::Apply:
      if (a->sym != b->sym) return false;
      break;
    case TermKind::PosRef:
      return a->pos == b->pos;
    default:
      break;
  }
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

bool is_ground(const TermPtr& t) {
  if (t->kind == TermKind::Variable) return false;
  for (const auto& a : t->args)
    if (!is_ground(a)) return false;
  return true;
}

bool contains_functor(const TermPtr& t, const std::string& functor) {
  if ((t->kind == TermKind::Apply && t->sym == functor) ||
      (t->kind == TermKind::BKRef && t->sym == functor))
    return true;
  for (const auto& a : t->args)
    if (contains_functor(a, functor)) return true;
  return false;
}

bool match_into(const TermPtr& pattern, const TermPtr& subject, Substitution& subst) {
  if (pattern->kind == TermKind::Variable) {
    auto it = subst.find(pattern->sym);
    if (it != subst.end()) return equal(it->second, subject);
    subst.emplace(pattern->sym, subject);
    return true;
  }
  if (pattern->kind != subject->kind) return false;
  switch (pattern->kind) {
    case TermKind::Atom:
    case TermKind::BKRef:
      return pattern->sym == subject->sym;
    case TermKind::Integer:
      return pattern->ival == subject->ival;
    case TermKind::Nil:
      return true;
    case TermKind::Apply:
      if (pattern->sym != subject->sym) return false;
      break;
    default:
      break;
  }
  if (pattern->args.size() != subject->args.size()) return false;
  for (size_t i = 0; i < pattern->args.size(); ++i)
    if (!match_into(pattern->args[i], subject->args[i], subst)) return false;
  return true;
}

std::optional<Substitution> match(const TermPtr& pattern, const TermPtr& subject) {
  Substitution s;
  if (match_into(pattern, subject, s)) return s;
  return std::nullopt;
}

TermPtr substitute(const TermPtr& t, const Substitution& subst) {
  if (subst.empty()) return t;
  switch (t->kind) {
    case TermKind::Variable: {
      auto it = subst.find(t->sym);
      return it != subst.end() ? it->second : t;
    }
    case TermKind::Atom:
    case TermKind::Integer:
    case TermKind::Nil:
    case TermKind::BKRef:
    case TermKind::PosRef:
      return t;
    default:
      break;
  }
  std::vector<TermPtr> newargs;
  newargs.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    auto na = substitute(a, subst);
    changed |= na.get() != a.get();
    newargs.push_back(std::move(na));
  }
  if (!changed) return t;
  auto n = std::make_shared<Term>(*t);
  n->args = std::move(newargs);
  return std::const_pointer_cast<const Term>(
      std::shared_ptr<Term>(std::move(n)));
}

void collect_vars(const TermPtr& t, std::vector<std::string>& out) {
  if (t->kind == TermKind::Variable) {
    if (std::find(out.begin(), out.end(), t->sym) == out.end()) out.push_back(t->sym);
    return;
  }
  for (const auto& a : t->args) collect_vars(a, out);
}

namespace {

bool is_char_atom(const TermPtr& t) {
  return t->kind == TermKind::Atom && t->sym.size() == 1 && t->sym[0] >= 'a' && t->sym[0] <= 'z';
}

void print_rec(const TermPtr& t, std::ostringstream& os) {
  switch (t->kind) {
    case TermKind::Variable:
    case TermKind::Atom:
      os << t->sym;
      return;
    case TermKind::BKRef:
      os << '&' << t->sym;
      return;
    case TermKind::Integer:
      os << t->ival;
      return;
    case TermKind::Nil:
      os << "[]";
      return;
    case TermKind::PosRef:
      os << t->pos.str();
      return;
    case TermKind::Mapping:
      print_rec(t->args[0], os);
      os << "=>";
      print_rec(t->args[1], os);
      return;
    case TermKind::Tuple: {
      os << '{';
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ',';
        print_rec(t->args[i], os);
      }
      os << '}';
      return;
    }
    case TermKind::Apply: {
      os << t->sym << '(';
      for (size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ',';
        print_rec(t->args[i], os);
      }
      os << ')';
      return;
    }
    case TermKind::Cons: {
      // proper lists of single-char atoms print as strings
      auto elems = list_elems(t);
      if (elems && !elems->empty() &&
          std::all_of(elems->begin(), elems->end(), is_char_atom)) {
        os << '"';
        for (const auto& e : *elems) os << e->sym;
        os << '"';
        return;
      }
      os << '[';
      const Term* cur = t.get();
      TermPtr hold = t;
      bool first = true;
      while (cur->kind == TermKind::Cons) {
        if (!first) os << ',';
        first = false;
        print_rec(cur->args[0], os);
        hold = cur->args[1];
        cur = hold.get();
      }
      if (cur->kind != TermKind::Nil) {
        os << '|';
        print_rec(hold, os);
      }
      os << ']';
      return;
    }
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::ostringstream os;
  print_rec(t, os);
  return os.str();
}

}  // namespace rf
