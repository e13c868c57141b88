#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rf {

// The symbolic value/pattern algebra. Terms are immutable and shared;
// strings are sugar for cons chains of single-character atoms.
enum class TermKind {
  Variable,  // capitalized identifier
  Atom,      // lowercase identifier (arity-0 function)
  Integer,
  Nil,       // empty list
  Cons,      // args = {head, tail}
  Tuple,     // args = elements
  Apply,     // sym = functor, args non-empty
  Mapping,   // args = {from, to}; written from=>to
  BKRef,     // reference to a background function, written &name
  PosRef,    // template-only leaf: resolves against a rule's position tree
};

enum class PosRoot { L, G, Rt };

struct RulePosition {
  PosRoot root = PosRoot::L;
  std::vector<int> path;  // child indices, 1-based

  bool operator==(const RulePosition&) const = default;
  std::string str() const;
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  TermKind kind;
  std::string sym;           // Variable/Atom/Apply/BKRef name
  long long ival = 0;        // Integer
  std::vector<TermPtr> args;
  RulePosition pos;          // PosRef payload

  uint64_t hash() const;
  bool is_list_like() const { return kind == TermKind::Nil || kind == TermKind::Cons; }

 private:
  mutable uint64_t hash_ = 0;  // 0 = not yet computed
};

TermPtr var(std::string name);
TermPtr atom(std::string name);
TermPtr integer(long long v);
TermPtr nil();
TermPtr cons(TermPtr head, TermPtr tail);
TermPtr tuple(std::vector<TermPtr> elems);
TermPtr apply(std::string functor, std::vector<TermPtr> args);
TermPtr mapping(TermPtr from, TermPtr to);
TermPtr bkref(std::string name);
TermPtr posref(RulePosition p);

TermPtr atom_true();
TermPtr atom_false();

// Builds the cons chain for a string of single-character atoms.
TermPtr str_list(std::string_view s);
// Builds a proper list from elements.
TermPtr list_of(const std::vector<TermPtr>& elems);
// Flattens a proper ground-spine list; nullopt when the spine is improper
// (ends in a variable or anything that is not nil).
std::optional<std::vector<TermPtr>> list_elems(const TermPtr& t);

bool equal(const TermPtr& a, const TermPtr& b);
bool is_ground(const TermPtr& t);
bool contains_functor(const TermPtr& t, const std::string& functor);

// Substitutions map variable names to terms. std::map keeps printing stable.
using Substitution = std::map<std::string, TermPtr>;

// Unique substitution theta with pattern*theta == subject, if any.
// Subject variables are never bound (subject need not be ground).
std::optional<Substitution> match(const TermPtr& pattern, const TermPtr& subject);
// Extends subst in place; rolls back nothing on failure (caller discards).
bool match_into(const TermPtr& pattern, const TermPtr& subject, Substitution& subst);

TermPtr substitute(const TermPtr& t, const Substitution& subst);

void collect_vars(const TermPtr& t, std::vector<std::string>& out);

std::string print_term(const TermPtr& t);

}  // namespace rf
