#pragma once

#include <stdexcept>
#include <string>

#include "ruleforge/rule.hpp"
#include "ruleforge/term.hpp"

namespace rf {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Term syntax: variables capitalized, atoms lowercase, integers, lists
// [a,b|T], strings "abc" (cons chains of single-char atoms), tuples {a,b},
// applications f(a,b), mappings a=>b, background references &name.
TermPtr parse_term(const std::string& src);

// Template terms additionally treat position-shaped identifiers (L, G, Rt,
// L1, Rt1.2, ...) as position references resolved against the input rule.
TermPtr parse_template(const std::string& src);

// lhs [when g1, g2] -> [item,]* rhs      items "p = e" are body equations
Rule parse_rule(const std::string& src);

RulePosition parse_position(const std::string& src);

}  // namespace rf
