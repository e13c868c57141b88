#include "ruleforge/parser.hpp"

#include <cctype>
#include <optional>

namespace rf {

namespace {

bool is_position_token(const std::string& s, RulePosition* out) {
  size_t i = 0;
  PosRoot root;
  if (s.rfind("Rt", 0) == 0) {
    root = PosRoot::Rt;
    i = 2;
  } else if (s[0] == 'L') {
    root = PosRoot::L;
    i = 1;
  } else if (s[0] == 'G') {
    root = PosRoot::G;
    i = 1;
  } else {
    return false;
  }
  std::vector<int> path;
  while (i < s.size()) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    int v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      v = v * 10 + (s[i++] - '0');
    path.push_back(v);
    if (i < s.size()) {
      if (s[i] != '.') return false;
      ++i;
      if (i == s.size()) return false;
    }
  }
  if (out) *out = {root, std::move(path)};
  return true;
}

class Parser {
 public:
  Parser(const std::string& src, bool tmpl) : src_(src), tmpl_(tmpl) {}

  TermPtr term() {
    TermPtr t = primary();
    skip_ws();
    if (peek() == '=' && peek(1) == '>') {
      pos_ += 2;
      TermPtr to = term();
      return mapping(t, to);
    }
    return t;
  }

  Rule rule() {
    Rule r;
    r.lhs = term();
    skip_ws();
    if (match_word("when")) {
      r.guards.push_back(term());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        r.guards.push_back(term());
        skip_ws();
      }
    }
    expect_arrow();
    std::vector<TermPtr> items;
    items.push_back(right_item());
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      items.push_back(right_item());
      skip_ws();
    }
    r.rhs = items.back();
    items.pop_back();
    r.body = std::move(items);
    return r;
  }

  void finish() {
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
  }

 private:
  const std::string& src_;
  bool tmpl_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at column " + std::to_string(pos_ + 1) + " in '" + src_ + "'");
  }

  char peek(size_t k = 0) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool match_word(const std::string& w) {
    skip_ws();
    if (src_.compare(pos_, w.size(), w) != 0) return false;
    char after = pos_ + w.size() < src_.size() ? src_[pos_ + w.size()] : '\0';
    if (std::isalnum(static_cast<unsigned char>(after)) || after == '_') return false;
    pos_ += w.size();
    return true;
  }

  void expect_arrow() {
    skip_ws();
    if (peek() == '-' && peek(1) == '>') {
      pos_ += 2;
      return;
    }
    fail("expected '->'");
  }

  TermPtr right_item() {
    TermPtr t = term();
    skip_ws();
    if (peek() == '=' && peek(1) != '>') {
      ++pos_;
      TermPtr rhs = term();
      return apply("=", {t, rhs});
    }
    return t;
  }

  std::string ident() {
    size_t start = pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      bool dotted = c == '.' && pos_ + 1 < src_.size() &&
                    std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]));
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || (tmpl_ && dotted))
        ++pos_;
      else
        break;
    }
    return src_.substr(start, pos_ - start);
  }

  TermPtr primary() {
    skip_ws();
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      if (c == '-') ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected digit");
      long long v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (src_[pos_++] - '0');
      if (src_[start] == '-') v = -v;
      return integer(v);
    }
    if (c == '"') {
      ++pos_;
      size_t start = pos_;
      while (peek() != '"') {
        if (peek() == '\0') fail("unterminated string");
        char ch = src_[pos_];
        if (!(ch >= 'a' && ch <= 'z')) fail("strings hold lowercase letters only");
        ++pos_;
      }
      std::string s = src_.substr(start, pos_ - start);
      ++pos_;
      return str_list(s);
    }
    if (c == '[') {
      ++pos_;
      skip_ws();
      if (peek() == ']') {
        ++pos_;
        return nil();
      }
      std::vector<TermPtr> elems;
      elems.push_back(term());
      skip_ws();
      while (peek() == ',') {
        ++pos_;
        elems.push_back(term());
        skip_ws();
      }
      TermPtr tail = nil();
      if (peek() == '|') {
        ++pos_;
        tail = term();
        skip_ws();
      }
      if (peek() != ']') fail("expected ']'");
      ++pos_;
      TermPtr t = tail;
      for (auto it = elems.rbegin(); it != elems.rend(); ++it) t = cons(*it, t);
      return t;
    }
    if (c == '{') {
      ++pos_;
      skip_ws();
      std::vector<TermPtr> elems;
      if (peek() != '}') {
        elems.push_back(term());
        skip_ws();
        while (peek() == ',') {
          ++pos_;
          elems.push_back(term());
          skip_ws();
        }
      }
      if (peek() != '}') fail("expected '}'");
      ++pos_;
      return tuple(std::move(elems));
    }
    if (c == '&') {
      ++pos_;
      std::string name = ident();
      if (name.empty()) fail("expected name after '&'");
      return bkref(name);
    }
    if (c == '(') {
      ++pos_;
      TermPtr t = term();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = ident();
      skip_ws();
      if (peek() == '(') {
        ++pos_;
        std::vector<TermPtr> as;
        skip_ws();
        if (peek() == ')') fail("applications take at least one argument");
        as.push_back(term());
        skip_ws();
        while (peek() == ',') {
          ++pos_;
          as.push_back(term());
          skip_ws();
        }
        if (peek() != ')') fail("expected ')'");
        ++pos_;
        return apply(name, std::move(as));
      }
      RulePosition p;
      if (tmpl_ && is_position_token(name, &p)) return posref(p);
      if (std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_')
        return var(name);
      return atom(name);
    }
    fail("unexpected character");
  }
};

}  // namespace

TermPtr parse_term(const std::string& src) {
  Parser p(src, false);
  TermPtr t = p.term();
  p.finish();
  return t;
}

TermPtr parse_template(const std::string& src) {
  Parser p(src, true);
  TermPtr t = p.term();
  p.finish();
  return t;
}

Rule parse_rule(const std::string& src) {
  Parser p(src, false);
  Rule r = p.rule();
  p.finish();
  return r;
}

RulePosition parse_position(const std::string& src) {
  RulePosition p;
  std::string s = src;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  s = s.substr(i);
  if (!is_position_token(s, &p)) throw ParseError("bad position '" + src + "'");
  return p;
}

}  // namespace rf
