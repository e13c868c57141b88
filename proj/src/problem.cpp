#include "ruleforge/problem.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace rf {

namespace {

void vocab_term(const TermPtr& t, std::set<std::string>& functors, std::set<std::string>& consts,
                std::set<std::string>& vars) {
  switch (t->kind) {
    case TermKind::Variable:
      vars.insert(t->sym);
      return;
    case TermKind::Atom:
      consts.insert(t->sym);
      return;
    case TermKind::Integer:
      consts.insert("int:" + std::to_string(t->ival));
      return;
    case TermKind::Nil:
      consts.insert("[]");
      return;
    case TermKind::BKRef:
      functors.insert(t->sym);
      return;
    case TermKind::PosRef:
      return;  // resolves to rule material, carries no vocabulary
    case TermKind::Cons:
      functors.insert("[|]");
      break;
    case TermKind::Tuple:
      functors.insert("{}");
      break;
    case TermKind::Apply:
      functors.insert(t->sym);
      break;
    case TermKind::Mapping:
      functors.insert("=>");
      break;
  }
  for (const auto& a : t->args) vocab_term(a, functors, consts, vars);
}

void vocab_rule(const Rule& r, std::set<std::string>& f, std::set<std::string>& c,
                std::set<std::string>& v) {
  vocab_term(r.lhs, f, c, v);
  for (const auto& g : r.guards) vocab_term(g, f, c, v);
  for (const auto& b : r.body) vocab_term(b, f, c, v);
  vocab_term(r.rhs, f, c, v);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// Splits "kind(argtext)" and returns argtext for the expected kind.
std::string call_args(const std::string& s, const std::string& kind, const std::string& where) {
  std::string t = trim(s);
  if (t.rfind(kind, 0) != 0) throw ParseError(where + ": expected " + kind + "(...)");
  t = trim(t.substr(kind.size()));
  if (t.empty() || t.front() != '(' || t.back() != ')')
    throw ParseError(where + ": expected " + kind + "(...)");
  return t.substr(1, t.size() - 2);
}

// First top-level comma split.
std::pair<std::string, std::string> split_top_comma(const std::string& s,
                                                    const std::string& where) {
  int depth = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) return {trim(s.substr(0, i)), trim(s.substr(i + 1))};
  }
  throw ParseError(where + ": expected two arguments");
}

void validate_bkrefs(const TermPtr& t, const std::string& where) {
  if (t->kind == TermKind::BKRef && !BKRegistry::builtin().find(t->sym))
    throw ParseError(where + ": unknown background function '&" + t->sym + "'");
  for (const auto& a : t->args) validate_bkrefs(a, where);
}

}  // namespace

Signature compute_signature(const std::vector<Rule>& e_pos, const std::vector<Rule>& e_neg,
                            const std::vector<Rule>& k,
                            const std::vector<OperatorDef>& operators) {
  std::set<std::string> f, c, v;
  for (const auto& r : e_pos) vocab_rule(r, f, c, v);
  for (const auto& r : e_neg) vocab_rule(r, f, c, v);
  for (const auto& r : k) vocab_rule(r, f, c, v);
  for (const auto& op : operators)
    if (op.tmpl) vocab_term(op.tmpl, f, c, v);
  Signature sig;
  sig.n_f = static_cast<int>(f.size());
  sig.n_c = static_cast<int>(c.size());
  sig.n_v = static_cast<int>(v.size());
  return sig;
}

Problem parse_problem(const std::string& text, const std::string& origin) {
  Problem p;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  std::set<int> op_ids;

  auto where = [&](int ln) { return origin + ":" + std::to_string(ln); };

  while (std::getline(is, line)) {
    ++lineno;
    std::string s = trim(line);
    size_t hash = s.find('#');
    if (hash != std::string::npos) s = trim(s.substr(0, hash));
    if (s.empty()) continue;
    try {
      if (s.rfind("name:", 0) == 0) {
        p.name = trim(s.substr(5));
      } else if (s.rfind("config", 0) == 0) {
        std::string rest = trim(s.substr(6));
        size_t eq = rest.find('=');
        if (eq == std::string::npos) throw ParseError("config needs key = value");
        std::string key = trim(rest.substr(0, eq));
        std::string val = trim(rest.substr(eq + 1));
        char* end = nullptr;
        double v = std::strtod(val.c_str(), &end);
        if (end == val.c_str() || *end != '\0') throw ParseError("bad config value '" + val + "'");
        p.config[key] = v;
      } else if (s.rfind("pos:", 0) == 0) {
        Rule r = parse_rule(trim(s.substr(4)));
        if (!r.is_example() || !is_ground(r.lhs) || !is_ground(r.rhs))
          throw ParseError("examples must be ground unconditional rules");
        p.e_pos.push_back(std::move(r));
      } else if (s.rfind("neg:", 0) == 0) {
        Rule r = parse_rule(trim(s.substr(4)));
        if (!r.is_example() || !is_ground(r.lhs) || !is_ground(r.rhs))
          throw ParseError("examples must be ground unconditional rules");
        p.e_neg.push_back(std::move(r));
      } else if (s.rfind("bk:", 0) == 0) {
        p.k.push_back(parse_rule(trim(s.substr(3))));
      } else if (s.rfind("op", 0) == 0 && s.size() > 2 &&
                 std::isspace(static_cast<unsigned char>(s[2]))) {
        std::string rest = trim(s.substr(2));
        size_t eq = rest.find('=');
        if (eq == std::string::npos) throw ParseError("operator needs 'op N = form'");
        int id = std::stoi(trim(rest.substr(0, eq)));
        std::string form = trim(rest.substr(eq + 1));
        auto add_op = [&](OperatorDef op) {
          if (!op_ids.insert(op.id).second)
            throw ParseError("duplicate operator id " + std::to_string(op.id));
          if (op.tmpl) validate_bkrefs(op.tmpl, where(lineno));
          p.operators.push_back(std::move(op));
        };
        if (form == "one_step_rew") {
          add_op(one_step_rew(id));
        } else if (form.rfind("replace_each", 0) == 0) {
          std::string args = call_args(form, "replace_each", where(lineno));
          auto [pos_list, tmpl_text] = split_top_comma(args, where(lineno));
          if (pos_list.size() < 2 || pos_list.front() != '[' || pos_list.back() != ']')
            throw ParseError("replace_each expects [pos,...]");
          std::istringstream ps(pos_list.substr(1, pos_list.size() - 2));
          std::string ptok;
          TermPtr tmpl = parse_template(tmpl_text);
          int next_id = id;
          while (std::getline(ps, ptok, ','))
            add_op(meta_replace(next_id++, parse_position(trim(ptok)), tmpl));
        } else if (form.rfind("replace", 0) == 0) {
          std::string args = call_args(form, "replace", where(lineno));
          auto [pos_text, tmpl_text] = split_top_comma(args, where(lineno));
          add_op(meta_replace(id, parse_position(pos_text), parse_template(tmpl_text)));
        } else if (form.rfind("insert", 0) == 0) {
          std::string args = call_args(form, "insert", where(lineno));
          auto [pos_text, tmpl_text] = split_top_comma(args, where(lineno));
          add_op(meta_insert(id, parse_position(pos_text), parse_template(tmpl_text)));
        } else if (form.rfind("delete", 0) == 0) {
          std::string args = call_args(form, "delete", where(lineno));
          add_op(meta_delete(id, parse_position(args)));
        } else {
          throw ParseError("unknown operator form '" + form + "'");
        }
      } else {
        throw ParseError("unrecognised line");
      }
    } catch (const ParseError& e) {
      throw ParseError(where(lineno) + ": " + e.what());
    } catch (const std::exception& e) {
      throw ParseError(where(lineno) + ": " + e.what());
    }
  }
  if (p.e_pos.empty()) throw ParseError(origin + ": problem has no positive examples");
  p.sig = compute_signature(p.e_pos, p.e_neg, p.k, p.operators);
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  Problem p = parse_problem(ss.str(), path);
  if (p.name.empty()) {
    size_t slash = path.find_last_of('/');
    p.name = slash == std::string::npos ? path : path.substr(slash + 1);
  }
  return p;
}

std::string bundled_problem_path(const std::string& filename) {
  return std::string(RULEFORGE_PROBLEM_DIR) + "/" + filename;
}

}  // namespace rf
