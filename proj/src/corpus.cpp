#include "ruleforge/corpus.hpp"

#include <algorithm>
#include <sstream>

namespace rf {

// ---- letter series ----------------------------------------------------------

std::vector<Rule> decompose_series(const Rule& example) {
  if (example.lhs->kind != TermKind::Apply || example.lhs->args.size() != 1)
    throw ParseError("decompose_series: lhs must be a unary application of the series");
  auto elems = list_elems(example.lhs->args[0]);
  if (!elems || elems->size() < 3)
    throw ParseError("decompose_series: series shorter than 3");
  const std::string functor = example.lhs->sym;
  std::vector<Rule> out;
  for (size_t k = 2; k <= elems->size(); ++k) {
    std::vector<TermPtr> prefix(elems->begin(), elems->begin() + k);
    Rule r;
    r.lhs = apply(functor, {list_of(prefix)});
    r.rhs = k < elems->size() ? (*elems)[k] : example.rhs;
    out.push_back(std::move(r));
  }
  return out;
}

const std::vector<SeriesFixture>& series_fixtures() {
  static const std::vector<SeriesFixture> fx = {
      {1, "cdcdcdcd", 'c', 2, {}, {"thurstone(V) -> last(init(V))"}},
      {2, "aaabbbcccdd", 'd', 3, {}, {"thurstone(V) -> next(last(init(init(V))))"}},
      {3, "atbataatbat", 'a', 6, {},
       {"thurstone(V) -> last(init(init(init(init(init(V))))))"}},
      {4, "abmcdmefmghm", 'i', 2, {},
       {"thurstone(V) when eq(mod(length(V),3),2) -> m",
        "thurstone(V) when eq(mod(length(V),3),0) -> next(last(init(V)))",
        "thurstone(V) -> next(last(V))"}},
      {5, "defgefghfghi", 'g', 4, {},
       {"thurstone(V) -> next(last(init(init(init(V)))))"}},
      {6, "qxapxbqxa", 'p', 6, {},
       {"thurstone(V) -> last(init(init(init(init(init(V))))))"}},
      {8, "mabmbcmcdm", 'd', 3, {},
       {"thurstone(V) when eq(mod(length(V),3),0) -> last(init(init(V)))",
        "thurstone(V) -> next(last(init(init(V))))"}},
      {9, "urtustuttu", 'u', 3, {},
       {"thurstone(V) when eq(mod(length(V),3),1) -> next(last(init(init(V))))",
        "thurstone(V) -> last(init(init(V)))"}},
      {10, "abyabxabwab", 'v', 3, {},
       {"thurstone(V) when eq(mod(length(V),3),2) -> previous(last(init(init(V))))",
        "thurstone(V) -> last(init(init(V)))"}},
      {11, "rscdstdetuef", 'u', 4, {},
       {"thurstone(V) -> next(last(init(init(init(V)))))"}},
      {12, "npaoqapraqsa", 'r', 2, {},
       {"thurstone(V) when eq(mod(length(V),3),2) -> a",
        "thurstone(V) -> next(last(init(init(V))))"}},
      {13, "wxaxybyzczadab", 'e', 3, {10, 12},  // the series wraps z->a at 10 and 12
       {"thurstone(V) -> next(last(init(init(V))))"}},
      {14, "jkqrklrslmst", 'm', 4, {},
       {"thurstone(V) -> next(last(init(init(init(V)))))"}},
      {15, "pononmnmlmlk", 'l', 3, {},
       {"thurstone(V) -> previous(last(init(init(V))))"}},
  };
  return fx;
}

std::vector<Rule> series_solution(const SeriesFixture& fx) {
  std::vector<Rule> out;
  for (const auto& text : fx.solution) out.push_back(parse_rule(text));
  return out;
}

namespace {

std::vector<OperatorDef> series_operators(bool with_guards) {
  std::vector<OperatorDef> ops;
  int id = 1;
  ops.push_back(meta_replace(id++, parse_position("L1"), parse_template("VString")));
  for (const char* fn : {"init", "last", "head", "tail"})
    ops.push_back(meta_replace(id++, parse_position("Rt1"),
                               parse_template(std::string(fn) + "(L1)")));
  for (const char* fn : {"init", "last", "head", "tail", "next", "previous"})
    ops.push_back(meta_replace(id++, parse_position("Rt1"),
                               parse_template(std::string(fn) + "(Rt1)")));
  ops.push_back(one_step_rew(id++));
  if (with_guards) {
    ops.push_back(meta_insert(id++, parse_position("G1"), parse_template("position(L1,2)")));
    ops.push_back(meta_insert(id++, parse_position("G1"), parse_template("position(L1,3)")));
    ops.push_back(meta_insert(id++, parse_position("G1"), parse_template("notposition(L1,2)")));
    ops.push_back(meta_insert(id++, parse_position("G1"), parse_template("notposition(L1,3)")));
    ops.push_back(meta_insert(id++, parse_position("G1"), parse_template("notposition(L1,4)")));
    ops.push_back(meta_delete(id++, parse_position("G1")));
  }
  return ops;
}

}  // namespace

Problem series_problem(const SeriesFixture& fx) {
  Problem p;
  p.name = "thurstone" + std::string(fx.id < 10 ? "0" : "") + std::to_string(fx.id);
  Rule full;
  full.lhs = apply("thurstone", {str_list(fx.series)});
  full.rhs = atom(std::string(1, fx.answer));
  std::vector<Rule> all = decompose_series(full);
  for (size_t k = 2; k <= fx.series.size(); ++k) {
    if (static_cast<int>(k) < fx.k_min) continue;
    if (std::find(fx.holes.begin(), fx.holes.end(), static_cast<int>(k)) != fx.holes.end())
      continue;
    p.e_pos.push_back(all[k - 2]);
  }
  bool guarded = fx.solution.size() > 1;
  p.operators = series_operators(guarded);
  p.config["epsilon"] = 0;
  p.config["stop_on_complete"] = 1;
  p.config["max_steps"] = 2000;
  p.sig = compute_signature(p.e_pos, p.e_neg, p.k, p.operators);
  return p;
}

// ---- odd one out -------------------------------------------------------------

const std::vector<OddOneOutItem>& odd_one_out_items() {
  static const std::vector<OddOneOutItem> items = {
      {{"aaa", "aaa", "abb"}, 3},          {{"aaa", "aaa", "bcd"}, 3},
      {{"aaa", "aab", "aac"}, 1},          {{"aaa", "abb", "abb"}, 1},
      {{"aaa", "bbb", "abc"}, 3},          {{"aaa", "bcd", "efg"}, 1},
      {{"aaa", "bbc", "ccb"}, 1},          {{"aab", "aab", "abc"}, 3},
      {{"aab", "aac", "def"}, 3},          {{"aab", "abb", "efg"}, 3},
      {{"abc", "abc", "abd"}, 3},          {{"aab", "abb", "abc"}, 3},
      {{"abc", "ade", "fgh"}, 3},          {{"aaaa", "bbde", "ccfg"}, 1},
      {{"aaaa", "aabb", "aacc"}, 1},       {{"aaad", "bbef", "ccgh"}, 1},
      {{"aabb", "aabb", "abcd"}, 3},       {{"aabc", "aacd", "abcd"}, 1},
      {{"aaab", "bbbd", "ccce"}, 3},       {{"abcd", "abcd", "abce"}, 3},
      {{"abcd", "abce", "abfg"}, 3},       {{"aabc", "bbac", "ccaf"}, 3},
      {{"abcd", "aefg", "hijk"}, 3},       {{"aaaa", "aaaa", "bbbb", "bbbb", "cccc"}, 5},
      {{"aaad", "aaae", "bbbf", "bbbg", "ccch"}, 5},
      {{"aabb", "bbcc", "aadd", "ddcc", "eeff"}, 5},
      {{"aaef", "bbgh", "ccij", "ddkl", "abcd"}, 5},
      {{"aaae", "bbbf", "ccgh", "ddij", "abcd"}, 5},
      {{"aaae", "bbbf", "ccgh", "ddij", "aabb"}, 5},
      {{"aaab", "bbbf", "ccgh", "ddij", "aabb"}, 5},
      {{"aabb", "bbcc", "aadd", "ddcc", "aaee"}, 5},
      {{"abcd", "bcde", "cdef", "defg", "fgab"}, 5},
      {{"acde", "afgh", "bijk", "blmn", "opqr"}, 5},
      {{"abef", "abgh", "cdeg", "cdfh", "abcd"}, 5},
      {{"acde", "afgh", "bijk", "blmn", "abop"}, 5},
  };
  return items;
}

Rule ooo_hamming_rule() {
  return parse_rule("ooo(VLists) -> distinct(map(&hamming, VLists))");
}

Rule ooo_diffobj_rule() {
  return parse_rule("ooo(VLists) -> distinct(map(&diffObj, VLists))");
}

Problem odd_one_out_problem() {
  Problem p;
  p.name = "ooo";
  for (const auto& item : odd_one_out_items()) {
    std::vector<TermPtr> lists;
    for (const auto& s : item.items) lists.push_back(str_list(s));
    Rule r;
    r.lhs = apply("ooo", {list_of(lists)});
    r.rhs = integer(item.solution);
    p.e_pos.push_back(std::move(r));
  }
  int id = 1;
  p.operators.push_back(
      meta_replace(id++, parse_position("Rt1"), parse_template("map(F, L1)")));
  p.operators.push_back(meta_replace(id++, parse_position("Rt1.1"), parse_template("&hamming")));
  p.operators.push_back(meta_replace(id++, parse_position("Rt1.1"), parse_template("&diffObj")));
  p.operators.push_back(meta_replace(id++, parse_position("Rt"), parse_template("distinct(Rt)")));
  for (const char* pos : {"L1", "Rt1.2", "Rt1.1.2"})
    p.operators.push_back(meta_replace(id++, parse_position(pos), parse_template("VLists")));
  p.operators.push_back(one_step_rew(id++));
  p.config["epsilon"] = 0;
  p.config["stop_on_complete"] = 0;
  p.sig = compute_signature(p.e_pos, p.e_neg, p.k, p.operators);
  return p;
}

// ---- Raven matrices -----------------------------------------------------------

TermPtr cell_term(const RavenCell& cell) {
  std::vector<TermPtr> figs;
  for (const auto& f : cell) {
    if (f.quantity->kind == TermKind::Integer && f.quantity->ival < 1)
      throw ParseError("raven figure quantity must be >= 1");
    figs.push_back(tuple({f.shape, f.size, f.quantity, f.position, f.type}));
  }
  return list_of(figs);
}

namespace {

TermPtr simple_cell(const std::string& shape, const std::string& type) {
  return list_of({tuple({atom(shape), atom("big"), integer(1), atom("none"), atom(type)})});
}

Rule raven_example(const std::vector<TermPtr>& rows_so_far, const TermPtr& next_cell) {
  Rule r;
  r.lhs = apply("raven", {list_of(rows_so_far)});
  r.rhs = next_cell;
  return r;
}

}  // namespace

RavenDecomposition decompose_matrix(const RavenGrid& grid,
                                    const std::vector<TermPtr>& candidates) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      bool gap = i == 2 && j == 2;
      if (gap == (grid.cells[i][j] != nullptr))
        throw ParseError("decompose_matrix: malformed grid (gap must be bottom-right)");
    }
  if (candidates.size() != 8) throw ParseError("decompose_matrix: expected 8 candidates");

  auto row = [&](int i) {
    return std::vector<TermPtr>{grid.cells[i][0], grid.cells[i][1], grid.cells[i][2]};
  };
  auto col = [&](int j) {
    return std::vector<TermPtr>{grid.cells[0][j], grid.cells[1][j], grid.cells[2][j]};
  };

  RavenDecomposition out;
  auto add_pair = [&](const std::vector<TermPtr>& complete, const std::vector<TermPtr>& partial) {
    std::vector<TermPtr> rows{list_of(complete),
                              list_of({partial[0], partial[1]})};
    out.train.push_back(raven_example(rows, partial[2]));
  };
  add_pair(row(0), row(1));
  add_pair(row(1), row(0));
  add_pair(col(0), col(1));
  add_pair(col(1), col(0));

  std::vector<TermPtr> row_test{list_of(row(0)), list_of(row(1)),
                                list_of({grid.cells[2][0], grid.cells[2][1]})};
  std::vector<TermPtr> col_test{list_of(col(0)), list_of(col(1)),
                                list_of({grid.cells[0][2], grid.cells[1][2]})};
  for (const auto& cand : candidates) {
    std::vector<Rule> per;
    per.push_back(raven_example(row_test, cand));
    per.push_back(raven_example(col_test, cand));
    out.tests.push_back(std::move(per));
  }
  return out;
}

RavenGrid demo_matrix() {
  RavenGrid g;
  const char* shapes[3][3] = {{"square", "diamond", "circle"},
                              {"diamond", "circle", "square"},
                              {"circle", "square", nullptr}};
  const char* types[3][3] = {{"black", "white", "striped"},
                             {"striped", "black", "white"},
                             {"white", "striped", nullptr}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (shapes[i][j]) g.cells[i][j] = simple_cell(shapes[i][j], types[i][j]);
  return g;
}

std::vector<TermPtr> demo_candidates() {
  // the gap completes both distributions with diamond/black; no. 8 is correct
  return {simple_cell("square", "black"),   simple_cell("circle", "black"),
          simple_cell("diamond", "white"),  simple_cell("square", "striped"),
          simple_cell("circle", "striped"), simple_cell("diamond", "striped"),
          simple_cell("square", "white"),   simple_cell("diamond", "black")};
}

int demo_correct_candidate() { return 8; }

std::vector<OperatorDef> raven_operators() {
  std::vector<OperatorDef> ops;
  int id = 1;
  const char* rels[5] = {"identity", "distrib3val", "progressive", "addition", "distrib2val"};
  const char* atts[5] = {"shape", "size", "quantity", "position", "type"};
  for (const char* rel : rels)
    for (int k = 0; k < 5; ++k) {
      RulePosition pos = parse_position("Rt1.1." + std::to_string(k + 1));
      ops.push_back(meta_replace(id++, pos,
                                 parse_template(std::string(rel) + "(" + atts[k] + ", L1)")));
    }
  ops.push_back(meta_replace(id++, parse_position("L1"), parse_template("VMatrix")));
  ops.push_back(one_step_rew(id++));
  return ops;
}

Problem raven_demo_problem() {
  Problem p;
  p.name = "raven_demo";
  p.e_pos = decompose_matrix(demo_matrix(), demo_candidates()).train;
  p.operators = raven_operators();
  p.config["epsilon"] = 0;
  p.config["stop_on_complete"] = 1;
  p.config["max_steps"] = 2000;
  p.sig = compute_signature(p.e_pos, p.e_neg, p.k, p.operators);
  return p;
}

std::vector<Rule> raven_demo_solution() {
  return {parse_rule(
      "raven(V) -> [{distrib3val(shape,V), big, 1, none, distrib3val(type,V)}]")};
}

const std::vector<RavenTableRow>& raven_table_rows() {
  using R = RavenRel;
  auto row = [](int id, R shape, R size, R qty, R pos, R type) {
    return RavenTableRow{id, {shape, size, qty, pos, type}};
  };
  static const std::vector<RavenTableRow> rows = {
      row(25, R::Identity, R::None, R::None, R::None, R::None),
      row(26, R::Identity, R::Progressive, R::None, R::None, R::None),
      row(27, R::Identity, R::Progressive, R::None, R::None, R::None),
      row(28, R::Identity, R::Progressive, R::None, R::None, R::None),
      row(29, R::Identity, R::None, R::Progressive, R::Progressive, R::None),
      row(30, R::Identity, R::Progressive, R::None, R::None, R::None),
      row(31, R::Identity, R::None, R::None, R::Progressive, R::None),
      row(32, R::Identity, R::None, R::Progressive, R::None, R::None),
      row(33, R::Identity, R::None, R::None, R::Progressive, R::None),
      row(34, R::Identity, R::None, R::None, R::Progressive, R::None),
      row(35, R::Identity, R::None, R::Progressive, R::None, R::None),
      row(36, R::Identity, R::None, R::None, R::Progressive, R::None),
      row(37, R::Identity, R::None, R::None, R::None, R::Identity),
      row(38, R::Distrib3, R::None, R::None, R::None, R::None),
      row(39, R::Distrib3, R::None, R::None, R::None, R::None),
      row(40, R::Identity, R::None, R::None, R::None, R::Distrib3),
      row(41, R::Identity, R::None, R::None, R::None, R::Distrib3),
      row(42, R::Identity, R::None, R::None, R::None, R::Distrib3),
      row(43, R::Distrib3, R::None, R::None, R::None, R::Distrib3),
      row(44, R::Distrib3, R::None, R::None, R::None, R::Distrib3),
      row(45, R::Distrib3, R::None, R::None, R::None, R::Distrib3),
      row(46, R::Identity, R::None, R::None, R::None, R::Distrib3),
      row(47, R::Identity, R::None, R::Distrib3, R::None, R::Distrib3),
      row(48, R::Distrib3, R::None, R::None, R::None, R::Distrib3),
      row(49, R::Addition, R::None, R::None, R::None, R::None),
      row(50, R::Addition, R::None, R::None, R::None, R::None),
      row(51, R::Addition, R::None, R::None, R::None, R::Identity),
      row(52, R::Distrib2, R::None, R::None, R::None, R::None),
      row(53, R::Distrib2, R::None, R::None, R::None, R::None),
      row(54, R::Distrib2, R::None, R::None, R::None, R::None),
      row(55, R::Distrib2, R::None, R::None, R::None, R::None),
      row(56, R::Distrib2, R::None, R::None, R::None, R::None),
      row(57, R::Distrib2, R::None, R::None, R::None, R::Distrib3),
      row(58, R::Distrib2, R::None, R::None, R::None, R::None),
      row(59, R::Distrib2, R::None, R::None, R::None, R::None),
  };
  return rows;
}

namespace {

// Per-attribute value grids consistent with one relation, both row- and
// column-wise where the relation allows it.
std::array<std::array<TermPtr, 3>, 3> attr_grid(RavenRel rel, int att) {
  std::array<std::array<TermPtr, 3>, 3> v;
  auto fill = [&](auto f) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v[i][j] = f(i, j);
  };
  const std::vector<std::string> atoms =
      att == 0 ? std::vector<std::string>{"square", "diamond", "circle"}
               : std::vector<std::string>{"black", "white", "striped"};
  switch (rel) {
    case RavenRel::None:
      fill([&](int, int) { return atom("none"); });
      break;
    case RavenRel::Identity:
      // constant everywhere keeps rows and columns constant
      fill([&](int, int) {
        return att == 0 || att == 4 ? atom(atoms[0]) : TermPtr(integer(att == 3 ? 0 : 1));
      });
      break;
    case RavenRel::Distrib3:
      fill([&](int i, int j) {
        int k = (i + j) % 3;  // latin square
        return att == 0 || att == 4 ? atom(atoms[k])
                                    : TermPtr(integer(att == 3 ? 45 * k : k + 1));
      });
      break;
    case RavenRel::Progressive: {
      long long step = att == 3 ? 45 : 1;
      long long base = att == 3 ? 0 : 1;
      fill([&](int i, int j) { return integer(base + step * (i + j)); });
      break;
    }
    case RavenRel::Addition:
      // v3 = v1 (+) v2 with none as the empty figure, row-wise
      fill([&](int i, int j) {
        const char* rows[3][3] = {{"square", "none", "square"},
                                  {"none", "diamond", "diamond"},
                                  {"circle", "circle", "circle"}};
        return atom(rows[i][j]);
      });
      break;
    case RavenRel::Distrib2:
      // v3 = v1 xor v2, row-wise
      fill([&](int i, int j) {
        const char* rows[3][3] = {{"square", "square", "none"},
                                  {"diamond", "none", "diamond"},
                                  {"none", "circle", "circle"}};
        return atom(rows[i][j]);
      });
      break;
  }
  return v;
}

}  // namespace

RavenTableFixture raven_table_fixture(const RavenTableRow& row) {
  std::array<std::array<std::array<TermPtr, 3>, 3>, 5> values;
  for (int att = 0; att < 5; ++att) values[att] = attr_grid(row.rels[att], att);

  auto make_cell = [&](int i, int j) {
    return list_of({tuple({values[0][i][j], values[1][i][j], values[2][i][j], values[3][i][j],
                           values[4][i][j]})});
  };
  RavenTableFixture fx;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(i == 2 && j == 2)) fx.grid.cells[i][j] = make_cell(i, j);
  TermPtr correct = make_cell(2, 2);

  // distractors perturb one attribute value at a time
  std::vector<TermPtr> alts = {atom("cross"),  atom("dotted"), integer(9),
                               atom("star"),   integer(7),     atom("hatched"),
                               atom("hexagon")};
  fx.candidates.clear();
  TermPtr correct_fig = tuple({values[0][2][2], values[1][2][2], values[2][2][2],
                               values[3][2][2], values[4][2][2]});
  for (int m = 0; m < 7; ++m) {
    auto fig = std::make_shared<Term>(*correct_fig);
    fig->args[m % 5] = alts[m];
    fx.candidates.push_back(
        list_of({std::const_pointer_cast<const Term>(std::shared_ptr<Term>(std::move(fig)))}));
  }
  fx.candidates.push_back(correct);
  fx.correct = 8;

  // solution tuple: relation calls where constrained, literal none elsewhere
  const char* rel_name[6] = {"",          "identity", "distrib3val",
                             "progressive", "addition", "distrib2val"};
  const char* atts[5] = {"shape", "size", "quantity", "position", "type"};
  std::string tuple_text = "{";
  for (int att = 0; att < 5; ++att) {
    if (att) tuple_text += ", ";
    if (row.rels[att] == RavenRel::None)
      tuple_text += "none";
    else
      tuple_text += std::string(rel_name[static_cast<int>(row.rels[att])]) + "(" + atts[att] +
                    ", V)";
  }
  tuple_text += "}";
  fx.solution = {parse_rule("raven(V) -> [" + tuple_text + "]")};
  return fx;
}

// ---- list transformation suite ---------------------------------------------------

const std::vector<std::string>& transform_word_list() {
  static const std::vector<std::string> words = {
      "trade", "blade", "bride", "glide", "grade", "shade", "spade", "guide",
      "pride", "crude", "drape", "flame", "grape", "house", "juice", "knife",
      "mouse", "noise", "ounce", "phone", "plane", "prize", "quote", "shine",
      "slope", "smile", "stone", "table", "voice", "whale", "band",  "bend",
      "bind",  "bond",  "fund",  "gold",  "hand",  "land",  "mend",  "sand"};
  return words;
}

std::string transform_kind_name(TransformKind k) {
  switch (k) {
    case TransformKind::DToC: return "d_to_c";
    case TransformKind::EToIng: return "e_to_ing";
    case TransformKind::DToPez: return "d_to_pez";
    case TransformKind::PrefixOver: return "prefix_over";
    case TransformKind::SuffixMark: return "suffix_mark";
  }
  return "";
}

std::optional<TransformKind> transform_kind_from_name(const std::string& name) {
  for (TransformKind k : {TransformKind::DToC, TransformKind::EToIng, TransformKind::DToPez,
                          TransformKind::PrefixOver, TransformKind::SuffixMark})
    if (transform_kind_name(k) == name) return k;
  return std::nullopt;
}

namespace {

std::optional<std::string> transform_word(TransformKind kind, const std::string& w) {
  auto count = [&](char c) { return std::count(w.begin(), w.end(), c); };
  switch (kind) {
    case TransformKind::DToC: {
      if (count('d') < 1) return std::nullopt;
      std::string out = w;
      std::replace(out.begin(), out.end(), 'd', 'c');
      return out;
    }
    case TransformKind::EToIng: {
      if (count('e') != 1 || w.back() != 'e') return std::nullopt;
      return w.substr(0, w.size() - 1) + "ing";
    }
    case TransformKind::DToPez: {
      if (count('d') != 1) return std::nullopt;
      std::string out;
      for (char c : w) out += c == 'd' ? std::string("pez") : std::string(1, c);
      return out;
    }
    case TransformKind::PrefixOver:
      return "over" + w;
    case TransformKind::SuffixMark:
      return w + "mark";
  }
  return std::nullopt;
}

}  // namespace

std::vector<Rule> gen_transform_suite(TransformKind kind, int count) {
  if (count < 1) throw ParseError("gen_transform_suite: count must be >= 1");
  std::vector<Rule> out;
  for (const auto& w : transform_word_list()) {
    if (static_cast<int>(out.size()) >= count) break;
    auto t = transform_word(kind, w);
    if (!t) continue;
    Rule r;
    r.lhs = apply("trans", {str_list(w)});
    r.rhs = str_list(*t);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<OperatorDef> transform_operators(const std::vector<int>& op_order) {
  struct Form {
    OpKind kind;
    const char* pos;
    const char* tmpl;
  };
  static const std::vector<Form> forms = {
      {OpKind::Replace, "Rt1", "oneSust(L1, Rt1)"},
      {OpKind::Replace, "Rt1", "nSust(L1, Rt1)"},
      {OpKind::Replace, "Rt1", "addPrefix(L1, Rt1)"},
      {OpKind::Replace, "Rt1", "addSuffix(L1, Rt1)"},
      {OpKind::OneStepRew, "", ""},
      {OpKind::Replace, "L1", "VList"},
      {OpKind::Replace, "Rt1", "VList"},
      {OpKind::Replace, "Rt1.1", "VList"},
      {OpKind::Replace, "Rt1.2", "VList"},
      {OpKind::Replace, "Rt1", "head(L1)"},
      {OpKind::Replace, "Rt1", "tail(L1)"},
      {OpKind::Replace, "Rt1", "init(L1)"},
      {OpKind::Replace, "Rt1", "last(L1)"},
      {OpKind::Replace, "Rt1", "L1.1"},
      {OpKind::Replace, "Rt1", "L1.2"},
      {OpKind::Replace, "L1.1", "VHead"},
      {OpKind::Replace, "L1.2", "VTail"},
      {OpKind::Insert, "G1", "position(L1, 2)"},
      {OpKind::Insert, "G1", "position(L1, 3)"},
      {OpKind::Delete, "G1", ""},
  };
  std::vector<int> order = op_order;
  if (order.empty()) {
    order.resize(forms.size());
    for (size_t i = 0; i < forms.size(); ++i) order[i] = static_cast<int>(i) + 1;
  }
  if (order.size() != forms.size())
    throw ParseError("transform_operators: order must cover all 20 forms");
  std::vector<OperatorDef> ops;
  for (size_t i = 0; i < forms.size(); ++i) {
    const Form& f = forms[i];
    int id = order[i];
    switch (f.kind) {
      case OpKind::Replace:
        ops.push_back(meta_replace(id, parse_position(f.pos), parse_template(f.tmpl)));
        break;
      case OpKind::Insert:
        ops.push_back(meta_insert(id, parse_position(f.pos), parse_template(f.tmpl)));
        break;
      case OpKind::Delete:
        ops.push_back(meta_delete(id, parse_position(f.pos)));
        break;
      case OpKind::OneStepRew:
        ops.push_back(one_step_rew(id));
        break;
    }
  }
  return ops;
}

Problem transform_problem(TransformKind kind, const std::vector<int>& instance_indices,
                          const std::vector<int>& op_order) {
  Problem p;
  p.name = transform_kind_name(kind);
  std::vector<Rule> all = gen_transform_suite(kind, 20);
  if (instance_indices.empty()) {
    p.e_pos = all;
  } else {
    for (int i : instance_indices) {
      if (i < 0 || i >= static_cast<int>(all.size()))
        throw ParseError("transform_problem: instance index out of range");
      p.e_pos.push_back(all[i]);
    }
  }
  p.operators = transform_operators(op_order);
  p.config["epsilon"] = 0;
  p.config["stop_on_complete"] = 1;
  p.config["max_steps"] = 400;
  p.sig = compute_signature(p.e_pos, p.e_neg, p.k, p.operators);
  return p;
}

Rule transform_solution(TransformKind kind) {
  switch (kind) {
    case TransformKind::DToC:
      return parse_rule("trans(VList) -> map(d=>c, VList)");
    case TransformKind::EToIng:
      return parse_rule("trans(VList) -> map(e=>\"ing\", VList)");
    case TransformKind::DToPez:
      return parse_rule("trans(VList) -> map(d=>\"pez\", VList)");
    case TransformKind::PrefixOver:
      return parse_rule("trans(VList) -> append(\"over\", VList)");
    case TransformKind::SuffixMark:
      return parse_rule("trans(VList) -> append(VList, \"mark\")");
  }
  throw ParseError("unknown transform kind");
}

// ---- last element ---------------------------------------------------------------

Problem last_problem() {
  Problem p;
  p.name = "last";
  const char* pos[] = {"last([c]) -> c",         "last([d]) -> d",
                       "last([l]) -> l",         "last([a,b,c]) -> c",
                       "last([t,b,n,a,b]) -> b", "last([h,h,t,a,l]) -> l",
                       "last([a,c,b]) -> b",     "last([a,b,a,c]) -> c"};
  const char* neg[] = {"last([c]) -> b", "last([b]) -> l", "last([l]) -> c",
                       "last([a,b,c]) -> a", "last([t,b,n,a,b]) -> t"};
  for (const char* s : pos) p.e_pos.push_back(parse_rule(s));
  for (const char* s : neg) p.e_neg.push_back(parse_rule(s));
  int id = 1;
  p.operators.push_back(meta_replace(id++, parse_position("Rt1"), parse_template("last(L1.1)")));
  p.operators.push_back(meta_replace(id++, parse_position("Rt1"), parse_template("last(L1.2)")));
  p.operators.push_back(meta_replace(id++, parse_position("Rt1"), parse_template("L1.1")));
  p.operators.push_back(meta_replace(id++, parse_position("Rt1"), parse_template("L1.2")));
  p.operators.push_back(meta_replace(id++, parse_position("L1.1"), parse_template("VHead")));
  p.operators.push_back(meta_replace(id++, parse_position("L1.2"), parse_template("VTail")));
  p.operators.push_back(one_step_rew(id++));
  p.config["epsilon"] = 0;
  p.config["stop_on_complete"] = 1;
  p.config["max_steps"] = 2000;
  p.sig = compute_signature(p.e_pos, p.e_neg, p.k, p.operators);
  return p;
}

std::vector<Rule> last_solution() {
  return {parse_rule("last([VHead]) -> VHead"),
          parse_rule("last([VHead|VTail]) -> last(VTail)")};
}

// ---- serialisation ----------------------------------------------------------------

std::string problem_to_text(const Problem& p) {
  std::ostringstream os;
  os << "name: " << p.name << "\n";
  for (const auto& [k, v] : p.config) {
    os << "config " << k << " = ";
    if (v == static_cast<long long>(v)) os << static_cast<long long>(v);
    else os << v;
    os << "\n";
  }
  for (const auto& op : p.operators) {
    os << "op " << op.id << " = ";
    switch (op.kind) {
      case OpKind::Replace:
        os << "replace(" << op.pos.str() << ", " << print_term(op.tmpl) << ")";
        break;
      case OpKind::Insert:
        os << "insert(" << op.pos.str() << ", " << print_term(op.tmpl) << ")";
        break;
      case OpKind::Delete:
        os << "delete(" << op.pos.str() << ")";
        break;
      case OpKind::OneStepRew:
        os << "one_step_rew";
        break;
    }
    os << "\n";
  }
  for (const auto& r : p.k) os << "bk: " << print_rule(r) << "\n";
  for (const auto& r : p.e_pos) os << "pos: " << print_rule(r) << "\n";
  for (const auto& r : p.e_neg) os << "neg: " << print_rule(r) << "\n";
  return os.str();
}

}  // namespace rf
