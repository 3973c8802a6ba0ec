// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "setcard/frontend.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace setcard {

namespace {

using PK = ParseError::Kind;

struct SExpr {
  enum class Type : std::uint8_t { Symbol, Numeral, String, List };
  Type type = Type::Symbol;
  std::string text;
  std::int64_t value = 0;
  std::vector<SExpr> items;
  SourcePos pos;

  bool is_symbol(std::string_view s) const { return type == Type::Symbol && text == s; }
  bool is_list() const { return type == Type::List; }
  std::string show() const {
    switch (type) {
      case Type::Symbol: return text;
      case Type::Numeral: return std::to_string(value);
      case Type::String: return '"' + text + '"';
      case Type::List: break;
    }
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) out += ' ';
      out += items[i].show();
    }
    return out + ")";
  }
};

[[noreturn]] void fail(PK kind, SourcePos pos, const std::string& msg) { throw ParseError(kind, pos, msg); }

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    while (true) {
      skip_blank();
      if (at_end()) return out;
      out.push_back(read());
    }
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek() const { return text_[i_]; }

  char get() {
    const char c = text_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    return c;
  }

  void skip_blank() {
    while (!at_end()) {
      const char c = peek();
      if (c == ';') {
        while (!at_end() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        return;
      }
    }
  }

  static bool is_delim(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';' || c == '"' || c == '|';
  }

  SExpr read() {
    skip_blank();
    SExpr e;
    e.pos = pos_;
    if (at_end()) fail(PK::Syntax, pos_, "unexpected end of input");
    const char c = peek();
    if (c == ')') fail(PK::Syntax, pos_, "unexpected ')'");
    if (c == '(') {
      get();
      e.type = SExpr::Type::List;
      while (true) {
        skip_blank();
        if (at_end()) fail(PK::Syntax, e.pos, "unclosed '('");
        if (peek() == ')') {
          get();
          return e;
        }
        e.items.push_back(read());
      }
    }
    if (c == '"') {
      get();
      e.type = SExpr::Type::String;
      while (true) {
        if (at_end()) fail(PK::Lex, e.pos, "unterminated string literal");
        const char d = get();
        if (d == '"') {
          if (!at_end() && peek() == '"') {
            e.text += get();
            continue;
          }
          return e;
        }
        e.text += d;
      }
    }
    if (c == '|') {
      get();
      while (true) {
        if (at_end()) fail(PK::Lex, e.pos, "unterminated quoted symbol");
        const char d = get();
        if (d == '|') break;
        if (d == '\\') fail(PK::Lex, e.pos, "backslash in quoted symbol");
        e.text += d;
      }
      if (e.text.empty()) fail(PK::Lex, e.pos, "empty quoted symbol");
      return e;
    }
    while (!at_end() && !is_delim(peek())) e.text += get();
    if (std::isdigit(static_cast<unsigned char>(e.text.front()))) {
      for (char d : e.text) {
        if (!std::isdigit(static_cast<unsigned char>(d))) fail(PK::Lex, e.pos, "malformed numeral '" + e.text + "'");
      }
      if (e.text.size() > 1 && e.text.front() == '0') fail(PK::Lex, e.pos, "numeral with leading zero");
      auto [p, ec] = std::from_chars(e.text.data(), e.text.data() + e.text.size(), e.value);
      if (ec != std::errc{}) fail(PK::Lex, e.pos, "numeral out of range '" + e.text + "'");
      e.type = SExpr::Type::Numeral;
      return e;
    }
    for (char d : e.text) {
      if (static_cast<unsigned char>(d) < 0x20 || d == '\'' || d == '`' || d == '\\') {
        fail(PK::Lex, e.pos, std::string("unexpected character in symbol '") + e.text + "'");
      }
    }
    return e;
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

class Interpreter {
 public:
  Script run(const std::vector<SExpr>& commands) {
    for (const auto& cmd : commands) {
      command(cmd);
      if (exited_) break;
    }
    return std::move(script_);
  }

 private:
  void command(const SExpr& cmd) {
    if (!cmd.is_list() || cmd.items.empty() || cmd.items.front().type != SExpr::Type::Symbol) {
      fail(PK::Syntax, cmd.pos, "expected a command");
    }
    const std::string& name = cmd.items.front().text;
    if (done_ && name != "exit" && name != "get-model") {
      fail(PK::Syntax, cmd.pos, "'" + name + "' after check-sat");
    }
    if (name == "declare-const") {
      arity(cmd, 2);
      declare(cmd.items[1], cmd.items[2]);
    } else if (name == "declare-fun") {
      arity(cmd, 3);
      if (!cmd.items[2].is_list() || !cmd.items[2].items.empty()) {
        fail(PK::Arity, cmd.items[2].pos, "only nullary functions are supported");
      }
      declare(cmd.items[1], cmd.items[3]);
    } else if (name == "declare-sort") {
      arity(cmd, 2);
      if (!cmd.items[1].is_symbol("Element")) fail(PK::Sort, cmd.items[1].pos, "only sort Element can be declared");
      if (cmd.items[2].type != SExpr::Type::Numeral || cmd.items[2].value != 0) {
        fail(PK::Arity, cmd.items[2].pos, "sort Element has arity 0");
      }
    } else if (name == "set-logic") {
      arity(cmd, 1);
      script_.logic = cmd.items[1].show();
    } else if (name == "set-option" || name == "set-info") {
      if (cmd.items.size() < 2 || cmd.items.size() > 3) fail(PK::Arity, cmd.pos, "'" + name + "' expects a keyword and a value");
      if (name == "set-option") {
        script_.options[cmd.items[1].show()] = cmd.items.size() == 3 ? cmd.items[2].show() : "";
      }
    } else if (name == "assert") {
      arity(cmd, 1);
      formula(cmd.items[1], true);
    } else if (name == "check-sat") {
      arity(cmd, 0);
      script_.check_sat = true;
      done_ = true;
    } else if (name == "get-model") {
      arity(cmd, 0);
      if (!script_.check_sat) fail(PK::Syntax, cmd.pos, "get-model before check-sat");
      script_.get_model = true;
    } else if (name == "exit") {
      arity(cmd, 0);
      exited_ = true;
    } else {
      fail(PK::Syntax, cmd.pos, "unsupported command '" + name + "'");
    }
  }

  static void arity(const SExpr& e, std::size_t n) {
    if (e.items.size() != n + 1) {
      fail(PK::Arity, e.pos,
           "'" + e.items.front().show() + "' expects " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") +
               ", got " + std::to_string(e.items.size() - 1));
    }
  }

  Sort sort(const SExpr& e) {
    if (e.is_symbol("Element")) return Sort::Element;
    if (e.is_symbol("Int")) return Sort::Card;
    if (e.is_list() && e.items.size() == 2 && e.items[0].is_symbol("Set") && e.items[1].is_symbol("Element")) {
      return Sort::Set;
    }
    fail(PK::Sort, e.pos, "unsupported sort '" + e.show() + "'");
  }

  void declare(const SExpr& name, const SExpr& sort_expr) {
    if (name.type != SExpr::Type::Symbol) fail(PK::Syntax, name.pos, "expected a symbol");
    if (name.text.rfind("__", 0) == 0) fail(PK::Syntax, name.pos, "names starting with '__' are reserved");
    if (is_builtin(name.text)) fail(PK::Syntax, name.pos, "'" + name.text + "' is a reserved word");
    const Sort s = sort(sort_expr);
    if (script_.sort_of(name.text)) fail(PK::Syntax, name.pos, "'" + name.text + "' is already declared");
    script_.declarations.emplace_back(name.text, s);
  }

  static bool is_builtin(const std::string& s) {
    static const std::set<std::string, std::less<>> kWords = {
        "union", "inter", "setminus", "singleton", "member", "subset", "card", "emptyset", "as", "=", "distinct",
        "not", "and", "<", "<=", ">", ">=", "+", "-", "*", "true", "Set", "Element", "Int"};
    return kWords.count(s) != 0;
  }

  void emit(Constraint c) { script_.assertions.push_back(std::move(c)); }

  // A term of any sort.
  Term term(const SExpr& e) {
    if (e.type == SExpr::Type::Numeral) fail(PK::Sort, e.pos, "numeral where a set or element term is expected");
    if (e.type == SExpr::Type::String) fail(PK::Syntax, e.pos, "unexpected string literal");
    if (e.type == SExpr::Type::Symbol) {
      if (e.text == "emptyset") return Term::empty_set();
      const Sort* s = script_.sort_of(e.text);
      if (!s) fail(PK::Undeclared, e.pos, "'" + e.text + "' is not declared");
      return Term::var(e.text, *s);
    }
    if (e.items.empty()) fail(PK::Syntax, e.pos, "empty application");
    const SExpr& head = e.items.front();
    if (head.is_symbol("as")) {
      if (e.items.size() != 3 || !e.items[1].is_symbol("emptyset")) fail(PK::Syntax, e.pos, "malformed 'as'");
      if (sort(e.items[2]) != Sort::Set) fail(PK::Sort, e.items[2].pos, "emptyset must have sort (Set Element)");
      return Term::empty_set();
    }
    if (head.type != SExpr::Type::Symbol) fail(PK::Syntax, head.pos, "expected an operator");
    const std::string& op = head.text;
    auto args = [&](std::size_t lo, std::size_t hi) {
      const std::size_t n = e.items.size() - 1;
      if (n < lo || n > hi) {
        fail(PK::Arity, e.pos,
             "'" + op + "' expects " + (lo == hi ? std::to_string(lo) : "at least " + std::to_string(lo)) +
                 " argument" + (lo == 1 && hi == 1 ? "" : "s") + ", got " + std::to_string(n));
      }
      std::vector<Term> out;
      for (std::size_t i = 1; i < e.items.size(); ++i) out.push_back(term(e.items[i]));
      return out;
    };
    auto typed = [&](auto&& make) {
      try {
        return make();
      } catch (const SortError& err) {
        fail(PK::Sort, e.pos, err.what());
      }
    };
    if (op == "union" || op == "inter") {
      auto xs = args(2, SIZE_MAX);
      return typed([&] {
        Term acc = xs.front();
        for (std::size_t i = 1; i < xs.size(); ++i) {
          acc = op == "union" ? Term::set_union(acc, xs[i]) : Term::set_inter(acc, xs[i]);
        }
        return acc;
      });
    }
    if (op == "setminus") {
      auto xs = args(2, 2);
      return typed([&] { return Term::set_diff(xs[0], xs[1]); });
    }
    if (op == "singleton") {
      auto xs = args(1, 1);
      return typed([&] { return Term::singleton(xs[0]); });
    }
    if (op == "card") fail(PK::Sort, e.pos, "'card' occurs outside an arithmetic constraint");
    if (script_.sort_of(op)) fail(PK::Arity, head.pos, "'" + op + "' is a constant");
    fail(PK::Undeclared, head.pos, "unknown operator '" + op + "'");
  }

  Term set_term(const SExpr& e) {
    Term t = term(e);
    if (t.sort() != Sort::Set) fail(PK::Sort, e.pos, "'" + e.show() + "' is not a set");
    return t;
  }

  Term element_term(const SExpr& e) {
    Term t = term(e);
    if (t.sort() != Sort::Element) fail(PK::Sort, e.pos, "'" + e.show() + "' is not an element");
    return t;
  }

  LinearForm arith(const SExpr& e) {
    if (e.type == SExpr::Type::Numeral) return LinearForm(e.value);
    if (e.type == SExpr::Type::Symbol) {
      const Sort* s = script_.sort_of(e.text);
      if (!s) fail(PK::Undeclared, e.pos, "'" + e.text + "' is not declared");
      if (*s != Sort::Card) fail(PK::Sort, e.pos, "'" + e.text + "' is not an integer");
      return LinearForm::of(Term::card_var(e.text));
    }
    if (!e.is_list() || e.items.empty() || e.items.front().type != SExpr::Type::Symbol) {
      fail(PK::Syntax, e.pos, "malformed arithmetic term");
    }
    const std::string& op = e.items.front().text;
    const std::size_t n = e.items.size() - 1;
    if (op == "card") {
      if (n != 1) fail(PK::Arity, e.pos, "'card' expects 1 argument, got " + std::to_string(n));
      const Term s = set_term(e.items[1]);
      const Term c = card_var_of(s);
      if (carded_.insert(s).second) pending_.push_back(Constraint::card_of(c, s));
      return LinearForm::of(c);
    }
    if (op == "+") {
      if (n < 1) fail(PK::Arity, e.pos, "'+' expects at least 1 argument");
      LinearForm acc;
      for (std::size_t i = 1; i <= n; ++i) acc += arith(e.items[i]);
      return acc;
    }
    if (op == "-") {
      if (n < 1) fail(PK::Arity, e.pos, "'-' expects at least 1 argument");
      if (n == 1) return -arith(e.items[1]);
      LinearForm acc = arith(e.items[1]);
      for (std::size_t i = 2; i <= n; ++i) acc -= arith(e.items[i]);
      return acc;
    }
    if (op == "*") {
      if (n < 1) fail(PK::Arity, e.pos, "'*' expects at least 1 argument");
      LinearForm acc = arith(e.items[1]);
      for (std::size_t i = 2; i <= n; ++i) {
        LinearForm next = arith(e.items[i]);
        if (acc.terms().empty()) {
          acc = next.scaled(acc.constant());
        } else if (next.terms().empty()) {
          acc = acc.scaled(next.constant());
        } else {
          fail(PK::Sort, e.pos, "nonlinear multiplication");
        }
      }
      return acc;
    }
    if (script_.sort_of(op)) fail(PK::Arity, e.items.front().pos, "'" + op + "' is a constant");
    fail(PK::Undeclared, e.items.front().pos, "unknown arithmetic operator '" + op + "'");
  }

  // Sort of an operand of '=' or 'distinct', looking through arithmetic.
  Sort operand_sort(const SExpr& e) {
    if (e.type == SExpr::Type::Numeral) return Sort::Card;
    if (e.type == SExpr::Type::Symbol) {
      if (e.text == "emptyset") return Sort::Set;
      const Sort* s = script_.sort_of(e.text);
      if (!s) fail(PK::Undeclared, e.pos, "'" + e.text + "' is not declared");
      return *s;
    }
    if (e.is_list() && !e.items.empty()) {
      const SExpr& h = e.items.front();
      if (h.is_symbol("card") || h.is_symbol("+") || h.is_symbol("-") || h.is_symbol("*")) return Sort::Card;
    }
    return term(e).sort();
  }

  void equality(const SExpr& a, const SExpr& b, bool positive, SourcePos pos) {
    const Sort sa = operand_sort(a);
    const Sort sb = operand_sort(b);
    if (sa != sb) fail(PK::Sort, pos, "'=' between " + std::string(to_string(sa)) + " and " + std::string(to_string(sb)));
    switch (sa) {
      case Sort::Set: {
        Term x = set_term(a);
        Term y = set_term(b);
        emit(positive ? Constraint::set_eq(x, y) : Constraint::set_neq(x, y));
        break;
      }
      case Sort::Element: {
        Term x = element_term(a);
        Term y = element_term(b);
        emit(positive ? Constraint::elem_eq(x, y) : Constraint::elem_neq(x, y));
        break;
      }
      case Sort::Card: comparison(a, b, positive ? Relation::Eq : Relation::Neq); break;
    }
  }

  void comparison(const SExpr& a, const SExpr& b, Relation rel, bool swap = false) {
    LinearForm x = arith(a);
    LinearForm y = arith(b);
    if (swap) std::swap(x, y);
    emit(Constraint::arith(CardAtom::compare(x, rel, y)));
    for (auto& c : pending_) emit(std::move(c));
    pending_.clear();
  }

  void formula(const SExpr& e, bool positive) {
    if (e.is_symbol("true")) {
      if (!positive) fail(PK::Sort, e.pos, "asserting false is not supported");
      return;
    }
    if (!e.is_list() || e.items.empty() || e.items.front().type != SExpr::Type::Symbol) {
      fail(PK::Sort, e.pos, "expected a constraint, got '" + e.show() + "'");
    }
    const std::string& op = e.items.front().text;
    const std::size_t n = e.items.size() - 1;
    if (op == "not") {
      arity(e, 1);
      formula(e.items[1], !positive);
    } else if (op == "and") {
      if (!positive) fail(PK::Sort, e.pos, "negated conjunction is not supported");
      for (std::size_t i = 1; i <= n; ++i) formula(e.items[i], true);
    } else if (op == "=") {
      if (n < 2) fail(PK::Arity, e.pos, "'=' expects at least 2 arguments");
      if (!positive && n != 2) fail(PK::Sort, e.pos, "negated chained equality is not supported");
      for (std::size_t i = 1; i < n; ++i) equality(e.items[i], e.items[i + 1], positive, e.pos);
    } else if (op == "distinct") {
      if (n < 2) fail(PK::Arity, e.pos, "'distinct' expects at least 2 arguments");
      if (!positive && n != 2) fail(PK::Sort, e.pos, "negated distinct over more than 2 arguments is not supported");
      for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) equality(e.items[i], e.items[j], !positive, e.pos);
      }
    } else if (op == "member") {
      arity(e, 2);
      Term x = element_term(e.items[1]);
      Term s = set_term(e.items[2]);
      emit(positive ? Constraint::member(x, s) : Constraint::not_member(x, s));
    } else if (op == "subset") {
      arity(e, 2);
      Term s = set_term(e.items[1]);
      Term t = set_term(e.items[2]);
      emit(positive ? Constraint::subset(s, t) : Constraint::not_subset(s, t));
    } else if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      arity(e, 2);
      // a<b, b<=a negated, and so on, reduce to Lt or Ge.
      const bool lt = op == "<" || op == ">";
      const bool swap = op == ">" || op == "<=";
      Relation rel = lt ? Relation::Lt : Relation::Ge;
      if (!positive) rel = lt ? Relation::Ge : Relation::Lt;
      comparison(e.items[1], e.items[2], rel, swap);
    } else if (op == "union" || op == "inter" || op == "setminus" || op == "singleton" || op == "card" || op == "+" ||
               op == "-" || op == "*" || script_.sort_of(op)) {
      fail(PK::Sort, e.pos, "'" + e.show() + "' is a term, not a constraint");
    } else {
      fail(PK::Undeclared, e.items.front().pos, "unknown predicate '" + op + "'");
    }
  }

  Script script_;
  std::set<Term> carded_;
  std::vector<Constraint> pending_;
  bool done_ = false;
  bool exited_ = false;
};

std::string linear_smtlib(const LinearForm& f) {
  std::vector<std::string> parts;
  auto num = [](std::int64_t v) { return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v); };
  for (const auto& [k, v] : f.terms()) {
    const std::string var = v.op() == Op::Card ? "(card " + v.arg(0).to_smtlib() + ")" : v.to_smtlib();
    parts.push_back(k == 1 ? var : "(* " + num(k) + " " + var + ")");
  }
  if (f.constant() != 0 || parts.empty()) parts.push_back(num(f.constant()));
  if (parts.size() == 1) return parts.front();
  std::string out = "(+";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

std::string sort_smtlib(Sort s) {
  switch (s) {
    case Sort::Element: return "Element";
    case Sort::Set: return "(Set Element)";
    case Sort::Card: return "Int";
  }
  return "?";
}

std::string elem_name(std::uint32_t id) { return "@e" + std::to_string(id); }

}  // namespace

ParseError::ParseError(Kind kind, SourcePos pos, const std::string& message)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " +
                         std::string(setcard::to_string(kind)) + ": " + message),
      kind_(kind),
      pos_(pos),
      detail_(message) {}

std::string_view to_string(ParseError::Kind kind) {
  switch (kind) {
    case PK::Lex: return "lex error";
    case PK::Syntax: return "syntax error";
    case PK::Sort: return "sort error";
    case PK::Undeclared: return "undeclared symbol";
    case PK::Arity: return "arity error";
  }
  return "error";
}

const Sort* Script::sort_of(const std::string& name) const {
  for (const auto& [n, s] : declarations) {
    if (n == name) return &s;
  }
  return nullptr;
}

Script parse(std::string_view text) { return Interpreter().run(Reader(text).read_all()); }

std::string print_script(const Script& script) {
  std::ostringstream os;
  if (!script.logic.empty()) os << "(set-logic " << script.logic << ")\n";
  for (const auto& [k, v] : script.options) {
    os << "(set-option " << k;
    if (!v.empty()) os << ' ' << v;
    os << ")\n";
  }
  for (const auto& [name, sort] : script.declarations) os << "(declare-const " << name << ' ' << sort_smtlib(sort) << ")\n";
  using K = Constraint::Kind;
  for (const auto& c : script.assertions) {
    const std::string a = c.lhs().is_null() ? "" : c.lhs().to_smtlib();
    const std::string b = c.rhs().is_null() ? "" : c.rhs().to_smtlib();
    std::string body;
    switch (c.kind()) {
      case K::SetEq:
      case K::ElemEq: body = "(= " + a + " " + b + ")"; break;
      case K::SetNeq:
      case K::ElemNeq: body = "(not (= " + a + " " + b + "))"; break;
      case K::Member: body = "(member " + a + " " + b + ")"; break;
      case K::NotMember: body = "(not (member " + a + " " + b + "))"; break;
      case K::Subset: body = "(subset " + a + " " + b + ")"; break;
      case K::NotSubset: body = "(not (subset " + a + " " + b + "))"; break;
      case K::CardOf: continue;
      case K::Arith: {
        const std::string lhs = linear_smtlib(c.atom().lhs);
        switch (c.atom().rel) {
          case Relation::Eq: body = "(= " + lhs + " 0)"; break;
          case Relation::Neq: body = "(not (= " + lhs + " 0))"; break;
          case Relation::Lt: body = "(< " + lhs + " 0)"; break;
          case Relation::Ge: body = "(>= " + lhs + " 0)"; break;
        }
        break;
      }
    }
    os << "(assert " << body << ")\n";
  }
  if (script.check_sat) os << "(check-sat)\n";
  if (script.get_model) os << "(get-model)\n";
  return os.str();
}

std::string print_model(const Script& script, const Model& model) {
  std::uint32_t next = 0;
  for (const auto& [n, v] : model.elements) next = std::max(next, v + 1);
  for (const auto& [n, s] : model.sets) {
    if (!s.empty()) next = std::max(next, *s.rbegin() + 1);
  }
  std::ostringstream os;
  os << "(\n";
  for (const auto& [name, sort] : script.declarations) {
    os << "  " << name << " := ";
    switch (sort) {
      case Sort::Element: {
        auto it = model.elements.find(name);
        os << elem_name(it != model.elements.end() ? it->second : next++);
        break;
      }
      case Sort::Set: {
        auto it = model.sets.find(name);
        os << '{';
        if (it != model.sets.end()) {
          bool first = true;
          for (std::uint32_t v : it->second) {
            os << (first ? "" : ", ") << elem_name(v);
            first = false;
          }
        }
        os << '}';
        break;
      }
      case Sort::Card: {
        auto it = model.cards.find(Term::card_var(name));
        os << (it != model.cards.end() ? it->second : 0);
        break;
      }
    }
    os << '\n';
  }
  for (const auto& c : script.assertions) {
    if (c.kind() != Constraint::Kind::CardOf) continue;
    std::int64_t value = 0;
    if (auto it = model.cards.find(c.lhs()); it != model.cards.end()) {
      value = it->second;
    } else if (auto s = evaluate_set(c.rhs(), model)) {
      value = static_cast<std::int64_t>(s->size());
    }
    os << "  card(" << c.rhs().to_smtlib() << ") := " << value << '\n';
  }
  os << ")\n";
  return os.str();
}

}  // namespace setcard
