#pragma once

// First-order formulas in the language of rings without unity, with a
// parenthesized prefix syntax:
//
//   formula := (eq t t) | (not f) | (and f f...) | (or f f...) | (implies f f)
//            | (exists v... f) | (forall v... f) | true | false
//   term    := var | 0 | (add t t...) | (sub t t) | (neg t) | (mul t t)
//
// ';' starts a comment running to the end of the line.

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdz {

struct Term {
  enum class Kind { var, zero, add, sub, neg, mul };
  Kind kind = Kind::zero;
  std::string name;  // var only
  std::vector<Term> args;

  static Term variable(std::string n) { return {Kind::var, std::move(n), {}}; }
  static Term zero() { return {Kind::zero, "", {}}; }
  static Term op(Kind k, std::vector<Term> a) { return {k, "", std::move(a)}; }
  friend bool operator==(const Term&, const Term&) = default;
};

inline Term operator+(Term a, Term b) { return Term::op(Term::Kind::add, {std::move(a), std::move(b)}); }
inline Term operator*(Term a, Term b) { return Term::op(Term::Kind::mul, {std::move(a), std::move(b)}); }

struct Formula {
  enum class Kind { truth, falsity, eq, not_, and_, or_, implies, exists, forall };
  Kind kind = Kind::truth;
  std::vector<Term> terms;      // eq: lhs, rhs
  std::vector<Formula> subs;    // connectives and quantifier body
  std::vector<std::string> vars;  // quantifiers

  static Formula truth() { return {Kind::truth, {}, {}, {}}; }
  static Formula falsity() { return {Kind::falsity, {}, {}, {}}; }
  static Formula eq(Term l, Term r) { return {Kind::eq, {std::move(l), std::move(r)}, {}, {}}; }
  static Formula negation(Formula f) { return {Kind::not_, {}, {std::move(f)}, {}}; }
  static Formula conj(std::vector<Formula> fs) { return {Kind::and_, {}, std::move(fs), {}}; }
  static Formula disj(std::vector<Formula> fs) { return {Kind::or_, {}, std::move(fs), {}}; }
  static Formula implies(Formula a, Formula b) { return {Kind::implies, {}, {std::move(a), std::move(b)}, {}}; }
  static Formula exists(std::vector<std::string> v, Formula body) { return {Kind::exists, {}, {std::move(body)}, std::move(v)}; }
  static Formula forall(std::vector<std::string> v, Formula body) { return {Kind::forall, {}, {std::move(body)}, std::move(v)}; }
  friend bool operator==(const Formula&, const Formula&) = default;
};

class FormulaParseError : public std::runtime_error {
 public:
  FormulaParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error("formula parse error at offset " + std::to_string(pos) + ": " + msg), offset(pos) {}
  std::size_t offset;
};

namespace detail {

inline void term_vars(const Term& t, std::set<std::string>& bound, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::var) {
    if (!bound.count(t.name)) {
      for (const auto& o : out)
        if (o == t.name) return;
      out.push_back(t.name);
    }
    return;
  }
  for (const auto& a : t.args) term_vars(a, bound, out);
}

inline void formula_vars(const Formula& f, std::multiset<std::string>& bound, std::vector<std::string>& out) {
  std::set<std::string> b(bound.begin(), bound.end());
  for (const auto& t : f.terms) term_vars(t, b, out);
  if (f.kind == Formula::Kind::exists || f.kind == Formula::Kind::forall) {
    for (const auto& v : f.vars) bound.insert(v);
    formula_vars(f.subs[0], bound, out);
    for (const auto& v : f.vars) bound.erase(bound.find(v));
    return;
  }
  for (const auto& s : f.subs) formula_vars(s, bound, out);
}

class SexprParser {
 public:
  explicit SexprParser(const std::string& s) : s_(s) {}

  Formula formula_document() {
    Formula f = formula();
    skip();
    if (pos_ != s_.size()) throw FormulaParseError("trailing input", pos_);
    return f;
  }
  Term term_document() {
    Term t = term();
    skip();
    if (pos_ != s_.size()) throw FormulaParseError("trailing input", pos_);
    return t;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else if (s_[pos_] == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  bool at_open() {
    skip();
    return pos_ < s_.size() && s_[pos_] == '(';
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) throw FormulaParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }
  std::string atom() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')' && s_[pos_] != ';')
      ++pos_;
    if (start == pos_) throw FormulaParseError(pos_ < s_.size() ? "unexpected character" : "unexpected end of input", pos_);
    return s_.substr(start, pos_ - start);
  }
  static bool is_identifier(const std::string& a) {
    if (!std::isalpha(static_cast<unsigned char>(a[0])) && a[0] != '_') return false;
    for (char c : a)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
    return true;
  }
  static bool reserved(const std::string& a) {
    static const std::set<std::string> words = {"eq", "not", "and", "or", "implies", "exists", "forall",
                                                "true", "false", "add", "sub", "neg", "mul"};
    return words.count(a) > 0;
  }
  std::string variable() {
    const std::size_t at = pos_;
    std::string a = atom();
    if (!is_identifier(a) || reserved(a)) throw FormulaParseError("expected a variable, got '" + a + "'", at);
    return a;
  }

  Term term() {
    if (!at_open()) {
      const std::size_t at = pos_;
      std::string a = atom();
      if (a == "0") return Term::zero();
      if (!is_identifier(a) || reserved(a)) throw FormulaParseError("expected a term, got '" + a + "'", at);
      return Term::variable(a);
    }
    expect('(');
    const std::size_t at = pos_;
    const std::string op = atom();
    std::vector<Term> args;
    while (!closing()) args.push_back(term());
    expect(')');
    auto need = [&](bool ok, const char* what) {
      if (!ok) throw FormulaParseError(op + " takes " + what, at);
    };
    if (op == "add") {
      need(args.size() >= 2, "at least two terms");
      return Term::op(Term::Kind::add, std::move(args));
    }
    if (op == "sub") {
      need(args.size() == 2, "two terms");
      return Term::op(Term::Kind::sub, std::move(args));
    }
    if (op == "mul") {
      need(args.size() == 2, "two terms");
      return Term::op(Term::Kind::mul, std::move(args));
    }
    if (op == "neg") {
      need(args.size() == 1, "one term");
      return Term::op(Term::Kind::neg, std::move(args));
    }
    throw FormulaParseError("unknown term operator '" + op + "'", at);
  }

  bool closing() {
    skip();
    if (pos_ >= s_.size()) throw FormulaParseError("unexpected end of input", pos_);
    return s_[pos_] == ')';
  }

  Formula formula() {
    if (!at_open()) {
      const std::size_t at = pos_;
      std::string a = atom();
      if (a == "true") return Formula::truth();
      if (a == "false") return Formula::falsity();
      throw FormulaParseError("expected a formula, got '" + a + "'", at);
    }
    expect('(');
    const std::size_t at = pos_;
    const std::string op = atom();
    Formula f;
    if (op == "eq") {
      Term l = term();
      Term r = term();
      f = Formula::eq(std::move(l), std::move(r));
    } else if (op == "not") {
      f = Formula::negation(formula());
    } else if (op == "and" || op == "or") {
      std::vector<Formula> fs;
      while (!closing()) fs.push_back(formula());
      if (fs.size() < 2) throw FormulaParseError(op + " takes at least two formulas", at);
      f = op == "and" ? Formula::conj(std::move(fs)) : Formula::disj(std::move(fs));
    } else if (op == "implies") {
      Formula a = formula();
      Formula b = formula();
      f = Formula::implies(std::move(a), std::move(b));
    } else if (op == "exists" || op == "forall") {
      std::vector<std::string> vs;
      while (!at_open() && !closing()) {
        const std::size_t save = pos_;
        const std::string a = atom();
        pos_ = save;
        if (a == "true" || a == "false") break;
        vs.push_back(variable());
      }
      if (vs.empty()) throw FormulaParseError(op + " binds no variable", at);
      Formula body = formula();
      f = op == "exists" ? Formula::exists(std::move(vs), std::move(body)) : Formula::forall(std::move(vs), std::move(body));
    } else {
      throw FormulaParseError("unknown connective '" + op + "'", at);
    }
    expect(')');
    return f;
  }
};

}  // namespace detail

/// Free variables in order of first occurrence.
inline std::vector<std::string> free_variables(const Formula& f) {
  std::multiset<std::string> bound;
  std::vector<std::string> out;
  detail::formula_vars(f, bound, out);
  return out;
}

inline Formula parse_formula(const std::string& text) { return detail::SexprParser(text).formula_document(); }
inline Term parse_term(const std::string& text) { return detail::SexprParser(text).term_document(); }

inline std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::var: return t.name;
    case Term::Kind::zero: return "0";
    default: break;
  }
  static const char* names[] = {"", "", "add", "sub", "neg", "mul"};
  std::string s = std::string("(") + names[static_cast<int>(t.kind)];
  for (const auto& a : t.args) s += " " + to_string(a);
  return s + ")";
}

inline std::string to_string(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::truth: return "true";
    case K::falsity: return "false";
    case K::eq: return "(eq " + to_string(f.terms[0]) + " " + to_string(f.terms[1]) + ")";
    case K::exists:
    case K::forall: {
      std::string s = f.kind == K::exists ? "(exists" : "(forall";
      for (const auto& v : f.vars) s += " " + v;
      return s + " " + to_string(f.subs[0]) + ")";
    }
    default: break;
  }
  std::string s = f.kind == K::not_ ? "(not" : f.kind == K::and_ ? "(and" : f.kind == K::or_ ? "(or" : "(implies";
  for (const auto& g : f.subs) s += " " + to_string(g);
  return s + ")";
}

namespace builtin {

inline std::string indexed(const char* base, std::size_t i) { return base + std::to_string(i); }

/// sum_{i=1..n} a_i b_i
inline Term product_sum(const char* a, const char* b, std::size_t n) {
  Term s = Term::variable(indexed(a, 1)) * Term::variable(indexed(b, 1));
  if (n == 1) return s;
  std::vector<Term> parts{s};
  for (std::size_t i = 2; i <= n; ++i) parts.push_back(Term::variable(indexed(a, i)) * Term::variable(indexed(b, i)));
  return Term::op(Term::Kind::add, std::move(parts));
}

inline std::vector<std::string> pairs(const char* a, const char* b, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) {
    v.push_back(indexed(a, i));
    v.push_back(indexed(b, i));
  }
  return v;
}

inline void need_positive(std::size_t n) {
  if (n < 1) throw std::invalid_argument("builtin formulas need n >= 1");
}

/// x is a sum of n products.
inline Formula theta(std::size_t n) {
  need_positive(n);
  return Formula::exists(pairs("x", "y", n), Formula::eq(Term::variable("x"), product_sum("x", "y", n)));
}

/// Every sum of n + 1 products is a sum of n products.
inline Formula phi(std::size_t n) {
  need_positive(n);
  return Formula::forall(pairs("x", "y", n + 1),
                         Formula::exists(pairs("s", "t", n), Formula::eq(product_sum("x", "y", n + 1), product_sum("s", "t", n))));
}

/// x1..xn is a complete system for the map A/Ann x A/Ann -> A^2: anything
/// killed on both sides by every x_i is killed by the whole ring.
inline Formula psi(std::size_t n) {
  need_positive(n);
  const Term y = Term::variable("y"), z = Term::variable("z");
  std::vector<Formula> hyp;
  for (std::size_t i = 1; i <= n; ++i) {
    const Term xi = Term::variable(indexed("x", i));
    hyp.push_back(Formula::eq(y * xi, Term::zero()));
    hyp.push_back(Formula::eq(xi * y, Term::zero()));
  }
  Formula h = hyp.size() == 1 ? hyp[0] : Formula::conj(std::move(hyp));
  Formula ann = Formula::forall({"z"}, Formula::conj({Formula::eq(y * z, Term::zero()), Formula::eq(z * y, Term::zero())}));
  return Formula::forall({"y"}, Formula::implies(std::move(h), std::move(ann)));
}

/// Some n-tuple is a complete system.
inline Formula complete_system_sentence(std::size_t n) {
  std::vector<std::string> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(indexed("x", i));
  return Formula::exists(std::move(xs), psi(n));
}

}  // namespace builtin

inline Formula builtin_formula(const std::string& name, std::size_t n) {
  if (name == "theta") return builtin::theta(n);
  if (name == "phi") return builtin::phi(n);
  if (name == "psi") return builtin::psi(n);
  if (name == "Psi") return builtin::complete_system_sentence(n);
  throw std::invalid_argument("unknown builtin formula '" + name + "'");
}

}  // namespace fdz
