#pragma once

// Model checking of formulas on finite rings by enumeration of the carrier.
//
// A quantifier block over a single equation is evaluated through value sets:
// the difference of the two sides splits into addends, addends sharing block
// variables form components, and the equation is solvable iff 0 lies in the
// sumset of the components' value sets. The pattern forall X exists S (eq)
// reduces to an inclusion of two such sets. Everything else is enumerated.

#include "fdz/formula.hpp"
#include "fdz/ring.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>

namespace fdz {

class ModelCheckError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Elements of a finite ring as mixed-radix indices (coordinate 0 fastest,
/// matching FdzRing::elements()).
class FiniteRingTable {
 public:
  using Index = std::uint32_t;

  FiniteRingTable(const FdzRing& a, std::size_t limit) : ring_(a) {
    if (!a.is_finite()) throw ModelCheckError("model checking needs a finite ring");
    if (a.size() > Integer(static_cast<unsigned long>(limit)))
      throw ModelCheckError("carrier has " + a.size().get_str() + " elements; the limit is " + std::to_string(limit));
    r_ = a.rank();
    n_ = static_cast<std::size_t>(a.size().get_ui());
    for (std::size_t i = 0; i < r_; ++i) orders_.push_back(a.order_of(i).get_si());
    digits_.resize(n_ * r_);
    for (std::size_t x = 0; x < n_; ++x) {
      std::size_t rest = x;
      for (std::size_t i = 0; i < r_; ++i) {
        digits_[x * r_ + i] = rest % orders_[i];
        rest /= orders_[i];
      }
    }
    tensor_.resize(r_ * r_ * r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < r_; ++j)
        for (std::size_t k = 0; k < r_; ++k)
          tensor_[(i * r_ + j) * r_ + k] = reduce_mod(a.product(i, j)[k], a.order_of(k)).get_si();
    if (n_ <= 1024) {
      mul_.resize(n_ * n_);
      for (std::size_t x = 0; x < n_; ++x)
        for (std::size_t y = 0; y < n_; ++y) mul_[x * n_ + y] = mul_direct(x, y);
    }
  }

  const FdzRing& ring() const { return ring_; }
  std::size_t size() const { return n_; }

  Index add(Index x, Index y) const {
    Index out = 0, stride = 1;
    for (std::size_t i = 0; i < r_; ++i) {
      long d = digits_[x * r_ + i] + digits_[y * r_ + i];
      if (d >= orders_[i]) d -= orders_[i];
      out += static_cast<Index>(d) * stride;
      stride *= static_cast<Index>(orders_[i]);
    }
    return out;
  }
  Index neg(Index x) const {
    Index out = 0, stride = 1;
    for (std::size_t i = 0; i < r_; ++i) {
      const long d = digits_[x * r_ + i];
      out += static_cast<Index>(d == 0 ? 0 : orders_[i] - d) * stride;
      stride *= static_cast<Index>(orders_[i]);
    }
    return out;
  }
  Index mul(Index x, Index y) const { return mul_.empty() ? mul_direct(x, y) : mul_[x * n_ + y]; }

  Index index_of(const Vector& v) const {
    if (v.size() != r_) throw ModelCheckError("element has " + std::to_string(v.size()) + " coordinates; the ring has rank " + std::to_string(r_));
    Index out = 0, stride = 1;
    for (std::size_t i = 0; i < r_; ++i) {
      out += static_cast<Index>(reduce_mod(v[i], ring_.order_of(i)).get_si()) * stride;
      stride *= static_cast<Index>(orders_[i]);
    }
    return out;
  }
  Vector element(Index x) const {
    Vector v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = digits_[x * r_ + i];
    return v;
  }

 private:
  FdzRing ring_;
  std::size_t r_ = 0, n_ = 1;
  std::vector<long> orders_, digits_, tensor_;
  std::vector<Index> mul_;

  Index mul_direct(std::size_t x, std::size_t y) const {
    Index out = 0, stride = 1;
    for (std::size_t k = 0; k < r_; ++k) {
      long acc = 0;
      for (std::size_t i = 0; i < r_; ++i) {
        const long dx = digits_[x * r_ + i];
        if (dx == 0) continue;
        for (std::size_t j = 0; j < r_; ++j) {
          const long dy = digits_[y * r_ + j];
          if (dy == 0) continue;
          acc = (acc + dx * dy % orders_[k] * tensor_[(i * r_ + j) * r_ + k]) % orders_[k];
        }
      }
      out += static_cast<Index>(acc) * stride;
      stride *= static_cast<Index>(orders_[k]);
    }
    return out;
  }
};

struct EvalOptions {
  std::size_t carrier_limit = 4096;
  /// Evaluate equation blocks through value sets; off means plain enumeration.
  bool sumset = true;
};

namespace detail {

struct CTerm {
  Term::Kind kind;
  int slot = -1;
  std::vector<CTerm> args;
};

struct SumComponent {
  std::vector<int> slots;
  std::vector<std::pair<int, const CTerm*>> addends;  // sign, term
};

struct SumPlan {
  bool nested = false;  // forall X exists S
  std::vector<std::pair<int, const CTerm*>> constants;
  std::vector<SumComponent> outer, inner;
};

struct CNode {
  Formula::Kind kind;
  std::vector<CTerm> terms;
  std::vector<CNode> subs;
  std::vector<int> slots;
  std::shared_ptr<SumPlan> plan;
};

class Compiler {
 public:
  int slots = 0;
  std::map<std::string, std::vector<int>> scope;

  CTerm term(const Term& t) {
    CTerm c{t.kind, -1, {}};
    if (t.kind == Term::Kind::var) {
      auto it = scope.find(t.name);
      if (it == scope.end() || it->second.empty()) throw std::logic_error("unbound variable " + t.name);
      c.slot = it->second.back();
    }
    for (const auto& a : t.args) c.args.push_back(term(a));
    return c;
  }

  CNode formula(const Formula& f) {
    CNode n{f.kind, {}, {}, {}, nullptr};
    if (f.kind == Formula::Kind::exists || f.kind == Formula::Kind::forall) {
      // Merge directly nested quantifiers of the same kind into one block.
      const Formula* cur = &f;
      std::vector<std::string> bound;
      for (;;) {
        for (const auto& v : cur->vars) {
          scope[v].push_back(slots);
          n.slots.push_back(slots++);
          bound.push_back(v);
        }
        if (cur->subs[0].kind != f.kind) break;
        cur = &cur->subs[0];
      }
      n.subs.push_back(formula(cur->subs[0]));
      for (const auto& v : bound) scope[v].pop_back();
      return n;
    }
    for (const auto& t : f.terms) n.terms.push_back(term(t));
    for (const auto& s : f.subs) n.subs.push_back(formula(s));
    return n;
  }
};

inline void term_slots(const CTerm& t, std::vector<int>& out) {
  if (t.kind == Term::Kind::var) out.push_back(t.slot);
  for (const auto& a : t.args) term_slots(a, out);
}

inline void split_addends(const CTerm& t, int sign, std::vector<std::pair<int, const CTerm*>>& out) {
  switch (t.kind) {
    case Term::Kind::zero: return;
    case Term::Kind::add:
      for (const auto& a : t.args) split_addends(a, sign, out);
      return;
    case Term::Kind::sub:
      split_addends(t.args[0], sign, out);
      split_addends(t.args[1], -sign, out);
      return;
    case Term::Kind::neg: split_addends(t.args[0], -sign, out); return;
    default: out.emplace_back(sign, &t);
  }
}

/// Groups addends touching `block` into components joined by shared variables;
/// the others go to `rest`. Returns false if an addend touches both `block`
/// and `forbidden`.
inline bool components(const std::vector<std::pair<int, const CTerm*>>& addends, const std::vector<int>& block,
                       const std::vector<int>& forbidden, std::vector<SumComponent>& comps,
                       std::vector<std::pair<int, const CTerm*>>* rest) {
  auto in = [](const std::vector<int>& s, int x) { return std::find(s.begin(), s.end(), x) != s.end(); };
  std::vector<std::size_t> parent(block.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto pos = [&](int s) { return static_cast<std::size_t>(std::find(block.begin(), block.end(), s) - block.begin()); };
  std::vector<std::vector<int>> used(addends.size());
  for (std::size_t a = 0; a < addends.size(); ++a) {
    std::vector<int> vs;
    term_slots(*addends[a].second, vs);
    bool other = false;
    for (int s : vs) {
      if (in(forbidden, s)) other = true;
      if (in(block, s)) used[a].push_back(s);
    }
    if (used[a].empty()) continue;
    if (other) return false;
    for (int s : used[a]) parent[find(pos(s))] = find(pos(used[a][0]));
  }
  std::map<std::size_t, std::size_t> comp_of;
  for (std::size_t a = 0; a < addends.size(); ++a) {
    if (used[a].empty()) {
      if (rest) rest->push_back(addends[a]);
      continue;
    }
    const std::size_t root = find(pos(used[a][0]));
    auto [it, fresh] = comp_of.emplace(root, comps.size());
    if (fresh) comps.emplace_back();
    comps[it->second].addends.push_back(addends[a]);
  }
  for (std::size_t i = 0; i < block.size(); ++i) {
    auto it = comp_of.find(find(i));
    if (it != comp_of.end()) comps[it->second].slots.push_back(block[i]);
  }
  return true;
}

inline std::shared_ptr<SumPlan> plan_for(const CNode& q) {
  const CNode& body = q.subs[0];
  auto diff = [](const CNode& eq) {
    std::vector<std::pair<int, const CTerm*>> out;
    split_addends(eq.terms[0], 1, out);
    split_addends(eq.terms[1], -1, out);
    return out;
  };
  if (body.kind == Formula::Kind::eq) {
    auto p = std::make_shared<SumPlan>();
    components(diff(body), q.slots, {}, p->outer, &p->constants);
    return p;
  }
  if (q.kind == Formula::Kind::forall && body.kind == Formula::Kind::exists && body.subs[0].kind == Formula::Kind::eq) {
    auto p = std::make_shared<SumPlan>();
    p->nested = true;
    const auto ad = diff(body.subs[0]);
    std::vector<std::pair<int, const CTerm*>> rest;
    if (!components(ad, q.slots, body.slots, p->outer, &rest)) return nullptr;
    if (!components(rest, body.slots, q.slots, p->inner, &p->constants)) return nullptr;
    return p;
  }
  return nullptr;
}

inline void attach_plans(CNode& n) {
  for (auto& s : n.subs) attach_plans(s);
  if (n.kind == Formula::Kind::exists || n.kind == Formula::Kind::forall) n.plan = plan_for(n);
}

}  // namespace detail

/// Evaluates formulas on one finite ring.
class ModelChecker {
 public:
  using Index = FiniteRingTable::Index;

  explicit ModelChecker(const FdzRing& a, const EvalOptions& opt = {}) : table_(a, opt.carrier_limit), opt_(opt) {}

  const FiniteRingTable& table() const { return table_; }

  bool evaluate(const Formula& f, const std::map<std::string, Vector>& assignment = {}) const {
    const auto fv = free_variables(f);
    std::vector<Index> values;
    for (const auto& v : fv) {
      auto it = assignment.find(v);
      if (it == assignment.end()) throw ModelCheckError("unassigned free variable '" + v + "'");
      values.push_back(table_.index_of(it->second));
    }
    Prepared p = prepare(f, fv);
    for (std::size_t i = 0; i < values.size(); ++i) p.env[i] = values[i];
    return eval(p.root, p.env);
  }

  /// Elements x with f(x), in the order of FdzRing::elements().
  std::vector<Vector> defined_set(const Formula& f) const {
    const auto fv = free_variables(f);
    if (fv.size() != 1)
      throw ModelCheckError("defined_set needs exactly one free variable, found " + std::to_string(fv.size()));
    Prepared p = prepare(f, fv);
    std::vector<Vector> out;
    for (Index x = 0; x < table_.size(); ++x) {
      p.env[0] = x;
      if (eval(p.root, p.env)) out.push_back(table_.element(x));
    }
    return out;
  }

 private:
  FiniteRingTable table_;
  EvalOptions opt_;

  struct Prepared {
    detail::CNode root;
    std::vector<Index> env;
  };

  Prepared prepare(const Formula& f, const std::vector<std::string>& fv) const {
    detail::Compiler c;
    for (const auto& v : fv) c.scope[v].push_back(c.slots++);
    Prepared p{c.formula(f), {}};
    if (opt_.sumset) detail::attach_plans(p.root);
    p.env.assign(static_cast<std::size_t>(c.slots), 0);
    return p;
  }

  Index term(const detail::CTerm& t, const std::vector<Index>& env) const {
    switch (t.kind) {
      case Term::Kind::var: return env[static_cast<std::size_t>(t.slot)];
      case Term::Kind::zero: return 0;
      case Term::Kind::add: {
        Index s = term(t.args[0], env);
        for (std::size_t i = 1; i < t.args.size(); ++i) s = table_.add(s, term(t.args[i], env));
        return s;
      }
      case Term::Kind::sub: return table_.add(term(t.args[0], env), table_.neg(term(t.args[1], env)));
      case Term::Kind::neg: return table_.neg(term(t.args[0], env));
      case Term::Kind::mul: return table_.mul(term(t.args[0], env), term(t.args[1], env));
    }
    return 0;
  }

  /// Calls fn for every assignment of the slots; stops when fn returns false.
  template <class F>
  bool each_assignment(const std::vector<int>& slots, std::vector<Index>& env, F&& fn) const {
    for (int s : slots) env[static_cast<std::size_t>(s)] = 0;
    const Index n = static_cast<Index>(table_.size());
    for (;;) {
      if (!fn()) return false;
      std::size_t i = 0;
      while (i < slots.size()) {
        Index& v = env[static_cast<std::size_t>(slots[i])];
        if (++v < n) break;
        v = 0;
        ++i;
      }
      if (i == slots.size()) return true;
    }
  }

  Index signed_sum(const std::vector<std::pair<int, const detail::CTerm*>>& addends, const std::vector<Index>& env) const {
    Index s = 0;
    for (const auto& [sign, t] : addends) {
      const Index v = term(*t, env);
      s = table_.add(s, sign > 0 ? v : table_.neg(v));
    }
    return s;
  }

  std::vector<char> value_set(const detail::SumComponent& c, std::vector<Index>& env) const {
    std::vector<char> out(table_.size(), 0);
    each_assignment(c.slots, env, [&] {
      out[signed_sum(c.addends, env)] = 1;
      return true;
    });
    return out;
  }

  std::vector<char> sumset(const std::vector<char>& a, const std::vector<char>& b) const {
    std::vector<char> out(table_.size(), 0);
    std::vector<Index> bs;
    for (Index y = 0; y < b.size(); ++y)
      if (b[y]) bs.push_back(y);
    for (Index x = 0; x < a.size(); ++x)
      if (a[x])
        for (Index y : bs) out[table_.add(x, y)] = 1;
    return out;
  }

  std::vector<char> total(const std::vector<detail::SumComponent>& comps, Index shift, std::vector<Index>& env) const {
    std::vector<char> s(table_.size(), 0);
    s[shift] = 1;
    for (const auto& c : comps) s = sumset(s, value_set(c, env));
    return s;
  }

  bool eval_plan(const detail::CNode& q, const detail::SumPlan& p, std::vector<Index>& env) const {
    const Index c = signed_sum(p.constants, env);
    const std::vector<char> outer = total(p.outer, c, env);
    if (!p.nested) {
      if (q.kind == Formula::Kind::exists) return outer[0] != 0;
      for (Index x = 1; x < outer.size(); ++x)
        if (outer[x]) return false;
      return outer[0] != 0;
    }
    const std::vector<char> inner = total(p.inner, 0, env);
    for (Index x = 0; x < outer.size(); ++x)
      if (outer[x] && !inner[table_.neg(x)]) return false;
    return true;
  }

  bool eval(const detail::CNode& n, std::vector<Index>& env) const {
    using K = Formula::Kind;
    switch (n.kind) {
      case K::truth: return true;
      case K::falsity: return false;
      case K::eq: return term(n.terms[0], env) == term(n.terms[1], env);
      case K::not_: return !eval(n.subs[0], env);
      case K::and_:
        for (const auto& s : n.subs)
          if (!eval(s, env)) return false;
        return true;
      case K::or_:
        for (const auto& s : n.subs)
          if (eval(s, env)) return true;
        return false;
      case K::implies: return !eval(n.subs[0], env) || eval(n.subs[1], env);
      case K::exists:
      case K::forall: {
        if (n.plan) return eval_plan(n, *n.plan, env);
        const bool ex = n.kind == K::exists;
        bool hit = false;
        each_assignment(n.slots, env, [&] {
          const bool v = eval(n.subs[0], env);
          if (v == ex) {
            hit = true;
            return false;
          }
          return true;
        });
        return ex ? hit : !hit;
      }
    }
    return false;
  }
};

inline bool evaluate(const FdzRing& a, const Formula& f, const std::map<std::string, Vector>& assignment = {},
                     const EvalOptions& opt = {}) {
  return ModelChecker(a, opt).evaluate(f, assignment);
}

inline std::vector<Vector> defined_set(const FdzRing& a, const Formula& f, const EvalOptions& opt = {}) {
  return ModelChecker(a, opt).defined_set(f);
}

}  // namespace fdz
