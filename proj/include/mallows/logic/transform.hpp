#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mallows/logic/formula.hpp"

namespace mallows::logic {

// a is at or before b in the position order: a <1 b | a = b.
inline FormulaPtr le1(const std::string& a, const std::string& b) {
  return or_(lt1(a, b), eq(a, b));
}

// y is the k-th successor of x in the chosen order (1 = positions,
// 2 = images): x + k = y for order 1, p(x) + k = p(y) for order 2.
// Built as a chain of immediate-successor formulas through fresh
// intermediate variables, so the quantifier depth of the result is k.
inline FormulaPtr succ_formula(int order, int k, const std::string& x,
                               const std::string& y) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("succ_formula: order must be 1 or 2");
  if (k < 1) throw std::invalid_argument("succ_formula: k must be >= 1");
  const auto lt = [order](std::string a, std::string b) {
    return order == 1 ? lt1(std::move(a), std::move(b))
                      : lt2(std::move(a), std::move(b));
  };

  std::set<std::string> taken = {x, y};
  const auto immediate = [&](const std::string& a, const std::string& b) {
    const std::string w = fresh_name("w", taken);
    return and_(lt(a, b), not_(exists(w, and_(lt(a, w), lt(w, b)))));
  };

  // Hop names x -> s1 -> s2 -> ... -> y.
  std::vector<std::string> hops = {x};
  for (int i = 1; i < k; ++i) {
    const std::string s = fresh_name("s", taken);
    taken.insert(s);
    hops.push_back(s);
  }
  hops.push_back(y);

  FormulaPtr body = immediate(hops[k - 1], hops[k]);
  for (int i = k - 1; i >= 1; --i)
    body = exists(hops[i], and_(immediate(hops[i - 1], hops[i]), body));
  return body;
}

namespace detail {

inline void require_toto(const FormulaPtr& f) {
  if (uses_relation(f, Rel::R)) throw std::invalid_argument("TOTO only");
}

inline FormulaPtr relativize_with(const FormulaPtr& f, const std::string& y) {
  switch (f->kind) {
    case Kind::Atom:
      return f;
    case Kind::Not:
      return not_(relativize_with(f->child, y));
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return Formula::make_binary(f->kind, relativize_with(f->left, y),
                                  relativize_with(f->right, y));
    case Kind::Exists:
      return exists(f->var,
                    and_(le1(f->var, y), relativize_with(f->child, y)));
    case Kind::ForAll:
      return forall(f->var,
                    implies(le1(f->var, y), relativize_with(f->child, y)));
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

// The variable name relativize(f) introduces: the first of y, y1, y2, ...
// not occurring anywhere in f.
inline std::string relativize_bound_name(const FormulaPtr& f) {
  return fresh_name("y", all_variable_names(f));
}

// phi -> phi-restricted: a formula with one extra free variable y such that
// phi-restricted(y := j, xs) holds on p exactly when phi(xs) holds on the
// pattern of the first j positions of p. Every quantifier is guarded by
// "bound variable <=_1 y"; atoms survive unchanged because both orders
// restrict to induced suborders.
inline FormulaPtr relativize(const FormulaPtr& f) {
  detail::require_toto(f);
  return detail::relativize_with(f, relativize_bound_name(f));
}

// Rename free occurrences of `from` to `to`. `to` must not occur in f at
// all (the callers always pick it fresh), which rules out capture.
inline FormulaPtr substitute_variable(const FormulaPtr& f,
                                      const std::string& from,
                                      const std::string& to) {
  if (from == to) return f;
  if (all_variable_names(f).count(to))
    throw std::invalid_argument("substitute_variable: '" + to +
                                "' already occurs");
  struct Walk {
    const std::string& from;
    const std::string& to;
    FormulaPtr go(const FormulaPtr& f) const {
      switch (f->kind) {
        case Kind::Atom:
          return Formula::make_atom(f->rel, f->lhs == from ? to : f->lhs,
                                    f->rhs == from ? to : f->rhs);
        case Kind::Not:
          return not_(go(f->child));
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff:
          return Formula::make_binary(f->kind, go(f->left), go(f->right));
        case Kind::Exists:
        case Kind::ForAll:
          // A binder for `from` shadows it; leave that subtree alone.
          if (f->var == from) return f;
          return Formula::make_quant(f->kind, f->var, go(f->child));
      }
      throw std::logic_error("unreachable");
    }
  };
  return Walk{from, to}.go(f);
}

// Restrict f to the prefix selected by the predicate xi: builds
//   exists z. xi(z) & (x_1 <=_1 z) & ... & (x_k <=_1 z) & f-restricted(z)
// where the x_l are the free variables of f. When xi has a unique witness
// j, the result holds exactly when f holds on the pattern of the first j
// positions (for free-variable values <= j).
inline FormulaPtr relativize_to_witness(const FormulaPtr& xi,
                                        const FormulaPtr& f) {
  detail::require_toto(xi);
  detail::require_toto(f);
  const auto xi_free = free_variables(xi);
  if (xi_free.size() != 1)
    throw std::invalid_argument(
        "relativize_to_witness: xi must have exactly one free variable");

  std::set<std::string> taken = all_variable_names(xi);
  for (const auto& name : all_variable_names(f)) taken.insert(name);
  const std::string z = fresh_name("z", taken);

  std::vector<FormulaPtr> parts = {
      substitute_variable(xi, *xi_free.begin(), z)};
  for (const auto& x : free_variables(f)) parts.push_back(le1(x, z));
  parts.push_back(detail::relativize_with(f, z));
  return exists(z, conjunction(std::move(parts)));
}

// Mirror of f under value complement: evaluate(p, f, a) holds exactly when
// evaluate(reverse(p), reverse_formula(f), a) does. Positions are untouched
// by the complement, so only the image-order atoms swap their arguments.
inline FormulaPtr reverse_formula(const FormulaPtr& f) {
  detail::require_toto(f);
  struct Walk {
    FormulaPtr go(const FormulaPtr& f) const {
      switch (f->kind) {
        case Kind::Atom:
          if (f->rel == Rel::Lt2)
            return Formula::make_atom(Rel::Lt2, f->rhs, f->lhs);
          return f;
        case Kind::Not:
          return not_(go(f->child));
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff:
          return Formula::make_binary(f->kind, go(f->left), go(f->right));
        case Kind::Exists:
        case Kind::ForAll:
          return Formula::make_quant(f->kind, f->var, go(f->child));
      }
      throw std::logic_error("unreachable");
    }
  };
  return Walk{}.go(f);
}

}  // namespace mallows::logic
