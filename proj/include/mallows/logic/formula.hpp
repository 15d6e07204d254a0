#pragma once

#include <algorithm>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mallows::logic {

// The two first-order languages interpreted on a permutation:
//   TOOB - equality plus one binary relation R, R(x,y) iff p(x) = y;
//   TOTO - equality plus two total orders, x <1 y on positions and
//          x <2 y on images (p(x) < p(y)).
enum class Signature { TOOB, TOTO };

enum class Rel { Eq, R, Lt1, Lt2 };

enum class Kind { Atom, Not, And, Or, Implies, Iff, Exists, ForAll };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Implies and Iff are primitive connectives, not
// sugar, so quantifier depth follows the textbook recursion exactly.
class Formula {
 public:
  Kind kind;
  // Atom payload.
  Rel rel = Rel::Eq;
  std::string lhs, rhs;
  // Not uses child; binary connectives use left/right; quantifiers use
  // var + child.
  FormulaPtr left, right, child;
  std::string var;

  static FormulaPtr make_atom(Rel rel, std::string a, std::string b) {
    auto f = std::make_shared<Formula>();
    f->kind = Kind::Atom;
    f->rel = rel;
    f->lhs = std::move(a);
    f->rhs = std::move(b);
    return f;
  }
  static FormulaPtr make_unary(Kind k, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->child = std::move(body);
    return f;
  }
  static FormulaPtr make_binary(Kind k, FormulaPtr l, FormulaPtr r) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->left = std::move(l);
    f->right = std::move(r);
    return f;
  }
  static FormulaPtr make_quant(Kind k, std::string v, FormulaPtr body) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->var = std::move(v);
    f->child = std::move(body);
    return f;
  }
};

inline FormulaPtr eq(std::string a, std::string b) {
  return Formula::make_atom(Rel::Eq, std::move(a), std::move(b));
}
inline FormulaPtr rel_r(std::string a, std::string b) {
  return Formula::make_atom(Rel::R, std::move(a), std::move(b));
}
inline FormulaPtr lt1(std::string a, std::string b) {
  return Formula::make_atom(Rel::Lt1, std::move(a), std::move(b));
}
inline FormulaPtr lt2(std::string a, std::string b) {
  return Formula::make_atom(Rel::Lt2, std::move(a), std::move(b));
}
inline FormulaPtr not_(FormulaPtr f) {
  return Formula::make_unary(Kind::Not, std::move(f));
}
inline FormulaPtr and_(FormulaPtr l, FormulaPtr r) {
  return Formula::make_binary(Kind::And, std::move(l), std::move(r));
}
inline FormulaPtr or_(FormulaPtr l, FormulaPtr r) {
  return Formula::make_binary(Kind::Or, std::move(l), std::move(r));
}
inline FormulaPtr implies(FormulaPtr l, FormulaPtr r) {
  return Formula::make_binary(Kind::Implies, std::move(l), std::move(r));
}
inline FormulaPtr iff(FormulaPtr l, FormulaPtr r) {
  return Formula::make_binary(Kind::Iff, std::move(l), std::move(r));
}
inline FormulaPtr exists(std::string v, FormulaPtr body) {
  return Formula::make_quant(Kind::Exists, std::move(v), std::move(body));
}
inline FormulaPtr forall(std::string v, FormulaPtr body) {
  return Formula::make_quant(Kind::ForAll, std::move(v), std::move(body));
}

// Left-nested conjunction/disjunction of a non-empty list.
inline FormulaPtr conjunction(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw std::invalid_argument("conjunction of nothing");
  FormulaPtr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = and_(acc, fs[i]);
  return acc;
}
inline FormulaPtr disjunction(std::vector<FormulaPtr> fs) {
  if (fs.empty()) throw std::invalid_argument("disjunction of nothing");
  FormulaPtr acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = or_(acc, fs[i]);
  return acc;
}

// Quantifier depth: atoms 0, negation transparent, connectives take the max,
// quantifiers add one.
inline int depth(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::Atom:
      return 0;
    case Kind::Not:
      return depth(f->child);
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return std::max(depth(f->left), depth(f->right));
    case Kind::Exists:
    case Kind::ForAll:
      return 1 + depth(f->child);
  }
  throw std::logic_error("depth: bad node");
}

namespace detail {
inline void collect_free(const FormulaPtr& f, std::vector<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f->kind) {
    case Kind::Atom:
      for (const auto* name : {&f->lhs, &f->rhs})
        if (std::find(bound.begin(), bound.end(), *name) == bound.end())
          out.insert(*name);
      return;
    case Kind::Not:
      collect_free(f->child, bound, out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      collect_free(f->left, bound, out);
      collect_free(f->right, bound, out);
      return;
    case Kind::Exists:
    case Kind::ForAll:
      bound.push_back(f->var);
      collect_free(f->child, bound, out);
      bound.pop_back();
      return;
  }
}

inline void collect_all_names(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case Kind::Atom:
      out.insert(f->lhs);
      out.insert(f->rhs);
      return;
    case Kind::Not:
      collect_all_names(f->child, out);
      return;
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      collect_all_names(f->left, out);
      collect_all_names(f->right, out);
      return;
    case Kind::Exists:
    case Kind::ForAll:
      out.insert(f->var);
      collect_all_names(f->child, out);
      return;
  }
}
}  // namespace detail

inline std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  detail::collect_free(f, bound, out);
  return out;
}

// Every variable name occurring anywhere (free or bound); used to generate
// fresh names deterministically.
inline std::set<std::string> all_variable_names(const FormulaPtr& f) {
  std::set<std::string> out;
  detail::collect_all_names(f, out);
  return out;
}

// First name of the family base, base1, base2, ... absent from `taken`.
inline std::string fresh_name(const std::string& base,
                              const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Atom:
      return a->rel == b->rel && a->lhs == b->lhs && a->rhs == b->rhs;
    case Kind::Not:
      return equal(a->child, b->child);
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return equal(a->left, b->left) && equal(a->right, b->right);
    case Kind::Exists:
    case Kind::ForAll:
      return a->var == b->var && equal(a->child, b->child);
  }
  return false;
}

inline bool uses_relation(const FormulaPtr& f, Rel rel) {
  switch (f->kind) {
    case Kind::Atom:
      return f->rel == rel;
    case Kind::Not:
      return uses_relation(f->child, rel);
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return uses_relation(f->left, rel) || uses_relation(f->right, rel);
    case Kind::Exists:
    case Kind::ForAll:
      return uses_relation(f->child, rel);
  }
  return false;
}

namespace detail {

// Binding strength, loosest first. Quantifiers are level 0: they scope
// maximally right and need parentheses under any connective.
inline int level(Kind k) {
  switch (k) {
    case Kind::Exists:
    case Kind::ForAll:
      return 0;
    case Kind::Iff:
      return 1;
    case Kind::Implies:
      return 2;
    case Kind::Or:
      return 3;
    case Kind::And:
      return 4;
    case Kind::Not:
      return 5;
    case Kind::Atom:
      return 6;
  }
  return 6;
}

inline void render_to(const FormulaPtr& f, int min_level, std::string& out) {
  const int lv = level(f->kind);
  const bool parens = lv < min_level;
  if (parens) out += '(';
  switch (f->kind) {
    case Kind::Atom:
      if (f->rel == Rel::R) {
        out += "R(";
        out += f->lhs;
        out += ',';
        out += f->rhs;
        out += ')';
      } else {
        out += f->lhs;
        out += (f->rel == Rel::Eq) ? " = " : (f->rel == Rel::Lt1 ? " <1 " : " <2 ");
        out += f->rhs;
      }
      break;
    case Kind::Not:
      out += '~';
      render_to(f->child, level(Kind::Not), out);
      break;
    case Kind::And:
      render_to(f->left, lv, out);
      out += " & ";
      render_to(f->right, lv + 1, out);
      break;
    case Kind::Or:
      render_to(f->left, lv, out);
      out += " | ";
      render_to(f->right, lv + 1, out);
      break;
    case Kind::Implies:  // right-associative
      render_to(f->left, lv + 1, out);
      out += " -> ";
      render_to(f->right, lv, out);
      break;
    case Kind::Iff:
      render_to(f->left, lv, out);
      out += " <-> ";
      render_to(f->right, lv + 1, out);
      break;
    case Kind::Exists:
    case Kind::ForAll:
      out += (f->kind == Kind::Exists) ? "exists " : "forall ";
      out += f->var;
      out += ". ";
      render_to(f->child, 0, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace detail

// Concrete syntax that parses back to exactly the same tree: minimal
// parentheses given the precedence ladder ~ > & > | > -> > <->, with
// quantified subformulas parenthesized whenever they sit under a connective.
inline std::string render(const FormulaPtr& f) {
  std::string out;
  detail::render_to(f, 0, out);
  return out;
}

}  // namespace mallows::logic
