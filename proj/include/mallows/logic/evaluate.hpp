#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mallows/logic/formula.hpp"
#include "mallows/permutation.hpp"

namespace mallows::logic {

// Variable environment for evaluation. Bindings are pushed on quantifier
// entry and popped on exit; lookup scans from the back so inner bindings
// shadow outer ones.
using Assignment = std::vector<std::pair<std::string, int>>;

namespace detail {

inline int lookup(const Assignment& env, const std::string& name) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == name) return it->second;
  }
  throw std::invalid_argument("unbound variable '" + name + "'");
}

inline bool eval_atom(const Permutation& p, const Formula& f,
                      const Assignment& env) {
  const int a = lookup(env, f.lhs);
  const int b = lookup(env, f.rhs);
  switch (f.rel) {
    case Rel::Eq:
      return a == b;
    case Rel::R:
      return p(a) == b;
    case Rel::Lt1:
      return a < b;
    case Rel::Lt2:
      return p(a) < p(b);
  }
  throw std::logic_error("unreachable");
}

}  // namespace detail

// Plain recursive evaluation over the domain {1, ..., n}. On the empty
// permutation every existential is false and every universal is true.
inline bool evaluate(const Permutation& p, const FormulaPtr& f,
                     Assignment& env) {
  switch (f->kind) {
    case Kind::Atom:
      return detail::eval_atom(p, *f, env);
    case Kind::Not:
      return !evaluate(p, f->child, env);
    case Kind::And:
      return evaluate(p, f->left, env) && evaluate(p, f->right, env);
    case Kind::Or:
      return evaluate(p, f->left, env) || evaluate(p, f->right, env);
    case Kind::Implies:
      return !evaluate(p, f->left, env) || evaluate(p, f->right, env);
    case Kind::Iff:
      return evaluate(p, f->left, env) == evaluate(p, f->right, env);
    case Kind::Exists: {
      env.emplace_back(f->var, 0);
      bool found = false;
      for (int v = 1; v <= p.size() && !found; ++v) {
        env.back().second = v;
        found = evaluate(p, f->child, env);
      }
      env.pop_back();
      return found;
    }
    case Kind::ForAll: {
      env.emplace_back(f->var, 0);
      bool all = true;
      for (int v = 1; v <= p.size() && all; ++v) {
        env.back().second = v;
        all = evaluate(p, f->child, env);
      }
      env.pop_back();
      return all;
    }
  }
  throw std::logic_error("unreachable");
}

inline bool evaluate(const Permutation& p, const FormulaPtr& f) {
  Assignment env;
  return evaluate(p, f, env);
}

// Evaluator with per-node memoization. Quantifier subformulas are cached
// keyed by the values their free variables take, which turns the repeated
// subtrees produced by the sentence builders from exponential re-evaluation
// into table lookups. Intended for small n (the caches are per-permutation).
class MemoEvaluator {
 public:
  explicit MemoEvaluator(Permutation p) : p_(std::move(p)) {}

  bool operator()(const FormulaPtr& f) {
    Assignment env;
    return eval(f, env);
  }

  bool eval(const FormulaPtr& f, Assignment& env) {
    switch (f->kind) {
      case Kind::Atom:
        return detail::eval_atom(p_, *f, env);
      case Kind::Not:
        return !eval(f->child, env);
      case Kind::And:
        return eval(f->left, env) && eval(f->right, env);
      case Kind::Or:
        return eval(f->left, env) || eval(f->right, env);
      case Kind::Implies:
        return !eval(f->left, env) || eval(f->right, env);
      case Kind::Iff:
        return eval(f->left, env) == eval(f->right, env);
      case Kind::Exists:
      case Kind::ForAll:
        return eval_quant(f, env);
    }
    throw std::logic_error("unreachable");
  }

 private:
  bool eval_quant(const FormulaPtr& f, Assignment& env) {
    std::vector<int> key;
    const auto& names = free_names(f);
    key.reserve(names.size());
    for (const auto& name : names) key.push_back(detail::lookup(env, name));

    auto& table = memo_[f.get()];
    if (auto it = table.find(key); it != table.end()) return it->second;

    const bool want = f->kind == Kind::Exists;
    env.emplace_back(f->var, 0);
    bool result = !want;
    for (int v = 1; v <= p_.size() && result != want; ++v) {
      env.back().second = v;
      result = eval(f->child, env);
    }
    env.pop_back();
    table.emplace(std::move(key), result);
    return result;
  }

  const std::vector<std::string>& free_names(const FormulaPtr& f) {
    auto it = free_cache_.find(f.get());
    if (it == free_cache_.end()) {
      auto vars = free_variables(f);
      it = free_cache_
               .emplace(f.get(),
                        std::vector<std::string>(vars.begin(), vars.end()))
               .first;
    }
    return it->second;
  }

  Permutation p_;
  std::unordered_map<const Formula*, std::vector<std::string>> free_cache_;
  std::unordered_map<const Formula*, std::map<std::vector<int>, bool>> memo_;
};

}  // namespace mallows::logic
