#pragma once

// TOTO formula constructions that mirror the interval statistics: run
// membership (zeta), the first-consecutive-pair witnesses (xi for j1, psi for
// k1), the endpoint comparison rho, and the oscillation sentence with its
// graph-encoding machinery (omega, universal phi).
//
// Each helper that introduces bound variables picks them fresh against a
// `taken` set threaded from the caller, so nested constructions never capture
// an enclosing name.

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mallows/logic/formula.hpp"
#include "mallows/logic/transform.hpp"

namespace mallows::stats {

// Formula vocabulary from the logic module.
using logic::FormulaPtr;
using logic::and_;
using logic::conjunction;
using logic::eq;
using logic::exists;
using logic::forall;
using logic::fresh_name;
using logic::iff;
using logic::implies;
using logic::le1;
using logic::lt1;
using logic::lt2;
using logic::not_;
using logic::or_;
using logic::relativize_to_witness;
using logic::reverse_formula;
using logic::succ_formula;

namespace detail {

// Endpoint pair naming one interval of positions.
struct IvNames {
  std::string lo;
  std::string hi;
};

inline FormulaPtr in_interval(const std::string& x, const IvNames& iv) {
  return and_(le1(iv.lo, x), le1(x, iv.hi));
}

// x lies in W_k of the positions satisfying `inside`: x and the k-1 positions
// carrying the next k-1 values all satisfy it. `inside` is instantiated per
// chain variable, so it can be any one-variable predicate.
template <typename Pred>
FormulaPtr zeta_chain(int k, const std::string& x, const Pred& inside,
                      std::set<std::string> taken) {
  if (k < 1) throw std::invalid_argument("zeta: k must be >= 1");
  taken.insert(x);
  std::vector<std::string> hops;
  for (int i = 0; i < k - 1; ++i) {
    std::string c = fresh_name("c", taken);
    taken.insert(c);
    hops.push_back(c);
  }
  FormulaPtr rest;
  for (int i = k - 2; i >= 0; --i) {
    const std::string& cur = hops[static_cast<std::size_t>(i)];
    const std::string& prev = i == 0 ? x : hops[static_cast<std::size_t>(i - 1)];
    std::vector<FormulaPtr> parts{inside(cur), succ_formula(2, 1, prev, cur)};
    if (rest) parts.push_back(rest);
    rest = exists(cur, conjunction(parts));
  }
  FormulaPtr head = inside(x);
  return rest ? and_(head, rest) : head;
}

inline FormulaPtr zeta_on(int k, const std::string& x, const IvNames& iv,
                          std::set<std::string> taken) {
  taken.insert(iv.lo);
  taken.insert(iv.hi);
  return zeta_chain(
      k, x, [&iv](const std::string& v) { return in_interval(v, iv); },
      std::move(taken));
}

// Prefix variant: the interval is "positions <=_1 b".
inline FormulaPtr zeta_prefix(int k, const std::string& x,
                              const std::string& b,
                              std::set<std::string> taken) {
  taken.insert(b);
  return zeta_chain(
      k, x, [&b](const std::string& v) { return le1(v, b); },
      std::move(taken));
}

// ---- Gap vertices -------------------------------------------------------
//
// The minimal intervals of I are the gaps between consecutive W_k(I) points,
// so a gap is identified by its left delimiter: any W_k point that has a
// later W_k point. All graph formulas below quantify over these delimiters.

// u is a W_k(I) point with a successor in W_k(I).
inline FormulaPtr gap_vertex(int k, const std::string& u, const IvNames& iv,
                             std::set<std::string> taken) {
  taken.insert(u);
  taken.insert(iv.lo);
  taken.insert(iv.hi);
  std::string v = fresh_name("v", taken);
  taken.insert(v);
  return and_(zeta_on(k, u, iv, taken),
              exists(v, and_(zeta_on(k, v, iv, taken), lt1(u, v))));
}

// x lies strictly inside the gap that starts at u: after u, with no W_k(I)
// point in (u, x].
inline FormulaPtr in_gap(int k, const std::string& x, const std::string& u,
                         const IvNames& iv, std::set<std::string> taken) {
  taken.insert(x);
  taken.insert(u);
  taken.insert(iv.lo);
  taken.insert(iv.hi);
  std::string w = fresh_name("w", taken);
  taken.insert(w);
  FormulaPtr blocker =
      exists(w, conjunction({zeta_on(k, w, iv, taken), lt1(u, w), le1(w, x)}));
  return and_(lt1(u, x), not_(blocker));
}

inline FormulaPtr gap_first(int k, const std::string& u, const IvNames& iv,
                            std::set<std::string> taken) {
  taken.insert(u);
  taken.insert(iv.lo);
  taken.insert(iv.hi);
  std::string r = fresh_name("r", taken);
  taken.insert(r);
  return and_(gap_vertex(k, u, iv, taken),
              not_(exists(r, and_(gap_vertex(k, r, iv, taken), lt1(r, u)))));
}

// u2 is the gap vertex directly after u.
inline FormulaPtr gap_succ(int k, const std::string& u, const std::string& u2,
                           const IvNames& iv, std::set<std::string> taken) {
  taken.insert(u);
  taken.insert(u2);
  taken.insert(iv.lo);
  taken.insert(iv.hi);
  std::string r = fresh_name("r", taken);
  taken.insert(r);
  FormulaPtr between = exists(
      r, conjunction({gap_vertex(k, r, iv, taken), lt1(u, r), lt1(r, u2)}));
  return conjunction({gap_vertex(k, u, iv, taken),
                      gap_vertex(k, u2, iv, taken), lt1(u, u2),
                      not_(between)});
}

// yv is the y-value of the gap at h (within hv) against the gap at g (within
// gv): the successor value of the first position in gap(h) whose successor
// value lands in gap(g).
inline FormulaPtr y_value(int k, const std::string& yv, const std::string& h,
                          const IvNames& hv, const std::string& g,
                          const IvNames& gv, std::set<std::string> taken) {
  for (const std::string& s : {yv, h, hv.lo, hv.hi, g, gv.lo, gv.hi})
    taken.insert(s);
  std::string xv = fresh_name("p", taken);
  taken.insert(xv);
  std::string x2 = fresh_name("p", taken);
  taken.insert(x2);
  std::string y2 = fresh_name("q", taken);
  taken.insert(y2);
  FormulaPtr earlier_hit = exists(
      y2, and_(succ_formula(2, 1, x2, y2), in_gap(k, y2, g, gv, taken)));
  FormulaPtr minimality = forall(
      x2, implies(and_(in_gap(k, x2, h, hv, taken), lt1(x2, xv)),
                  not_(earlier_hit)));
  return exists(xv, conjunction({in_gap(k, xv, h, hv, taken),
                                 succ_formula(2, 1, xv, yv),
                                 in_gap(k, yv, g, gv, taken), minimality}));
}

// Arc e -> f in the graph induced on the gaps of I by the gaps of J: some gap
// g of J gives every gap of I a y-value, with e's the smallest and f's the
// largest.
inline FormulaPtr gap_arc(int k, const std::string& e, const std::string& f,
                          const IvNames& iv, const IvNames& jv,
                          std::set<std::string> taken) {
  for (const std::string& s : {e, f, iv.lo, iv.hi, jv.lo, jv.hi})
    taken.insert(s);
  std::string g = fresh_name("g", taken);
  taken.insert(g);
  std::string ye = fresh_name("y", taken);
  taken.insert(ye);
  std::string yf = fresh_name("y", taken);
  taken.insert(yf);
  std::string h = fresh_name("h", taken);
  taken.insert(h);
  std::string yh = fresh_name("y", taken);
  taken.insert(yh);
  FormulaPtr all_between = forall(
      h, implies(gap_vertex(k, h, iv, taken),
                 exists(yh, conjunction({y_value(k, yh, h, iv, g, jv, taken),
                                         le1(ye, yh), le1(yh, yf)}))));
  FormulaPtr core = exists(
      ye, exists(yf, conjunction({y_value(k, ye, e, iv, g, jv, taken),
                                  y_value(k, yf, f, iv, g, jv, taken),
                                  lt1(ye, yf), all_between})));
  return conjunction({gap_vertex(k, e, iv, taken),
                      gap_vertex(k, f, iv, taken),
                      exists(g, and_(gap_vertex(k, g, jv, taken), core))});
}

// ---- Arithmetic clauses -------------------------------------------------
//
// The recursion "R(1,j) <-> j=2, and R(i,j) for i>1 <-> R(i',j') one step
// back" instantiated on gap vertices. `step` expresses how j' relates to j:
// two gap-successor steps for the doubling graph, and the previous graph's
// arc for the others.

template <typename Step>
FormulaPtr arith_recursion(int k, const IvNames& iv, const IvNames& hi,
                           const Step& step, std::set<std::string> taken) {
  for (const std::string& s : {iv.lo, iv.hi, hi.lo, hi.hi}) taken.insert(s);
  std::string e = fresh_name("e", taken);
  taken.insert(e);
  std::string f = fresh_name("f", taken);
  taken.insert(f);
  std::string u = fresh_name("u", taken);
  taken.insert(u);
  std::string e2 = fresh_name("e", taken);
  taken.insert(e2);
  std::string f2 = fresh_name("f", taken);
  taken.insert(f2);

  FormulaPtr from_first =
      exists(u, and_(gap_first(k, u, iv, taken), gap_arc(k, u, f, iv, hi, taken)));
  FormulaPtr is_second =
      exists(u, and_(gap_first(k, u, iv, taken), gap_succ(k, u, f, iv, taken)));
  FormulaPtr base = forall(
      f, implies(gap_vertex(k, f, iv, taken), iff(from_first, is_second)));

  FormulaPtr prior = exists(
      e2, exists(f2, conjunction({gap_succ(k, e2, e, iv, taken),
                                  step(f2, f, taken),
                                  gap_arc(k, e2, f2, iv, hi, taken)})));
  FormulaPtr inductive = forall(
      e, forall(f, implies(and_(gap_vertex(k, e, iv, taken),
                                gap_vertex(k, f, iv, taken)),
                           iff(and_(gap_arc(k, e, f, iv, hi, taken),
                                    not_(gap_first(k, e, iv, taken))),
                               prior))));
  return and_(base, inductive);
}

// The four graphs induced by J_D, J_E, J_T, J_W on the gaps of I encode
// doubling, powers, towers and wowzers.
inline FormulaPtr arith_formula(int k, const IvNames& iv, const IvNames& jd,
                                const IvNames& je, const IvNames& jt,
                                const IvNames& jw,
                                const std::set<std::string>& taken) {
  auto double_succ = [k, &iv](const std::string& a, const std::string& b,
                              std::set<std::string> inner) {
    inner.insert(a);
    inner.insert(b);
    std::string m = fresh_name("m", inner);
    inner.insert(m);
    return exists(m, and_(gap_succ(k, a, m, iv, inner),
                          gap_succ(k, m, b, iv, inner)));
  };
  auto arc_step = [k, &iv](const IvNames& via) {
    return [k, &iv, via](const std::string& a, const std::string& b,
                         std::set<std::string> inner) {
      return gap_arc(k, a, b, iv, via, std::move(inner));
    };
  };
  return conjunction({arith_recursion(k, iv, jd, double_succ, taken),
                      arith_recursion(k, iv, je, arc_step(jd), taken),
                      arith_recursion(k, iv, jt, arc_step(je), taken),
                      arith_recursion(k, iv, jw, arc_step(jt), taken)});
}

// log** log** of the vertex count is even: take the largest x reachable by a
// two-step wowzer chain z -> y -> x; if x is the last vertex the count's
// double-log-star is z and parity is read off the doubling graph at z,
// otherwise it is z+1 and the parity flips.
inline FormulaPtr even_size_formula(int k, const IvNames& iv,
                                    const IvNames& jd, const IvNames& jw,
                                    std::set<std::string> taken) {
  for (const std::string& s : {iv.lo, iv.hi, jd.lo, jd.hi, jw.lo, jw.hi})
    taken.insert(s);
  std::string x = fresh_name("a", taken);
  taken.insert(x);
  std::string y = fresh_name("b", taken);
  taken.insert(y);
  std::string z = fresh_name("d", taken);
  taken.insert(z);
  std::string x2 = fresh_name("a", taken);
  taken.insert(x2);
  std::string y2 = fresh_name("b", taken);
  taken.insert(y2);
  std::string z2 = fresh_name("d", taken);
  taken.insert(z2);
  std::string w = fresh_name("w", taken);
  taken.insert(w);

  FormulaPtr chain2 = exists(
      y2, exists(z2, and_(gap_arc(k, y2, x2, iv, jw, taken),
                          gap_arc(k, z2, y2, iv, jw, taken))));
  FormulaPtr largest =
      forall(x2, implies(and_(gap_vertex(k, x2, iv, taken), chain2),
                         le1(x2, x)));
  FormulaPtr is_last =
      not_(exists(w, and_(gap_vertex(k, w, iv, taken), lt1(x, w))));
  FormulaPtr z_even =
      exists(w, and_(gap_vertex(k, w, iv, taken), gap_arc(k, w, z, iv, jd, taken)));
  FormulaPtr parity = or_(and_(is_last, z_even),
                          and_(not_(is_last), not_(z_even)));
  return exists(
      x, exists(y, exists(z, conjunction({gap_arc(k, y, x, iv, jw, taken),
                                          gap_arc(k, z, y, iv, jw, taken),
                                          largest, parity}))));
}

// ---- Bigger -------------------------------------------------------------

// y-value of a combined vertex h, which may be a gap of I or of I'.
inline FormulaPtr y_value_any(int k, const std::string& yv,
                              const std::string& h, const IvNames& iv,
                              const IvNames& ip, const std::string& g,
                              const IvNames& jv,
                              const std::set<std::string>& taken) {
  return or_(and_(gap_vertex(k, h, iv, taken),
                  y_value(k, yv, h, iv, g, jv, taken)),
             and_(gap_vertex(k, h, ip, taken),
                  y_value(k, yv, h, ip, g, jv, taken)));
}

// Arc e -> f in the graph on the combined gaps of I and I' induced by the
// gaps of J = (ja, jb).
inline FormulaPtr combined_arc(int k, const std::string& e,
                               const std::string& f, const IvNames& iv,
                               const IvNames& ip, const IvNames& jv,
                               std::set<std::string> taken) {
  for (const std::string& s : {e, f, iv.lo, iv.hi, ip.lo, ip.hi, jv.lo, jv.hi})
    taken.insert(s);
  std::string g = fresh_name("g", taken);
  taken.insert(g);
  std::string ye = fresh_name("y", taken);
  taken.insert(ye);
  std::string yf = fresh_name("y", taken);
  taken.insert(yf);
  std::string h = fresh_name("h", taken);
  taken.insert(h);
  std::string yh = fresh_name("y", taken);
  taken.insert(yh);
  FormulaPtr is_vertex = or_(gap_vertex(k, h, iv, taken),
                             gap_vertex(k, h, ip, taken));
  FormulaPtr all_between = forall(
      h, implies(is_vertex,
                 exists(yh, conjunction(
                                {y_value_any(k, yh, h, iv, ip, g, jv, taken),
                                 le1(ye, yh), le1(yh, yf)}))));
  FormulaPtr core = exists(
      ye, exists(yf, conjunction(
                         {y_value_any(k, ye, e, iv, ip, g, jv, taken),
                          y_value_any(k, yf, f, iv, ip, g, jv, taken),
                          lt1(ye, yf), all_between})));
  return conjunction(
      {or_(gap_vertex(k, e, iv, taken), gap_vertex(k, e, ip, taken)),
       or_(gap_vertex(k, f, iv, taken), gap_vertex(k, f, ip, taken)),
       exists(g, and_(gap_vertex(k, g, jv, taken), core))});
}

// Some interval J makes the combined induced graph a matching of the gaps of
// I' into the gaps of I that misses at least one gap of I. This is how the
// sentence compares |I_k(I)| and |I_k(I')|.
inline FormulaPtr bigger_formula(int k, const IvNames& iv, const IvNames& ip,
                                 std::set<std::string> taken) {
  for (const std::string& s : {iv.lo, iv.hi, ip.lo, ip.hi}) taken.insert(s);
  std::string ja = fresh_name("j", taken);
  taken.insert(ja);
  std::string jb = fresh_name("j", taken);
  taken.insert(jb);
  IvNames jv{ja, jb};
  std::string e = fresh_name("e", taken);
  taken.insert(e);
  std::string f = fresh_name("f", taken);
  taken.insert(f);
  std::string e2 = fresh_name("e", taken);
  taken.insert(e2);
  std::string f2 = fresh_name("f", taken);
  taken.insert(f2);

  auto arc = [&](const std::string& s, const std::string& t,
                 const std::set<std::string>& inner) {
    return combined_arc(k, s, t, iv, ip, jv, inner);
  };

  FormulaPtr arcs_b_to_a = forall(
      e, forall(f, implies(arc(e, f, taken),
                           and_(gap_vertex(k, e, ip, taken),
                                gap_vertex(k, f, iv, taken)))));
  FormulaPtr out_exists =
      forall(e, implies(gap_vertex(k, e, ip, taken),
                        exists(f, arc(e, f, taken))));
  FormulaPtr out_unique = forall(
      e, forall(f, forall(f2, implies(and_(arc(e, f, taken),
                                           arc(e, f2, taken)),
                                      eq(f, f2)))));
  FormulaPtr in_unique = forall(
      f, forall(e, forall(e2, implies(and_(arc(e, f, taken),
                                           arc(e2, f, taken)),
                                      eq(e, e2)))));
  FormulaPtr missed = exists(
      f, and_(gap_vertex(k, f, iv, taken),
              not_(exists(e, arc(e, f, taken)))));
  return exists(
      ja, exists(jb, conjunction({le1(ja, jb), arcs_b_to_a, out_exists,
                                  out_unique, in_unique, missed})));
}

// ---- The oscillation sentence -------------------------------------------

// No run of length k+1, and every gap holds a run of length k-1.
inline FormulaPtr w_profile(int k, const IvNames& iv,
                            std::set<std::string> taken) {
  taken.insert(iv.lo);
  taken.insert(iv.hi);
  std::string x = fresh_name("s", taken);
  taken.insert(x);
  std::string u = fresh_name("t", taken);
  taken.insert(u);
  FormulaPtr no_long = not_(exists(x, zeta_on(k + 1, x, iv, taken)));
  std::set<std::string> gap_taken = taken;
  FormulaPtr run_in_gap = zeta_chain(
      k - 1, x,
      [&](const std::string& v) { return in_gap(k, v, u, iv, gap_taken); },
      gap_taken);
  FormulaPtr all_gaps_full = forall(
      u, implies(gap_vertex(k, u, iv, taken), exists(x, run_in_gap)));
  return and_(no_long, all_gaps_full);
}

inline FormulaPtr oscillation_sentence(int k) {
  if (k < 2) throw std::invalid_argument("oscillation: k must be >= 2");
  std::vector<IvNames> iv;
  std::set<std::string> taken;
  for (int i = 1; i <= 10; ++i) {
    IvNames v{"x" + std::to_string(i), "y" + std::to_string(i)};
    taken.insert(v.lo);
    taken.insert(v.hi);
    iv.push_back(v);
  }
  const IvNames &I = iv[0], &jd = iv[1], &je = iv[2], &jt = iv[3],
                &jw = iv[4];
  const IvNames &ip = iv[5], &pd = iv[6], &pe = iv[7], &pt = iv[8],
                &pw = iv[9];

  FormulaPtr phi0 = conjunction(
      {w_profile(k, I, taken), arith_formula(k, I, jd, je, jt, jw, taken),
       even_size_formula(k, I, jd, jw, taken)});
  FormulaPtr phi1 = conjunction(
      {w_profile(k, ip, taken), arith_formula(k, ip, pd, pe, pt, pw, taken),
       not_(even_size_formula(k, ip, pd, pw, taken))});
  FormulaPtr phi2 = bigger_formula(k, I, ip, taken);

  FormulaPtr inner = implies(phi1, phi2);
  for (int i = 9; i >= 5; --i) {
    inner = forall(iv[static_cast<std::size_t>(i)].lo,
                   forall(iv[static_cast<std::size_t>(i)].hi, inner));
  }
  FormulaPtr body = and_(phi0, inner);
  for (int i = 4; i >= 0; --i) {
    body = exists(iv[static_cast<std::size_t>(i)].lo,
                  exists(iv[static_cast<std::size_t>(i)].hi, body));
  }
  return body;
}

}  // namespace detail

// Membership of position x in W_k of the interval [a, b] of positions. Free
// variables: x, a, b.
inline FormulaPtr build_zeta(int k) {
  return detail::zeta_on(k, "x", detail::IvNames{"a", "b"}, {});
}

// The unique witness y is the first position whose prefix contains a pair of
// consecutive values. Free variable: y.
inline FormulaPtr build_j1_witness() {
  std::set<std::string> taken{"y"};
  std::string x = fresh_name("x", taken);
  taken.insert(x);
  std::string w = fresh_name("w", taken);
  taken.insert(w);
  FormulaPtr hit_at_y = exists(x, detail::zeta_prefix(2, x, "y", taken));
  FormulaPtr hit_at_w = exists(x, detail::zeta_prefix(2, x, w, taken));
  return and_(hit_at_y,
              forall(w, implies(lt1(w, "y"), not_(hit_at_w))));
}

// The unique witness y is j1 of the rank pattern of the first j1 values:
// relativize the j1 witness to its own witness. Free variable: y.
inline FormulaPtr build_k1_witness() {
  FormulaPtr xi = build_j1_witness();
  return relativize_to_witness(xi, xi);
}

// Sentence: the first position carries a larger value than the last.
inline FormulaPtr build_rho() {
  FormulaPtr first = not_(exists("w", lt1("w", "x")));
  FormulaPtr last = not_(exists("w", lt1("y", "w")));
  return exists(
      "x", exists("y", conjunction({first, last, lt2("y", "x")})));
}

// Oscillation sentence relativized to the k1 witness.
inline FormulaPtr build_omega(int c1) {
  return relativize_to_witness(build_k1_witness(),
                               detail::oscillation_sentence(c1));
}

// Table combination: rho chooses between omega relativized to the position
// before the minimum (xi1) and its reversal (xi2).
inline FormulaPtr build_universal_phi(int k) {
  std::set<std::string> taken{"y"};
  std::string z = fresh_name("z", taken);
  taken.insert(z);
  std::string w = fresh_name("w", taken);
  taken.insert(w);
  FormulaPtr lambda =
      exists(z, and_(succ_formula(1, 1, "y", z),
                     not_(exists(w, lt2(w, z)))));
  FormulaPtr xi1 = relativize_to_witness(lambda, build_omega(k));
  FormulaPtr xi2 = reverse_formula(xi1);
  FormulaPtr rho = build_rho();
  return and_(implies(rho, xi2), implies(not_(rho), xi1));
}

}  // namespace mallows::stats
