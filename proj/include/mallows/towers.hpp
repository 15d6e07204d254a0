#pragma once

#include <gmpxx.h>

#include <stdexcept>

namespace mallows {

// Iterated exponentials T(0)=1, T(i)=2^T(i-1): 1, 2, 4, 16, 65536, 2^65536.
// tower(5) is a 65537-bit integer and the last representable value; tower(6)
// would need 2^65536 bits.
inline mpz_class tower(int n) {
  if (n < 0) throw std::invalid_argument("tower: negative height");
  if (n > 5) throw std::overflow_error("too large");
  mpz_class t = 1;
  for (int i = 0; i < n; ++i) {
    const unsigned long exponent = mpz_get_ui(t.get_mpz_t());
    mpz_class next = 0;
    mpz_setbit(next.get_mpz_t(), exponent);  // next = 2^t
    t = std::move(next);
  }
  return t;
}

// Iterated towers W(0)=1, W(i)=T(W(i-1)): 1, 2, 4, 65536. W(4) = T(65536)
// is a tower of height 65536, beyond any storable size.
inline mpz_class wowzer(int n) {
  if (n < 0) throw std::invalid_argument("wowzer: negative height");
  if (n > 3) throw std::overflow_error("too large");
  mpz_class w = 1;
  for (int i = 0; i < n; ++i) w = tower(static_cast<int>(mpz_get_ui(w.get_mpz_t())));
  return w;
}

// Discrete inverse of tower: smallest k with T(k) >= x. Any representable
// integer has fewer than 2^65536 bits, so is below T(6); the result never
// exceeds 6.
inline int log_star(const mpz_class& x) {
  for (int k = 0; k <= 5; ++k)
    if (tower(k) >= x) return k;
  return 6;
}

// Discrete inverse of wowzer: smallest k with W(k) >= x. Everything above
// W(3) = 65536 but representable sits below W(4), so the result caps at 4.
inline int log_star_star(const mpz_class& x) {
  if (x <= 1) return 0;
  if (x <= 2) return 1;
  if (x <= 4) return 2;
  if (x <= 65536) return 3;
  return 4;
}

inline int log_star(long long x) { return log_star(mpz_class(static_cast<long>(x))); }
inline int log_star_star(long long x) {
  return log_star_star(mpz_class(static_cast<long>(x)));
}

}  // namespace mallows
