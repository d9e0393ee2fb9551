#pragma once

#include <gmpxx.h>

#include <string>

namespace minrep {

// Exact rational / integer scalars.  All character-theoretic arithmetic in
// this library is exact; no floating point is used outside of test oracles.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

// -1 / 0 / +1
inline int rat_sign(const Rat& r) { return sgn(r); }

}  // namespace minrep
