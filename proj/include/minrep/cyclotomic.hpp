#pragma once

#include <complex>
#include <string>
#include <vector>

#include "minrep/rational.hpp"

namespace minrep {

int totient(int n);

// Coefficients (low degree first) of the e-th cyclotomic polynomial, monic of
// degree phi(e).  Cached; thread safe.
const std::vector<long long>& cyclotomic_polynomial(int e);

// Reduce an arbitrary-length polynomial in zeta_e modulo Phi_e in place and
// truncate it to length phi(e).  Works for any coefficient ring with +,-,*.
template <typename T>
void reduce_mod_cyclotomic(std::vector<T>& poly, int e) {
  const std::vector<long long>& phi = cyclotomic_polynomial(e);
  int deg = static_cast<int>(phi.size()) - 1;  // = totient(e)
  for (int i = static_cast<int>(poly.size()) - 1; i >= deg; --i) {
    if (poly[i] == 0) continue;
    T c = poly[i];
    poly[i] = 0;
    for (int j = 0; j < deg; ++j) {
      if (phi[j] != 0) poly[i - deg + j] -= c * static_cast<long>(phi[j]);
    }
  }
  poly.resize(deg, T(0));
}

// An element of the cyclotomic field Q(zeta_e), stored as the canonical
// representative of degree < phi(e) modulo Phi_e.  Values compare equal across
// conductors exactly when they are equal as complex numbers.
class Cyclotomic {
 public:
  Cyclotomic() : conductor_(1), coeffs_(1, Rat(0)) {}
  explicit Cyclotomic(const Rat& r) : conductor_(1), coeffs_(1, r) {}
  explicit Cyclotomic(long n) : conductor_(1), coeffs_(1, Rat(n)) {}

  static Cyclotomic zero(int conductor);
  static Cyclotomic one(int conductor);
  static Cyclotomic from_rational(const Rat& r, int conductor = 1);
  // zeta_conductor ^ power
  static Cyclotomic root_of_unity(int conductor, long power);
  // Arbitrary-length polynomial in zeta_conductor; reduced on construction.
  static Cyclotomic from_poly(int conductor, std::vector<Rat> poly);

  int conductor() const { return conductor_; }
  // Length phi(conductor).
  const std::vector<Rat>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // requires is_rational()
  bool is_integer() const;

  // Rewrite in Q(zeta_m); requires conductor | m.
  Cyclotomic embedded(int m) const;
  // Rewrite in Q(zeta_d); requires d | conductor and the value to lie in the
  // subfield (BadParameter otherwise).
  Cyclotomic reduced_to(int d) const;
  // Smallest d | conductor such that the value lies in Q(zeta_d).
  int minimal_conductor() const;

  Cyclotomic conjugate() const;          // complex conjugation zeta -> zeta^-1
  Cyclotomic galois(long k) const;       // zeta -> zeta^k, gcd(k, conductor)=1
  Cyclotomic inverse() const;            // requires nonzero

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  // Deterministic total order on values: by minimal conductor first, then by
  // the canonical coefficient vector at that conductor.  Returns -1/0/+1.
  static int compare(const Cyclotomic& a, const Cyclotomic& b);

  std::string to_string() const;
  // Floating-point evaluation; used only by test oracles.
  std::complex<double> to_complex() const;

 private:
  int conductor_;
  std::vector<Rat> coeffs_;
};

}  // namespace minrep
