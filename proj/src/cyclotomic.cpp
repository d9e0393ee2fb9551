#include "minrep/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "minrep/errors.hpp"

namespace minrep {

int totient(int n) {
  if (n <= 0) throw BadParameter("totient: argument must be positive");
  int result = n, m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

std::vector<int> divisors_of(int n) {
  std::vector<int> divs;
  for (int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      divs.push_back(d);
      if (d != n / d) divs.push_back(n / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// Quotient of a by monic b; remainder must vanish.
std::vector<long long> divide_exact(std::vector<long long> a, const std::vector<long long>& b) {
  int db = static_cast<int>(b.size()) - 1;
  int da = static_cast<int>(a.size()) - 1;
  std::vector<long long> q(da - db + 1, 0);
  for (int i = da; i >= db; --i) {
    long long c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (long long c : a)
    if (c != 0) throw InternalVerificationFailed("cyclotomic polynomial division left a remainder");
  return q;
}

}  // namespace

const std::vector<long long>& cyclotomic_polynomial(int e) {
  if (e < 1) throw BadParameter("cyclotomic_polynomial: conductor must be >= 1");
  static std::map<int, std::vector<long long>> cache{{1, {-1, 1}}};
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  for (int d : divisors_of(e)) {
    if (cache.count(d)) continue;
    std::vector<long long> poly(d + 1, 0);  // x^d - 1
    poly[0] = -1;
    poly[d] = 1;
    for (int dd : divisors_of(d))
      if (dd != d) poly = divide_exact(std::move(poly), cache.at(dd));
    cache.emplace(d, std::move(poly));
  }
  return cache.at(e);
}

// ---------------------------------------------------------------------------

Cyclotomic Cyclotomic::zero(int conductor) {
  Cyclotomic v;
  v.conductor_ = conductor;
  v.coeffs_.assign(totient(conductor), Rat(0));
  return v;
}

Cyclotomic Cyclotomic::one(int conductor) { return from_rational(Rat(1), conductor); }

Cyclotomic Cyclotomic::from_rational(const Rat& r, int conductor) {
  Cyclotomic v = zero(conductor);
  v.coeffs_[0] = r;
  return v;
}

Cyclotomic Cyclotomic::root_of_unity(int conductor, long power) {
  if (conductor < 1) throw BadParameter("root_of_unity: conductor must be >= 1");
  long k = power % conductor;
  if (k < 0) k += conductor;
  std::vector<Rat> poly(conductor, Rat(0));
  poly[k] = 1;
  return from_poly(conductor, std::move(poly));
}

Cyclotomic Cyclotomic::from_poly(int conductor, std::vector<Rat> poly) {
  if (conductor < 1) throw BadParameter("from_poly: conductor must be >= 1");
  reduce_mod_cyclotomic(poly, conductor);
  Cyclotomic v;
  v.conductor_ = conductor;
  v.coeffs_ = std::move(poly);
  return v;
}

bool Cyclotomic::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c == 0; });
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rat Cyclotomic::rational_value() const {
  if (!is_rational()) throw BadParameter("rational_value: value is not rational");
  return coeffs_[0];
}

bool Cyclotomic::is_integer() const {
  return is_rational() && coeffs_[0].get_den() == 1;
}

Cyclotomic Cyclotomic::embedded(int m) const {
  if (m == conductor_) return *this;
  if (m < 1 || m % conductor_ != 0)
    throw BadParameter("embedded: target conductor must be a multiple of the current one");
  int t = m / conductor_;
  std::vector<Rat> poly(m, Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) poly[i * t] = coeffs_[i];
  return from_poly(m, std::move(poly));
}

Cyclotomic Cyclotomic::reduced_to(int d) const {
  if (d == conductor_) return *this;
  if (d < 1 || conductor_ % d != 0)
    throw BadParameter("reduced_to: target conductor must divide the current one");
  int rows = totient(conductor_);
  int cols = totient(d);
  // Solve basis * x = coeffs, basis columns = zeta_d^j embedded upward.
  std::vector<std::vector<Rat>> aug(rows, std::vector<Rat>(cols + 1, Rat(0)));
  for (int j = 0; j < cols; ++j) {
    Cyclotomic b = root_of_unity(d, j).embedded(conductor_);
    for (int i = 0; i < rows; ++i) aug[i][j] = b.coeffs_[i];
  }
  for (int i = 0; i < rows; ++i) aug[i][cols] = coeffs_[i];

  std::vector<int> pivot_of_col(cols, -1);
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pr = -1;
    for (int r = row; r < rows; ++r)
      if (aug[r][col] != 0) { pr = r; break; }
    if (pr < 0) continue;
    std::swap(aug[row], aug[pr]);
    Rat inv_p = 1 / aug[row][col];
    for (int c = col; c <= cols; ++c) aug[row][c] *= inv_p;
    for (int r = 0; r < rows; ++r) {
      if (r == row || aug[r][col] == 0) continue;
      Rat f = aug[r][col];
      for (int c = col; c <= cols; ++c) aug[r][c] -= f * aug[row][c];
    }
    pivot_of_col[col] = row;
    ++row;
  }
  for (int r = row; r < rows; ++r)
    if (aug[r][cols] != 0)
      throw BadParameter("reduced_to: value does not lie in the requested subfield");
  std::vector<Rat> sol(cols, Rat(0));
  for (int col = 0; col < cols; ++col)
    if (pivot_of_col[col] >= 0) sol[col] = aug[pivot_of_col[col]][cols];
  Cyclotomic v;
  v.conductor_ = d;
  v.coeffs_ = std::move(sol);
  return v;
}

int Cyclotomic::minimal_conductor() const {
  for (int d : divisors_of(conductor_)) {
    try {
      reduced_to(d);
      return d;
    } catch (const BadParameter&) {
    }
  }
  return conductor_;
}

Cyclotomic Cyclotomic::conjugate() const {
  std::vector<Rat> poly(conductor_, Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    poly[(conductor_ - static_cast<int>(i)) % conductor_] += coeffs_[i];
  return from_poly(conductor_, std::move(poly));
}

Cyclotomic Cyclotomic::galois(long k) const {
  long kk = k % conductor_;
  if (kk < 0) kk += conductor_;
  if (std::gcd(kk, static_cast<long>(conductor_)) != 1)
    throw BadParameter("galois: exponent must be coprime to the conductor");
  std::vector<Rat> poly(conductor_, Rat(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) poly[(i * kk) % conductor_] += coeffs_[i];
  return from_poly(conductor_, std::move(poly));
}

namespace {

int poly_deg(const std::vector<Rat>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

// (quotient, remainder) of a by b, b nonzero.
std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> a,
                                                          const std::vector<Rat>& b) {
  int db = poly_deg(b);
  int da = poly_deg(a);
  if (da < db) return {std::vector<Rat>{Rat(0)}, std::move(a)};
  std::vector<Rat> q(da - db + 1, Rat(0));
  Rat lead_inv = 1 / b[db];
  for (int i = da; i >= db; --i) {
    if (a[i] == 0) continue;
    Rat c = a[i] * lead_inv;
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return {std::move(q), std::move(a)};
}

std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  int da = poly_deg(a), db = poly_deg(b);
  if (da < 0 || db < 0) return {Rat(0)};
  std::vector<Rat> prod(da + db + 1, Rat(0));
  for (int i = 0; i <= da; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j <= db; ++j) prod[i + j] += a[i] * b[j];
  }
  return prod;
}

std::vector<Rat> poly_sub(std::vector<Rat> a, const std::vector<Rat>& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rat(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

}  // namespace

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw BadParameter("inverse: value is zero");
  const std::vector<long long>& phi_ll = cyclotomic_polynomial(conductor_);
  std::vector<Rat> r0(phi_ll.size());
  for (size_t i = 0; i < phi_ll.size(); ++i) r0[i] = Rat(static_cast<long>(phi_ll[i]));
  std::vector<Rat> r1 = coeffs_;
  // Track u with r_i = (...)*Phi + u_i*value.
  std::vector<Rat> u0{Rat(0)}, u1{Rat(1)};
  while (poly_deg(r1) >= 0) {
    auto [q, rem] = poly_divmod(r0, r1);
    std::vector<Rat> u2 = poly_sub(u0, poly_mul(q, u1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    u0 = std::move(u1);
    u1 = std::move(u2);
  }
  int dg = poly_deg(r0);
  if (dg != 0)
    throw InternalVerificationFailed("inverse: gcd with the cyclotomic polynomial is not constant");
  Rat g_inv = 1 / r0[0];
  for (Rat& c : u0) c *= g_inv;
  Cyclotomic result = from_poly(conductor_, std::move(u0));
  return result;
}

namespace {

std::pair<Cyclotomic, Cyclotomic> to_common_conductor(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor() == b.conductor()) return {a, b};
  int m = std::lcm(a.conductor(), b.conductor());
  return {a.embedded(m), b.embedded(m)};
}

}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (conductor_ == o.conductor_) {
    Cyclotomic v = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) v.coeffs_[i] += o.coeffs_[i];
    return v;
  }
  auto [a, b] = to_common_conductor(*this, o);
  return a + b;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
  if (conductor_ == o.conductor_) {
    Cyclotomic v = *this;
    for (size_t i = 0; i < coeffs_.size(); ++i) v.coeffs_[i] -= o.coeffs_[i];
    return v;
  }
  auto [a, b] = to_common_conductor(*this, o);
  return a - b;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (conductor_ == o.conductor_) {
    std::vector<Rat> prod(2 * coeffs_.size(), Rat(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      for (size_t j = 0; j < o.coeffs_.size(); ++j) {
        if (o.coeffs_[j] == 0) continue;
        prod[i + j] += coeffs_[i] * o.coeffs_[j];
      }
    }
    return from_poly(conductor_, std::move(prod));
  }
  auto [a, b] = to_common_conductor(*this, o);
  return a * b;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic v = *this;
  for (Rat& c : v.coeffs_) c = -c;
  return v;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (conductor_ == o.conductor_) return coeffs_ == o.coeffs_;
  auto [a, b] = to_common_conductor(*this, o);
  return a.coeffs_ == b.coeffs_;
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
  // Keyed on each value alone (minimal conductor, then canonical coefficients
  // there) so the order is genuinely total; comparing at pairwise common
  // conductors would be intransitive across mixed-conductor triples.
  int da = a.minimal_conductor();
  int db = b.minimal_conductor();
  if (da != db) return da < db ? -1 : 1;
  Cyclotomic x = a.reduced_to(da);
  Cyclotomic y = b.reduced_to(db);
  for (size_t i = 0; i < x.coeffs_.size(); ++i) {
    int c = cmp(x.coeffs_[i], y.coeffs_[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    Rat c = coeffs_[i];
    if (first) {
      if (c < 0) { out << "-"; c = -c; }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    bool show_coeff = (i == 0) || c != 1;
    if (show_coeff) out << c.get_str();
    if (i > 0) {
      if (show_coeff) out << "*";
      out << "z" << conductor_;
      if (i > 1) out << "^" << i;
    }
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> sum(0.0, 0.0);
  const double tau = 6.28318530717958647692;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    double angle = tau * static_cast<double>(i) / conductor_;
    sum += coeffs_[i].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

}  // namespace minrep
