#include "quasitomo/cyclotomic.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "quasitomo/errors.hpp"

namespace quasitomo {

int euler_phi(int n) {
  if (n < 1) throw InvalidArgument("euler_phi of non-positive integer");
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

// Exact quotient of integer polynomials (lowest degree first) by a monic divisor.
std::vector<Integer> divide_monic(std::vector<Integer> a, const std::vector<Integer>& b) {
  const std::size_t db = b.size() - 1;
  std::vector<Integer> q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const Integer c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t j = 0; j < db; ++j)
    if (a[j] != 0) throw InternalError("cyclotomic polynomial division left a remainder");
  return q;
}

long mod(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

int gcd_int(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b != 0) {
    const long t = a % b;
    a = b;
    b = t;
  }
  return static_cast<int>(a);
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(int n) {
  if (n < 1) throw InvalidArgument("cyclotomic polynomial of non-positive order");
  std::vector<Integer> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide_monic(p, cyclotomic_polynomial(d));
  return p;
}

int max_order() {
  static const int cap = [] {
    if (const char* env = std::getenv("QUASITOMO_MAX_ORDER")) {
      const int v = std::atoi(env);
      if (v >= 3) return v;
    }
    return 60;
  }();
  return cap;
}

CyclotomicField::CyclotomicField(int n) : n_(n), phi_(euler_phi(n)) {
  for (int k = 1; k < n; ++k)
    if (gcd_int(k, n) == 1) {
      units_.push_back(k);
      if (2 * k < n) embedding_exponents_.push_back(k);
    }

  const auto phi_poly = cyclotomic_polynomial(n);
  powers_.assign(n, std::vector<Integer>(phi_, 0));
  std::vector<Integer> cur(phi_, 0);
  cur[0] = 1;
  for (int k = 0; k < n; ++k) {
    powers_[k] = cur;
    // multiply by x and reduce with the monic cyclotomic polynomial
    Integer top = cur[phi_ - 1];
    for (int j = phi_ - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (int j = 0; j < phi_; ++j) cur[j] -= top * phi_poly[j];
  }

  // Cyclotomic arithmetic needs this object, so the basis is built on raw vectors.
  const int h = phi_ / 2;
  auto mul_raw = [&](const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> acc(n, 0);
    for (int i = 0; i < phi_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < phi_; ++j)
        if (b[j] != 0) acc[(i + j) % n] += a[i] * b[j];
    }
    std::vector<Integer> out(phi_, 0);
    for (int k = 0; k < n; ++k) {
      if (acc[k] == 0) continue;
      for (int j = 0; j < phi_; ++j)
        if (powers_[k][j] != 0) out[j] += acc[k] * powers_[k][j];
    }
    return out;
  };
  std::vector<Integer> cvec(phi_, 0);
  for (int j = 0; j < phi_; ++j) cvec[j] = powers_[1][j] + powers_[n - 1][j];
  std::vector<Integer> zvec = powers_[1];

  c_powers_.assign(h, std::vector<Integer>(phi_, 0));
  if (h > 0) c_powers_[0][0] = 1;
  for (int j = 1; j < h; ++j) c_powers_[j] = mul_raw(c_powers_[j - 1], cvec);

  // columns: c^j then c^j * zeta
  std::vector<std::vector<Rational>> m(phi_, std::vector<Rational>(2 * phi_, 0));
  for (int j = 0; j < h; ++j) {
    const auto cz = mul_raw(c_powers_[j], zvec);
    for (int i = 0; i < phi_; ++i) {
      m[i][j] = c_powers_[j][i];
      m[i][h + j] = cz[i];
    }
  }
  for (int i = 0; i < phi_; ++i) m[i][phi_ + i] = 1;
  // Gauss-Jordan on [M | I]
  for (int col = 0; col < phi_; ++col) {
    int piv = col;
    while (piv < phi_ && m[piv][col] == 0) ++piv;
    if (piv == phi_) throw InternalError("split basis is singular");
    std::swap(m[piv], m[col]);
    const Rational inv = 1 / m[col][col];
    for (auto& v : m[col]) v *= inv;
    for (int r = 0; r < phi_; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (int k = 0; k < 2 * phi_; ++k) m[r][k] -= f * m[col][k];
    }
  }
  split_inverse_.assign(phi_, std::vector<Integer>(phi_, 0));
  for (int i = 0; i < phi_; ++i)
    for (int j = 0; j < phi_; ++j) {
      const Rational& v = m[i][phi_ + j];
      if (v.get_den() != 1) throw InternalError("split basis is not a Z-basis");
      split_inverse_[i][j] = v.get_num();
    }
}

const std::vector<Integer>& CyclotomicField::power(long k) const { return powers_[mod(k, n_)]; }

const CyclotomicField& cyclotomic_field(int n) {
  if (n < 3 || n > max_order())
    throw InvalidArgument("unsupported cyclotomic order " + std::to_string(n) + " (supported: 3.." +
                          std::to_string(max_order()) + ")");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CyclotomicField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<CyclotomicField>(n);
  return *slot;
}

// ---------------------------------------------------------------- Cyclotomic

Cyclotomic::Cyclotomic(int n) : n_(n), den_(1), num_(cyclotomic_field(n).degree(), 0) {}

Cyclotomic::Cyclotomic(int n, const Rational& q) : Cyclotomic(n) {
  num_[0] = q.get_num();
  den_ = q.get_den();
}

Cyclotomic::Cyclotomic(int n, std::vector<Rational> coeffs) : Cyclotomic(n) {
  if (coeffs.size() != num_.size())
    throw InvalidArgument("expected " + std::to_string(num_.size()) + " coefficients for order " +
                          std::to_string(n) + ", got " + std::to_string(coeffs.size()));
  den_ = 1;
  for (const auto& c : coeffs) den_ = lcm(den_, c.get_den());
  for (std::size_t i = 0; i < coeffs.size(); ++i) num_[i] = coeffs[i].get_num() * (den_ / coeffs[i].get_den());
  normalize();
}

Cyclotomic::Cyclotomic(int n, std::vector<Integer> numerators, Integer denominator) : Cyclotomic(n) {
  if (numerators.size() != num_.size())
    throw InvalidArgument("expected " + std::to_string(num_.size()) + " coefficients for order " +
                          std::to_string(n));
  if (denominator == 0) throw DivisionByZero();
  num_ = std::move(numerators);
  den_ = std::move(denominator);
  if (den_ < 0) {
    den_ = -den_;
    for (auto& v : num_) v = -v;
  }
  normalize();
}

Cyclotomic Cyclotomic::zeta(int n, long k) {
  Cyclotomic z(n);
  z.num_ = cyclotomic_field(n).power(k);
  return z;
}

Cyclotomic Cyclotomic::from_powers(int n, std::initializer_list<std::pair<long, Rational>> terms) {
  return from_powers(n, std::span<const std::pair<long, Rational>>(terms.begin(), terms.size()));
}

Cyclotomic Cyclotomic::from_powers(int n, std::span<const std::pair<long, Rational>> terms) {
  Cyclotomic out(n);
  for (const auto& [k, c] : terms) out += Cyclotomic::zeta(n, k) * c;
  return out;
}

void Cyclotomic::normalize() {
  Integer g = den_;
  for (const auto& v : num_) {
    if (g == 1) break;
    if (v != 0) g = gcd(g, v);
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    den_ /= g;
    for (auto& v : num_) v /= g;
  }
}

Rational Cyclotomic::coeff(int j) const {
  Rational q(num_.at(j), den_);
  q.canonicalize();
  return q;
}

std::vector<Rational> Cyclotomic::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (int j = 0; j < degree(); ++j) out.push_back(coeff(j));
  return out;
}

bool Cyclotomic::is_zero() const noexcept {
  for (const auto& v : num_)
    if (v != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const { return den_ == 1 && is_rational() && num_[0] == 1; }

bool Cyclotomic::is_rational() const noexcept {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

Rational Cyclotomic::to_rational() const {
  if (!is_rational()) throw InvalidArgument("element " + to_string() + " is not rational");
  return coeff(0);
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& v : r.num_) v = -v;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (n_ != o.n_) throw OrderMismatch(n_, o.n_);
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    const Integer l = lcm(den_, o.den_);
    const Integer a = l / den_, b = l / o.den_;
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * a + o.num_[i] * b;
    den_ = l;
  }
  normalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ != b.n_) throw OrderMismatch(a.n_, b.n_);
  const auto& field = cyclotomic_field(a.n_);
  const int n = a.n_, phi = field.degree();
  std::vector<Integer> acc(n, 0);
  for (int i = 0; i < phi; ++i) {
    if (a.num_[i] == 0) continue;
    for (int j = 0; j < phi; ++j)
      if (b.num_[j] != 0) acc[(i + j) % n] += a.num_[i] * b.num_[j];
  }
  Cyclotomic out(n);
  for (int k = 0; k < phi; ++k) out.num_[k] = acc[k];
  for (int k = phi; k < n; ++k) {
    if (acc[k] == 0) continue;
    const auto& red = field.power(k);
    for (int j = 0; j < phi; ++j)
      if (red[j] != 0) out.num_[j] += acc[k] * red[j];
  }
  out.den_ = a.den_ * b.den_;
  out.normalize();
  return out;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

Cyclotomic& Cyclotomic::operator*=(const Rational& q) {
  for (auto& v : num_) v *= q.get_num();
  den_ *= q.get_den();
  if (den_ < 0) {
    den_ = -den_;
    for (auto& v : num_) v = -v;
  }
  if (q == 0) den_ = 1;
  normalize();
  return *this;
}

bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.den_ != b.den_) return a.den_ < b.den_;
  return a.num_ < b.num_;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) return Cyclotomic(n_, Rational(1) / coeff(0));
  const auto& field = cyclotomic_field(n_);
  Cyclotomic others(n_, Rational(1));
  for (int k : field.units())
    if (k != 1) others *= galois(k);
  const Cyclotomic norm = *this * others;
  if (!norm.is_rational()) throw InternalError("conjugate product is not rational");
  return others * (Rational(1) / norm.coeff(0));
}

Cyclotomic Cyclotomic::galois(long k) const {
  if (gcd_int(k, n_) != 1)
    throw InvalidArgument("Galois exponent " + std::to_string(k) + " is not coprime to " + std::to_string(n_));
  const auto& field = cyclotomic_field(n_);
  Cyclotomic out(n_);
  for (int i = 0; i < degree(); ++i) {
    if (num_[i] == 0) continue;
    const auto& img = field.power(static_cast<long>(i) * k);
    for (int j = 0; j < degree(); ++j)
      if (img[j] != 0) out.num_[j] += num_[i] * img[j];
  }
  out.den_ = den_;
  out.normalize();
  return out;
}

Cyclotomic Cyclotomic::lift(int m) const {
  if (m % n_ != 0) throw InvalidArgument("lift target order must be a multiple of the order");
  const int step = m / n_;
  Cyclotomic out(m);
  for (int i = 0; i < degree(); ++i)
    if (num_[i] != 0) out += Cyclotomic::zeta(m, static_cast<long>(i) * step) * Rational(num_[i]);
  out *= Rational(1) / Rational(den_);
  return out;
}

std::complex<double> Cyclotomic::evaluate(long k) const {
  std::complex<double> acc = 0.0;
  const double d = den_.get_d();
  for (int i = 0; i < degree(); ++i) {
    if (num_[i] == 0) continue;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(mod(static_cast<long>(i) * k, n_)) / n_;
    acc += (num_[i].get_d() / d) * std::polar(1.0, ang);
  }
  return acc;
}

std::complex<double> Cyclotomic::embed(int j) const {
  const auto& ex = cyclotomic_field(n_).embedding_exponents();
  if (j < 1 || j > static_cast<int>(ex.size()))
    throw InvalidArgument("embedding index " + std::to_string(j) + " out of range");
  return evaluate(ex[j - 1]);
}

std::vector<Rational> Cyclotomic::split_coordinates() const {
  const auto& inv = cyclotomic_field(n_).split_basis_inverse();
  std::vector<Rational> out(degree());
  for (int i = 0; i < degree(); ++i) {
    Integer s = 0;
    for (int j = 0; j < degree(); ++j)
      if (num_[j] != 0 && inv[i][j] != 0) s += inv[i][j] * num_[j];
    out[i] = Rational(s, den_);
    out[i].canonicalize();
  }
  return out;
}

std::pair<RealCyclotomic, RealCyclotomic> Cyclotomic::real_decompose() const {
  auto x = split_coordinates();
  const int h = degree() / 2;
  std::vector<Rational> alpha(x.begin(), x.begin() + h), beta(x.begin() + h, x.end());
  return {RealCyclotomic(n_, std::move(alpha)), RealCyclotomic(n_, std::move(beta))};
}

bool Cyclotomic::is_real() const { return *this == conj(); }

RealCyclotomic Cyclotomic::to_real() const {
  auto [alpha, beta] = real_decompose();
  if (!beta.is_zero()) throw InvalidArgument("element " + to_string() + " is not real");
  return alpha;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < degree(); ++i) {
    const Rational c = coeff(i);
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << quasitomo::to_string(a);
    } else {
      if (a != 1) os << quasitomo::to_string(a) << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Cyclotomic& z) { return os << z.to_string(); }

// ------------------------------------------------------------ RealCyclotomic

RealCyclotomic::RealCyclotomic(int n) : n_(n), coeffs_(cyclotomic_field(n).real_degree(), 0) {}

RealCyclotomic::RealCyclotomic(int n, const Rational& q) : RealCyclotomic(n) { coeffs_[0] = q; }

RealCyclotomic::RealCyclotomic(int n, std::vector<Rational> coeffs) : RealCyclotomic(n) {
  if (coeffs.size() != coeffs_.size())
    throw InvalidArgument("expected " + std::to_string(coeffs_.size()) + " real-subfield coefficients for order " +
                          std::to_string(n));
  coeffs_ = std::move(coeffs);
}

RealCyclotomic RealCyclotomic::generator(int n) {
  return (Cyclotomic::zeta(n, 1) + Cyclotomic::zeta(n, -1)).to_real();
}

bool RealCyclotomic::is_zero() const noexcept {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool RealCyclotomic::is_rational() const noexcept {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

bool RealCyclotomic::is_integral() const noexcept {
  for (const auto& c : coeffs_)
    if (c.get_den() != 1) return false;
  return true;
}

Rational RealCyclotomic::to_rational() const {
  if (!is_rational()) throw InvalidArgument("element " + to_string() + " is not rational");
  return coeffs_[0];
}

Cyclotomic RealCyclotomic::to_cyclotomic() const {
  const auto& field = cyclotomic_field(n_);
  Integer den = 1;
  for (const auto& c : coeffs_) den = lcm(den, c.get_den());
  std::vector<Integer> num(field.degree(), 0);
  for (int j = 0; j < degree(); ++j) {
    if (coeffs_[j] == 0) continue;
    const Integer scale = coeffs_[j].get_num() * (den / coeffs_[j].get_den());
    const auto& b = field.real_basis_vector(j);
    for (int i = 0; i < field.degree(); ++i) num[i] += scale * b[i];
  }
  return Cyclotomic(n_, std::move(num), den);
}

RealCyclotomic RealCyclotomic::operator-() const {
  RealCyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RealCyclotomic& RealCyclotomic::operator+=(const RealCyclotomic& o) {
  if (n_ != o.n_) throw OrderMismatch(n_, o.n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

RealCyclotomic& RealCyclotomic::operator-=(const RealCyclotomic& o) {
  if (n_ != o.n_) throw OrderMismatch(n_, o.n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

RealCyclotomic operator*(const RealCyclotomic& a, const RealCyclotomic& b) {
  if (a.n_ != b.n_) throw OrderMismatch(a.n_, b.n_);
  return (a.to_cyclotomic() * b.to_cyclotomic()).to_real();
}

RealCyclotomic operator*(RealCyclotomic a, const Rational& q) {
  for (auto& c : a.coeffs_) c *= q;
  return a;
}

RealCyclotomic operator/(const RealCyclotomic& a, const RealCyclotomic& b) {
  if (a.n_ != b.n_) throw OrderMismatch(a.n_, b.n_);
  return (a.to_cyclotomic() / b.to_cyclotomic()).to_real();
}

double RealCyclotomic::embed(int j) const {
  const auto& ex = cyclotomic_field(n_).embedding_exponents();
  if (j < 1 || j > static_cast<int>(ex.size()))
    throw InvalidArgument("embedding index " + std::to_string(j) + " out of range");
  const double c = 2.0 * std::cos(2.0 * std::numbers::pi * ex[j - 1] / n_);
  double acc = 0.0, p = 1.0;
  for (const auto& q : coeffs_) {
    acc += q.get_d() * p;
    p *= c;
  }
  return acc;
}

std::string RealCyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < degree(); ++i) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << quasitomo::to_string(a);
    } else {
      if (a != 1) os << quasitomo::to_string(a) << "*";
      os << "c";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const RealCyclotomic& x) { return os << x.to_string(); }

Rational field_norm_real(const RealCyclotomic& x) {
  const Cyclotomic z = x.to_cyclotomic();
  Cyclotomic prod(x.order(), Rational(1));
  for (int k : cyclotomic_field(x.order()).embedding_exponents()) prod *= z.galois(k);
  if (!prod.is_rational()) throw InternalError("real norm is not rational for " + x.to_string());
  return prod.coeff(0);
}

}  // namespace quasitomo
