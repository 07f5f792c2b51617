#pragma once

#include <complex>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "quasitomo/rational.hpp"

namespace quasitomo {

int euler_phi(int n);

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<Integer> cyclotomic_polynomial(int n);

/// Largest supported order; QUASITOMO_MAX_ORDER overrides the default of 60.
int max_order();

/// Immutable per-order tables: the reduction of every power of zeta into the
/// power basis, and the change of basis to {c^j} u {c^j zeta} with
/// c = zeta + conj(zeta). Obtained through cyclotomic_field(), which builds
/// each order once and is safe to call concurrently.
class CyclotomicField {
 public:
  explicit CyclotomicField(int n);

  int order() const noexcept { return n_; }
  int degree() const noexcept { return phi_; }
  int real_degree() const noexcept { return phi_ / 2; }

  /// Residues in [1, n) coprime to n, ascending.
  const std::vector<int>& units() const noexcept { return units_; }
  /// One exponent per conjugate pair of embeddings (those below n/2); the
  /// first is 1, i.e. the identity embedding.
  const std::vector<int>& embedding_exponents() const noexcept { return embedding_exponents_; }

  /// zeta^k in the power basis, for any integer k.
  const std::vector<Integer>& power(long k) const;

  /// Power-basis coefficients of c^j, 0 <= j < phi/2.
  const std::vector<Integer>& real_basis_vector(int j) const { return c_powers_[j]; }

  /// Integer inverse of the matrix whose columns are the basis
  /// c^0..c^{h-1}, c^0 zeta..c^{h-1} zeta in power-basis coordinates.
  const std::vector<std::vector<Integer>>& split_basis_inverse() const noexcept { return split_inverse_; }

 private:
  int n_;
  int phi_;
  std::vector<int> units_;
  std::vector<int> embedding_exponents_;
  std::vector<std::vector<Integer>> powers_;
  std::vector<std::vector<Integer>> c_powers_;
  std::vector<std::vector<Integer>> split_inverse_;
};

const CyclotomicField& cyclotomic_field(int n);

class RealCyclotomic;

/// Exact element of Q(zeta_n) in the power basis {1, zeta, ..., zeta^(phi-1)}.
/// Stored as a positive common denominator and integer numerators with no
/// common factor, so equal elements have identical representations.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  explicit Cyclotomic(int n);  // zero
  Cyclotomic(int n, const Rational& q);
  Cyclotomic(int n, std::vector<Rational> coeffs);
  Cyclotomic(int n, std::vector<Integer> numerators, Integer denominator);

  static Cyclotomic zeta(int n, long k = 1);
  /// Sum of coeff * zeta^k over the given terms; exponents may be any integers.
  static Cyclotomic from_powers(int n, std::initializer_list<std::pair<long, Rational>> terms);
  static Cyclotomic from_powers(int n, std::span<const std::pair<long, Rational>> terms);

  int order() const noexcept { return n_; }
  int degree() const noexcept { return static_cast<int>(num_.size()); }
  Rational coeff(int j) const;
  std::vector<Rational> coeffs() const;
  const std::vector<Integer>& numerators() const noexcept { return num_; }
  const Integer& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept;
  bool is_one() const;
  bool is_rational() const noexcept;
  bool is_integral() const noexcept { return den_ == 1; }
  /// Value of a rational element; throws InvalidArgument otherwise.
  Rational to_rational() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& q);
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(Cyclotomic a, const Rational& q) { return a *= q; }
  friend Cyclotomic operator*(const Rational& q, Cyclotomic a) { return a *= q; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.n_ == b.n_ && a.den_ == b.den_ && a.num_ == b.num_;
  }
  /// Lexicographic on (denominator, numerators); an arbitrary total order
  /// used for sorting and map keys.
  friend bool operator<(const Cyclotomic& a, const Cyclotomic& b);

  /// Multiplicative inverse via the product of the non-trivial conjugates.
  Cyclotomic inverse() const;

  /// Image under zeta -> zeta^k; k must be coprime to the order.
  Cyclotomic galois(long k) const;
  Cyclotomic conj() const { return galois(-1); }

  /// Same element seen in Q(zeta_m) for a multiple m of the order.
  Cyclotomic lift(int m) const;

  /// Numeric value under zeta -> exp(2 pi i k / n).
  std::complex<double> evaluate(long k) const;
  /// sigma_j for 1 <= j <= phi/2, following embedding_exponents().
  std::complex<double> embed(int j) const;
  std::complex<double> value() const { return evaluate(1); }

  /// The pair (alpha, beta) in the real subfield with z = alpha + beta zeta.
  std::pair<RealCyclotomic, RealCyclotomic> real_decompose() const;
  /// Coordinates in the split basis {c^j} u {c^j zeta}; alpha block first.
  std::vector<Rational> split_coordinates() const;

  bool is_real() const;
  /// Conversion to the real subfield; throws InvalidArgument when not real.
  RealCyclotomic to_real() const;

  std::string to_string() const;

 private:
  void normalize();

  int n_ = 0;
  Integer den_ = 1;
  std::vector<Integer> num_;
};

std::ostream& operator<<(std::ostream& os, const Cyclotomic& z);

/// Exact element of the maximal real subfield, in the basis {c^j},
/// c = zeta + conj(zeta), 0 <= j < phi/2.
class RealCyclotomic {
 public:
  RealCyclotomic() = default;
  explicit RealCyclotomic(int n);  // zero
  RealCyclotomic(int n, const Rational& q);
  RealCyclotomic(int n, std::vector<Rational> coeffs);

  /// zeta + conj(zeta), the generator of the real subfield.
  static RealCyclotomic generator(int n);

  int order() const noexcept { return n_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()); }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  const Rational& coeff(int j) const { return coeffs_[j]; }

  bool is_zero() const noexcept;
  bool is_rational() const noexcept;
  bool is_integral() const noexcept;
  Rational to_rational() const;

  Cyclotomic to_cyclotomic() const;

  RealCyclotomic operator-() const;
  RealCyclotomic& operator+=(const RealCyclotomic& o);
  RealCyclotomic& operator-=(const RealCyclotomic& o);
  friend RealCyclotomic operator+(RealCyclotomic a, const RealCyclotomic& b) { return a += b; }
  friend RealCyclotomic operator-(RealCyclotomic a, const RealCyclotomic& b) { return a -= b; }
  friend RealCyclotomic operator*(const RealCyclotomic& a, const RealCyclotomic& b);
  friend RealCyclotomic operator*(RealCyclotomic a, const Rational& q);
  friend RealCyclotomic operator/(const RealCyclotomic& a, const RealCyclotomic& b);
  friend bool operator==(const RealCyclotomic& a, const RealCyclotomic& b) = default;

  /// Real embedding sigma_j, 1 <= j <= phi/2.
  double embed(int j) const;
  double value() const { return embed(1); }

  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const RealCyclotomic& x);

/// Product of the phi/2 Galois conjugates of x over Q.
Rational field_norm_real(const RealCyclotomic& x);

/// Free-function forms of the ring operations.
inline Cyclotomic cyclo_mul(const Cyclotomic& a, const Cyclotomic& b) { return a * b; }
inline Cyclotomic cyclo_inv(const Cyclotomic& a) { return a.inverse(); }
inline Cyclotomic galois_apply(const Cyclotomic& a, long k) { return a.galois(k); }
inline std::pair<RealCyclotomic, RealCyclotomic> real_decompose(const Cyclotomic& z) {
  return z.real_decompose();
}
inline std::complex<double> embed_complex(const Cyclotomic& z, int j) { return z.embed(j); }

}  // namespace quasitomo
