#pragma once

#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gact/report.hpp"

namespace gact {

using Rat = mpq_class;

/// The N-th cyclotomic field Q(z), z a primitive N-th root of unity,
/// represented in the power basis 1, z, ..., z^{phi(N)-1} reduced modulo the
/// N-th cyclotomic polynomial. One field object is shared per context order.
class CycField {
 public:
  static std::shared_ptr<const CycField> get(long order);

  long order() const { return order_; }
  int degree() const { return degree_; }

  /// z^k reduced into the power basis, any k (taken mod N).
  const std::vector<Rat>& zeta_power(long k) const;

  /// x^k reduced mod the cyclotomic polynomial, 0 <= k <= 2*degree-2.
  const std::vector<Rat>& reduced_monomial(int k) const { return red_[k]; }

  std::complex<double> embed_basis(int k) const { return embed_[k]; }

 private:
  explicit CycField(long order);
  long order_;
  int degree_;
  std::vector<Rat> cyclo_;                 // monic cyclotomic polynomial
  std::vector<std::vector<Rat>> red_;      // x^k mod cyclo, k < 2*degree-1
  std::vector<std::vector<Rat>> zeta_;     // z^k, k < order
  std::vector<std::complex<double>> embed_;  // numeric basis images
};

using FieldPtr = std::shared_ptr<const CycField>;

/// Element of a cyclotomic field. Immutable value type; coefficients are in
/// canonical reduced form, so equality is coefficient-wise.
class Cyc {
 public:
  Cyc() = default;  // invalid until assigned; field() == nullptr
  Cyc(FieldPtr field, std::vector<Rat> coeffs);

  static Cyc zero(const FieldPtr& f);
  static Cyc one(const FieldPtr& f);
  static Cyc rational(const FieldPtr& f, const Rat& r);
  /// e^{2 pi i k / n}; requires n | order.
  static Cyc root_of_unity(const FieldPtr& f, long k, long n);
  /// k-th power of a generator of the roots of unity contained in the
  /// field, a primitive lcm(2, order)-th root.
  static Cyc context_root(const FieldPtr& f, long k);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const;  // coefficient of z^0

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator-() const;
  Cyc operator*(const Cyc& o) const;
  Cyc& operator+=(const Cyc& o);
  Cyc& operator-=(const Cyc& o);
  Cyc& operator*=(const Cyc& o);

  /// Multiplicative inverse; throws Error on zero.
  Cyc inverse() const;
  /// Complex conjugation, the automorphism z -> z^{-1}.
  Cyc conj() const;

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  /// True when this is a root of unity of the field, i.e. x^lcm(2,N) == 1.
  bool is_root_of_unity() const;

  std::complex<double> to_complex() const;

  /// Canonical form "p/q * z^k + ...", exact round-trip via parse().
  std::string to_string() const;
  static Cyc parse(const FieldPtr& f, const std::string& s);

 private:
  void check_same_field(const Cyc& o) const;
  FieldPtr field_;
  std::vector<Rat> c_;
};

Cyc operator*(const Rat& r, const Cyc& z);

/// |z|^2 = z * conj(z). Real in the canonical embedding.
Cyc modulus_squared(const Cyc& z);

/// Exact nonnegative rational square root; returns false if none exists.
bool rational_sqrt(const Rat& q, Rat& out);

}  // namespace gact
