#pragma once

// Exact arithmetic in Q(zeta_p) for a prime p, on the basis 1, zeta, ..., zeta^(p-2).

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace algchar {

class Cyclo {
 public:
  /// Zero in Q(zeta_2) = Q.
  Cyclo() : Cyclo(2) {}
  /// Zero in Q(zeta_p).
  explicit Cyclo(unsigned p);

  static Cyclo rational(unsigned p, const mpq_class& r);
  static Cyclo root_power(unsigned p, long long k);
  /// From coefficients of 1, zeta, ..., zeta^(p-1) (length p, redundant basis).
  static Cyclo from_power_basis(unsigned p, std::vector<mpq_class> c);

  unsigned p() const { return p_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const mpq_class& s);
  Cyclo operator+(const Cyclo& o) const { return Cyclo(*this) += o; }
  Cyclo operator-(const Cyclo& o) const { return Cyclo(*this) -= o; }
  Cyclo operator-() const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator*(const mpq_class& s) const { return Cyclo(*this) *= s; }

  /// Complex conjugation zeta -> zeta^-1.
  Cyclo conj() const;

  bool operator==(const Cyclo& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool is_zero() const;
  bool is_rational() const;
  std::optional<mpq_class> to_rational() const;

  /// Floating value for diagnostics and test cross-checks only.
  std::pair<double, double> approx() const;
  /// "3/2", or "1/2 + 3*z - z^2" style.
  std::string to_string() const;

 private:
  void check_same(const Cyclo& o) const;
  unsigned p_;
  std::vector<mpq_class> c_;
};

bool is_prime(unsigned n);

}  // namespace algchar
