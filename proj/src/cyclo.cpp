#include "algchar/cyclo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "algchar/errors.hpp"

namespace algchar {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Cyclo::Cyclo(unsigned p) : p_(p), c_(p - 1) {
  if (!is_prime(p)) throw DomainError("cyclotomic conductor must be prime, got " + std::to_string(p));
}

Cyclo Cyclo::rational(unsigned p, const mpq_class& r) {
  Cyclo c(p);
  c.c_[0] = r;
  c.c_[0].canonicalize();
  return c;
}

Cyclo Cyclo::from_power_basis(unsigned p, std::vector<mpq_class> c) {
  if (c.size() != p) throw DomainError("power-basis vector must have length p");
  Cyclo out(p);
  // zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
  const mpq_class top = c[p - 1];
  for (unsigned k = 0; k + 1 < p; ++k) {
    out.c_[k] = c[k] - top;
    out.c_[k].canonicalize();
  }
  return out;
}

Cyclo Cyclo::root_power(unsigned p, long long k) {
  long long r = k % static_cast<long long>(p);
  if (r < 0) r += p;
  std::vector<mpq_class> c(p);
  c[static_cast<std::size_t>(r)] = 1;
  return from_power_basis(p, std::move(c));
}

void Cyclo::check_same(const Cyclo& o) const {
  if (p_ != o.p_)
    throw DomainError("cyclotomic numbers over different conductors: " + std::to_string(p_) + " and " +
                      std::to_string(o.p_));
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  check_same(o);
  for (unsigned k = 0; k + 1 < p_; ++k) c_[k] += o.c_[k];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  check_same(o);
  for (unsigned k = 0; k + 1 < p_; ++k) c_[k] -= o.c_[k];
  return *this;
}

Cyclo& Cyclo::operator*=(const mpq_class& s) {
  mpq_class t(s);
  t.canonicalize();  // callers may pass an unreduced quotient
  for (auto& x : c_) x *= t;
  return *this;
}

Cyclo Cyclo::operator-() const {
  Cyclo r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  check_same(o);
  if (p_ == 2) return rational(2, c_[0] * o.c_[0]);
  std::vector<mpq_class> prod(p_);
  for (unsigned i = 0; i + 1 < p_; ++i) {
    if (c_[i] == 0) continue;
    for (unsigned j = 0; j + 1 < p_; ++j) {
      if (o.c_[j] == 0) continue;
      prod[(i + j) % p_] += c_[i] * o.c_[j];
    }
  }
  return from_power_basis(p_, std::move(prod));
}

Cyclo Cyclo::conj() const {
  if (p_ == 2) return *this;
  std::vector<mpq_class> c(p_);
  for (unsigned k = 0; k + 1 < p_; ++k) c[(p_ - k) % p_] = c_[k];
  return from_power_basis(p_, std::move(c));
}

bool Cyclo::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclo::is_rational() const {
  for (unsigned k = 1; k + 1 < p_; ++k)
    if (c_[k] != 0) return false;
  return true;
}

std::optional<mpq_class> Cyclo::to_rational() const {
  if (!is_rational()) return std::nullopt;
  return c_[0];
}

std::pair<double, double> Cyclo::approx() const {
  double re = 0, im = 0;
  for (unsigned k = 0; k + 1 < p_; ++k) {
    double a = 2 * std::numbers::pi * k / p_;
    double v = c_[k].get_d();
    re += v * std::cos(a);
    im += v * std::sin(a);
  }
  return {re, im};
}

std::string Cyclo::to_string() const {
  if (is_rational()) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (unsigned k = 0; k + 1 < p_; ++k) {
    if (c_[k] == 0) continue;
    mpq_class v = c_[k];
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << '-';
    first = false;
    mpq_class a = abs(v);
    if (k == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << '*';
    os << 'z';
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

}  // namespace algchar
