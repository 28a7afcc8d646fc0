#include "algchar/fourier.hpp"

#include "algchar/errors.hpp"

namespace algchar {

namespace {

// The key of X over F_q is also its index as a base-p digit string, where the
// digit at position e(d-1-i)+s is coefficient s of coordinate i. The trace
// pairing Tr(nu_i X_i) = sum_{s,t} nu_{i,s} X_{i,t} Tr(x^{s+t}) becomes the
// standard dot product once nu_i is replaced by u_i with u_{i,t} = sum_s nu_{i,s} T_{st}.
std::vector<Elem> trace_form_image(const Field& f) {
  const unsigned p = f.p(), e = f.e(), q = f.q();
  std::vector<Elem> basis(e);
  unsigned pw = 1;
  for (unsigned s = 0; s < e; ++s, pw *= p) basis[s] = static_cast<Elem>(pw);
  std::vector<Elem> out(q);
  for (unsigned a = 0; a < q; ++a) {
    unsigned v = 0, place = 1;
    for (unsigned t = 0; t < e; ++t, place *= p) {
      unsigned ut = 0, digits = a;
      for (unsigned s = 0; s < e; ++s, digits /= p) {
        unsigned as = digits % p;
        if (as) ut += as * f.trace(f.mul(basis[s], basis[t]));
      }
      v += (ut % p) * place;
    }
    out[a] = static_cast<Elem>(v);
  }
  return out;
}

std::vector<std::uint64_t> dual_positions(const Field& f, std::size_t d) {
  const std::vector<Elem> img = trace_form_image(f);
  const std::uint64_t n = checked_pow(f.q(), d);
  std::vector<std::uint64_t> pos(n);
  for (std::uint64_t key = 0; key < n; ++key) {
    Vec v = unpack_key(key, d, f.q());
    for (auto& x : v) x = img[x];
    pos[key] = pack_key(v, f.q());
  }
  return pos;
}

// In-place transform of n_digits axes; each point holds p integers in the basis
// 1, zeta, ..., zeta^(p-1) of Z[x]/(x^p - 1), where multiplying by zeta rotates.
void transform(std::vector<mpz_class>& a, unsigned p, std::size_t n_digits, bool inverse) {
  const std::uint64_t total = a.size() / p;
  std::vector<mpz_class> in(p * p), out(p * p);
  std::uint64_t stride = 1;
  for (std::size_t m = 0; m < n_digits; ++m, stride *= p) {
    for (std::uint64_t base = 0; base < total; ++base) {
      if ((base / stride) % p != 0) continue;
      for (unsigned k = 0; k < p; ++k)
        for (unsigned i = 0; i < p; ++i) in[k * p + i] = a[(base + k * stride) * p + i];
      for (auto& x : out) x = 0;
      for (unsigned j = 0; j < p; ++j)
        for (unsigned k = 0; k < p; ++k) {
          unsigned r = (j * k) % p;
          if (inverse) r = (p - r) % p;
          for (unsigned i = 0; i < p; ++i) out[j * p + (i + r) % p] += in[k * p + i];
        }
      for (unsigned k = 0; k < p; ++k)
        for (unsigned i = 0; i < p; ++i) a[(base + k * stride) * p + i] = out[k * p + i];
    }
  }
}

mpz_class common_denominator(const std::vector<Cyclo>& xs) {
  mpz_class den = 1;
  for (const auto& x : xs)
    for (const auto& c : x.coeffs())
      if (c.get_den() != 1) den = lcm(den, c.get_den());
  return den;
}

void check_size(const Field& f, std::size_t d, std::size_t given) {
  if (!pow_fits(f.q(), d, kFourierLimit))
    throw CapacityError("Fourier transform limited to 2^20 points; q^d is larger");
  if (given != checked_pow(f.q(), d)) throw DomainError("Fourier input must have q^d entries");
}

std::vector<mpz_class> scaled_integers(const std::vector<Cyclo>& xs, unsigned p, const mpz_class& den,
                                       const std::vector<std::uint64_t>* positions) {
  std::vector<mpz_class> a(xs.size() * p);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k].p() != p) throw DomainError("Fourier input has mixed conductors");
    const std::uint64_t slot = positions ? (*positions)[k] : k;
    const auto& c = xs[k].coeffs();
    for (unsigned i = 0; i + 1 < p; ++i) {
      if (c[i] == 0) continue;
      mpq_class v = c[i] * den;
      a[slot * p + i] = v.get_num();
    }
  }
  return a;
}

Cyclo unscale(const std::vector<mpz_class>& a, std::uint64_t slot, unsigned p, const mpz_class& den) {
  std::vector<mpq_class> c(p);
  for (unsigned i = 0; i < p; ++i) {
    c[i] = mpq_class(a[slot * p + i], den);
    c[i].canonicalize();
  }
  return Cyclo::from_power_basis(p, std::move(c));
}

}  // namespace

std::vector<Cyclo> fourier_coefficients(const Field& f, std::size_t d, const std::vector<Cyclo>& values) {
  check_size(f, d, values.size());
  const unsigned p = f.p();
  const mpz_class den = common_denominator(values);
  std::vector<mpz_class> a = scaled_integers(values, p, den, nullptr);
  transform(a, p, d * f.e(), true);
  const std::vector<std::uint64_t> pos = dual_positions(f, d);
  const mpz_class scale = den * mpz_class(static_cast<unsigned long>(values.size()));
  std::vector<Cyclo> out(values.size(), Cyclo(p));
  for (std::size_t k = 0; k < values.size(); ++k) out[k] = unscale(a, pos[k], p, scale);
  return out;
}

std::vector<Cyclo> fourier_values(const Field& f, std::size_t d, const std::vector<Cyclo>& coefficients) {
  check_size(f, d, coefficients.size());
  const unsigned p = f.p();
  const mpz_class den = common_denominator(coefficients);
  const std::vector<std::uint64_t> pos = dual_positions(f, d);
  std::vector<mpz_class> a = scaled_integers(coefficients, p, den, &pos);
  transform(a, p, d * f.e(), false);
  std::vector<Cyclo> out(coefficients.size(), Cyclo(p));
  for (std::size_t k = 0; k < coefficients.size(); ++k) out[k] = unscale(a, k, p, den);
  return out;
}

}  // namespace algchar
