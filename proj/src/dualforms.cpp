#include "algchar/dualforms.hpp"

#include <cctype>
#include <sstream>

#include "algchar/errors.hpp"

namespace algchar {

AffineSet::AffineSet(Vec base, Subspace directions) : directions_(std::move(directions)) {
  if (base.size() != directions_.ambient_dim()) throw DomainError("affine base has wrong length");
  base_ = directions_.reduce(base);
}

bool AffineSet::contains(const Vec& v) const {
  if (v.size() != ambient_dim()) return false;
  return directions_.reduce(v) == base_;
}

Vec AffineSet::local_coords(const Vec& v) const {
  if (!contains(v)) throw DomainError("vector " + vec_to_string(v) + " is not in the affine set");
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[directions_.pivots()[i]];
  return c;
}

Vec AffineSet::from_local(const Vec& c) const {
  Vec v = directions_.combine(c);
  return vec_add(field(), v, base_);
}

Vec AffineSet::point_at(std::uint64_t index) const { return from_local(unpack_key(index, dim(), field().q())); }

std::uint64_t AffineSet::index_of(const Vec& v) const { return pack_key(local_coords(v), field().q()); }

void AffineSet::for_each(const std::function<void(const Vec&)>& fn) const {
  const std::uint64_t n = size();
  for (std::uint64_t i = 0; i < n; ++i) fn(point_at(i));
}

Matrix form_matrix(const Algebra& alg, const Vec& lambda) {
  const std::size_t d = alg.dim();
  if (lambda.size() != d) throw DomainError("functional has wrong length");
  const Field& f = alg.field();
  Matrix m(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = vec_dot(f, lambda, alg.basis_product(i, j));
  return m;
}

Subspace left_kernel(const Algebra& alg, const Vec& lambda, const Subspace& rows, const Subspace& cols) {
  const Field& f = alg.field();
  const std::size_t r = rows.dim(), c = cols.dim();
  if (c == 0 || r == 0) return rows;
  // x in F_q^r lies in the kernel iff sum_i x_i lambda(r_i c_j) = 0 for every j.
  Matrix mt(c, r);
  std::vector<Vec> rv = rows.basis_vectors();
  std::vector<Vec> cv = cols.basis_vectors();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) mt(j, i) = vec_dot(f, lambda, alg.mul(rv[i], cv[j]));
  Matrix ns = null_space(f, mt);
  std::vector<Vec> out;
  for (std::size_t k = 0; k < ns.rows(); ++k) out.push_back(rows.combine(ns.row_vec(k)));
  return Subspace::span(f, alg.dim(), out);
}

Subspace left_stabilizer_algebra(const Algebra& alg, const Vec& lambda) {
  Subspace full = Subspace::full(alg.field(), alg.dim());
  return left_kernel(alg, lambda, full, full);
}

Subspace s_algebra(const Algebra& alg, const Vec& lambda) {
  Subspace full = Subspace::full(alg.field(), alg.dim());
  return left_kernel(alg, lambda, full, left_kernel(alg, lambda, full, full));
}

Subspace kernel_of(const Algebra& alg, const Vec& lambda) {
  Matrix row = Matrix::from_rows({lambda}, alg.dim());
  return Subspace::from_matrix(alg.field(), null_space(alg.field(), row));
}

ChainResult chain(const Algebra& alg, const Vec& lambda) {
  const std::size_t d = alg.dim();
  ChainResult res;
  res.l_chain.push_back(Subspace::zero(alg.field(), d));
  res.s_chain.push_back(Subspace::full(alg.field(), d));
  for (std::size_t i = 0; i <= d + 1; ++i) {
    const Subspace& s = res.s_chain.back();
    Subspace l_next = left_kernel(alg, lambda, s, s);
    Subspace s_next = left_kernel(alg, lambda, s, l_next);
    bool stable = s_next == s;
    res.l_chain.push_back(std::move(l_next));
    res.s_chain.push_back(std::move(s_next));
    if (stable) {
      res.depth = res.s_chain.size() - 1;
      res.k_space = res.l_chain[1].intersect(kernel_of(alg, lambda));
      return res;
    }
  }
  throw InternalError("kernel chain failed to stabilize within dim + 1 steps");
}

Subspace radical_alternating(const Algebra& alg, const Vec& lambda) {
  const Field& f = alg.field();
  const std::size_t d = alg.dim();
  Matrix m = form_matrix(alg, lambda);
  // X is in the radical iff sum_i X_i (m_ij - m_ji) = 0 for all j.
  Matrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(j, i) = f.sub(m(i, j), m(j, i));
  return Subspace::from_matrix(f, null_space(f, a));
}

Vec restrict_functional(const Subspace& h, const Vec& lambda) {
  if (lambda.size() != h.ambient_dim()) throw DomainError("functional has wrong length for restriction");
  Vec out(h.dim());
  for (std::size_t a = 0; a < h.dim(); ++a) out[a] = vec_dot(h.field(), lambda, h.basis_vector(a));
  return out;
}

AffineSet lift_functional(const Subspace& h, const Vec& kappa) {
  if (kappa.size() != h.dim()) throw DomainError("functional has wrong length for lifting");
  // RREF basis has identity columns at the pivots, so placing kappa there extends it.
  Vec base(h.ambient_dim(), 0);
  for (std::size_t a = 0; a < h.dim(); ++a) base[h.pivots()[a]] = kappa[a];
  return AffineSet(std::move(base), h.annihilator());
}

Subspace relative_subspace(const Subspace& outer, const Subspace& inner) {
  std::vector<Vec> coords;
  for (std::size_t i = 0; i < inner.dim(); ++i) coords.push_back(outer.coordinates(inner.basis_vector(i)));
  return Subspace::span(outer.field(), outer.dim(), coords);
}

AffineSet right_orbit_affine(const Algebra& alg, const Vec& lambda) {
  return AffineSet(lambda, left_stabilizer_algebra(alg, lambda).annihilator());
}

AffineSet right_orbit_affine(const Algebra& alg, const Vec& lambda, const Subspace& s) {
  Matrix m = form_matrix(alg, lambda);
  std::vector<Vec> dirs;
  for (std::size_t a = 0; a < s.dim(); ++a) dirs.push_back(mat_vec(alg.field(), m, s.basis_vector(a)));
  return AffineSet(lambda, Subspace::span(alg.field(), alg.dim(), dirs));
}

AffineSet left_orbit_affine(const Algebra& alg, const Vec& lambda) {
  Matrix m = form_matrix(alg, lambda);
  std::vector<Vec> dirs;
  for (std::size_t i = 0; i < m.rows(); ++i) dirs.push_back(m.row_vec(i));
  return AffineSet(lambda, Subspace::span(alg.field(), alg.dim(), dirs));
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  long long number() {
    skip();
    if (!peek_digit()) throw ValidationError("expected a number at position " + std::to_string(pos) + " in '" + s + "'");
    long long v = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) v = v * 10 + (s[pos++] - '0');
    return v;
  }
  bool done() {
    skip();
    return pos == s.size();
  }
};

}  // namespace

Vec parse_functional(const Algebra& alg, const std::string& text, std::size_t ut_n) {
  const Field& f = alg.field();
  const std::size_t d = alg.dim();
  Vec out(d, 0);
  if (text.find('e') != std::string::npos) {
    if (ut_n == 0) throw ValidationError("e*(i,j) syntax needs a u_n algebra");
    Cursor c{text};
    bool first = true;
    while (!c.done()) {
      bool negative = false;
      if (!first) {
        if (c.eat('-'))
          negative = true;
        else if (!c.eat('+'))
          throw ValidationError("expected '+' between terms in '" + text + "'");
      } else if (c.eat('-')) {
        negative = true;
      }
      first = false;
      long long coeff = 1;
      if (c.peek_digit()) {
        coeff = c.number();
        c.eat('*');
      }
      if (!c.eat('e') || !c.eat('*') || !c.eat('('))
        throw ValidationError("expected e*(i,j) in '" + text + "'");
      long long i = c.number();
      if (!c.eat(',')) throw ValidationError("expected ',' in '" + text + "'");
      long long j = c.number();
      if (!c.eat(')')) throw ValidationError("expected ')' in '" + text + "'");
      if (i < 1 || j <= i || static_cast<std::size_t>(j) > ut_n)
        throw ValidationError("e*(" + std::to_string(i) + "," + std::to_string(j) + ") is not a u_" +
                              std::to_string(ut_n) + " coordinate");
      Elem v = coeff < static_cast<long long>(f.q()) ? static_cast<Elem>(coeff) : f.from_integer(coeff);
      if (negative) v = f.neg(v);
      std::size_t k = ut_index(ut_n, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      out[k] = f.add(out[k], v);
    }
    return out;
  }
  Cursor c{text};
  c.eat('[');
  std::size_t k = 0;
  while (!c.done() && !c.eat(']')) {
    if (k > 0 && !c.eat(',')) throw ValidationError("expected ',' in coordinate list '" + text + "'");
    long long v = c.number();
    if (v < 0 || v >= static_cast<long long>(f.q())) throw ValidationError("coordinate outside F_q in '" + text + "'");
    if (k >= d) throw ValidationError("too many coordinates in '" + text + "'");
    out[k++] = static_cast<Elem>(v);
  }
  if (k != d)
    throw ValidationError("expected " + std::to_string(d) + " coordinates, got " + std::to_string(k));
  return out;
}

std::string format_functional(const Vec& lambda, std::size_t ut_n) {
  if (ut_n == 0) return vec_to_string(lambda);
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (!lambda[k]) continue;
    auto [i, j] = ut_position(ut_n, k);
    if (!first) os << '+';
    first = false;
    if (lambda[k] != 1) os << static_cast<unsigned>(lambda[k]);
    os << "e*(" << i << ',' << j << ')';
  }
  return first ? "0" : os.str();
}

}  // namespace algchar
