#include "algchar/chartable.hpp"

#include <cmath>

#include "algchar/errors.hpp"
#include "algchar/fourier.hpp"

namespace algchar {

namespace {

using u64 = std::uint64_t;
using Row = std::vector<u64>;
using Mat = std::vector<Row>;

struct ModP {
  u64 P;
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((unsigned __int128)a * b % P); }
  u64 add(u64 a, u64 b) const { return (a + b) % P; }
  u64 sub(u64 a, u64 b) const { return (a + P - b) % P; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (a %= P; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const { return pow(a, P - 2); }
};

bool prime64(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Rows reduced to echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& rows, const ModP& F) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t i = r;
    while (i < rows.size() && rows[i][c] == 0) ++i;
    if (i == rows.size()) continue;
    std::swap(rows[i], rows[r]);
    const u64 s = F.inv(rows[r][c]);
    for (auto& x : rows[r]) x = F.mul(x, s);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0) continue;
      const u64 f = rows[k][c];
      for (std::size_t j = c; j < cols; ++j) rows[k][j] = F.sub(rows[k][j], F.mul(f, rows[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Null space of a square matrix, as coordinate vectors.
Mat kernel(Mat a, const ModP& F) {
  const std::size_t n = a.size();
  std::vector<std::size_t> piv = rref(a, F);
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  Mat out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Row v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.sub(0, a[i][free]);
    out.push_back(std::move(v));
  }
  return out;
}

// Characteristic polynomial through reduction to Hessenberg form; low degree first.
Row charpoly(Mat h, const ModP& F) {
  const std::size_t n = h.size();
  for (std::size_t c = 0; c + 2 < n; ++c) {
    const std::size_t r = c + 1;
    std::size_t i = r;
    while (i < n && h[i][c] == 0) ++i;
    if (i == n) continue;
    if (i != r) {
      std::swap(h[i], h[r]);
      for (auto& row : h) std::swap(row[i], row[r]);
    }
    const u64 s = F.inv(h[r][c]);
    for (std::size_t i2 = r + 1; i2 < n; ++i2) {
      const u64 u = F.mul(h[i2][c], s);
      if (!u) continue;
      for (std::size_t col = 0; col < n; ++col) h[i2][col] = F.sub(h[i2][col], F.mul(u, h[r][col]));
      for (std::size_t row = 0; row < n; ++row) h[row][r] = F.add(h[row][r], F.mul(u, h[row][i2]));
    }
  }
  std::vector<Row> p(n + 1);
  p[0] = {1};
  for (std::size_t k = 0; k < n; ++k) {
    Row next(k + 2, 0);
    for (std::size_t j = 0; j <= k; ++j) {
      next[j + 1] = F.add(next[j + 1], p[k][j]);
      next[j] = F.sub(next[j], F.mul(h[k][k], p[k][j]));
    }
    u64 t = 1;
    for (std::size_t i = k; i-- > 0;) {
      t = F.mul(t, h[i + 1][i]);
      const u64 f = F.mul(t, h[i][k]);
      if (!f) continue;
      for (std::size_t j = 0; j < p[i].size(); ++j) next[j] = F.sub(next[j], F.mul(f, p[i][j]));
    }
    p[k + 1] = std::move(next);
  }
  return p[n];
}

// sum_j m_j zeta_o^j as an element of Q(zeta_p); o is a power of p.
Cyclo exact_value(unsigned p, u64 o, const std::vector<long long>& m) {
  if (o == 1) return Cyclo::rational(p, mpq_class(static_cast<long>(m[0])));
  std::vector<long long> a(m);
  const u64 step = o / p, phi = o - step;
  // zeta_o^phi = -(1 + zeta_o^step + ... + zeta_o^((p-2) step))
  for (u64 j = o; j-- > phi;) {
    const long long c = a[j];
    if (!c) continue;
    a[j] = 0;
    for (unsigned i = 0; i + 1 < p; ++i) a[j - phi + i * step] -= c;
  }
  std::vector<mpq_class> c(p, 0);
  for (u64 j = 0; j < phi; ++j) {
    if (!a[j]) continue;
    if (j % step) throw DomainError("a character value lies outside Q(zeta_p)");
    c[j / step] = static_cast<long>(a[j]);
  }
  return Cyclo::from_power_basis(p, std::move(c));
}

}  // namespace

ClassAlgebraTable class_algebra_table(const Group& g) {
  const Algebra& alg = g.algebra();
  const unsigned q = alg.field().q(), p = alg.field().p();
  const std::size_t d = alg.dim();
  if (!pow_fits(q, d, kFourierLimit)) throw CapacityError("the class-algebra table needs |G| <= 2^20");
  const u64 n = g.order();

  OrbitPartition cl = conjugacy_classes(g);
  const std::size_t k = cl.count();
  std::vector<std::uint32_t> class_of(n);
  std::vector<std::vector<u64>> members(k);
  for (u64 key = 0; key < n; ++key) {
    class_of[key] = cl.orbit_id(unpack_key(key, d, q));
    members[class_of[key]].push_back(key);
  }
  auto key_of = [&](const Vec& v) { return pack_key(v, q); };
  const std::size_t id_class = class_of[0];

  std::vector<Vec> reps(k);
  std::vector<u64> order(k, 1);
  std::vector<std::vector<std::uint32_t>> power_class(k);  // class of rep^m, m < order
  u64 exponent = 1;
  for (std::size_t c = 0; c < k; ++c) {
    reps[c] = unpack_key(members[c][0], d, q);
    Vec y = g.identity();
    do {
      power_class[c].push_back(class_of[key_of(y)]);
      y = g.mul(y, reps[c]);
    } while (key_of(y) != 0);
    order[c] = power_class[c].size();
    exponent = std::max(exponent, order[c]);
  }
  std::vector<std::uint32_t> inverse_class(k);
  for (std::size_t c = 0; c < k; ++c) inverse_class[c] = class_of[key_of(g.inv(reps[c]))];

  const u64 bound = std::max<u64>(2 * static_cast<u64>(std::ceil(std::sqrt(double(n)))) + 1, p + 1);
  u64 P = (bound / exponent + 1) * exponent + 1;
  while (!prime64(P)) P += exponent;
  const ModP F{P};

  // M_j[l][c] = #{x in C_j : x^-1 g_c in C_l}; common right eigenvectors are the central characters.
  auto class_matrix = [&](std::size_t j) {
    Mat m(k, Row(k, 0));
    std::vector<Vec> inverses;
    for (u64 key : members[j]) inverses.push_back(g.inv(unpack_key(key, d, q)));
    for (std::size_t c = 0; c < k; ++c)
      for (const Vec& xi : inverses) ++m[class_of[key_of(g.mul(xi, reps[c]))]][c];
    for (auto& row : m)
      for (auto& x : row) x %= P;
    return m;
  };

  std::vector<Mat> spaces;
  {
    Mat whole(k, Row(k, 0));
    for (std::size_t i = 0; i < k; ++i) whole[i][i] = 1;
    spaces.push_back(std::move(whole));
  }
  for (std::size_t j = 0; j < k; ++j) {
    bool split_needed = false;
    for (const auto& s : spaces) split_needed |= s.size() > 1;
    if (!split_needed) break;
    if (j == id_class) continue;
    const Mat m = class_matrix(j);
    std::vector<Mat> next;
    for (auto& basis : spaces) {
      if (basis.size() == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      std::vector<std::size_t> piv = rref(basis, F);
      const std::size_t dim = basis.size();
      Mat a(dim, Row(dim, 0));  // M u_r = sum_i a[i][r] u_i
      for (std::size_t r = 0; r < dim; ++r) {
        Row image(k, 0);
        for (std::size_t l = 0; l < k; ++l) {
          u64 acc = 0;
          for (std::size_t c = 0; c < k; ++c)
            if (m[l][c] && basis[r][c]) acc = F.add(acc, F.mul(m[l][c], basis[r][c]));
          image[l] = acc;
        }
        for (std::size_t i = 0; i < dim; ++i) a[i][r] = image[piv[i]];
        for (std::size_t c = 0; c < k; ++c) {
          u64 expect = 0;
          for (std::size_t i = 0; i < dim; ++i) expect = F.add(expect, F.mul(a[i][r], basis[i][c]));
          if (expect != image[c]) throw InternalError("class algebra: eigenspace is not invariant");
        }
      }
      Row cp = charpoly(a, F);
      std::size_t found = 0;
      for (u64 t = 0; t < P && found < dim; ++t) {
        u64 v = 0;
        for (std::size_t i = cp.size(); i-- > 0;) v = F.add(F.mul(v, t), cp[i]);
        if (v) continue;
        Mat shifted = a;
        for (std::size_t i = 0; i < dim; ++i) shifted[i][i] = F.sub(shifted[i][i], t);
        Mat sub;
        for (const Row& coords : kernel(shifted, F)) {
          Row w(k, 0);
          for (std::size_t r = 0; r < dim; ++r)
            if (coords[r])
              for (std::size_t c = 0; c < k; ++c) w[c] = F.add(w[c], F.mul(coords[r], basis[r][c]));
          sub.push_back(std::move(w));
        }
        found += sub.size();
        next.push_back(std::move(sub));
      }
      if (found != dim) throw InternalError("class algebra: class matrix does not split over F_P");
    }
    spaces = std::move(next);
  }
  if (spaces.size() != k) throw InternalError("class algebra: classes fail to separate the characters");

  // A generator of the p-power roots of unity of order `exponent` in F_P.
  u64 root = 0;
  for (u64 a = 2; a < P && !root; ++a) {
    u64 r = F.pow(a, (P - 1) / exponent);
    if (exponent == 1 || F.pow(r, exponent / p) != 1) root = r;
  }

  ClassAlgebraTable out;
  out.prime = P;
  out.exponent = exponent;
  out.class_count = k;
  for (auto& space : spaces) {
    Row w = space[0];
    if (!w[id_class]) throw InternalError("class algebra: central character vanishes at 1");
    const u64 s = F.inv(w[id_class]);
    for (auto& x : w) x = F.mul(x, s);
    u64 norm = 0;
    for (std::size_t c = 0; c < k; ++c)
      norm = F.add(norm, F.mul(F.mul(w[c], w[inverse_class[c]]), F.inv(members[c].size() % P)));
    const u64 deg_sq = F.mul(n % P, F.inv(norm));
    u64 degree = 0;
    for (u64 e = 1; e * e <= n; e *= q)
      if (F.mul(e, e) == deg_sq) degree = e;
    if (!degree) throw InternalError("class algebra: no q-power degree fits");

    std::vector<u64> value_mod(k);
    for (std::size_t c = 0; c < k; ++c) value_mod[c] = F.mul(F.mul(degree % P, w[c]), F.inv(members[c].size() % P));
    std::vector<Cyclo> exact(k);
    for (std::size_t c = 0; c < k; ++c) {
      const u64 o = order[c];
      const u64 z = F.pow(root, exponent / o);
      const u64 o_inv = F.inv(o % P);
      std::vector<long long> mult(o);
      for (u64 j = 0; j < o; ++j) {
        u64 acc = 0;
        const u64 zj = F.pow(z, (o - j) % o);  // z^-j
        u64 zjm = 1;
        for (u64 m = 0; m < o; ++m) {
          acc = F.add(acc, F.mul(value_mod[power_class[c][m]], zjm));
          zjm = F.mul(zjm, zj);
        }
        const u64 mj = F.mul(acc, o_inv);
        if (mj > degree) throw InternalError("class algebra: eigenvalue multiplicity out of range");
        mult[j] = static_cast<long long>(mj);
      }
      exact[c] = exact_value(p, o, mult);
    }
    std::vector<Cyclo> values(n, Cyclo(p));
    for (u64 key = 0; key < n; ++key) values[key] = exact[class_of[key]];
    ClassFunction chi = from_pointwise_table(alg, values);
    if (!(chi.degree() == Cyclo::rational(p, mpq_class(static_cast<unsigned long>(degree)))))
      throw InternalError("class algebra: lifted character has the wrong degree");
    out.characters.push_back(std::move(chi));
  }
  return out;
}

}  // namespace algchar
