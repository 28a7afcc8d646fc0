#include "algchar/nilalg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <unordered_set>

#include "algchar/errors.hpp"

namespace algchar {

namespace {

std::size_t compute_nilpotency(const Algebra& alg) {
  const Field& f = alg.field();
  const std::size_t d = alg.dim();
  Subspace full = Subspace::full(f, d);
  Subspace current = full;
  std::size_t k = 1;
  while (current.dim() > 0) {
    Subspace next = product_space(alg, current, full);
    ++k;
    if (next.dim() == current.dim()) {
      std::ostringstream os;
      os << "algebra is not nilpotent: the power filtration stabilizes at a nonzero space of dimension "
         << next.dim() << " spanned by";
      for (std::size_t i = 0; i < next.dim(); ++i) os << ' ' << vec_to_string(next.basis_vector(i));
      throw ValidationError(os.str());
    }
    current = std::move(next);
  }
  return k;
}

}  // namespace

Algebra::Algebra() : data_(assemble(Field(), {}, {})) {}

std::shared_ptr<Algebra::Data> Algebra::assemble(const Field& field, std::vector<std::string> names,
                                                 const std::vector<StructureConstant>& constants) {
  auto d = std::make_shared<Data>();
  d->field = field;
  d->dim = names.size();
  d->names = std::move(names);
  d->rows.resize(d->dim);
  std::vector<std::vector<bool>> seen(d->dim, std::vector<bool>(d->dim, false));
  for (const auto& c : constants) {
    if (c.i >= d->dim || c.j >= d->dim)
      throw ValidationError("structure constant index out of range: (" + std::to_string(c.i) + "," +
                            std::to_string(c.j) + ")");
    if (c.product.size() != d->dim)
      throw ValidationError("structure constant for (" + std::to_string(c.i) + "," + std::to_string(c.j) +
                            ") has wrong length");
    if (seen[c.i][c.j])
      throw ValidationError("duplicate structure constant (" + std::to_string(c.i) + "," +
                            std::to_string(c.j) + ")");
    seen[c.i][c.j] = true;
    Term t{c.j, {}};
    for (std::size_t k = 0; k < d->dim; ++k) {
      if (c.product[k] >= field.q()) throw ValidationError("structure constant entry outside F_q");
      if (c.product[k]) t.product.emplace_back(k, c.product[k]);
    }
    if (t.product.empty()) continue;
    d->rows[c.i].push_back(std::move(t));
    ++d->nonzero_pairs;
  }
  for (auto& row : d->rows)
    std::sort(row.begin(), row.end(), [](const Term& a, const Term& b) { return a.j < b.j; });
  return d;
}

Algebra Algebra::trusted(const Field& field, std::vector<std::string> names,
                         const std::vector<StructureConstant>& constants) {
  auto d = assemble(field, std::move(names), constants);
  Algebra tmp{std::shared_ptr<const Data>(d)};
  d->nilpotency_index = compute_nilpotency(tmp);
  return Algebra(std::shared_ptr<const Data>(d));
}

Algebra Algebra::from_constants(const Field& field, std::vector<std::string> names,
                                const std::vector<StructureConstant>& constants) {
  auto d = assemble(field, std::move(names), constants);
  Algebra tmp{std::shared_ptr<const Data>(d)};
  const std::size_t n = d->dim;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vec bij = tmp.basis_product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        Vec left = tmp.mul(bij, unit_vector(n, k));
        Vec right = tmp.mul(unit_vector(n, i), tmp.basis_product(j, k));
        if (left != right) {
          std::ostringstream os;
          os << "structure constants are not associative on basis triple (" << d->names[i] << ", "
             << d->names[j] << ", " << d->names[k] << "): (b_i b_j) b_k = " << vec_to_string(left)
             << " but b_i (b_j b_k) = " << vec_to_string(right);
          throw ValidationError(os.str());
        }
      }
    }
  d->nilpotency_index = compute_nilpotency(tmp);
  return Algebra(std::shared_ptr<const Data>(d));
}

Vec Algebra::mul(const Vec& x, const Vec& y) const {
  const std::size_t n = dim();
  if (x.size() != n || y.size() != n) throw DomainError("algebra element has wrong length");
  const Field& f = field();
  Vec r(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (const Term& t : data_->rows[i]) {
      Elem yj = y[t.j];
      if (!yj) continue;
      Elem c = f.mul(x[i], yj);
      for (const auto& [k, v] : t.product) r[k] = f.add(r[k], f.mul(c, v));
    }
  }
  return r;
}

Vec Algebra::basis_product(std::size_t i, std::size_t j) const {
  Vec r(dim(), 0);
  for (const Term& t : data_->rows[i]) {
    if (t.j != j) continue;
    for (const auto& [k, v] : t.product) r[k] = v;
  }
  return r;
}

Vec Algebra::power(const Vec& x, std::size_t k) const {
  if (k == 0) throw DomainError("power of an algebra element needs k >= 1");
  Vec r = x;
  for (std::size_t i = 1; i < k; ++i) {
    if (vec_is_zero(r)) break;
    r = mul(r, x);
  }
  return r;
}

std::vector<StructureConstant> Algebra::constants() const {
  std::vector<StructureConstant> out;
  for (std::size_t i = 0; i < dim(); ++i)
    for (const Term& t : data_->rows[i]) {
      StructureConstant c{i, t.j, Vec(dim(), 0)};
      for (const auto& [k, v] : t.product) c.product[k] = v;
      out.push_back(std::move(c));
    }
  return out;
}

bool Algebra::operator==(const Algebra& other) const {
  if (data_ == other.data_) return true;
  if (!(field() == other.field()) || dim() != other.dim()) return false;
  auto a = constants(), b = other.constants();
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].i != b[k].i || a[k].j != b[k].j || a[k].product != b[k].product) return false;
  return true;
}

std::size_t ut_index(std::size_t n, std::size_t i, std::size_t j) {
  if (!(1 <= i && i < j && j <= n)) throw DomainError("u_n index requires 1 <= i < j <= n");
  // rows 1..i-1 contribute (n - r) entries each
  std::size_t idx = 0;
  for (std::size_t r = 1; r < i; ++r) idx += n - r;
  return idx + (j - i - 1);
}

std::pair<std::size_t, std::size_t> ut_position(std::size_t n, std::size_t index) {
  for (std::size_t i = 1; i < n; ++i) {
    if (index < n - i) return {i, i + 1 + index};
    index -= n - i;
  }
  throw DomainError("u_n basis index out of range");
}

Algebra make_ut(std::size_t n, const Field& field) {
  if (n < 1) throw DomainError("make_ut requires n >= 1");
  const std::size_t d = n * (n - 1) / 2;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < d; ++k) {
    auto [i, j] = ut_position(n, k);
    names.push_back("e" + std::to_string(i) + "," + std::to_string(j));
  }
  std::vector<StructureConstant> constants;
  for (std::size_t a = 0; a < d; ++a) {
    auto [i, j] = ut_position(n, a);
    for (std::size_t b = 0; b < d; ++b) {
      auto [k, l] = ut_position(n, b);
      if (j != k) continue;
      Vec prod(d, 0);
      prod[ut_index(n, i, l)] = 1;
      constants.push_back({a, b, std::move(prod)});
    }
  }
  return Algebra::trusted(field, std::move(names), constants);
}

Subspace product_space(const Algebra& alg, const Subspace& a, const Subspace& b) {
  std::vector<Vec> prods;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec x = a.basis_vector(i);
    for (std::size_t j = 0; j < b.dim(); ++j) {
      Vec p = alg.mul(x, b.basis_vector(j));
      if (!vec_is_zero(p)) prods.push_back(std::move(p));
    }
  }
  return Subspace::span(alg.field(), alg.dim(), prods);
}

Subalgebra::Subalgebra(Algebra parent, Subspace space) : parent_(std::move(parent)), space_(std::move(space)) {
  if (space_.ambient_dim() != parent_.dim()) throw DomainError("subspace ambient dimension does not match algebra");
  const std::size_t n = parent_.dim();
  const std::size_t k = space_.dim();
  is_subalgebra_ = true;
  is_left_ideal_ = true;
  is_right_ideal_ = true;
  std::vector<Vec> basis = space_.basis_vectors();
  for (std::size_t a = 0; a < k && is_subalgebra_; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (!space_.contains(parent_.mul(basis[a], basis[b]))) {
        is_subalgebra_ = false;
        witness_ = std::make_pair(basis[a], basis[b]);
        break;
      }
    }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      Vec e = unit_vector(n, i);
      if (is_left_ideal_ && !space_.contains(parent_.mul(e, basis[a]))) is_left_ideal_ = false;
      if (is_right_ideal_ && !space_.contains(parent_.mul(basis[a], e))) is_right_ideal_ = false;
    }
  if (!is_subalgebra_) {
    is_left_ideal_ = is_right_ideal_ = false;
    return;
  }
  std::vector<StructureConstant> constants;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      Vec p = parent_.mul(basis[a], basis[b]);
      if (vec_is_zero(p)) continue;
      constants.push_back({a, b, space_.coordinates(p)});
    }
  std::vector<std::string> names;
  for (std::size_t a = 0; a < k; ++a) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < n; ++i) {
      Elem c = basis[a][i];
      if (!c) continue;
      if (!first) os << '+';
      first = false;
      if (c != 1) os << static_cast<unsigned>(c) << '*';
      os << parent_.names()[i];
    }
    names.push_back(os.str());
  }
  standalone_ = std::make_shared<const Algebra>(Algebra::trusted(parent_.field(), std::move(names), constants));
}

const Algebra& Subalgebra::algebra() const {
  if (!standalone_) throw DomainError("subspace is not a subalgebra");
  return *standalone_;
}

Subalgebra full_subalgebra(const Algebra& alg) {
  return Subalgebra(alg, Subspace::full(alg.field(), alg.dim()));
}

Subalgebra zero_subalgebra(const Algebra& alg) { return Subalgebra(alg, Subspace::zero(alg.field(), alg.dim())); }

Subalgebra subalgebra_from_equations(const Algebra& alg, const Matrix& equations) {
  if (equations.rows() > 0 && equations.cols() != alg.dim())
    throw DomainError("equation rows must have one coefficient per basis vector");
  Subspace space = equations.rows() == 0 ? Subspace::full(alg.field(), alg.dim())
                                         : Subspace::from_matrix(alg.field(), null_space(alg.field(), equations));
  Subalgebra h(alg, space);
  if (!h.is_subalgebra()) {
    auto w = *h.closure_witness();
    throw ValidationError("equation-defined space is not multiplicatively closed: " + vec_to_string(w.first) +
                          " * " + vec_to_string(w.second) + " leaves it");
  }
  return h;
}

Subalgebra subalgebra_generated(const Algebra& alg, const std::vector<Vec>& generators) {
  Subspace span = Subspace::span(alg.field(), alg.dim(), generators);
  while (true) {
    Subspace next = span.sum(product_space(alg, span, span));
    if (next.dim() == span.dim()) break;
    span = std::move(next);
  }
  return Subalgebra(alg, span);
}

Subalgebra power_ideal(const Algebra& alg, std::size_t k) { return power_ideal(full_subalgebra(alg), k); }

Subalgebra power_ideal(const Subalgebra& h, std::size_t k) {
  if (k < 1) throw DomainError("power_ideal requires k >= 1");
  const Algebra& alg = h.parent();
  Subspace current = h.space();
  for (std::size_t i = 1; i < k && current.dim() > 0; ++i) current = product_space(alg, current, h.space());
  return Subalgebra(alg, current);
}

Vec Quotient::project(const Vec& x) const {
  Vec r = ideal.space().reduce(x);
  Vec out(complement.size());
  for (std::size_t a = 0; a < complement.size(); ++a) out[a] = r[complement[a]];
  return out;
}

Vec Quotient::lift(const Vec& y) const {
  if (y.size() != complement.size()) throw DomainError("quotient vector has wrong length");
  Vec x(ideal.parent().dim(), 0);
  for (std::size_t a = 0; a < complement.size(); ++a) x[complement[a]] = y[a];
  return x;
}

Quotient quotient(const Algebra& alg, const Subalgebra& ideal) {
  if (!ideal.is_ideal()) throw DomainError("quotient requires a two-sided ideal");
  Quotient q;
  q.ideal = ideal;
  std::vector<bool> is_pivot(alg.dim(), false);
  for (auto c : ideal.space().pivots()) is_pivot[c] = true;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    if (!is_pivot[i]) q.complement.push_back(i);
  const std::size_t m = q.complement.size();
  q.projection = Matrix(alg.dim(), m);
  for (std::size_t i = 0; i < alg.dim(); ++i) q.projection.set_row(i, q.project(unit_vector(alg.dim(), i)));
  std::vector<StructureConstant> constants;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < m; ++a) {
    names.push_back(alg.names()[q.complement[a]]);
    for (std::size_t b = 0; b < m; ++b) {
      Vec p = q.project(alg.basis_product(q.complement[a], q.complement[b]));
      if (!vec_is_zero(p)) constants.push_back({a, b, std::move(p)});
    }
  }
  q.algebra = Algebra::trusted(alg.field(), std::move(names), constants);
  return q;
}

std::vector<Subalgebra> enumerate_subalgebras(const Algebra& alg, const SubalgebraSearch& search) {
  const Field& f = alg.field();
  const std::size_t n = alg.dim();
  std::size_t limit = search.max_dim;
  if (limit == 0) limit = f.q() == 2 ? 6 : (f.q() == 3 ? 5 : 4);
  if (n > limit)
    throw CapacityError("subalgebra enumeration guard: algebra dimension " + std::to_string(n) +
                        " exceeds the search limit " + std::to_string(limit));

  std::vector<Subalgebra> out;
  std::vector<std::size_t> pivots;
  // Enumerate RREF matrices of rank k: choose pivots, then fill free entries.
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t k) {
    if (pivots.size() == k) {
      std::vector<std::pair<std::size_t, std::size_t>> free;
      std::vector<bool> is_pivot(n, false);
      for (auto c : pivots) is_pivot[c] = true;
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = pivots[r] + 1; c < n; ++c)
          if (!is_pivot[c]) free.emplace_back(r, c);
      const std::uint64_t count = checked_pow(f.q(), free.size());
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Vec entries = unpack_key(idx, free.size(), f.q());
        Matrix m(k, n);
        for (std::size_t r = 0; r < k; ++r) m(r, pivots[r]) = 1;
        for (std::size_t t = 0; t < free.size(); ++t) m(free[t].first, free[t].second) = entries[t];
        std::vector<Vec> rows;
        for (std::size_t r = 0; r < k; ++r) rows.push_back(m.row_vec(r));
        Subspace s = Subspace::from_matrix(f, m);
        bool closed = true;
        for (std::size_t a = 0; a < k && closed; ++a)
          for (std::size_t b = 0; b < k; ++b)
            if (!s.contains(alg.mul(rows[a], rows[b]))) {
              closed = false;
              break;
            }
        if (closed) out.emplace_back(alg, std::move(s));
      }
      return;
    }
    for (std::size_t c = start; c < n; ++c) {
      pivots.push_back(c);
      choose(c + 1, k);
      pivots.pop_back();
    }
  };
  for (std::size_t k = search.min_subalgebra_dim; k <= n; ++k) choose(0, k);
  return out;
}

}  // namespace algchar

namespace algchar {

void for_each_subalgebra_by_codim(const Algebra& alg, std::size_t max_codim,
                                  const std::function<bool(const Subspace&)>& fn) {
  const Field& f = alg.field();
  const std::size_t n = alg.dim();
  const unsigned q = f.q();
  // A proper subalgebra h of a nilpotent algebra has codimension one in some
  // subalgebra: with n^k not inside h but n^(k+1) inside h, any x in n^k \ h
  // gives h + Fx. So level m is the set of closed hyperplanes of level m-1.
  std::vector<Subspace> level{Subspace::full(f, n)};
  if (!fn(level.front())) return;
  for (std::size_t m = 1; m <= std::min(max_codim, n); ++m) {
    std::vector<Subspace> next;
    std::unordered_set<std::string> seen;
    for (const Subspace& h : level) {
      const std::size_t k = h.dim();
      std::vector<Vec> hb = h.basis_vectors();
      // local structure constants: prod[a][b] = coordinates of b_a b_b in h
      std::vector<std::vector<Vec>> prod(k, std::vector<Vec>(k));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) prod[a][b] = h.coordinates(alg.mul(hb[a], hb[b]));
      const std::uint64_t count = checked_pow(q, k);
      for (std::uint64_t idx = 1; idx < count; ++idx) {
        Vec phi = unpack_key(idx, k, q);
        std::size_t lead = 0;
        while (phi[lead] == 0) ++lead;
        if (phi[lead] != 1) continue;  // one representative per hyperplane
        // kernel basis: e_j - phi_j e_lead for j != lead
        std::vector<Vec> ker;
        for (std::size_t j = 0; j < k; ++j) {
          if (j == lead) continue;
          Vec v(k, 0);
          v[j] = 1;
          v[lead] = f.sub(0, phi[j]);
          ker.push_back(std::move(v));
        }
        // beta(a,b) = phi(b_a b_b); the hyperplane is closed iff beta vanishes on it
        Matrix beta(k, k);
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) {
            Elem s = 0;
            for (std::size_t t = 0; t < k; ++t)
              if (phi[t] && prod[a][b][t]) s = f.add(s, f.mul(phi[t], prod[a][b][t]));
            beta(a, b) = s;
          }
        bool closed = true;
        for (std::size_t u = 0; u < ker.size() && closed; ++u) {
          Vec bu = vec_mat(f, ker[u], beta);
          for (std::size_t v = 0; v < ker.size(); ++v) {
            Elem s = 0;
            for (std::size_t t = 0; t < k; ++t)
              if (bu[t] && ker[v][t]) s = f.add(s, f.mul(bu[t], ker[v][t]));
            if (s) {
              closed = false;
              break;
            }
          }
        }
        if (!closed) continue;
        std::vector<Vec> global;
        for (const auto& v : ker) global.push_back(h.combine(v));
        Subspace child = Subspace::span(f, n, global);
        std::string key;
        for (std::size_t r = 0; r < child.dim(); ++r) {
          Vec row = child.basis_vector(r);
          key.append(row.begin(), row.end());
        }
        if (!seen.insert(std::move(key)).second) continue;
        if (!fn(child)) return;
        next.push_back(std::move(child));
      }
    }
    level = std::move(next);
    if (level.empty()) return;
  }
}

Subspace center(const Algebra& alg) {
  const Field& f = alg.field();
  const std::size_t d = alg.dim();
  // X central iff sum_i X_i (b_i b_j - b_j b_i) = 0 for every j.
  Matrix m(d * d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      Vec c = vec_sub(f, alg.basis_product(i, j), alg.basis_product(j, i));
      for (std::size_t k = 0; k < d; ++k) m(j * d + k, i) = c[k];
    }
  return Subspace::from_matrix(f, null_space(f, m));
}

}  // namespace algchar
