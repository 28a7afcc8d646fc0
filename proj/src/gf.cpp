#include "algchar/gf.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "algchar/errors.hpp"

namespace algchar {

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<unsigned> digits_of(unsigned v, unsigned p, unsigned e) {
  std::vector<unsigned> d(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

unsigned value_of(const std::vector<unsigned>& d, unsigned p) {
  unsigned v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return v;
}

// Conway polynomials, lowest degree first.
const std::map<unsigned, std::pair<unsigned, std::vector<unsigned>>>& builtin_moduli() {
  static const std::map<unsigned, std::pair<unsigned, std::vector<unsigned>>> table = {
      {4, {2, {1, 1, 1}}},     {8, {2, {1, 1, 0, 1}}}, {16, {2, {1, 1, 0, 0, 1}}},
      {9, {3, {2, 2, 1}}},     {27, {3, {1, 2, 0, 1}}}, {25, {5, {2, 4, 1}}},
  };
  return table;
}

}  // namespace

Field::Field() : tables_(build(2, {0, 1})) {}

Field Field::prime(unsigned p) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  if (p > 256) throw DomainError("field order above 256 is not supported");
  return Field(build(p, {0, 1}));
}

Field Field::of_order(unsigned q) {
  if (is_prime(q)) return prime(q);
  const auto& table = builtin_moduli();
  auto it = table.find(q);
  if (it == table.end())
    throw DomainError("no built-in defining polynomial for q = " + std::to_string(q) +
                      "; supply a modulus");
  return Field(build(it->second.first, it->second.second));
}

Field Field::with_modulus(unsigned p, std::vector<unsigned> modulus) {
  if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
  return Field(build(p, std::move(modulus)));
}

std::shared_ptr<const Field::Tables> Field::build(unsigned p, std::vector<unsigned> modulus) {
  if (modulus.size() < 2) throw ValidationError("modulus must have degree at least 1");
  for (unsigned& c : modulus) {
    if (c >= p) throw ValidationError("modulus coefficient out of range [0, p)");
  }
  if (modulus.back() != 1) throw ValidationError("modulus must be monic");
  const unsigned e = static_cast<unsigned>(modulus.size() - 1);
  if (e == 1) modulus = {0, 1};  // plain arithmetic mod p
  unsigned q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > 256) throw DomainError("field order above 256 is not supported");
  }

  auto t = std::make_shared<Tables>();
  t->spec = FieldSpec{p, e, q, modulus};
  t->add.resize(q * q);
  t->mul.resize(q * q);
  t->neg.resize(q);
  t->inv.assign(q, 0);
  t->trace.resize(q);

  std::vector<std::vector<unsigned>> digits(q);
  for (unsigned a = 0; a < q; ++a) digits[a] = digits_of(a, p, e);

  for (unsigned a = 0; a < q; ++a) {
    std::vector<unsigned> n(e);
    for (unsigned i = 0; i < e; ++i) n[i] = (p - digits[a][i]) % p;
    t->neg[a] = static_cast<Elem>(value_of(n, p));
    for (unsigned b = 0; b < q; ++b) {
      std::vector<unsigned> s(e);
      for (unsigned i = 0; i < e; ++i) s[i] = (digits[a][i] + digits[b][i]) % p;
      t->add[a * q + b] = static_cast<Elem>(value_of(s, p));

      std::vector<unsigned> prod(2 * e, 0);
      for (unsigned i = 0; i < e; ++i)
        for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
      for (unsigned k = 2 * e - 1; k-- > e;) {
        // x^k = x^(k-e) * x^e, and x^e = -(lower terms of the modulus)
        unsigned c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (unsigned i = 0; i < e; ++i)
          prod[k - e + i] = (prod[k - e + i] + (p - c) * modulus[i]) % p;
      }
      prod.resize(e);
      t->mul[a * q + b] = static_cast<Elem>(value_of(prod, p));
    }
  }

  for (unsigned a = 1; a < q; ++a) {
    for (unsigned b = 1; b < q; ++b) {
      if (t->mul[a * q + b] == 1) {
        t->inv[a] = static_cast<Elem>(b);
        break;
      }
    }
    if (t->inv[a] == 0) {
      std::ostringstream os;
      os << "modulus is reducible over F_" << p << ": element " << a << " has no inverse";
      throw ValidationError(os.str());
    }
  }

  for (unsigned a = 0; a < q; ++a) {
    unsigned acc = 0;
    unsigned power = a;
    for (unsigned i = 0; i < e; ++i) {
      acc = t->add[acc * q + power];
      unsigned next = 1;
      for (unsigned k = 0; k < p; ++k) next = t->mul[next * q + power];
      power = next;
    }
    if (acc >= p) throw InternalError("trace left the prime field");
    t->trace[a] = static_cast<Elem>(acc);
  }
  return t;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DomainError("inverse of zero in " + describe());
  return tables_->inv[a];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  Elem result = 1;
  Elem base = a;
  while (k) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

Elem Field::from_integer(long long n) const {
  long long r = n % static_cast<long long>(p());
  if (r < 0) r += p();
  return static_cast<Elem>(r);
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q();
  return os.str();
}

Vec vec_add(const Field& f, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vec vec_sub(const Field& f, const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const Field& f, Elem s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(s, a[i]);
  return r;
}

void vec_axpy(const Field& f, Vec& y, Elem s, const Vec& x) {
  if (s == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (x[i]) y[i] = f.add(y[i], f.mul(s, x[i]));
}

Elem vec_dot(const Field& f, const Vec& a, const Vec& b) {
  Elem acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) acc = f.add(acc, f.mul(a[i], b[i]));
  return acc;
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](Elem x) { return x == 0; });
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

void Matrix::set_row(std::size_t r, const Vec& v) {
  if (v.size() != cols_) throw DomainError("row length mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + r * cols_);
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  return t;
}

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix dimension mismatch");
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem x = a(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j)) r(i, j) = f.add(r(i, j), f.mul(x, b(k, j)));
    }
  return r;
}

Vec vec_mat(const Field& f, const Vec& v, const Matrix& m) {
  if (v.size() != m.rows()) throw DomainError("vector/matrix dimension mismatch");
  Vec r(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Elem x = v[i];
    if (!x) continue;
    auto row = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (row[j]) r[j] = f.add(r[j], f.mul(x, row[j]));
  }
  return r;
}

Vec mat_vec(const Field& f, const Matrix& m, const Vec& v) {
  if (v.size() != m.cols()) throw DomainError("matrix/vector dimension mismatch");
  Vec r(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = m.row(i);
    Elem acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (row[j] && v[j]) acc = f.add(acc, f.mul(row[j], v[j]));
    r[i] = acc;
  }
  return r;
}

RrefResult rref(const Field& f, Matrix m) {
  RrefResult res;
  std::size_t lead = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t pr = lead;
    while (pr < rows && m(pr, c) == 0) ++pr;
    if (pr == rows) continue;
    if (pr != lead)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(pr, j), m(lead, j));
    Elem s = f.inv(m(lead, c));
    for (std::size_t j = c; j < cols; ++j) m(lead, j) = f.mul(s, m(lead, j));
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || m(r, c) == 0) continue;
      Elem factor = f.neg(m(r, c));
      for (std::size_t j = c; j < cols; ++j)
        if (m(lead, j)) m(r, j) = f.add(m(r, j), f.mul(factor, m(lead, j)));
    }
    res.pivots.push_back(c);
    ++lead;
  }
  res.rank = lead;
  res.reduced = std::move(m);
  return res;
}

Matrix null_space(const Field& f, const Matrix& m) {
  RrefResult r = rref(f, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = f.neg(r.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return Matrix::from_rows(basis, m.cols());
}

Subspace::Subspace(Field f, std::size_t ambient)
    : field_(std::move(f)), ambient_(ambient), basis_(0, ambient) {}

Subspace Subspace::full(const Field& f, std::size_t n) { return from_matrix(f, Matrix::identity(n)); }

Subspace Subspace::span(const Field& f, std::size_t n, const std::vector<Vec>& vectors) {
  Matrix m(vectors.size(), n);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].size() != n) throw DomainError("spanning vector has wrong length");
    m.set_row(r, vectors[r]);
  }
  return from_matrix(f, m);
}

Subspace Subspace::from_matrix(const Field& f, const Matrix& rows) {
  RrefResult r = rref(f, rows);
  Subspace s(f, rows.cols());
  s.basis_ = Matrix(r.rank, rows.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) s.basis_(i, j) = r.reduced(i, j);
  s.pivots_ = std::move(r.pivots);
  return s;
}

std::vector<Vec> Subspace::basis_vectors() const {
  std::vector<Vec> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row_vec(i));
  return out;
}

Vec Subspace::reduce(const Vec& v) const {
  if (v.size() != ambient_) throw DomainError("vector length does not match ambient dimension");
  Vec r = v;
  for (std::size_t i = 0; i < dim(); ++i) {
    Elem c = r[pivots_[i]];
    if (!c) continue;
    Elem nc = field_.neg(c);
    auto row = basis_.row(i);
    for (std::size_t j = 0; j < ambient_; ++j)
      if (row[j]) r[j] = field_.add(r[j], field_.mul(nc, row[j]));
  }
  return r;
}

bool Subspace::contains(const Subspace& other) const {
  check_same_ambient(other);
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!contains(other.basis_vector(i))) return false;
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  if (!contains(v)) throw DomainError("vector " + vec_to_string(v) + " is not in the subspace");
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Vec Subspace::combine(const Vec& coords) const {
  if (coords.size() != dim()) throw DomainError("coordinate vector has wrong length");
  Vec v(ambient_, 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (!coords[i]) continue;
    auto row = basis_.row(i);
    for (std::size_t j = 0; j < ambient_; ++j)
      if (row[j]) v[j] = field_.add(v[j], field_.mul(coords[i], row[j]));
  }
  return v;
}

Subspace Subspace::sum(const Subspace& other) const {
  check_same_ambient(other);
  Matrix m(dim() + other.dim(), ambient_);
  for (std::size_t i = 0; i < dim(); ++i) m.set_row(i, basis_vector(i));
  for (std::size_t i = 0; i < other.dim(); ++i) m.set_row(dim() + i, other.basis_vector(i));
  return from_matrix(field_, m);
}

Subspace Subspace::intersect(const Subspace& other) const {
  check_same_ambient(other);
  return annihilator().sum(other.annihilator()).annihilator();
}

Subspace Subspace::annihilator() const {
  if (dim() == 0) return full(field_, ambient_);
  return from_matrix(field_, null_space(field_, basis_));
}

void Subspace::for_each_vector(const std::function<void(const Vec&)>& fn) const {
  const std::uint64_t count = checked_pow(field_.q(), dim());
  for (std::uint64_t idx = 0; idx < count; ++idx)
    fn(combine(unpack_key(idx, dim(), field_.q())));
}

void Subspace::check_same_ambient(const Subspace& other) const {
  if (ambient_ != other.ambient_)
    throw DomainError("ambient dimension mismatch: " + std::to_string(ambient_) + " vs " +
                      std::to_string(other.ambient_));
}

bool pow_fits(std::uint64_t q, std::size_t k, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > limit / q) return false;
    r *= q;
  }
  return r <= limit;
}

std::uint64_t checked_pow(std::uint64_t q, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > UINT64_MAX / q)
      throw CapacityError(std::to_string(q) + "^" + std::to_string(k) + " exceeds 64 bits");
    r *= q;
  }
  return r;
}

std::uint64_t pack_key(const Vec& v, unsigned q) {
  std::uint64_t k = 0;
  for (Elem x : v) k = k * q + x;
  return k;
}

Vec unpack_key(std::uint64_t key, std::size_t len, unsigned q) {
  Vec v(len);
  for (std::size_t i = len; i-- > 0;) {
    v[i] = static_cast<Elem>(key % q);
    key /= q;
  }
  return v;
}

std::size_t VecHash::operator()(const Vec& v) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Elem x : v) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << static_cast<unsigned>(v[i]);
  os << ']';
  return os.str();
}

}  // namespace algchar
