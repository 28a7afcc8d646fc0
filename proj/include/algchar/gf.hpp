#pragma once

// Finite fields F_q (q = p^e <= 256) and dense linear algebra over them.
//
// Elements are encoded as integers in [0, q): the base-p digits of the value are
// the coefficients of a polynomial in x, reduced modulo the field's defining
// polynomial. All arithmetic goes through precomputed tables.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace algchar {

using Elem = std::uint8_t;
using Vec = std::vector<Elem>;

struct FieldSpec {
  unsigned p = 2;
  unsigned e = 1;
  unsigned q = 2;
  /// Coefficients of the monic defining polynomial, lowest degree first (size e+1).
  std::vector<unsigned> modulus;

  bool operator==(const FieldSpec&) const = default;
};

class Field {
 public:
  /// F_2.
  Field();

  static Field prime(unsigned p);
  /// Built-in defining polynomials (Conway) for q in {4, 8, 9, 16, 25, 27}; any prime q.
  static Field of_order(unsigned q);
  /// Arbitrary monic modulus; rejected unless it yields a field.
  static Field with_modulus(unsigned p, std::vector<unsigned> modulus);

  const FieldSpec& spec() const { return tables_->spec; }
  unsigned p() const { return tables_->spec.p; }
  unsigned e() const { return tables_->spec.e; }
  unsigned q() const { return tables_->spec.q; }

  Elem add(Elem a, Elem b) const { return tables_->add[a * q() + b]; }
  Elem sub(Elem a, Elem b) const { return tables_->add[a * q() + tables_->neg[b]]; }
  Elem neg(Elem a) const { return tables_->neg[a]; }
  Elem mul(Elem a, Elem b) const { return tables_->mul[a * q() + b]; }
  /// Throws DomainError for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t k) const;

  /// Absolute trace to F_p; the result is an element of the prime field (value < p).
  Elem trace(Elem a) const { return tables_->trace[a]; }

  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_integer(long long n) const;

  bool operator==(const Field& other) const {
    return tables_ == other.tables_ || spec() == other.spec();
  }

  std::string describe() const;

 private:
  struct Tables {
    FieldSpec spec;
    std::vector<Elem> add, mul, neg, inv, trace;
  };
  explicit Field(std::shared_ptr<const Tables> t) : tables_(std::move(t)) {}
  static std::shared_ptr<const Tables> build(unsigned p, std::vector<unsigned> modulus);

  std::shared_ptr<const Tables> tables_;
};

/// Elementwise helpers on coordinate vectors.
Vec vec_add(const Field& f, const Vec& a, const Vec& b);
Vec vec_sub(const Field& f, const Vec& a, const Vec& b);
Vec vec_scale(const Field& f, Elem s, const Vec& a);
/// y += s * x
void vec_axpy(const Field& f, Vec& y, Elem s, const Vec& x);
Elem vec_dot(const Field& f, const Vec& a, const Vec& b);
bool vec_is_zero(const Vec& a);
Vec unit_vector(std::size_t n, std::size_t i);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vec>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }
  void set_row(std::size_t r, const Vec& v);
  const std::vector<Elem>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

Matrix transpose(const Matrix& m);
Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b);
/// Row vector times matrix: (v M)_j = sum_i v_i M_ij.
Vec vec_mat(const Field& f, const Vec& v, const Matrix& m);
/// Matrix times column vector.
Vec mat_vec(const Field& f, const Matrix& m, const Vec& v);

struct RrefResult {
  std::size_t rank = 0;
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Unique reduced row-echelon form; zero rows are kept at the bottom.
RrefResult rref(const Field& f, Matrix m);

/// Rows form a basis of {x : M x = 0}.
Matrix null_space(const Field& f, const Matrix& m);

/// A subspace of F_q^n, stored as its unique RREF basis.
class Subspace {
 public:
  Subspace() = default;
  /// Zero subspace of F_q^n.
  Subspace(Field f, std::size_t ambient);

  static Subspace zero(const Field& f, std::size_t n) { return Subspace(f, n); }
  static Subspace full(const Field& f, std::size_t n);
  static Subspace span(const Field& f, std::size_t n, const std::vector<Vec>& vectors);
  static Subspace from_matrix(const Field& f, const Matrix& rows);

  const Field& field() const { return field_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  Vec basis_vector(std::size_t i) const { return basis_.row_vec(i); }
  std::vector<Vec> basis_vectors() const;
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Canonical coset representative of v modulo this subspace (zero at every pivot column).
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }
  bool contains(const Subspace& other) const;
  /// Coordinates of v in the RREF basis; DomainError when v is not in the subspace.
  Vec coordinates(const Vec& v) const;
  Vec combine(const Vec& coords) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// {w : w . v = 0 for all v in this}, a subspace of the dual coordinate space.
  Subspace annihilator() const;

  /// Visits all q^dim vectors, ordered by coordinates (big-endian mixed radix).
  void for_each_vector(const std::function<void(const Vec&)>& fn) const;

  bool operator==(const Subspace& other) const {
    return ambient_ == other.ambient_ && basis_ == other.basis_;
  }

 private:
  void check_same_ambient(const Subspace& other) const;

  Field field_;
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// q^k, throwing CapacityError when it does not fit in 64 bits.
std::uint64_t checked_pow(std::uint64_t q, std::size_t k);
bool pow_fits(std::uint64_t q, std::size_t k, std::uint64_t limit);

/// Mixed-radix key, most significant coordinate first; requires q^len < 2^64.
std::uint64_t pack_key(const Vec& v, unsigned q);
Vec unpack_key(std::uint64_t key, std::size_t len, unsigned q);

struct VecHash {
  std::size_t operator()(const Vec& v) const noexcept;
};

std::string vec_to_string(const Vec& v);

}  // namespace algchar
