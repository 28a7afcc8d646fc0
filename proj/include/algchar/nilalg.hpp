#pragma once

// Finite-dimensional nilpotent associative algebras over F_q, given by structure
// constants on a basis b_0..b_{d-1}, together with subalgebras, ideals, powers
// and quotients. The algebra group G = 1 + n is implicit: every element of n
// doubles as the group element 1 + X.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algchar/gf.hpp"

namespace algchar {

/// b_i * b_j = product (a coordinate vector of length dim).
struct StructureConstant {
  std::size_t i = 0;
  std::size_t j = 0;
  Vec product;
};

class Algebra {
 public:
  /// The zero-dimensional algebra over F_2.
  Algebra();

  /// Checks associativity on every basis triple and nilpotency of the power filtration.
  static Algebra from_constants(const Field& field, std::vector<std::string> names,
                                const std::vector<StructureConstant>& constants);

  const Field& field() const { return data_->field; }
  std::size_t dim() const { return data_->dim; }
  const std::vector<std::string>& names() const { return data_->names; }
  /// Smallest m with n^m = 0.
  std::size_t nilpotency_index() const { return data_->nilpotency_index; }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec basis_product(std::size_t i, std::size_t j) const;
  /// x^k for k >= 1.
  Vec power(const Vec& x, std::size_t k) const;
  Vec zero() const { return Vec(dim(), 0); }

  /// All nonzero basis products, ordered by (i, j).
  std::vector<StructureConstant> constants() const;
  bool has_zero_multiplication() const { return data_->nonzero_pairs == 0; }

  /// Same field and structure constants.
  bool operator==(const Algebra& other) const;
  bool same_object(const Algebra& other) const { return data_ == other.data_; }

  /// Builds without validation; callers guarantee associativity and nilpotency.
  static Algebra trusted(const Field& field, std::vector<std::string> names,
                         const std::vector<StructureConstant>& constants);

 private:
  struct Term {
    std::size_t j;
    std::vector<std::pair<std::size_t, Elem>> product;  // sparse b_i * b_j
  };
  struct Data {
    Field field;
    std::size_t dim = 0;
    std::vector<std::string> names;
    std::vector<std::vector<Term>> rows;  // rows[i]: nonzero products b_i * b_j
    std::size_t nonzero_pairs = 0;
    std::size_t nilpotency_index = 1;
  };
  explicit Algebra(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static std::shared_ptr<Data> assemble(const Field& field, std::vector<std::string> names,
                                        const std::vector<StructureConstant>& constants);

  std::shared_ptr<const Data> data_;
};

/// u_n(q): strictly upper triangular n x n matrices, basis e_ij (i < j) in lexicographic order.
Algebra make_ut(std::size_t n, const Field& field);
/// Position of e_ij (1-based, i < j) in the basis of u_n.
std::size_t ut_index(std::size_t n, std::size_t i, std::size_t j);
/// Inverse of ut_index.
std::pair<std::size_t, std::size_t> ut_position(std::size_t n, std::size_t index);

/// span{ a * b : a in A, b in B }.
Subspace product_space(const Algebra& alg, const Subspace& a, const Subspace& b);

/// A subspace of a parent algebra together with its closure properties. When the
/// space is multiplicatively closed it also carries a standalone Algebra on the
/// RREF basis of the space, so the algebra subgroup 1 + h can be handled like any
/// other algebra group.
class Subalgebra {
 public:
  Subalgebra() = default;
  Subalgebra(Algebra parent, Subspace space);

  const Algebra& parent() const { return parent_; }
  const Subspace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }

  bool is_subalgebra() const { return is_subalgebra_; }
  bool is_left_ideal() const { return is_left_ideal_; }
  bool is_right_ideal() const { return is_right_ideal_; }
  bool is_ideal() const { return is_left_ideal_ && is_right_ideal_; }

  /// The subalgebra as an algebra in its own coordinates; DomainError when not closed.
  const Algebra& algebra() const;

  /// Local coordinates -> parent vector.
  Vec embed(const Vec& local) const { return space_.combine(local); }
  /// Parent vector (inside the space) -> local coordinates.
  Vec local(const Vec& parent_vector) const { return space_.coordinates(parent_vector); }

  /// Some pair of basis vectors whose product leaves the space, if any.
  std::optional<std::pair<Vec, Vec>> closure_witness() const { return witness_; }

  bool operator==(const Subalgebra& other) const { return space_ == other.space_; }

 private:
  Algebra parent_;
  Subspace space_;
  bool is_subalgebra_ = false;
  bool is_left_ideal_ = false;
  bool is_right_ideal_ = false;
  std::optional<std::pair<Vec, Vec>> witness_;
  std::shared_ptr<const Algebra> standalone_;
};

Subalgebra full_subalgebra(const Algebra& alg);
Subalgebra zero_subalgebra(const Algebra& alg);

/// Solution space of the linear forms in the rows of `equations` (each row has
/// length dim). Throws ValidationError naming a witness pair when not closed.
Subalgebra subalgebra_from_equations(const Algebra& alg, const Matrix& equations);
/// Smallest multiplicatively closed subspace containing the generators.
Subalgebra subalgebra_generated(const Algebra& alg, const std::vector<Vec>& generators);

/// n^k (k >= 1).
Subalgebra power_ideal(const Algebra& alg, std::size_t k);
/// h^k inside the parent of h.
Subalgebra power_ideal(const Subalgebra& h, std::size_t k);

struct Quotient {
  Algebra algebra;
  Subalgebra ideal;
  /// dim x dim(quotient); row i is the image of b_i.
  Matrix projection;
  /// Parent basis indices whose images form the quotient basis.
  std::vector<std::size_t> complement;

  Vec project(const Vec& x) const;
  /// The representative supported on the complement basis.
  Vec lift(const Vec& y) const;
};

/// n / h for a two-sided ideal h; DomainError otherwise.
Quotient quotient(const Algebra& alg, const Subalgebra& ideal);

struct SubalgebraSearch {
  /// Refuse algebras above this dimension (0 = defaults: 6 for q = 2, 5 for q = 3, 4 otherwise).
  std::size_t max_dim = 0;
  /// Only report subalgebras of at least this dimension.
  std::size_t min_subalgebra_dim = 0;
};

/// Every multiplicatively closed subspace exactly once, ordered by dimension,
/// then pivot columns, then RREF entries. CapacityError above the guard.
std::vector<Subalgebra> enumerate_subalgebras(const Algebra& alg, const SubalgebraSearch& search = {});

/// Visits every multiplicatively closed subspace of codimension <= max_codim,
/// codimension ascending; each level is obtained from the previous one by
/// taking closed hyperplanes.
/// Stops early when fn returns false. No dimension guard: callers bound the work.
void for_each_subalgebra_by_codim(const Algebra& alg, std::size_t max_codim,
                                  const std::function<bool(const Subspace&)>& fn);

/// {X : XY = YX for all Y}.
Subspace center(const Algebra& alg);

}  // namespace algchar
