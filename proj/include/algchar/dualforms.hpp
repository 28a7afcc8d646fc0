#pragma once

// Linear functionals on a nilpotent algebra and the bilinear forms they induce:
// left kernels, the kernel chains and their stabilization, radicals, and the
// affine sets of functionals produced by restriction and right orbits.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "algchar/gf.hpp"
#include "algchar/nilalg.hpp"

namespace algchar {

/// lambda in n^*, stored as coords[i] = lambda(b_i).
struct Functional {
  Algebra algebra;
  Vec coords;

  Elem operator()(const Vec& x) const { return vec_dot(algebra.field(), coords, x); }
  bool operator==(const Functional& o) const { return coords == o.coords && algebra == o.algebra; }
};

/// {base + w : w in directions}. The base is kept reduced modulo the directions,
/// so two equal sets always have identical representations.
class AffineSet {
 public:
  AffineSet() = default;
  AffineSet(Vec base, Subspace directions);

  static AffineSet point(const Field& f, const Vec& v) { return AffineSet(v, Subspace::zero(f, v.size())); }
  static AffineSet whole(const Field& f, std::size_t n) { return AffineSet(Vec(n, 0), Subspace::full(f, n)); }

  const Field& field() const { return directions_.field(); }
  std::size_t ambient_dim() const { return directions_.ambient_dim(); }
  std::size_t dim() const { return directions_.dim(); }
  const Vec& base() const { return base_; }
  const Subspace& directions() const { return directions_; }

  /// q^dim; CapacityError when it overflows 64 bits.
  std::uint64_t size() const { return checked_pow(field().q(), dim()); }
  bool contains(const Vec& v) const;

  /// Local coordinates: the entries of a member at the pivot columns of the directions.
  /// Ordering points by local index equals lexicographic order of the vectors.
  Vec point_at(std::uint64_t index) const;
  std::uint64_t index_of(const Vec& v) const;
  Vec local_coords(const Vec& v) const;
  Vec from_local(const Vec& c) const;

  void for_each(const std::function<void(const Vec&)>& fn) const;

  bool operator==(const AffineSet& o) const { return base_ == o.base_ && directions_ == o.directions_; }

 private:
  Vec base_;
  Subspace directions_;
};

/// Entry (i, j) = lambda(b_i b_j).
Matrix form_matrix(const Algebra& alg, const Vec& lambda);

/// {X in rows : lambda(X Y) = 0 for all Y in cols}.
Subspace left_kernel(const Algebra& alg, const Vec& lambda, const Subspace& rows, const Subspace& cols);

struct ChainResult {
  /// l_chain[0] = 0, s_chain[0] = n; both run up to index depth.
  std::vector<Subspace> l_chain;
  std::vector<Subspace> s_chain;
  std::size_t depth = 1;

  const Subspace& l1() const { return l_chain.at(1); }
  const Subspace& s1() const { return s_chain.at(1); }
  const Subspace& l_bar() const { return l_chain.at(depth); }
  const Subspace& s_bar() const { return s_chain.at(depth); }
  /// l_lambda intersected with ker lambda.
  Subspace k_space;
};

ChainResult chain(const Algebra& alg, const Vec& lambda);

/// The left stabilizer algebra l_lambda.
Subspace left_stabilizer_algebra(const Algebra& alg, const Vec& lambda);
/// s_lambda: the left kernel of the form on n x l_lambda.
Subspace s_algebra(const Algebra& alg, const Vec& lambda);

/// Radical of (X, Y) -> lambda(XY - YX); the coadjoint orbit has q^codim elements.
Subspace radical_alternating(const Algebra& alg, const Vec& lambda);

/// ker lambda as a subspace of n.
Subspace kernel_of(const Algebra& alg, const Vec& lambda);

/// lambda restricted to h, in the coordinates of the RREF basis of h.
Vec restrict_functional(const Subspace& h, const Vec& lambda);
/// Every extension of kappa (given on the RREF basis of h) to the ambient space.
AffineSet lift_functional(const Subspace& h, const Vec& kappa);
/// The subspace h (inside the ambient space of `outer`) written in the coordinates of outer.
Subspace relative_subspace(const Subspace& outer, const Subspace& inner);

/// lambda G = lambda + Ann(l_lambda).
AffineSet right_orbit_affine(const Algebra& alg, const Vec& lambda);
/// lambda S for S = 1 + s, any subalgebra s: lambda + {Y -> lambda(Y X) : X in s}.
AffineSet right_orbit_affine(const Algebra& alg, const Vec& lambda, const Subspace& s);
/// G lambda = lambda + {Y -> lambda(X Y) : X in n}.
AffineSet left_orbit_affine(const Algebra& alg, const Vec& lambda);

/// Parses "e*(1,5)+2e*(2,6)" for u_n, or a bracketed/comma list of coordinates.
Vec parse_functional(const Algebra& alg, const std::string& text, std::size_t ut_n = 0);
/// Inverse of parse_functional for u_n; plain coordinate list otherwise.
std::string format_functional(const Vec& lambda, std::size_t ut_n = 0);

}  // namespace algchar
