#pragma once

// Class functions on G = 1 + n stored by their coefficients in the orthonormal
// basis theta_nu (nu in n*), theta_nu(1+X) = zeta_p^Tr(nu(X)). Constructions of
// the characters theta, psi (Kirillov), chi (supercharacter), xi, their twists
// by polynomial bijections, and induction, restriction, inflation.

#include <cstdint>
#include <map>
#include <vector>

#include "algchar/cyclo.hpp"
#include "algchar/dualforms.hpp"
#include "algchar/grouporbit.hpp"
#include "algchar/nilalg.hpp"

namespace algchar {

class ClassFunction {
 public:
  ClassFunction() = default;
  explicit ClassFunction(Algebra alg);

  const Algebra& algebra() const { return alg_; }
  unsigned p() const { return alg_.field().p(); }
  /// Packed functional key -> coefficient; zero coefficients are never stored.
  const std::map<std::uint64_t, Cyclo>& terms() const { return terms_; }
  std::size_t support_size() const { return terms_.size(); }

  Cyclo coefficient(const Vec& nu) const;
  Cyclo coefficient_at(std::uint64_t key) const;
  void add(const Vec& nu, const Cyclo& c) { add_at(key_of(nu), c); }
  void add_at(std::uint64_t key, const Cyclo& c);
  void set_at(std::uint64_t key, const Cyclo& c);

  std::uint64_t key_of(const Vec& nu) const;
  Vec functional(std::uint64_t key) const { return unpack_key(key, alg_.dim(), alg_.field().q()); }

  /// f(1) = sum of coefficients.
  Cyclo degree() const;
  bool is_zero() const { return terms_.empty(); }
  bool has_rational_coefficients() const;

  ClassFunction& operator+=(const ClassFunction& o);
  ClassFunction& operator-=(const ClassFunction& o);
  ClassFunction operator+(const ClassFunction& o) const { return ClassFunction(*this) += o; }
  ClassFunction operator-(const ClassFunction& o) const { return ClassFunction(*this) -= o; }
  ClassFunction scaled(const mpq_class& s) const;
  ClassFunction scaled(const Cyclo& s) const;
  bool operator==(const ClassFunction& o) const { return terms_ == o.terms_ && alg_ == o.alg_; }

 private:
  Algebra alg_;
  std::map<std::uint64_t, Cyclo> terms_;
};

ClassFunction theta_fun(const Algebra& alg, const Vec& lambda);
/// Sum of theta_nu over all nu: the regular character.
ClassFunction regular_character(const Algebra& alg);

/// |lambda^G|^-1/2 times the sum of theta over the coadjoint orbit.
ClassFunction kirillov(const Group& g, const Vec& lambda);
/// |G lambda| / |G lambda G| times the sum of theta over the two-sided orbit.
ClassFunction supercharacter(const Group& g, const Vec& lambda);

/// The support of xi_lambda: the coadjoint saturation of lambda S-bar.
struct XiSet {
  Vec lambda;
  Subspace l_bar;
  Subspace s_bar;
  /// Sorted packed keys of the members.
  std::vector<std::uint64_t> keys;
  /// Least member of each coadjoint orbit inside the set, and the orbit sizes.
  std::vector<Vec> orbit_representatives;
  std::vector<std::uint64_t> orbit_sizes;

  bool contains(std::uint64_t key) const;
};

/// |G|^2 / (|L-bar| |S-bar|), computed from the chain without enumeration.
std::uint64_t xi_set_size(const Algebra& alg, const ChainResult& c);
XiSet xi_set(const Group& g, const Vec& lambda, std::uint64_t max_points = std::uint64_t(1) << 24);
/// xi_lambda = |S-bar|/|G| times the sum of theta over Xi_lambda.
ClassFunction xi_character(const Group& g, const XiSet& xs);
ClassFunction xi_character(const Group& g, const Vec& lambda);

Cyclo inner(const ClassFunction& f, const ClassFunction& g);
/// f(1+X).
Cyclo evaluate(const ClassFunction& f, const Vec& x);
ClassFunction tensor(const ClassFunction& f, const ClassFunction& g);

/// Values on every X in n, indexed by pack_key (Fourier transform; q^d <= 2^20).
std::vector<Cyclo> pointwise_table(const ClassFunction& f);
ClassFunction from_pointwise_table(const Algebra& alg, const std::vector<Cyclo>& values);

/// Coefficient of kappa in f restricted to 1 + h: sum of c_nu over nu extending kappa.
/// The result lives on h.algebra().
ClassFunction restrict_to(const ClassFunction& f, const Subalgebra& h);
/// Induction from 1 + h to G: fan out each coefficient over all extensions, then
/// average over coadjoint orbits. f lives on h.algebra().
ClassFunction induce(const ClassFunction& f, const Subalgebra& h, const Group& g);
/// Induction computed pointwise by (1/|H|) sum_x f0(x g x^-1); q^d <= 2^20.
ClassFunction induce_pointwise(const ClassFunction& f, const Subalgebra& h, const Group& g);
/// Pull back along the quotient map: nu = mu o pi.
ClassFunction inflate(const ClassFunction& f, const Quotient& q, const Algebra& parent);

/// Whether coefficients are constant on coadjoint orbits (that is, f is a class function).
bool is_class_function(const ClassFunction& f, const Group& g);

/// F(X) = 1 + X + sum_{k>=2} a_k X^k, and its compositional inverse
/// F'(1+Y) = 1 + sum_{k>=1} b_k Y^k, both truncated at the nilpotency index.
struct PolyBijection {
  Field field;
  /// a[k] for k = 0..depth-1, with a[0] = a[1] = 1.
  std::vector<Elem> a;
  /// b[k] for k = 0..depth-1, with b[0] = 0 and b[1] = 1.
  std::vector<Elem> b;
  std::size_t depth = 0;

  /// X + sum a_k X^k (the part after 1).
  Vec forward(const Algebra& alg, const Vec& x) const;
  /// sum b_k Y^k.
  Vec inverse(const Algebra& alg, const Vec& y) const;
  bool is_identity() const;
};

/// `higher` holds a_2, a_3, ...; `depth` is the nilpotency index of the target algebra.
PolyBijection poly_bijection(const Field& f, const std::vector<Elem>& higher, std::size_t depth);
/// Full coefficient list a_0, a_1, a_2, ...; rejects a_0 != 1 or a_1 != 1.
PolyBijection poly_bijection_checked(const Field& f, const std::vector<Elem>& all, std::size_t depth);
/// Truncated exponential: a_k = 1/k! for 2 <= k <= p-1.
PolyBijection exp_map(const Algebra& alg);
PolyBijection identity_map(const Algebra& alg);

/// f^F with f^F(F(X)) = f(1+X).
ClassFunction twist(const ClassFunction& f, const PolyBijection& F);

}  // namespace algchar
