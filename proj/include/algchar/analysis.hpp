#pragma once

// Constituent counts of supercharacters and of xi, degree-stratified counts via
// small quotient groups, and the structural checks built on them: full
// ramification, well-induced characters, the exponential irreducibility
// criterion, the Xi-partition of n*, projection of polynomial Kirillov
// functions onto Irr(G, xi), and compatibility with inflation.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algchar/charfun.hpp"
#include "algchar/oracle.hpp"

namespace algchar {

/// Sizes attached to lambda, all powers of q; stored as exponents.
struct LambdaSizes {
  std::size_t dim = 0;
  std::size_t dim_l = 0, dim_s = 0, dim_l_bar = 0, dim_s_bar = 0;
  std::size_t chain_depth = 1;
  std::vector<std::size_t> l_chain_dims, s_chain_dims;
  std::size_t coadjoint = 0;     // |lambda^G|
  std::size_t left = 0;          // |G lambda|
  std::size_t right = 0;         // |lambda G|
  std::size_t two_sided = 0;     // |G lambda G|
  std::size_t intersection = 0;  // |G lambda cap lambda G| = |S|/|L|
  std::size_t chi_degree = 0;    // |G|/|L|
  std::size_t xi_degree = 0;     // |G|/|L-bar|
  std::size_t xi_set = 0;        // |Xi| = |G|^2/(|L-bar||S-bar|)
};

LambdaSizes lambda_sizes(const Algebra& alg, const Vec& lambda);

struct ConstituentCount {
  Vec lambda;
  std::uint64_t total = 0;
  /// Degree -> number of constituents of that degree.
  std::optional<std::map<std::uint64_t, std::uint64_t>> by_degree;
  std::string method;
  /// Orbit size -> number of orbits of that size in the partitioned set.
  std::map<std::uint64_t, std::uint64_t> witness;
  /// Size of the partitioned set.
  std::uint64_t set_size = 0;
};

/// Orbits of S_lambda on {nu restricted to s_lambda : nu in lambda G}, an affine
/// set of size |S|/|L| built without enumerating lambda G.
ConstituentCount count_constituents_super(const Group& g, const Vec& lambda, const PartitionOptions& opts = {});
/// Orbits of S-bar on mu S-bar = mu + Ann(l-bar), mu = lambda restricted to s-bar.
ConstituentCount count_constituents_xi(const Group& g, const Vec& lambda, const PartitionOptions& opts = {});

/// Degree histogram of Irr(G, chi_lambda) from Irr(S/K) filtered by the
/// central-character condition on L/K. When lambda kills s^2, the count through
/// S/L is computed as well and must agree (InternalError otherwise).
/// Degrees in the admissible range with no constituent are reported as 0.
ConstituentCount count_by_degree(const Group& g, const Vec& lambda, const OracleOptions& opts = {});

/// S_lambda = G.
bool is_fully_ramified(const Algebra& alg, const Vec& lambda);

struct WellInduced {
  ClassFunction character;
  Cyclo norm;
  bool irreducible = false;
  /// When irreducible: the least lambda with Ind = psi_lambda (Kirillov), if it is one.
  std::optional<Vec> kirillov_lambda;
};

/// Ind from 1 + h of theta_mu, mu given in the RREF coordinates of h.
/// DomainError unless mu vanishes on h^2.
WellInduced well_induced(const Group& g, const Subspace& h, const Vec& mu);

/// Whether some (h, mu) induces f; scans every subalgebra of codimension log_q f(1).
bool is_well_induced(const Group& g, const ClassFunction& f);

/// (s-bar)^p inside l-bar cap ker lambda.
bool exp_criterion(const Algebra& alg, const Vec& lambda);

struct XiCell {
  Vec representative;
  XiSet set;
};

/// Xi-sets of all of n*, each started at the least uncovered functional.
/// InternalError if two cells overlap.
std::vector<XiCell> xi_partition(const Group& g);

struct SpanCheck {
  /// ||psi^F - projection onto span Irr(G, xi)||^2.
  Cyclo residual;
  std::vector<std::size_t> xi_constituents;
  /// Linear characters orthogonal to chi_lambda that were checked against psi^F.
  std::size_t linear_checked = 0;
  bool linear_vanishing = true;
};

SpanCheck xi_span_check(const Group& g, const Vec& lambda, const PolyBijection& F, const IrrSet& irr);

struct XiBijection {
  /// Constituents of Ind from L-bar to S-bar of theta_lambda, in Irr(S-bar).
  std::size_t sbar_constituents = 0;
  /// Constituents of xi_lambda in Irr(G).
  std::size_t g_constituents = 0;
  bool norms_one = true;
  bool distinct = true;
  /// The induced characters are exactly Irr(G, xi_lambda).
  bool exhausts = true;
  bool ok() const { return norms_one && distinct && exhausts && sbar_constituents == g_constituents; }
};

/// Supplies Irr of a group, typically from a memo shared across many lambda.
using IrrProvider = std::function<std::shared_ptr<const IrrSet>(const Group&)>;

/// Induces every constituent of Ind_{L-bar}^{S-bar} theta_lambda up to G and
/// compares with the constituents of xi_lambda. Irr(S-bar) comes from irr_of
/// when given, otherwise from the oracle.
XiBijection xi_bijection_check(const Group& g, const Vec& lambda, const IrrSet& irr, const IrrProvider& irr_of = {});

struct InflationCheck {
  bool kirillov = false;
  bool exp_kirillov = false;
  bool supercharacter = false;
  bool xi = false;
  bool l_bar_preimage = false;
  bool s_bar_preimage = false;
  bool ok() const { return kirillov && exp_kirillov && supercharacter && xi && l_bar_preimage && s_bar_preimage; }
};

/// Compares the constructions for mu on n/ideal with those for mu o pi on n.
InflationCheck inflation_check(const Group& g, const Quotient& q, const Vec& mu);

/// Full preimage of a subspace of the quotient.
Subspace preimage(const Quotient& q, const Subspace& v);

}  // namespace algchar
