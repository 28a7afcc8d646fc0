#pragma once

// The algebra group G = 1 + n. Group elements are represented by X with g = 1 + X.
// Every action used here is linear on row vectors, so each group element acts
// through a precomputed matrix: v -> v M.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "algchar/dualforms.hpp"
#include "algchar/gf.hpp"
#include "algchar/nilalg.hpp"

namespace algchar {

enum class Action {
  coadjoint,     // on n*: lambda^g(X) = lambda(g X g^-1)
  left,          // on n*: (g lambda)(X) = lambda(g^-1 X)
  right,         // on n*: (lambda g)(X) = lambda(X g^-1)
  conjugation,   // on n: X -> g X g^-1
  left_mult,     // on n: X -> g X
  right_mult,    // on n: X -> X g
};
constexpr std::size_t kActionCount = 6;

const char* action_name(Action a);

struct OrbitPartition;

class Group {
 public:
  Group() : Group(Algebra()) {}
  explicit Group(Algebra alg);

  const Algebra& algebra() const { return alg_; }
  const Field& field() const { return alg_.field(); }
  std::size_t dim() const { return alg_.dim(); }
  /// |G| = q^dim; CapacityError when it does not fit in 64 bits.
  std::uint64_t order() const { return checked_pow(field().q(), dim()); }

  /// (1+X)(1+Y) = 1 + X + Y + XY.
  Vec mul(const Vec& x, const Vec& y) const;
  /// (1+X)^-1 = 1 + sum_{k>=1} (-X)^k.
  Vec inv(const Vec& x) const;
  Vec identity() const { return Vec(dim(), 0); }

  Matrix action_matrix(const Vec& g, Action a) const;
  Vec act(const Vec& v, const Vec& g, Action a) const { return vec_mat(field(), v, action_matrix(g, a)); }

  /// {1 + t b : t in F_q^x, b in a basis of h adapted to h > h^2 > h^3 > ...}.
  /// Adapted bases make generation automatic: the generators in h^k span each
  /// abelian layer (1 + h^k)/(1 + h^(k+1)).
  std::vector<Vec> generator_elements(const Subspace& h) const;
  std::vector<Matrix> generator_matrices(Action a, const Subspace& h) const;
  /// Generators of the whole group, computed once per action.
  const std::vector<Matrix>& generator_matrices(Action a) const;

  /// Coadjoint partition of all of n*, computed once and shared by copies of this
  /// Group; nullptr when n* has more than 2^22 points.
  const OrbitPartition* dual_orbits() const;
  /// Packed keys of every coadjoint orbit of n*, indexed like dual_orbits(); nullptr likewise.
  const std::vector<std::vector<std::uint64_t>>* dual_orbit_members() const;

 private:
  Algebra alg_;
  struct Cache {
    std::array<std::once_flag, kActionCount> once;
    std::array<std::vector<Matrix>, kActionCount> gens;
    std::once_flag dual_once;
    std::shared_ptr<const OrbitPartition> dual;
    std::vector<std::vector<std::uint64_t>> dual_members;
  };
  std::shared_ptr<Cache> cache_;
};

/// Affine map on local coordinates: c -> shift + c A.
struct AffineMap {
  Vec shift;
  Matrix a;
};

/// Restricts linear maps v -> v M to an invariant affine set, in its local
/// coordinates. Throws DomainError naming a point that leaves the set.
std::vector<AffineMap> restrict_maps(const AffineSet& set, const std::vector<Matrix>& maps);

struct PartitionCheckpoint {
  std::uint64_t next_index = 0;
  std::vector<std::uint64_t> visited;  // bitmap over local indices
  std::vector<std::uint64_t> representatives;
  std::vector<std::uint64_t> sizes;
};

struct PartitionOptions {
  /// Memory budget for the bitmap and the membership table.
  std::uint64_t guard_bytes = std::uint64_t(1) << 31;
  /// Record the orbit of every point (needed for lookups, not for counting).
  bool keep_membership = true;
  /// Call on_checkpoint after every this many new orbits (0 = never).
  std::size_t checkpoint_every = 0;
  std::function<void(const PartitionCheckpoint&)> on_checkpoint;
  /// Resume a count-only partition from a saved checkpoint.
  const PartitionCheckpoint* resume = nullptr;
};

struct OrbitPartition {
  AffineSet set;
  /// Local index of the least member of each orbit, increasing.
  std::vector<std::uint64_t> representatives;
  std::vector<std::uint64_t> sizes;
  /// orbit_of[local index] when membership was kept.
  std::vector<std::uint32_t> orbit_of;

  std::size_t count() const { return representatives.size(); }
  Vec representative(std::size_t k) const { return set.point_at(representatives.at(k)); }
  std::uint32_t orbit_id(const Vec& v) const;
  /// orbit size -> number of orbits of that size.
  std::map<std::uint64_t, std::uint64_t> size_histogram() const;
  /// Members of orbit k in increasing order (requires membership).
  std::vector<Vec> members(std::size_t k) const;
};

/// Orbits of the group generated by `maps` on an invariant affine set.
OrbitPartition partition_orbits(const AffineSet& set, const std::vector<Matrix>& maps,
                                const PartitionOptions& opts = {});

/// Orbit of a single point under the group generated by `maps`, sorted increasingly.
/// CapacityError (with the count reached so far) when more than max_points are found.
std::vector<Vec> orbit_points(const Field& f, const Vec& start, const std::vector<Matrix>& maps,
                              std::uint64_t max_points = std::uint64_t(1) << 26);

enum class OrbitKind { coadjoint, left, right, two_sided };
const char* orbit_kind_name(OrbitKind k);

struct OrbitReport {
  OrbitKind kind = OrbitKind::coadjoint;
  std::uint64_t size = 1;
  /// Least element.
  Vec representative;
  std::vector<Vec> elements;
  /// log_q(size).
  std::size_t exponent = 0;
};

/// Orbit of lambda in n*. Left and right orbits are affine and never enumerated
/// unless asked; coadjoint and two-sided orbits use generator BFS.
OrbitReport orbit(const Group& g, const Vec& lambda, OrbitKind kind, bool enumerate,
                  std::uint64_t max_points = std::uint64_t(1) << 26);

/// Coadjoint orbits on all of n*.
OrbitPartition coadjoint_partition(const Group& g, const PartitionOptions& opts = {});
/// Two-sided orbits on all of n*.
OrbitPartition two_sided_partition(const Group& g, const PartitionOptions& opts = {});
/// Conjugacy classes of G, as a partition of n (the class of 1+X is indexed by X).
OrbitPartition conjugacy_classes(const Group& g, const PartitionOptions& opts = {});
/// Superclasses {1 + gXh}.
OrbitPartition superclasses(const Group& g, const PartitionOptions& opts = {});

/// Size of the subgroup generated by the standard generators of 1 + h, by BFS
/// over group elements; equals q^dim h when they generate.
std::uint64_t generated_subgroup_order(const Group& g, const Subspace& h,
                                       std::uint64_t max_points = std::uint64_t(1) << 22);

}  // namespace algchar
