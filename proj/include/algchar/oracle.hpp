#pragma once

// Irr(G) by exhaustive induction of linear characters theta_mu of algebra
// subgroups 1 + h (mu vanishing on h^2). Most irreducibles arise this way; any
// that do not are taken from the class-algebra table, which must also contain
// every induced one. Completeness is
// certified by sum chi(1)^2 = |G| and |Irr| = number of conjugacy classes.

#include <cstdint>
#include <map>
#include <vector>

#include "algchar/charfun.hpp"

namespace algchar {

struct IrrCharacter {
  ClassFunction chi;
  std::uint64_t degree = 1;
  /// False for characters taken from the class-algebra table, which carry no inducing pair.
  bool induced = true;
  /// The subalgebra and the functional on it (in its RREF coordinates) that induce chi.
  Subspace inducing_subalgebra;
  Vec inducing_functional;
};

struct IrrSet {
  Algebra algebra;
  /// Sorted by degree, then by coefficient map.
  std::vector<IrrCharacter> chars;
  std::size_t class_count = 0;
  /// Number of candidate subalgebras examined.
  std::uint64_t subalgebras_scanned = 0;

  std::size_t size() const { return chars.size(); }
  std::map<std::uint64_t, std::uint64_t> degree_histogram() const;
  /// Index of the member equal to f, or -1.
  long find(const ClassFunction& f) const;
};

struct OracleOptions {
  /// Give up (CapacityError carrying the count found so far) past this many subalgebras.
  std::uint64_t max_subalgebras = 2000000;
};

IrrSet all_irreducibles(const Group& g, const OracleOptions& opts = {});

struct Decomposition {
  /// <f, chi_i> for each member of the IrrSet.
  std::vector<Cyclo> multiplicities;
  /// Whether sum m_i chi_i reproduces f exactly.
  bool in_span = false;

  /// Indices with nonzero multiplicity.
  std::vector<std::size_t> constituents() const;
};

Decomposition decompose(const ClassFunction& f, const IrrSet& irr);
/// f != 0 with nonnegative integer multiplicities that reproduce f.
bool is_character(const ClassFunction& f, const IrrSet& irr);
bool is_irreducible(const ClassFunction& f, const IrrSet& irr);

}  // namespace algchar
