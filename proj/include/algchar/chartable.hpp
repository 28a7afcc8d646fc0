#pragma once

// Irr(G) from the class algebra: common eigenvectors of the class
// multiplication matrices over a prime field F_P with P = 1 mod exp(G), lifted
// to exact values by counting eigenvalue multiplicities on each cyclic
// subgroup. Independent of any induction argument, so it doubles as a check.

#include <cstdint>
#include <vector>

#include "algchar/charfun.hpp"

namespace algchar {

struct ClassAlgebraTable {
  std::uint64_t prime = 0;     // the modulus P used for splitting
  std::uint64_t exponent = 1;  // largest element order
  std::size_t class_count = 0;
  std::vector<ClassFunction> characters;
};

/// DomainError when some character takes a value outside Q(zeta_p);
/// CapacityError when the group is too large to enumerate.
ClassAlgebraTable class_algebra_table(const Group& g);

}  // namespace algchar
