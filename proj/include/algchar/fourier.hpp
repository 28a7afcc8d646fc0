#pragma once

// Fourier transform on the additive group F_q^d with values in Q(zeta_p).
// Points X and functionals nu are both indexed by pack_key over F_q, and the
// pairing is zeta_p^Tr(nu . X).

#include <cstdint>
#include <vector>

#include "algchar/cyclo.hpp"
#include "algchar/gf.hpp"

namespace algchar {

/// Largest q^d accepted by the transforms.
inline constexpr std::uint64_t kFourierLimit = std::uint64_t(1) << 20;

/// c_nu = q^-d sum_X f(X) zeta^-Tr(nu . X).
std::vector<Cyclo> fourier_coefficients(const Field& f, std::size_t d, const std::vector<Cyclo>& values);
/// f(X) = sum_nu c_nu zeta^Tr(nu . X).
std::vector<Cyclo> fourier_values(const Field& f, std::size_t d, const std::vector<Cyclo>& coefficients);

}  // namespace algchar
