#pragma once

/** @file units.hpp
    @brief Physical constants in the library unit system.

    Energies are in eV, lengths in nm, angular frequencies in rad/s.
    Pressures leave the library in Pa.
 */

#include <numbers>

namespace casimir_qse::units {

inline constexpr double pi = std::numbers::pi;

/// Reduced Planck constant, eV s.
inline constexpr double hbar = 6.582119569e-16;

/// hbar^2 / (2 m_e), eV nm^2.
inline constexpr double hbar2_over_2m = 0.0380998212;

/// Gaussian e^2 = alpha * hbar * c, eV nm.
inline constexpr double e_squared = 1.43996454784;

/// Speed of light, nm/s.
inline constexpr double c = 2.99792458e17;

/// Bohr radius, nm.
inline constexpr double bohr = 0.0529177210903;

inline constexpr double joule_per_ev = 1.602176634e-19;
inline constexpr double meter_per_nm = 1e-9;

/// eV/nm^3 -> Pa.
inline constexpr double pascal_per_ev_nm3 =
    joule_per_ev / (meter_per_nm * meter_per_nm * meter_per_nm);

/// Wavevector squared (1/nm^2) of a free electron with kinetic energy E (eV).
constexpr double wavevector_squared(double energy) { return energy / hbar2_over_2m; }

/// Kinetic energy (eV) of a free electron with wavevector squared k2 (1/nm^2).
constexpr double kinetic_energy(double k2) { return hbar2_over_2m * k2; }

} // namespace casimir_qse::units
