#pragma once

namespace zrp::units {

inline constexpr double hbar_c_MeV_fm = 197.326;
inline constexpr double pion_rest_energy_MeV = 139.57;

// time corresponding to one unit of 2*d(phase)/dE in each energy scale
inline constexpr double tau_atomic_seconds = 2.419e-17;  // atomic unit of time
inline constexpr double tau_nuclear_seconds = 6.582e-22; // hbar / MeV

} // namespace zrp::units
