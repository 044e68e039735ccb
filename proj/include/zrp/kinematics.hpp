#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "zrp/units.hpp"

namespace zrp {

enum class Regime { AtomicElectron, RelativisticMeson };

// Unit system for one scattering problem. Electrons use atomic units
// (energy in hartree, length in bohr); mesons use MeV and fm.
struct UnitRegime {
    Regime kind = Regime::AtomicElectron;
    double rest_energy_m0c2 = 0.0; // MeV, meson regime only
    double hbar_c = 0.0;           // MeV*fm, meson regime only
    double tau_unit_seconds = units::tau_atomic_seconds;

    static UnitRegime atomic_electron() {
        return {Regime::AtomicElectron, 0.0, 0.0, units::tau_atomic_seconds};
    }

    static UnitRegime relativistic_meson(double m0c2 = units::pion_rest_energy_MeV,
                                         double hbarc = units::hbar_c_MeV_fm) {
        if (m0c2 <= 0.0)
            throw std::invalid_argument("UnitRegime: rest energy must be positive");
        return {Regime::RelativisticMeson, m0c2, hbarc, units::tau_nuclear_seconds};
    }

    const char* energy_unit() const {
        return kind == Regime::AtomicElectron ? "hartree" : "MeV";
    }
    const char* length_unit() const {
        return kind == Regime::AtomicElectron ? "au" : "fm";
    }
    const char* tau_unit_name() const {
        return kind == Regime::AtomicElectron ? "tau_atomic" : "tau_nuclear";
    }
};

inline double momentum_from_energy(const UnitRegime& regime, double E) {
    if (E < 0.0)
        throw std::domain_error("momentum_from_energy: negative energy " + std::to_string(E));
    if (regime.kind == Regime::AtomicElectron)
        return std::sqrt(2.0 * E);
    return std::sqrt(E * (E + 2.0 * regime.rest_energy_m0c2)) / regime.hbar_c;
}

inline double energy_from_momentum(const UnitRegime& regime, double k) {
    if (k < 0.0)
        throw std::domain_error("energy_from_momentum: negative wavenumber");
    if (regime.kind == Regime::AtomicElectron)
        return 0.5 * k * k;
    const double q = regime.hbar_c * k;
    const double m = regime.rest_energy_m0c2;
    // sqrt(q^2+m^2)-m, written to avoid cancellation at small q
    return q * q / (std::sqrt(q * q + m * m) + m);
}

inline double dk_dE(const UnitRegime& regime, double E) {
    if (E <= 0.0)
        throw std::domain_error("dk_dE: singular at threshold, E must be > 0");
    const double k = momentum_from_energy(regime, E);
    if (regime.kind == Regime::AtomicElectron)
        return 1.0 / k;
    return (E + regime.rest_energy_m0c2) / (regime.hbar_c * regime.hbar_c * k);
}

} // namespace zrp
