#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "zrp/kinematics.hpp"

namespace zrp {

// Single-center s-wave phase shift models. All evaluations are pure; the
// momentum derivative is analytic for every variant.

struct LinearPhase {
    double offset = 0.0; // radians at k = 0
    double slope = 0.0;  // radians per unit wavenumber
};

struct ConstantPhase {
    double delta0 = 0.0; // radians
};

// Threshold + resonance fit: tan(delta0)/q = b + f q^2 + d q^4
//                                            + x*Gamma0*omega0/(q0*(omega0^2 - omega^2))
// with q = hbar_c * k in MeV/c and omega the total energy E + m0c^2.
struct MesonFitPhase {
    double b = 0.0;      // (MeV/c)^-1
    double f = 0.0;      // (MeV/c)^-3
    double d = 0.0;      // (MeV/c)^-5
    double x = 0.0;      // dimensionless
    double gamma0 = 0.0; // MeV
    double omega0 = 0.0; // MeV
    double q0 = 0.0;     // MeV/c

    void validate() const {
        if (gamma0 <= 0.0)
            throw std::invalid_argument("MesonFitPhase: gamma0 must be > 0");
        if (omega0 <= 0.0)
            throw std::invalid_argument("MesonFitPhase: omega0 must be > 0");
        if (q0 <= 0.0)
            throw std::invalid_argument("MesonFitPhase: q0 must be > 0");
    }
};

class PhaseModel;

struct ResonanceAugmentedPhase {
    std::shared_ptr<const PhaseModel> base;
    double gamma = 0.0; // width, energy units of the regime
    double e_res = 0.0; // resonance position

    void validate() const {
        if (!base)
            throw std::invalid_argument("ResonanceAugmentedPhase: missing base model");
        if (gamma <= 0.0)
            throw std::invalid_argument("ResonanceAugmentedPhase: gamma must be > 0");
    }
};

class PhaseModel {
  public:
    using Variant = std::variant<LinearPhase, ConstantPhase, MesonFitPhase, ResonanceAugmentedPhase>;

    PhaseModel() : v_(ConstantPhase{}) {}
    PhaseModel(LinearPhase m) : v_(m) {}
    PhaseModel(ConstantPhase m) : v_(m) {}
    PhaseModel(MesonFitPhase m) : v_(m) { std::get<MesonFitPhase>(v_).validate(); }
    PhaseModel(ResonanceAugmentedPhase m) : v_(std::move(m)) {
        std::get<ResonanceAugmentedPhase>(v_).validate();
    }

    const Variant& variant() const { return v_; }

    static PhaseModel with_resonance(PhaseModel base, double gamma, double e_res) {
        ResonanceAugmentedPhase r;
        r.base = std::make_shared<PhaseModel>(std::move(base));
        r.gamma = gamma;
        r.e_res = e_res;
        return PhaseModel(std::move(r));
    }

  private:
    Variant v_;
};

// Carbon-atom electron model: delta0(k) = 2*pi - 1.912*k in atomic units.
inline PhaseModel carbon_model() {
    return PhaseModel(LinearPhase{2.0 * std::numbers::pi, -1.912});
}

inline double breit_wigner_delay_addition(double gamma, double e_res, double E) {
    if (gamma <= 0.0)
        throw std::invalid_argument("breit_wigner_delay_addition: gamma must be > 0");
    const double half = 0.5 * gamma;
    const double dE = e_res - E;
    return half / (dE * dE + half * half);
}

namespace detail {

struct MesonFitTerms {
    double num;     // N(q) = q*(A*D + s)
    double den;     // D(q) = omega0^2 - omega^2
    double dnum_dq; // N'
    double dden_dq; // D'
};

inline MesonFitTerms meson_fit_terms(const MesonFitPhase& m, double q, double m0c2) {
    const double q2 = q * q;
    const double w2 = q2 + m0c2 * m0c2; // omega^2
    const double A = m.b + m.f * q2 + m.d * q2 * q2;
    const double Ap = 2.0 * m.f * q + 4.0 * m.d * q * q2;
    const double s = m.x * m.gamma0 * m.omega0 / m.q0;
    const double D = m.omega0 * m.omega0 - w2;
    const double Dp = -2.0 * q;
    const double N = q * (A * D + s);
    const double Np = (A * D + s) + q * (Ap * D + A * Dp);
    return {N, D, Np, Dp};
}

} // namespace detail

// delta0(k), continuous in k from threshold. The meson fit passes its
// resonance pole continuously: sign N(omega0) = sign s, so
// atan(N/D) + pi*sgn(s)*[omega > omega0] has no jump.
inline double eval_delta0(const PhaseModel& model, double k, const UnitRegime& regime) {
    if (k < 0.0)
        throw std::domain_error("eval_delta0: negative wavenumber");
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearPhase>) {
                return m.offset + m.slope * k;
            } else if constexpr (std::is_same_v<T, ConstantPhase>) {
                return m.delta0;
            } else if constexpr (std::is_same_v<T, MesonFitPhase>) {
                m.validate();
                if (regime.kind != Regime::RelativisticMeson)
                    throw std::invalid_argument("eval_delta0: meson fit requires the meson regime");
                const double q = regime.hbar_c * k;
                const double s = m.x * m.gamma0 * m.omega0 / m.q0;
                const auto t = detail::meson_fit_terms(m, q, regime.rest_energy_m0c2);
                if (s == 0.0) {
                    // no pole: tan(delta0) = q*A, smooth through den = 0
                    const double q2 = q * q;
                    return std::atan(q * (m.b + m.f * q2 + m.d * q2 * q2));
                }
                const double step = (s > 0.0 ? 1.0 : -1.0) * std::numbers::pi;
                // continuous branch through the pole: sign num(pole) = sign s
                if (t.den > 0.0)
                    return std::atan(t.num / t.den);
                if (t.den == 0.0)
                    return 0.5 * step;
                return std::atan(t.num / t.den) + step;
            } else {
                m.validate();
                const double base = eval_delta0(*m.base, k, regime);
                const double E = energy_from_momentum(regime, k);
                double term;
                if (E == m.e_res)
                    term = std::numbers::pi / 2.0;
                else {
                    term = std::atan(0.5 * m.gamma / (m.e_res - E));
                    if (E > m.e_res)
                        term += std::numbers::pi;
                }
                return base + term;
            }
        },
        model.variant());
}

// d delta0 / dk, analytic per variant.
inline double eval_delta0_derivative(const PhaseModel& model, double k, const UnitRegime& regime) {
    if (k < 0.0)
        throw std::domain_error("eval_delta0_derivative: negative wavenumber");
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LinearPhase>) {
                return m.slope;
            } else if constexpr (std::is_same_v<T, ConstantPhase>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, MesonFitPhase>) {
                m.validate();
                if (regime.kind != Regime::RelativisticMeson)
                    throw std::invalid_argument(
                        "eval_delta0_derivative: meson fit requires the meson regime");
                const double q = regime.hbar_c * k;
                const double s = m.x * m.gamma0 * m.omega0 / m.q0;
                if (s == 0.0) {
                    const double q2 = q * q;
                    const double A = m.b + m.f * q2 + m.d * q2 * q2;
                    const double Ap = 2.0 * m.f * q + 4.0 * m.d * q * q2;
                    return regime.hbar_c * (A + q * Ap) / (1.0 + q * A * q * A);
                }
                const auto t = detail::meson_fit_terms(m, q, regime.rest_energy_m0c2);
                const double dd_dq =
                    (t.dnum_dq * t.den - t.num * t.dden_dq) / (t.den * t.den + t.num * t.num);
                return regime.hbar_c * dd_dq;
            } else {
                m.validate();
                const double basep = eval_delta0_derivative(*m.base, k, regime);
                const double E = energy_from_momentum(regime, k);
                const double bw = breit_wigner_delay_addition(m.gamma, m.e_res, E);
                // dE/dk = 1 / (dk/dE)
                return basep + bw / dk_dE(regime, E);
            }
        },
        model.variant());
}

// cot(delta0); pi-periodic, so the branch of delta0 is irrelevant.
// Returns +-infinity when sin(delta0) = 0 (transparent center).
inline double cot_delta0(const PhaseModel& model, double k, const UnitRegime& regime) {
    const double d0 = eval_delta0(model, k, regime);
    return std::cos(d0) / std::sin(d0);
}

} // namespace zrp
