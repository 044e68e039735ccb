#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "zrp/scattering_solver.hpp"

namespace zrp {

enum class CurveKind { CrossSection, CrossSectionRatio, TimeDelay };
enum class DerivativeMethod { Analytic, FiniteDifference };

// Columnar observable data over an energy grid. Time delays carry one series
// per branch; cross sections and ratios carry a single series.
struct ObservableCurve {
    std::vector<double> energies;
    std::vector<std::vector<double>> values; // [series][grid point]
    CurveKind kind = CurveKind::CrossSection;
    std::vector<int> multiplicities; // per series (time delay)
    std::vector<int> labels;         // lambda per series (time delay)
    UnitRegime regime;
    int n_centers = 0;
    double simplex_R = 0.0;
};

inline double sin2_from_cot(double cot_eta, bool infinite) {
    if (infinite || std::isinf(cot_eta))
        return 0.0;
    return 1.0 / (1.0 + cot_eta * cot_eta);
}

// sigma_bar = (4 pi / k^2) sum_roots multiplicity * sin^2(eta)
inline double averaged_cross_section(const PhaseShiftSet& ps, double k) {
    if (k <= 0.0)
        throw std::domain_error("averaged_cross_section: k must be positive");
    double sum = 0.0;
    for (const auto& r : ps.roots)
        sum += r.multiplicity * sin2_from_cot(r.cot_eta, r.cot_is_infinite);
    return 4.0 * std::numbers::pi / (k * k) * sum;
}

// sigma_bar_N / (N sigma_0) with sigma_0 = (4 pi / k^2) sin^2(delta0); the
// 4 pi / k^2 factors cancel exactly.
inline double cross_section_ratio(const PhaseShiftSet& ps, double k, double delta0, int N) {
    if (k <= 0.0)
        throw std::domain_error("cross_section_ratio: k must be positive");
    const double s0 = std::sin(delta0);
    if (s0 == 0.0)
        throw std::domain_error(
            "cross_section_ratio: sin(delta0) = 0, the single-center cross section "
            "vanishes and the ratio is undefined");
    double sum = 0.0;
    for (const auto& r : ps.roots)
        sum += r.multiplicity * sin2_from_cot(r.cot_eta, r.cot_is_infinite);
    return sum / (N * s0 * s0);
}

namespace detail {

// derivative of the Lagrange interpolant through (xa,fa),(xb,fb),(xc,fc) at x
inline double lagrange3_derivative(double xa, double xb, double xc, double fa, double fb,
                                   double fc, double x) {
    return fa * (2.0 * x - xb - xc) / ((xa - xb) * (xa - xc)) +
           fb * (2.0 * x - xa - xc) / ((xb - xa) * (xb - xc)) +
           fc * (2.0 * x - xa - xb) / ((xc - xa) * (xc - xb));
}

// d eta_lambda / dk for the equal-spacing closed forms, via eta = atan(v/u):
//   lambda = 0: u = kR c - (N-1) cos kR, v = kR + (N-1) sin kR
//   lambda = 1: u = kR c +       cos kR, v = kR -       sin kR
inline double closed_form_deta_dk(int N, double R, double k, double c, double dc_dk, int lambda) {
    const double kR = k * R;
    const double s = std::sin(kR), co = std::cos(kR);
    const double m = (lambda == 0) ? static_cast<double>(N - 1) : -1.0;
    const double u = kR * c - m * co;
    const double v = kR + m * s;
    const double up = R * c + kR * dc_dk + m * R * s;
    const double vp = R + m * R * co;
    return (vp * u - v * up) / (u * u + v * v);
}

} // namespace detail

// tau_lambda(E) = 2 d eta_lambda / dE, in multiples of the regime's tau unit
// (the regime absorbs hbar; multiply by tau_unit_seconds for seconds).
inline ObservableCurve time_delay_curve(const PhaseCurve& pc, const UnitRegime& regime,
                                        DerivativeMethod method) {
    const size_t np = pc.energies.size();
    if (np < 3)
        throw std::invalid_argument("time_delay_curve: need at least three grid points");

    ObservableCurve out;
    out.energies = pc.energies;
    out.kind = CurveKind::TimeDelay;
    out.multiplicities = pc.multiplicities;
    out.labels = pc.labels;
    out.regime = regime;
    out.n_centers = pc.n_centers;
    out.simplex_R = pc.simplex_R;
    out.values.assign(pc.branches.size(), std::vector<double>(np));

    if (method == DerivativeMethod::Analytic) {
        if (pc.n_centers >= 2 && pc.simplex_R <= 0.0)
            throw std::invalid_argument(
                "time_delay_curve: the analytic derivative needs an equal-spacing "
                "target; use the finite-difference method");
        for (size_t i = 0; i < np; ++i) {
            const double k = pc.k_values[i];
            const double dkdE = dk_dE(regime, pc.energies[i]);
            const double d0p = eval_delta0_derivative(pc.model, k, regime);
            const double d0 = eval_delta0(pc.model, k, regime);
            const double sd = std::sin(d0);
            for (size_t b = 0; b < pc.branches.size(); ++b) {
                double detadk;
                if (pc.n_centers == 1) {
                    detadk = d0p;
                } else if (sd == 0.0) {
                    // transparent-center limit: eta -> delta0 mod pi and
                    // d eta/dk -> (v / kR) d delta0/dk
                    const double kR = k * pc.simplex_R;
                    const double m = (pc.labels[b] == 0) ? double(pc.n_centers - 1) : -1.0;
                    detadk = (kR + m * std::sin(kR)) / kR * d0p;
                } else {
                    const double c = std::cos(d0) / sd;
                    const double dc_dk = -(1.0 + c * c) * d0p;
                    detadk = detail::closed_form_deta_dk(pc.n_centers, pc.simplex_R, k, c,
                                                         dc_dk, pc.labels[b]);
                }
                out.values[b][i] = 2.0 * detadk * dkdE;
            }
        }
        return out;
    }

    for (size_t b = 0; b < pc.branches.size(); ++b) {
        const auto& eta = pc.branches[b];
        const auto& E = pc.energies;
        auto& tau = out.values[b];
        tau[0] = 2.0 * detail::lagrange3_derivative(E[0], E[1], E[2], eta[0], eta[1], eta[2], E[0]);
        for (size_t i = 1; i + 1 < np; ++i)
            tau[i] = 2.0 * detail::lagrange3_derivative(E[i - 1], E[i], E[i + 1], eta[i - 1],
                                                        eta[i], eta[i + 1], E[i]);
        tau[np - 1] = 2.0 * detail::lagrange3_derivative(E[np - 3], E[np - 2], E[np - 1],
                                                         eta[np - 3], eta[np - 2], eta[np - 1],
                                                         E[np - 1]);
    }
    return out;
}

// Adds the Breit-Wigner resonance term 2 * (Gamma/2) / ((E_res-E)^2 + Gamma^2/4)
// to every series, in the same stored units.
inline ObservableCurve resonance_augmented_delay(const ObservableCurve& base, double gamma,
                                                 double e_res) {
    if (base.kind != CurveKind::TimeDelay)
        throw std::invalid_argument("resonance_augmented_delay: base must be a time delay curve");
    ObservableCurve out = base;
    for (auto& series : out.values)
        for (size_t i = 0; i < series.size(); ++i)
            series[i] += 2.0 * breit_wigner_delay_addition(gamma, e_res, base.energies[i]);
    return out;
}

// sigma_bar(E) from an already-solved phase curve; sin^2 is pi-periodic so
// the unwrapped branches feed it directly.
inline ObservableCurve cross_section_curve(const PhaseCurve& pc) {
    ObservableCurve out;
    out.energies = pc.energies;
    out.kind = CurveKind::CrossSection;
    out.regime = pc.regime;
    out.n_centers = pc.n_centers;
    out.simplex_R = pc.simplex_R;
    out.values.assign(1, std::vector<double>(pc.energies.size()));
    for (size_t i = 0; i < pc.energies.size(); ++i) {
        const double k = pc.k_values[i];
        double sum = 0.0;
        for (size_t b = 0; b < pc.branches.size(); ++b) {
            const double s = std::sin(pc.branches[b][i]);
            sum += pc.multiplicities[b] * s * s;
        }
        out.values[0][i] = 4.0 * std::numbers::pi / (k * k) * sum;
    }
    return out;
}

// sigma_bar / (N sigma_0) along a phase curve.
inline ObservableCurve cross_section_ratio_curve(const PhaseCurve& pc) {
    ObservableCurve out;
    out.energies = pc.energies;
    out.kind = CurveKind::CrossSectionRatio;
    out.regime = pc.regime;
    out.n_centers = pc.n_centers;
    out.simplex_R = pc.simplex_R;
    out.values.assign(1, std::vector<double>(pc.energies.size()));
    for (size_t i = 0; i < pc.energies.size(); ++i) {
        const double d0 = eval_delta0(pc.model, pc.k_values[i], pc.regime);
        const double s0 = std::sin(d0);
        if (s0 == 0.0)
            throw std::domain_error(
                "cross_section_ratio_curve: sin(delta0) = 0 at E = " +
                std::to_string(pc.energies[i]) + ", the ratio is undefined there");
        double sum = 0.0;
        for (size_t b = 0; b < pc.branches.size(); ++b) {
            const double s = std::sin(pc.branches[b][i]);
            sum += pc.multiplicities[b] * s * s;
        }
        out.values[0][i] = sum / (pc.n_centers * s0 * s0);
    }
    return out;
}

} // namespace zrp
