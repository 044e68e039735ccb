// Minimal library walkthrough: two carbon-like centers, phases at one
// energy, then a short time-delay scan.

#include <cstdio>

#include <zrp/zrp.hpp>

int main() {
    const auto regime = zrp::UnitRegime::atomic_electron();
    const auto model = zrp::carbon_model();
    const auto target = zrp::make_simplex(2, 2.479);

    const double E = 1.0; // hartree
    const double k = zrp::momentum_from_energy(regime, E);
    const double c0 = zrp::cot_delta0(model, k, regime);
    const auto ps = zrp::closed_form_cot_eta(2, k * 2.479, c0);
    std::printf("E = %.3f hartree, k = %.6f\n", E, k);
    for (const auto& root : ps.roots)
        std::printf("  branch %d: cot eta = %.12f (multiplicity %d)\n", root.branch,
                    root.cot_eta, root.multiplicity);
    std::printf("  sigma_bar = %.12f au^2\n", zrp::averaged_cross_section(ps, k));

    zrp::GridSpec grid{0.1, 10.0, 400, zrp::GridSpacing::Log};
    const auto pc = zrp::phase_curve(target, model, regime, zrp::make_energy_grid(grid));
    const auto tau = zrp::time_delay_curve(pc, regime, zrp::DerivativeMethod::Analytic);
    double tmin = tau.values[0][0];
    size_t imin = 0;
    for (size_t i = 1; i < tau.values[0].size(); ++i)
        if (tau.values[0][i] < tmin) {
            tmin = tau.values[0][i];
            imin = i;
        }
    std::printf("deepest tau_0 on [0.1, 10]: %.6f tau_At at E = %.6f hartree\n", tmin,
                tau.energies[imin]);
    return 0;
}
