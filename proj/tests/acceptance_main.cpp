// Acceptance gate: one line per criterion, exit code = number of failures.
// Criterion 11 is skipped (not failed) when no meson constants file is found.
#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <zrp/zrp.hpp>

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int id, bool pass, const std::string& note) {
    std::printf("ACCEPTANCE %02d %s  %s\n", id, pass ? "PASS" : "FAIL", note.c_str());
    if (!pass)
        ++g_failures;
}

void report_skip(int id, const std::string& note) {
    std::printf("ACCEPTANCE %02d SKIP  %s\n", id, note.c_str());
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double wrap_half(double eta) {
    double e = std::fmod(eta, kPi);
    if (e > kPi / 2.0)
        e -= kPi;
    if (e <= -kPi / 2.0)
        e += kPi;
    return e;
}

// flattened finite cot values, descending, one entry per multiplicity
std::vector<double> flat_cots(const zrp::PhaseShiftSet& ps) {
    std::vector<double> v;
    for (const auto& r : ps.roots)
        if (!r.cot_is_infinite)
            for (int m = 0; m < r.multiplicity; ++m)
                v.push_back(r.cot_eta);
    std::sort(v.rbegin(), v.rend());
    return v;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

const zrp::UnitRegime atomic = zrp::UnitRegime::atomic_electron();
const zrp::UnitRegime meson = zrp::UnitRegime::relativistic_meson();

// 1: closed form vs generic eigensolver on random cases
void criterion_1() {
    std::mt19937 rng(20250818);
    std::uniform_real_distribution<double> dkr(0.01, 20.0);
    std::uniform_real_distribution<double> dd0(kPi / 180.0, 179.0 * kPi / 180.0);
    double worst = 0.0;
    bool mult_ok = true;
    for (int n : {2, 3, 4}) {
        const std::vector<int> want = (n == 2)   ? std::vector<int>{1, 1}
                                      : (n == 3) ? std::vector<int>{1, 2}
                                                 : std::vector<int>{1, 3};
        for (int trial = 0; trial < 100; ++trial) {
            const double kR = dkr(rng), d0 = dd0(rng);
            const double k = 1.0, R = kR / k;
            const double c = std::cos(d0) / std::sin(d0);
            const auto closed = zrp::closed_form_cot_eta(n, kR, c);
            const auto generic =
                zrp::generic_cot_eta(zrp::make_simplex(n, R), k, std::vector<double>(n, c));
            const auto a = flat_cots(closed), b = flat_cots(generic);
            if (a.size() != b.size()) {
                mult_ok = false;
                continue;
            }
            for (size_t i = 0; i < a.size(); ++i) {
                const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
                worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
            }
            std::vector<int> mc, mg;
            for (const auto& r : closed.roots)
                mc.push_back(r.multiplicity);
            for (const auto& r : generic.roots)
                mg.push_back(r.multiplicity);
            std::sort(mc.begin(), mc.end());
            std::sort(mg.begin(), mg.end());
            if (mc != want || mg != want)
                mult_ok = false;
        }
    }
    report(1, worst < 1e-9 && mult_ok,
           fmt("closed vs generic, 300 random cases: worst scaled cot deviation %.3e "
               "(tol 1e-9), multiplicities {1, N-1}: %s",
               worst, mult_ok ? "yes" : "no"));
}

// 2: determinant residual at every root + N=2 mixture symmetry
void criterion_2() {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> dkr(0.05, 15.0);
    std::uniform_real_distribution<double> dd0(2.0 * kPi / 180.0, 178.0 * kPi / 180.0);
    double worst_res = 0.0;
    for (int n : {2, 3, 4})
        for (int trial = 0; trial < 25; ++trial) {
            const double kR = dkr(rng), d0 = dd0(rng);
            const double k = 0.9, R = kR / k;
            const double c = std::cos(d0) / std::sin(d0);
            const auto t = zrp::make_simplex(n, R);
            const std::vector<double> cots(n, c);
            for (const auto& r : zrp::generic_cot_eta(t, k, cots).roots)
                if (!r.cot_is_infinite)
                    worst_res =
                        std::max(worst_res, zrp::scaled_det_residual(t, k, cots, r.cot_eta));
        }

    bool mix_ok = true;
    double worst_mix = 0.0;
    const auto t2 = zrp::make_simplex(2, 2.479);
    for (double k : {0.3, 0.7, 1.4, 2.6}) {
        const auto ps = zrp::generic_cot_eta(t2, k, {0.8, 0.8});
        int saw_sym = 0, saw_anti = 0;
        for (const auto& r : ps.roots) {
            if (!r.eigenvector || r.eigenvector->size() != 2) {
                mix_ok = false;
                continue;
            }
            const auto& v = *r.eigenvector;
            worst_mix = std::max(worst_mix, std::abs(std::abs(v(0)) - std::abs(v(1))));
            (v(0) * v(1) > 0.0 ? saw_sym : saw_anti) += 1;
        }
        if (saw_sym != 1 || saw_anti != 1)
            mix_ok = false;
    }
    report(2, worst_res < 1e-8 && mix_ok && worst_mix < 1e-10,
           fmt("worst scaled |det(xP+Q)| at roots %.3e (tol 1e-8); N=2 mixtures D1 = +-D2: "
               "worst ||D1|-|D2|| = %.3e, one symmetric and one antisymmetric root per k: %s",
               worst_res, worst_mix, mix_ok ? "yes" : "no"));
}

// 3: low-k scaling eta0 ~ k, eta1 ~ k^3
void criterion_3() {
    const double R = 2.479;
    bool ok = true;
    std::string detail;
    for (int n : {2, 3, 4}) {
        double prev0 = 0.0, prev1 = 0.0;
        for (int dec = 0; dec <= 2; ++dec) {
            const double kR = 1e-3 * std::pow(10.0, dec);
            const double k = kR / R;
            const double c = zrp::cot_delta0(zrp::carbon_model(), k, atomic);
            const auto ps = zrp::closed_form_cot_eta(n, kR, c);
            double e0 = 0.0, e1 = 0.0;
            for (const auto& root : ps.roots)
                (root.branch == 0 ? e0 : e1) = std::abs(wrap_half(root.eta_mod_pi));
            const double r0 = e0 / k;
            const double r1 = e1 / (k * k * k);
            if (dec > 0) {
                if (std::abs(r0 / prev0 - 1.0) > 0.05 || std::abs(r1 / prev1 - 1.0) > 0.05)
                    ok = false;
            }
            prev0 = r0;
            prev1 = r1;
        }
        detail += fmt("N=%d: eta0/k -> %.4f, eta1/k^3 -> %.4f; ", n, prev0, prev1);
    }
    report(3, ok, detail + "drift < 5% per decade over kR in [1e-3, 1e-1]: " +
                      (ok ? "yes" : "no"));
}

// 4: every branch crosses eta mod pi = pi/2 inside E in [2.4, 3.1]
void criterion_4() {
    bool all_in = true;
    std::string detail;
    for (int n : {1, 2, 3, 4}) {
        const int nb = (n == 1) ? 1 : 2;
        for (int b = 0; b < nb; ++b) {
            auto cot_at = [&](double E) {
                const double k = zrp::momentum_from_energy(atomic, E);
                const double c = zrp::cot_delta0(zrp::carbon_model(), k, atomic);
                if (n == 1)
                    return c;
                const auto ps = zrp::closed_form_cot_eta(n, k * 2.479, c);
                for (const auto& root : ps.roots)
                    if (root.branch == b)
                        return root.cot_eta;
                return std::numeric_limits<double>::quiet_NaN();
            };
            // cot eta = 0 exactly at eta mod pi = pi/2; scan then bisect
            std::vector<double> crossings;
            const int steps = 2000;
            double eprev = 2.0, fprev = cot_at(eprev);
            for (int i = 1; i <= steps; ++i) {
                const double e = 2.0 + 2.0 * i / steps;
                const double fcur = cot_at(e);
                if (fprev == 0.0)
                    crossings.push_back(eprev);
                else if (fprev * fcur < 0.0 && std::abs(fprev) < 10.0 && std::abs(fcur) < 10.0) {
                    double lo = eprev, hi = e, flo = fprev;
                    for (int it = 0; it < 80; ++it) {
                        const double mid = 0.5 * (lo + hi), fmid = cot_at(mid);
                        if (flo * fmid <= 0.0)
                            hi = mid;
                        else {
                            lo = mid;
                            flo = fmid;
                        }
                    }
                    crossings.push_back(0.5 * (lo + hi));
                }
                eprev = e;
                fprev = fcur;
            }
            bool in_window = false;
            double nearest = -1.0;
            for (double c : crossings) {
                if (c >= 2.4 && c <= 3.1)
                    in_window = true;
                if (nearest < 0.0 || std::abs(c - 2.75) < std::abs(nearest - 2.75))
                    nearest = c;
            }
            if (!in_window)
                all_in = false;
            detail += fmt("N=%d b%d: %.4f%s ", n, b, nearest, in_window ? "" : "(out)");
        }
    }
    report(4, all_in, "pi/2 crossings (a.u.), window [2.4, 3.1]: " + detail);
}

// 5: all carbon delays negative on [0.1, 10]
void criterion_5() {
    double worst = -1e300;
    for (int n : {2, 3, 4}) {
        const auto pc = zrp::phase_curve(zrp::make_simplex(n, 2.479), zrp::carbon_model(), atomic,
                                         zrp::make_energy_grid({0.1, 10.0, 2000, zrp::GridSpacing::Log}));
        const auto td = zrp::time_delay_curve(pc, atomic, zrp::DerivativeMethod::Analytic);
        for (const auto& series : td.values)
            for (double v : series)
                worst = std::max(worst, v);
    }
    report(5, worst < 0.0,
           fmt("N in {2,3,4}, E in [0.1, 10] a.u.: largest tau = %.6f tau_At (must stay < 0)",
               worst));
}

// 6: lambda=1 dip depth for the carbon dimer
void criterion_6() {
    const auto pc = zrp::phase_curve(zrp::make_simplex(2, 2.479), zrp::carbon_model(), atomic,
                                     zrp::make_energy_grid({0.005, 1.0, 2000, zrp::GridSpacing::Log}));
    const auto td = zrp::time_delay_curve(pc, atomic, zrp::DerivativeMethod::Analytic);
    double tmin = 1e300, emin = 0.0;
    for (size_t i = 0; i < td.energies.size(); ++i)
        if (td.values[1][i] < tmin) {
            tmin = td.values[1][i];
            emin = td.energies[i];
        }
    report(6, tmin >= -10.0 && tmin <= -7.0,
           fmt("min tau_1 over (0, 1] a.u.: %.4f tau_At at E = %.4f (window [-10, -7])", tmin,
               emin));
}

// 7: Breit-Wigner peak height 4/Gamma and FWHM Gamma
void criterion_7() {
    const double gamma = 0.05, e_res = 5.0;
    const auto base_model = zrp::PhaseModel{zrp::ConstantPhase{0.3}};
    zrp::Target single;
    single.centers = {{0.0, 0.0, 0.0}};
    const auto pc = zrp::phase_curve(single, base_model, atomic,
                                     zrp::make_energy_grid({4.0, 6.0, 4001, zrp::GridSpacing::Linear}));
    const auto base = zrp::time_delay_curve(pc, atomic, zrp::DerivativeMethod::Analytic);
    const auto aug = zrp::resonance_augmented_delay(base, gamma, e_res);
    const double peak = aug.values[0][2000]; // grid point exactly at E_res
    const double peak_err = std::abs(peak - 4.0 / gamma) / (4.0 / gamma);

    // half-height energies by bisection on the augmented delay
    auto tau_at = [&](double E) {
        return 2.0 * zrp::breit_wigner_delay_addition(gamma, e_res, E);
    };
    const double half = 0.5 * 4.0 / gamma;
    auto solve_half = [&](double lo, double hi) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if ((tau_at(lo) - half) * (tau_at(mid) - half) <= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double fwhm = solve_half(e_res, e_res + 10.0 * gamma) -
                        solve_half(e_res - 10.0 * gamma, e_res);
    const double fwhm_err = std::abs(fwhm - gamma) / gamma;
    report(7, peak_err < 1e-6 && fwhm_err < 1e-6,
           fmt("peak %.10f tau_unit vs 4/Gamma = %.10f (rel %.2e), FWHM %.10f vs Gamma = %.10f "
               "(rel %.2e)",
               peak, 4.0 / gamma, peak_err, fwhm, gamma, fwhm_err));
}

// 8: decoupling at large kR, suppression claim below kR = 1, frozen kR = 1 value
void criterion_8() {
    const double d45 = kPi / 4.0;
    auto ratio_at = [&](double kR, double d0) {
        const double c = std::cos(d0) / std::sin(d0);
        return zrp::cross_section_ratio(zrp::closed_form_cot_eta(2, kR, c), 1.0, d0, 2);
    };
    double far_worst = 0.0;
    for (double kR : {50.0, 60.0, 75.0, 100.0, 200.0})
        for (double d0 : {kPi / 6.0, d45})
            far_worst = std::max(far_worst, std::abs(ratio_at(kR, d0) - 1.0));

    double below_max = 0.0, below_arg = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double kR = i / 1000.0;
        const double r = ratio_at(kR, d45);
        if (r > below_max) {
            below_max = r;
            below_arg = kR;
        }
    }
    const double frozen = ratio_at(1.0, d45);
    const double frozen_err = std::abs(frozen - 0.9518191853311626);

    const bool pass = far_worst < 0.05 && below_max < 1.0 && frozen_err < 1e-9;
    report(8, pass,
           fmt("kR >= 50: worst |ratio-1| = %.4f (tol 0.05); kR <= 1 at 45 deg: max ratio "
               "%.10f at kR = %.4f (must stay < 1); ratio(kR=1, 45 deg) = %.16f vs frozen "
               "0.9518191853311626 (|diff| %.1e)",
               far_worst, below_max, below_arg, frozen, frozen_err));
}

// 9: analytic vs finite-difference delays on the simplex matrix
void criterion_9() {
    double worst = 0.0;
    for (int n : {2, 3, 4}) {
        const auto pc = zrp::phase_curve(zrp::make_simplex(n, 2.479), zrp::carbon_model(), atomic,
                                         zrp::make_energy_grid({0.1, 10.0, 2000, zrp::GridSpacing::Log}));
        const auto an = zrp::time_delay_curve(pc, atomic, zrp::DerivativeMethod::Analytic);
        const auto fd = zrp::time_delay_curve(pc, atomic, zrp::DerivativeMethod::FiniteDifference);
        for (size_t b = 0; b < an.values.size(); ++b)
            for (size_t i = 1; i + 1 < an.energies.size(); ++i)
                worst = std::max(worst, std::abs(an.values[b][i] - fd.values[b][i]) /
                                            std::abs(an.values[b][i]));
    }
    report(9, worst < 1e-3,
           fmt("carbon N in {2,3,4}, interior points: worst relative analytic-vs-FD deviation "
               "%.3e (tol 1e-3)",
               worst));
}

// 10: far-field residual ladder decreases with a power law
void criterion_10() {
    const double R = 2.479;
    const double k = 8.0 * kPi / (5.0 * R); // phase-coherent: kR = 8 pi/5, k r on whole turns
    std::vector<double> theta(3600);
    for (int j = 0; j < 3600; ++j)
        theta[j] = j * 2.0 * kPi / 3600.0;
    const std::vector<double> rr{5.0 * R, 10.0 * R, 20.0 * R, 40.0 * R};
    const auto res = zrp::convergence_diagnostic(k, R, 0.3, rr, theta);
    bool mono = true;
    for (size_t i = 1; i < res.size(); ++i)
        mono = mono && res[i] < res[i - 1];
    // least-squares slope of log(residual) vs log(r/R)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < res.size(); ++i) {
        const double x = std::log(rr[i] / R), y = std::log(res[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(res.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    report(10, mono && slope <= -0.9,
           fmt("residuals %.5f / %.5f / %.5f / %.5f over r/R = 5/10/20/40, monotone: %s, "
               "power-law exponent %.4f (must be <= -0.9)",
               res[0], res[1], res[2], res[3], mono ? "yes" : "no", slope));
}

// 11: meson figures, conditional on an external constants file
void criterion_11() {
#ifdef MESON_CONSTANTS_PATH
    const std::string path = MESON_CONSTANTS_PATH;
#else
    const std::string path;
#endif
    zrp::PhaseModel model;
    try {
        model = zrp::PhaseModel(zrp::io::meson_fit_from_json(zrp::io::load_json_file(path)));
    } catch (const std::exception& e) {
        report_skip(11, fmt("no usable meson constants file (%s)", e.what()));
        return;
    }
    const double R = 2.142;
    const auto grid = zrp::make_energy_grid({100.0, 800.0, 1401, zrp::GridSpacing::Linear});
    bool anti_ok = true, peak_ok = true;
    std::string detail;
    for (int n : {2, 3, 4}) {
        const auto pc = zrp::phase_curve(zrp::make_simplex(n, R), model, meson, grid);
        std::vector<double> dev0(grid.size()), dev1(grid.size());
        for (size_t i = 0; i < grid.size(); ++i) {
            const double d0 = zrp::eval_delta0(model, pc.k_values[i], meson);
            dev0[i] = wrap_half(pc.branches[0][i] - d0);
            dev1[i] = wrap_half(pc.branches[1][i] - d0);
        }
        const double r = pearson(dev0, dev1);
        if (!(r < 0.0))
            anti_ok = false;

        const auto td = zrp::time_delay_curve(pc, meson, zrp::DerivativeMethod::Analytic);
        double tmax = -1e300, emax = 0.0;
        for (const auto& series : td.values)
            for (size_t i = 0; i < grid.size(); ++i)
                if (series[i] > tmax) {
                    tmax = series[i];
                    emax = grid[i];
                }
        if (!(tmax > 0.0 && emax >= 250.0 && emax <= 550.0))
            peak_ok = false;
        detail += fmt("N=%d: pearson %.3f, peak %.1f MeV; ", n, r, emax);
    }
    report(11, anti_ok && peak_ok,
           detail + "antiphase (r < 0) and dominant positive peak in [250, 550] MeV: " +
               ((anti_ok && peak_ok) ? "yes" : "no"));
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("ACCEPTANCE SUMMARY %d failure(s)\n", g_failures);
    return g_failures;
}
