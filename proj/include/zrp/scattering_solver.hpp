#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "zrp/phase_models.hpp"
#include "zrp/target_geometry.hpp"

namespace zrp {

// One value of x = cot(eta) solving the boundary-condition system, with its
// degeneracy and, when available, the mixture coefficients D_j.
struct Root {
    double cot_eta = 0.0;
    bool cot_is_infinite = false; // eta = 0 mod pi; reported as eta_mod_pi = pi
    double eta_mod_pi = 0.0;      // in (0, pi]
    int multiplicity = 1;
    int branch = -1; // lambda label, -1 until classified
    std::optional<Eigen::VectorXd> eigenvector;
};

struct PhaseShiftSet {
    double k = 0.0;
    std::vector<Root> roots; // descending cot_eta (ascending eta), infinities last
    bool used_fallback = false;
    bool labels_by_continuity_only = false;
};

struct SolverOptions {
    double p_condition_floor = 1e-12; // eigenvalue ratio of P triggering fallback
    double cluster_rel_tol = 1e-7;    // |a-b| <= tol*max(1,|a|,|b|) merges roots
    bool force_fallback = false;      // testing knob: always take the det scan
};

inline double eta_from_cot(double cot_eta, bool infinite) {
    if (infinite)
        return std::numbers::pi;
    return std::numbers::pi / 2.0 - std::atan(cot_eta); // (0, pi)
}

// Equal-spacing cluster of identical centers: the N-root set collapses to two
// distinct values,
//   cot eta_0 = (kR cot d0 - (N-1) cos kR) / (kR + (N-1) sin kR)   x1
//   cot eta_1 = (kR cot d0 +       cos kR) / (kR -       sin kR)   x(N-1)
// The denominators are strictly positive for kR > 0, so infinities only
// arrive through cot d0 itself.
inline PhaseShiftSet closed_form_cot_eta(int N, double kR, double cot_delta0) {
    if (N < 2 || N > 4)
        throw std::invalid_argument("closed_form_cot_eta: N must be 2..4");
    if (kR <= 0.0)
        throw std::invalid_argument("closed_form_cot_eta: kR must be positive");
    const double m = static_cast<double>(N - 1);
    const double s = std::sin(kR), c = std::cos(kR);

    PhaseShiftSet out;
    out.k = 0.0; // roots-only result: caller owns the k <-> kR mapping
    const double den0 = kR + m * s;
    const double den1 = kR - s;
    const double x0 = (kR * cot_delta0 - m * c) / den0;
    const double x1 = (kR * cot_delta0 + c) / den1;

    Root r0;
    r0.cot_is_infinite = !std::isfinite(x0) || den0 == 0.0;
    r0.cot_eta = r0.cot_is_infinite ? std::numeric_limits<double>::infinity() : x0;
    r0.eta_mod_pi = eta_from_cot(r0.cot_eta, r0.cot_is_infinite);
    r0.multiplicity = 1;
    r0.branch = 0;
    Eigen::VectorXd v0 = Eigen::VectorXd::Constant(N, 1.0 / std::sqrt(double(N)));
    r0.eigenvector = v0;

    Root r1;
    r1.cot_is_infinite = !std::isfinite(x1) || den1 == 0.0;
    r1.cot_eta = r1.cot_is_infinite ? std::numeric_limits<double>::infinity() : x1;
    r1.eta_mod_pi = eta_from_cot(r1.cot_eta, r1.cot_is_infinite);
    r1.multiplicity = N - 1;
    r1.branch = 1;
    Eigen::VectorXd v1 = Eigen::VectorXd::Zero(N);
    v1(0) = 1.0 / std::numbers::sqrt2;
    v1(1) = -1.0 / std::numbers::sqrt2;
    r1.eigenvector = v1;

    out.roots = {r0, r1};
    std::sort(out.roots.begin(), out.roots.end(), [](const Root& a, const Root& b) {
        if (a.cot_is_infinite != b.cot_is_infinite)
            return b.cot_is_infinite;
        return a.cot_eta > b.cot_eta;
    });
    return out;
}

// Boundary-condition system M(x) D = 0 with x = cot(eta) and M = x P + Q:
//   P_ii = k,            P_ij = sin(k R_ij)/R_ij
//   Q_ii = -k cot d0_i,  Q_ij = cos(k R_ij)/R_ij
// Both matrices are real symmetric; P = k S with S a strictly positive
// definite sinc kernel for distinct centers.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd>
build_system_matrices(const Target& t, double k, const std::vector<double>& cot_delta0_per_center) {
    const int n = t.size();
    if (k <= 0.0)
        throw std::invalid_argument("build_system_matrices: k must be positive");
    if (static_cast<int>(cot_delta0_per_center.size()) != n)
        throw std::invalid_argument("build_system_matrices: one cot delta0 per center required");
    const Eigen::MatrixXd R = distance_matrix(t);
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(cot_delta0_per_center[i]))
            throw std::invalid_argument(
                "build_system_matrices: cot delta0 must be finite (center " + std::to_string(i) +
                "); transparent centers have no generic-system representation");
        P(i, i) = k;
        Q(i, i) = -k * cot_delta0_per_center[i];
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            P(i, j) = std::sin(k * R(i, j)) / R(i, j);
            Q(i, j) = std::cos(k * R(i, j)) / R(i, j);
        }
    }
    return {P, Q};
}

namespace detail {

// Hadamard-style magnitude of det(M): product of row norms. Used to scale
// determinant residuals into a dimensionless quantity.
inline double det_scale(const Eigen::MatrixXd& M) {
    double s = 1.0;
    for (int i = 0; i < M.rows(); ++i)
        s *= std::max(M.row(i).norm(), std::numeric_limits<double>::min());
    return s;
}

inline double scaled_det_residual(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q, double x) {
    const Eigen::MatrixXd M = x * P + Q;
    return std::abs(M.determinant()) / det_scale(M);
}

inline void cluster_roots(std::vector<double>& xs, std::vector<Eigen::VectorXd>& vecs,
                          double rel_tol, std::vector<Root>& out) {
    // xs sorted descending; merge neighbours within the scaled tolerance
    size_t i = 0;
    while (i < xs.size()) {
        size_t j = i + 1;
        double sum = xs[i];
        while (j < xs.size() &&
               std::abs(xs[j] - xs[j - 1]) <=
                   rel_tol * std::max({1.0, std::abs(xs[j]), std::abs(xs[j - 1])})) {
            sum += xs[j];
            ++j;
        }
        Root r;
        r.cot_eta = sum / double(j - i);
        r.cot_is_infinite = false;
        r.eta_mod_pi = eta_from_cot(r.cot_eta, false);
        r.multiplicity = static_cast<int>(j - i);
        if (!vecs.empty())
            r.eigenvector = vecs[i];
        out.push_back(r);
        i = j;
    }
}

// Fallback for ill-conditioned P: reconstruct det(x P + Q) as a degree-N
// polynomial from N+1 samples, then take companion-matrix roots. Leading
// coefficients that vanish correspond to roots at infinity (eta = 0 mod pi).
inline PhaseShiftSet det_scan_fallback(const Eigen::MatrixXd& P, const Eigen::MatrixXd& Q,
                                       double k, const SolverOptions& opts) {
    const int n = static_cast<int>(P.rows());
    const double scale = std::max(1.0, Q.cwiseAbs().maxCoeff() / std::max(P.cwiseAbs().maxCoeff(),
                                                                          1e-300));
    Eigen::VectorXd xs(n + 1), ys(n + 1);
    Eigen::MatrixXd V(n + 1, n + 1);
    for (int s = 0; s <= n; ++s) {
        const double x = scale * (s - n / 2.0);
        xs(s) = x;
        ys(s) = (x * P + Q).determinant();
        double p = 1.0;
        for (int c = 0; c <= n; ++c) {
            V(s, c) = p;
            p *= x;
        }
    }
    Eigen::VectorXd coef = V.fullPivLu().solve(ys); // coef[c] multiplies x^c

    int deg = n;
    const double cmax = coef.cwiseAbs().maxCoeff();
    if (cmax == 0.0)
        throw std::runtime_error("generic_cot_eta: determinant vanishes identically");
    while (deg > 0 && std::abs(coef(deg)) <= 1e-12 * cmax)
        --deg;

    PhaseShiftSet out;
    out.k = k;
    out.used_fallback = true;

    std::vector<double> finite_roots;
    if (deg >= 1) {
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
        for (int i = 1; i < deg; ++i)
            C(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i)
            C(i, deg - 1) = -coef(i) / coef(deg);
        Eigen::EigenSolver<Eigen::MatrixXd> es(C);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("generic_cot_eta: fallback companion eigensolve failed");
        for (int i = 0; i < deg; ++i) {
            const auto z = es.eigenvalues()(i);
            // degenerate roots split into conjugate pairs at the sqrt of the
            // reconstruction noise; collapsing to the real part is legitimate
            // exactly when that real part still zeroes the determinant
            if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z.real())) &&
                scaled_det_residual(P, Q, z.real()) > 1e-8)
                throw std::runtime_error(
                    "generic_cot_eta: fallback found a complex root; det scan cannot "
                    "resolve this pencil (|imag| = " +
                    std::to_string(std::abs(z.imag())) + ")");
            finite_roots.push_back(z.real());
        }
    }
    std::sort(finite_roots.begin(), finite_roots.end(), std::greater<>());
    std::vector<Eigen::VectorXd> no_vecs;
    cluster_roots(finite_roots, no_vecs, opts.cluster_rel_tol, out.roots);

    // null vectors via SVD, one per finite cluster
    for (auto& r : out.roots) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(r.cot_eta * P + Q, Eigen::ComputeFullV);
        r.eigenvector = svd.matrixV().col(n - 1);
    }
    if (deg < n) {
        Root inf_root;
        inf_root.cot_is_infinite = true;
        inf_root.cot_eta = std::numeric_limits<double>::infinity();
        inf_root.eta_mod_pi = std::numbers::pi;
        inf_root.multiplicity = n - deg;
        out.roots.push_back(inf_root);
    }
    return out;
}

} // namespace detail

// All N values of x = cot(eta) with multiplicities, as the generalized
// symmetric eigenproblem Q D = -x P D. Near-degenerate values are clustered;
// an ill-conditioned P switches to the determinant-polynomial fallback.
inline PhaseShiftSet generic_cot_eta(const Target& t, double k,
                                     const std::vector<double>& cot_delta0_per_center,
                                     const SolverOptions& opts = {}) {
    const int n = t.size();
    if (n == 1) {
        PhaseShiftSet out;
        out.k = k;
        if (k <= 0.0)
            throw std::invalid_argument("generic_cot_eta: k must be positive");
        if (cot_delta0_per_center.size() != 1)
            throw std::invalid_argument("generic_cot_eta: one cot delta0 per center required");
        Root r;
        r.cot_eta = cot_delta0_per_center[0];
        r.cot_is_infinite = !std::isfinite(r.cot_eta);
        if (r.cot_is_infinite)
            r.cot_eta = std::numeric_limits<double>::infinity();
        r.eta_mod_pi = eta_from_cot(r.cot_eta, r.cot_is_infinite);
        r.multiplicity = 1;
        r.eigenvector = Eigen::VectorXd::Ones(1);
        out.roots = {r};
        return out;
    }

    auto [P, Q] = build_system_matrices(t, k, cot_delta0_per_center);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esP(P);
    if (esP.info() != Eigen::Success)
        throw std::runtime_error("generic_cot_eta: eigensolve of P failed");
    const double pmin = esP.eigenvalues().minCoeff();
    const double pmax = esP.eigenvalues().maxCoeff();
    if (opts.force_fallback || pmin <= opts.p_condition_floor * std::max(pmax, 0.0))
        return detail::det_scan_fallback(P, Q, k, opts);

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Q, P);
    if (ges.info() != Eigen::Success)
        return detail::det_scan_fallback(P, Q, k, opts);

    // eigenvalues mu ascending, x = -mu descending: already branch order
    std::vector<double> xs(n);
    std::vector<Eigen::VectorXd> vecs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = -ges.eigenvalues()(i);
        vecs[i] = ges.eigenvectors().col(i).normalized();
    }

    PhaseShiftSet out;
    out.k = k;
    detail::cluster_roots(xs, vecs, opts.cluster_rel_tol, out.roots);
    return out;
}

inline double scaled_det_residual(const Target& t, double k,
                                  const std::vector<double>& cot_delta0_per_center, double x) {
    auto [P, Q] = build_system_matrices(t, k, cot_delta0_per_center);
    return detail::scaled_det_residual(P, Q, x);
}

// Continuous per-branch phases over an ascending energy grid.
struct PhaseCurve {
    std::vector<double> energies;
    std::vector<double> k_values;
    std::vector<std::vector<double>> branches; // [branch][grid point], unwrapped
    std::vector<int> multiplicities;           // per branch
    std::vector<int> labels;                   // lambda per branch
    UnitRegime regime;
    PhaseModel model;
    int n_centers = 0;
    double simplex_R = 0.0; // common spacing when the closed form applies, else 0
    bool used_fallback = false;
    bool labels_by_continuity_only = false;
};

struct BranchClassification {
    std::vector<int> labels; // per root, in descending-cot order
    bool by_continuity_only = false;
};

namespace detail {

// representative of eta_mod_pi in (-pi/2, pi/2]
inline double wrap_half(double eta) {
    double e = std::fmod(eta, std::numbers::pi);
    if (e > std::numbers::pi / 2.0)
        e -= std::numbers::pi;
    if (e <= -std::numbers::pi / 2.0)
        e += std::numbers::pi;
    return e;
}

inline std::vector<Root> finite_roots_descending(const PhaseShiftSet& ps) {
    std::vector<Root> r;
    for (const auto& root : ps.roots)
        if (!root.cot_is_infinite)
            r.push_back(root);
    std::sort(r.begin(), r.end(),
              [](const Root& a, const Root& b) { return a.cot_eta > b.cot_eta; });
    return r;
}

} // namespace detail

// Label roots by their low-k scaling: eta ~ k gives lambda = 0, eta ~ k^3
// gives lambda = 1. Ambiguous scaling (generic geometry) falls back to
// labelling in descending-cot order, flagged.
inline BranchClassification classify_branches(const Target& t, const PhaseModel& model,
                                              const UnitRegime& regime,
                                              const SolverOptions& opts = {}) {
    const int n = t.size();
    BranchClassification cls;
    if (n == 1) {
        cls.labels = {0};
        return cls;
    }
    const Eigen::MatrixXd R = distance_matrix(t);
    double rmax = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            rmax = std::max(rmax, R(i, j));

    const double k1 = 1e-3 / rmax;
    const double k2 = k1 / 2.0;
    auto etas_at = [&](double k) {
        const double c = cot_delta0(model, k, regime);
        std::vector<Root> roots;
        if (auto Rcommon = equal_spacing(t)) {
            roots = detail::finite_roots_descending(closed_form_cot_eta(n, k * *Rcommon, c));
        } else {
            roots = detail::finite_roots_descending(
                generic_cot_eta(t, k, std::vector<double>(n, c), opts));
        }
        std::vector<double> etas;
        for (const auto& r : roots)
            for (int m = 0; m < r.multiplicity; ++m)
                etas.push_back(detail::wrap_half(r.eta_mod_pi));
        return etas;
    };
    const auto e1 = etas_at(k1), e2 = etas_at(k2);
    if (e1.size() != e2.size() || e1.empty()) {
        cls.by_continuity_only = true;
    } else {
        for (size_t i = 0; i < e1.size(); ++i) {
            if (e1[i] == 0.0 || e2[i] == 0.0 || e1[i] * e2[i] < 0.0) {
                cls.by_continuity_only = true;
                break;
            }
            const double p = std::log(std::abs(e1[i] / e2[i])) / std::log(k1 / k2);
            if (p < 0.5 || p > 3.5) {
                cls.by_continuity_only = true;
                break;
            }
            cls.labels.push_back(p < 2.0 ? 0 : 1);
        }
    }
    if (cls.by_continuity_only) {
        cls.labels.clear();
        for (int i = 0; i < n; ++i)
            cls.labels.push_back(i);
    }
    return cls;
}

namespace detail {

[[noreturn]] inline void refinement_error(double e_lo, double e_hi, int branch) {
    throw std::runtime_error("phase_curve: grid too coarse for branch " + std::to_string(branch) +
                             " in [" + std::to_string(e_lo) + ", " + std::to_string(e_hi) +
                             "]; observed jump >= pi/2, refine the grid");
}

struct FlatRoots {
    std::vector<double> etas;
    std::vector<Eigen::VectorXd> vecs;
};

inline FlatRoots flatten_roots(const PhaseShiftSet& ps, int n) {
    FlatRoots f;
    for (const auto& r : finite_roots_descending(ps))
        for (int m = 0; m < r.multiplicity; ++m) {
            f.etas.push_back(r.eta_mod_pi);
            f.vecs.push_back(r.eigenvector ? *r.eigenvector : Eigen::VectorXd::Zero(n));
        }
    for (const auto& r : ps.roots)
        if (r.cot_is_infinite)
            for (int m = 0; m < r.multiplicity; ++m) {
                f.etas.push_back(r.eta_mod_pi);
                f.vecs.push_back(Eigen::VectorXd::Zero(n));
            }
    return f;
}

// Greedy reorder of the current roots so that slot b keeps the physical
// branch tracked by prev[b] (largest eigenvector overlap wins).
inline void match_by_overlap(const std::vector<Eigen::VectorXd>& prev, FlatRoots& cur) {
    const int nb = static_cast<int>(prev.size());
    std::vector<int> assign(nb, -1);
    std::vector<bool> taken(nb, false);
    for (int b = 0; b < nb; ++b) {
        int best = -1;
        double best_ov = -1.0;
        for (int j = 0; j < nb; ++j) {
            if (taken[j])
                continue;
            const double ov = (prev[b].size() && cur.vecs[j].size())
                                  ? std::abs(prev[b].dot(cur.vecs[j]))
                                  : 0.0;
            if (ov > best_ov) {
                best_ov = ov;
                best = j;
            }
        }
        assign[b] = best;
        taken[best] = true;
    }
    FlatRoots reord;
    reord.etas.resize(nb);
    reord.vecs.resize(nb);
    for (int b = 0; b < nb; ++b) {
        reord.etas[b] = cur.etas[assign[b]];
        reord.vecs[b] = cur.vecs[assign[b]];
    }
    cur = std::move(reord);
}

} // namespace detail

// Continuous eta_lambda(E). Closed forms are used for equal-spacing targets,
// the generic eigensolver otherwise; each branch is unwrapped by the multiple
// of pi minimizing the jump, anchored at the first grid point into
// (-pi/2, pi/2].
inline PhaseCurve phase_curve(const Target& t, const PhaseModel& model, const UnitRegime& regime,
                              const std::vector<double>& energy_grid,
                              const SolverOptions& opts = {}) {
    if (energy_grid.size() < 2)
        throw std::invalid_argument("phase_curve: grid needs at least two points");
    if (energy_grid.front() <= 0.0)
        throw std::invalid_argument("phase_curve: grid must start above threshold");
    if (!std::is_sorted(energy_grid.begin(), energy_grid.end()))
        throw std::invalid_argument("phase_curve: grid must ascend");

    const int n = t.size();
    PhaseCurve pc;
    pc.regime = regime;
    pc.model = model;
    pc.n_centers = n;
    pc.energies = energy_grid;
    pc.k_values.reserve(energy_grid.size());
    for (double E : energy_grid)
        pc.k_values.push_back(momentum_from_energy(regime, E));

    const auto spacing = (n >= 2) ? equal_spacing(t) : std::nullopt;
    if (spacing)
        pc.simplex_R = *spacing;

    if (n == 1) {
        pc.multiplicities = {1};
        pc.labels = {0};
        std::vector<double> eta;
        eta.reserve(pc.k_values.size());
        for (size_t i = 0; i < pc.k_values.size(); ++i) {
            const double c = cot_delta0(model, pc.k_values[i], regime);
            const bool inf = !std::isfinite(c);
            double e = eta_from_cot(inf ? std::numeric_limits<double>::infinity() : c, inf);
            if (i == 0)
                e = detail::wrap_half(e);
            else
                e += std::numbers::pi * std::round((eta.back() - e) / std::numbers::pi);
            if (i > 0 && std::abs(e - eta.back()) >= std::numbers::pi / 2.0)
                detail::refinement_error(pc.energies[i - 1], pc.energies[i], 0);
            eta.push_back(e);
        }
        pc.branches = {std::move(eta)};
        return pc;
    }

    int n_branches;
    std::vector<int> labels;
    if (spacing) {
        n_branches = 2;
        labels = {0, 1};
        pc.multiplicities = {1, n - 1};
    } else {
        auto cls = classify_branches(t, model, regime, opts);
        pc.labels_by_continuity_only = cls.by_continuity_only;
        n_branches = n;
        labels = cls.labels;
        pc.multiplicities.assign(n, 1);
    }
    pc.labels = labels;
    pc.branches.assign(n_branches, {});

    // Generic targets: carry branch identity from the classification point up
    // to the grid start with a geometric k-ladder, then along the grid.
    std::vector<Eigen::VectorXd> prev_vecs;
    if (!spacing) {
        const Eigen::MatrixXd R = distance_matrix(t);
        double rmax = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                rmax = std::max(rmax, R(i, j));
        double k = 1e-3 / rmax;
        const double k_first = pc.k_values.front();
        while (k < k_first) {
            const double c = cot_delta0(model, k, regime);
            auto flat = detail::flatten_roots(generic_cot_eta(t, k, std::vector<double>(n, c), opts), n);
            if (static_cast<int>(flat.etas.size()) == n_branches) {
                if (!prev_vecs.empty())
                    detail::match_by_overlap(prev_vecs, flat);
                prev_vecs = std::move(flat.vecs);
            }
            k *= 1.25;
        }
    }

    for (size_t i = 0; i < pc.k_values.size(); ++i) {
        const double k = pc.k_values[i];
        const double c = cot_delta0(model, k, regime);
        std::vector<double> etas(n_branches);

        if (spacing) {
            const bool inf = !std::isfinite(c);
            if (inf) {
                etas[0] = etas[1] = std::numbers::pi;
            } else {
                const auto ps = closed_form_cot_eta(n, k * *spacing, c);
                for (const auto& r : ps.roots)
                    etas[r.branch] = r.eta_mod_pi;
            }
        } else {
            auto ps = generic_cot_eta(t, k, std::vector<double>(n, c), opts);
            pc.used_fallback = pc.used_fallback || ps.used_fallback;
            auto flat = detail::flatten_roots(ps, n);
            if (static_cast<int>(flat.etas.size()) != n_branches)
                throw std::runtime_error("phase_curve: root count changed along the grid");
            if (!prev_vecs.empty())
                detail::match_by_overlap(prev_vecs, flat);
            etas = flat.etas;
            prev_vecs = std::move(flat.vecs);
        }

        for (int b = 0; b < n_branches; ++b) {
            double e = etas[b];
            if (i == 0)
                e = detail::wrap_half(e);
            else {
                const double prev = pc.branches[b].back();
                e += std::numbers::pi * std::round((prev - e) / std::numbers::pi);
                if (std::abs(e - prev) >= std::numbers::pi / 2.0)
                    detail::refinement_error(pc.energies[i - 1], pc.energies[i], pc.labels[b]);
            }
            pc.branches[b].push_back(e);
        }
    }
    return pc;
}

} // namespace zrp
