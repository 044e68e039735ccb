#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace zrp {

// Interference profile of two spherical Huygens waves emitted by centers at
// +-R/2, observed on a circle of radius r around the target center:
//   J(theta) = sin(k r1 + delta0)/(k r1) + sin(k r2 + delta0)/(k r2)
//   r_{1,2}^2 = R^2/4 + r^2 -+ R r cos(theta)
struct DiffractionProfile {
    std::vector<double> theta;
    std::vector<double> J;
    double r = 0.0;
    double R = 0.0;
    double k = 0.0;
    double delta0 = 0.0;
};

inline DiffractionProfile huygens_profile(double k, double R, double delta0, double r,
                                          const std::vector<double>& theta_grid) {
    if (k <= 0.0)
        throw std::domain_error("huygens_profile: k must be positive");
    if (r <= R / 2.0)
        throw std::domain_error(
            "huygens_profile: observation radius must exceed R/2 (outside the segment "
            "joining the centers)");
    DiffractionProfile p;
    p.theta = theta_grid;
    p.r = r;
    p.R = R;
    p.k = k;
    p.delta0 = delta0;
    p.J.reserve(theta_grid.size());
    const double quarter = R * R / 4.0;
    for (double th : theta_grid) {
        const double proj = R * r * std::cos(th);
        const double r1 = std::sqrt(quarter + r * r - proj);
        const double r2 = std::sqrt(quarter + r * r + proj);
        p.J.push_back(std::sin(k * r1 + delta0) / (k * r1) + std::sin(k * r2 + delta0) / (k * r2));
    }
    return p;
}

// Angular factor of the far-field partial wave: cos((kR/2) cos theta) for
// lambda = 0, sin((kR/2) cos theta) for lambda = 1.
inline double far_field_envelope(double k, double R, int lambda, double theta) {
    if (lambda != 0 && lambda != 1)
        throw std::invalid_argument("far_field_envelope: lambda must be 0 or 1");
    const double a = 0.5 * k * R * std::cos(theta);
    return lambda == 0 ? std::cos(a) : std::sin(a);
}

// Radial factor sin(kr + eta + lambda*pi/2) / r of the same partial wave.
inline double far_field_radial(double k, double r, double eta, int lambda) {
    if (lambda != 0 && lambda != 1)
        throw std::invalid_argument("far_field_radial: lambda must be 0 or 1");
    return std::sin(k * r + eta + lambda * std::numbers::pi / 2.0) / r;
}

// Full far-field amplitude at (r, theta) for one branch.
inline double far_field_amplitude(double k, double R, double eta, int lambda, double r,
                                  double theta) {
    return far_field_envelope(k, R, lambda, theta) * far_field_radial(k, r, eta, lambda);
}

// Scaled deviation of J from the centered single-wave form
//   (2/kr) cos((kR/2) cos theta) sin(kr + delta0),
// max over theta, times kr/2. Decays like R/r as the Huygens crests merge
// into centered spherical crests.
inline std::vector<double> convergence_diagnostic(double k, double R, double delta0,
                                                  const std::vector<double>& r_list,
                                                  const std::vector<double>& theta_grid) {
    if (!std::is_sorted(r_list.begin(), r_list.end()))
        throw std::invalid_argument("convergence_diagnostic: r_list must ascend");
    std::vector<double> residuals;
    residuals.reserve(r_list.size());
    for (double r : r_list) {
        if (r <= R)
            throw std::invalid_argument("convergence_diagnostic: every r must exceed R");
        const auto prof = huygens_profile(k, R, delta0, r, theta_grid);
        double worst = 0.0;
        for (size_t i = 0; i < theta_grid.size(); ++i) {
            const double ff = 2.0 / (k * r) * std::cos(0.5 * k * R * std::cos(theta_grid[i])) *
                              std::sin(k * r + delta0);
            worst = std::max(worst, std::abs(prof.J[i] - ff));
        }
        residuals.push_back(worst * 0.5 * k * r);
    }
    return residuals;
}

} // namespace zrp
