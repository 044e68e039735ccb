#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zrp {

// Cluster of zero-range scattering centers. Coordinates are in the length
// unit of the active regime (bohr for electrons, fm for mesons).
struct Target {
    std::vector<Eigen::Vector3d> centers;
    std::string length_unit = "au";

    int size() const { return static_cast<int>(centers.size()); }
};

inline Eigen::MatrixXd distance_matrix(const Target& t) {
    const int n = t.size();
    if (n < 1)
        throw std::invalid_argument("distance_matrix: target has no centers");
    Eigen::MatrixXd R = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double d = (t.centers[i] - t.centers[j]).norm();
            if (d <= 0.0)
                throw std::invalid_argument("distance_matrix: coincident centers " +
                                            std::to_string(i) + " and " + std::to_string(j));
            R(i, j) = R(j, i) = d;
        }
    }
    return R;
}

// Common center-to-center distance if all pairwise distances agree to
// rel_tol, otherwise empty. Requires N >= 2.
inline std::optional<double> equal_spacing(const Target& t, double rel_tol = 1e-9) {
    const int n = t.size();
    if (n < 2)
        throw std::invalid_argument("equal_spacing: needs at least two centers");
    const Eigen::MatrixXd R = distance_matrix(t);
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            sum += R(i, j);
            ++count;
        }
    const double mean = sum / count;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(R(i, j) - mean) > rel_tol * mean)
                return std::nullopt;
    return mean;
}

// Canonical equal-spacing cluster with centroid at the origin:
// N=1 point, N=2 segment, N=3 equilateral triangle, N=4 regular tetrahedron.
// Equal pairwise spacing is impossible for N > 4 in three dimensions.
inline Target make_simplex(int n, double R, std::string length_unit = "au") {
    if (n < 1 || n > 4)
        throw std::invalid_argument("make_simplex: N must be in 1..4, got " + std::to_string(n));
    if (n >= 2 && R <= 0.0)
        throw std::invalid_argument("make_simplex: R must be positive");
    Target t;
    t.length_unit = std::move(length_unit);
    switch (n) {
    case 1:
        t.centers = {{0.0, 0.0, 0.0}};
        break;
    case 2:
        t.centers = {{0.0, 0.0, R / 2.0}, {0.0, 0.0, -R / 2.0}};
        break;
    case 3: {
        const double rc = R / std::sqrt(3.0); // circumradius
        for (int j = 0; j < 3; ++j) {
            const double a = 2.0 * std::numbers::pi * j / 3.0;
            t.centers.push_back({rc * std::cos(a), rc * std::sin(a), 0.0});
        }
        break;
    }
    case 4: {
        const double s = R / (2.0 * std::sqrt(2.0));
        t.centers = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
        break;
    }
    }
    return t;
}

} // namespace zrp
