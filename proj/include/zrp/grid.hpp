#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace zrp {

enum class GridSpacing { Linear, Log };

struct GridSpec {
    double e_min = 0.0;
    double e_max = 0.0;
    int points = 2000;
    GridSpacing spacing = GridSpacing::Log;

    void validate() const {
        if (!(e_min > 0.0))
            throw std::invalid_argument("grid: e_min must be > 0 (threshold excluded)");
        if (!(e_min < e_max))
            throw std::invalid_argument("grid: e_min must be < e_max");
        if (points < 2)
            throw std::invalid_argument("grid: needs at least 2 points");
    }
};

inline std::vector<double> make_energy_grid(const GridSpec& g) {
    g.validate();
    std::vector<double> E(g.points);
    if (g.spacing == GridSpacing::Linear) {
        const double h = (g.e_max - g.e_min) / (g.points - 1);
        for (int i = 0; i < g.points; ++i)
            E[i] = g.e_min + h * i;
    } else {
        const double l0 = std::log(g.e_min);
        const double h = (std::log(g.e_max) - l0) / (g.points - 1);
        for (int i = 0; i < g.points; ++i)
            E[i] = std::exp(l0 + h * i);
    }
    E.front() = g.e_min;
    E.back() = g.e_max;
    return E;
}

// "min:max:points[:log|:linear]"
inline GridSpec parse_grid_spec(const std::string& s) {
    GridSpec g;
    g.spacing = GridSpacing::Linear;
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
        const size_t c = s.find(':', pos);
        parts.push_back(s.substr(pos, c == std::string::npos ? c : c - pos));
        if (c == std::string::npos)
            break;
        pos = c + 1;
    }
    if (parts.size() < 3 || parts.size() > 4)
        throw std::invalid_argument("grid spec must be min:max:points[:log|:linear], got '" + s +
                                    "'");
    try {
        g.e_min = std::stod(parts[0]);
        g.e_max = std::stod(parts[1]);
        g.points = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid spec has non-numeric fields: '" + s + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log")
            g.spacing = GridSpacing::Log;
        else if (parts[3] == "linear")
            g.spacing = GridSpacing::Linear;
        else
            throw std::invalid_argument("grid spacing must be 'log' or 'linear', got '" +
                                        parts[3] + "'");
    }
    g.validate();
    return g;
}

} // namespace zrp
