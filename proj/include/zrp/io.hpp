#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zrp/grid.hpp"
#include "zrp/phase_models.hpp"
#include "zrp/target_geometry.hpp"

namespace zrp::io {

using json = nlohmann::ordered_json;

// full round-trip precision, C locale decimal point
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct CsvColumn {
    std::string name;
    const std::vector<double>* data;
};

inline void write_csv(std::ostream& os, const Metadata& meta,
                      const std::vector<CsvColumn>& columns) {
    if (columns.empty())
        throw std::invalid_argument("write_csv: no columns");
    const size_t rows = columns.front().data->size();
    for (const auto& c : columns)
        if (c.data->size() != rows)
            throw std::invalid_argument("write_csv: column '" + c.name + "' length mismatch");
    for (const auto& [k, v] : meta)
        os << "# " << k << ": " << v << "\n";
    for (size_t c = 0; c < columns.size(); ++c)
        os << (c ? "," : "") << columns[c].name;
    os << "\n";
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c)
            os << (c ? "," : "") << format_g17((*columns[c].data)[r]);
        os << "\n";
    }
}

inline void write_json(std::ostream& os, const Metadata& meta,
                       const std::vector<CsvColumn>& columns) {
    json j;
    json m = json::object();
    for (const auto& [k, v] : meta)
        m[k] = v;
    j["metadata"] = std::move(m);
    json cols = json::object();
    for (const auto& c : columns)
        cols[c.name] = *c.data;
    j["columns"] = std::move(cols);
    os << j.dump(2) << "\n";
}

inline void write_table_file(const std::string& path, const Metadata& meta,
                             const std::vector<CsvColumn>& columns, const std::string& format) {
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open output file '" + path + "'");
    if (format == "csv")
        write_csv(os, meta, columns);
    else if (format == "json")
        write_json(os, meta, columns);
    else
        throw std::invalid_argument("format must be 'csv' or 'json', got '" + format + "'");
    if (!os)
        throw std::runtime_error("failed writing output file '" + path + "'");
}

inline json load_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open '" + path + "'");
    try {
        return json::parse(is);
    } catch (const std::exception& e) {
        throw std::runtime_error("invalid JSON in '" + path + "': " + e.what());
    }
}

inline double require_number(const json& j, const std::string& field, const std::string& what) {
    if (!j.contains(field))
        throw std::runtime_error(what + ": missing field '" + field + "'");
    if (!j[field].is_number())
        throw std::runtime_error(what + ": field '" + field + "' must be a number");
    return j[field].get<double>();
}

// {"centers": [[x,y,z], ...], "length_unit": "au"|"fm"}
// or {"simplex": {"n": N, "r": R}, "length_unit": ...}
inline Target target_from_json(const json& j) {
    Target t;
    if (j.contains("length_unit"))
        t.length_unit = j["length_unit"].get<std::string>();
    if (j.contains("simplex")) {
        const auto& s = j["simplex"];
        const int n = static_cast<int>(require_number(s, "n", "target simplex"));
        const double r = (n >= 2) ? require_number(s, "r", "target simplex") : 0.0;
        auto made = make_simplex(n, r, t.length_unit);
        t.centers = std::move(made.centers);
        return t;
    }
    if (!j.contains("centers"))
        throw std::runtime_error("target: needs either 'centers' or 'simplex'");
    for (const auto& c : j["centers"]) {
        if (!c.is_array() || c.size() != 3)
            throw std::runtime_error("target: each center must be [x, y, z]");
        t.centers.push_back({c[0].get<double>(), c[1].get<double>(), c[2].get<double>()});
    }
    if (t.centers.empty())
        throw std::runtime_error("target: 'centers' is empty");
    return t;
}

// {"b":..., "f":..., "d":..., "x":..., "gamma0_MeV":..., "omega0_MeV":..., "q0_MeV_c":...}
inline MesonFitPhase meson_fit_from_json(const json& j) {
    MesonFitPhase m;
    m.b = require_number(j, "b", "meson constants");
    m.f = require_number(j, "f", "meson constants");
    m.d = require_number(j, "d", "meson constants");
    m.x = require_number(j, "x", "meson constants");
    m.gamma0 = require_number(j, "gamma0_MeV", "meson constants");
    m.omega0 = require_number(j, "omega0_MeV", "meson constants");
    m.q0 = require_number(j, "q0_MeV_c", "meson constants");
    m.validate();
    return m;
}

struct ModelSpec {
    PhaseModel model;
    UnitRegime regime;
    std::string description;
};

inline ModelSpec model_from_json(const json& j);

// Accepted forms: "carbon", "constant:<value>[deg]", "linear:<offset>:<slope>",
// or a path to a JSON file (meson constants or a full model object).
inline ModelSpec model_from_spec(const std::string& spec) {
    if (spec == "carbon") {
        return {carbon_model(), UnitRegime::atomic_electron(),
                "linear(offset=2*pi, slope=-1.912)"};
    }
    if (spec.rfind("constant:", 0) == 0) {
        std::string v = spec.substr(9);
        double val;
        bool deg = false;
        if (v.size() > 3 && v.substr(v.size() - 3) == "deg") {
            deg = true;
            v = v.substr(0, v.size() - 3);
        }
        try {
            val = std::stod(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("constant model needs a numeric value, got '" + spec +
                                        "'");
        }
        const double rad = deg ? val * std::numbers::pi / 180.0 : val;
        std::ostringstream d;
        d << "constant(delta0=" << rad << " rad)";
        return {PhaseModel(ConstantPhase{rad}), UnitRegime::relativistic_meson(), d.str()};
    }
    if (spec.rfind("linear:", 0) == 0) {
        const auto rest = spec.substr(7);
        const auto c = rest.find(':');
        if (c == std::string::npos)
            throw std::invalid_argument("linear model needs 'linear:<offset>:<slope>'");
        double off, sl;
        try {
            off = std::stod(rest.substr(0, c));
            sl = std::stod(rest.substr(c + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("linear model needs numeric offset and slope, got '" +
                                        spec + "'");
        }
        std::ostringstream d;
        d << "linear(offset=" << off << ", slope=" << sl << ")";
        return {PhaseModel(LinearPhase{off, sl}), UnitRegime::atomic_electron(), d.str()};
    }
    return model_from_json(load_json_file(spec));
}

inline ModelSpec model_from_json(const json& j) {
    // bare constants file -> meson fit
    if (j.contains("b") && j.contains("gamma0_MeV")) {
        return {PhaseModel(meson_fit_from_json(j)), UnitRegime::relativistic_meson(),
                "meson_fit(external constants)"};
    }
    if (!j.contains("type"))
        throw std::runtime_error("model JSON needs a 'type' field or meson-constants fields");
    const std::string type = j["type"].get<std::string>();
    if (type == "linear") {
        const double off = require_number(j, "offset_rad", "linear model");
        const double sl = require_number(j, "slope", "linear model");
        std::ostringstream d;
        d << "linear(offset=" << off << ", slope=" << sl << ")";
        return {PhaseModel(LinearPhase{off, sl}), UnitRegime::atomic_electron(), d.str()};
    }
    if (type == "constant") {
        const double rad = require_number(j, "delta0_rad", "constant model");
        std::ostringstream d;
        d << "constant(delta0=" << rad << " rad)";
        return {PhaseModel(ConstantPhase{rad}), UnitRegime::relativistic_meson(), d.str()};
    }
    if (type == "meson_fit") {
        return {PhaseModel(meson_fit_from_json(j)), UnitRegime::relativistic_meson(),
                "meson_fit(inline constants)"};
    }
    if (type == "with_resonance") {
        if (!j.contains("base"))
            throw std::runtime_error("with_resonance model: missing field 'base'");
        auto base = model_from_json(j["base"]);
        const double gamma = require_number(j, "gamma", "with_resonance model");
        const double e_res = require_number(j, "e_res", "with_resonance model");
        std::ostringstream d;
        d << "with_resonance(base=" << base.description << ", gamma=" << gamma
          << ", e_res=" << e_res << ")";
        return {PhaseModel::with_resonance(std::move(base.model), gamma, e_res), base.regime,
                d.str()};
    }
    throw std::runtime_error("unknown model type '" + type + "'");
}

inline UnitRegime regime_from_name(const std::string& name) {
    if (name == "atomic" || name == "electron" || name == "au")
        return UnitRegime::atomic_electron();
    if (name == "meson" || name == "nuclear" || name == "fm")
        return UnitRegime::relativistic_meson();
    throw std::invalid_argument("regime must be 'atomic' or 'meson', got '" + name + "'");
}

} // namespace zrp::io
