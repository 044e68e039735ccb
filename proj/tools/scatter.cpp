// scatter: phase shifts, cross sections, time delays and diffraction
// profiles for a particle scattered by a cluster of zero-range potentials.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <zrp/zrp.hpp>

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonFlags {
    std::string config_path;
    int simplex_n = 2;
    double simplex_r = 2.479;
    std::string model = "carbon";
    std::string grid = "0.05:10:2000";
    std::string out;
    std::string format = "csv";

    bool simplex_set = false, r_set = false, model_set = false, grid_set = false;
    bool format_set = false;
};

void add_common(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--config", f.config_path, "JSON run configuration file");
    sub->add_option("--simplex", f.simplex_n, "number of centers N (regular simplex target, 1..4)")
        ->check(CLI::Range(1, 4));
    sub->add_option("--r", f.simplex_r, "simplex edge length R");
    sub->add_option("--model", f.model,
                    "phase model: carbon | constant:<v>[deg] | linear:<off>:<slope> | <json path>");
    sub->add_option("--grid", f.grid, "energy grid min:max:points[:log|:linear]");
    sub->add_option("--out", f.out, "output file (reproduce: basename for multi-file figures)");
    sub->add_option("--format", f.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

void note_explicit(const CLI::App* sub, CommonFlags& f) {
    f.simplex_set = sub->count("--simplex") > 0;
    f.r_set = sub->count("--r") > 0;
    f.model_set = sub->count("--model") > 0;
    f.grid_set = sub->count("--grid") > 0;
    f.format_set = sub->count("--format") > 0;
}

struct Resolved {
    zrp::Target target;
    zrp::PhaseModel model;
    zrp::UnitRegime regime;
    zrp::GridSpec grid;
    std::string out;
    std::string format = "csv";
    std::vector<std::string> outputs; // from config, may be empty
    std::string target_desc;
    std::string model_desc;
};

zrp::GridSpec grid_from_json(const zrp::io::json& j) {
    if (j.is_string())
        return zrp::parse_grid_spec(j.get<std::string>());
    zrp::GridSpec g;
    g.e_min = zrp::io::require_number(j, "e_min", "grid");
    g.e_max = zrp::io::require_number(j, "e_max", "grid");
    g.points = static_cast<int>(zrp::io::require_number(j, "points", "grid"));
    if (j.contains("spacing")) {
        const std::string s = j["spacing"].get<std::string>();
        if (s == "linear")
            g.spacing = zrp::GridSpacing::Linear;
        else if (s == "log")
            g.spacing = zrp::GridSpacing::Log;
        else
            throw std::runtime_error("grid: spacing must be 'linear' or 'log', got '" + s + "'");
    } else {
        g.spacing = zrp::GridSpacing::Linear;
    }
    return g;
}

std::string describe_target(const zrp::Target& t, std::optional<double> simplex_r) {
    std::ostringstream d;
    if (simplex_r)
        d << "simplex(n=" << t.size() << ", r=" << *simplex_r << " " << t.length_unit << ")";
    else
        d << "explicit(" << t.size() << " centers, " << t.length_unit << ")";
    return d.str();
}

Resolved resolve(const CommonFlags& f) {
    Resolved r;
    std::optional<double> simplex_r;

    // defaults, then config file, then explicit flags
    zrp::io::ModelSpec ms{zrp::carbon_model(), zrp::UnitRegime::atomic_electron(),
                          "linear(offset=2*pi, slope=-1.912)"};
    r.grid = zrp::parse_grid_spec(f.grid);
    bool target_from_config = false;

    if (!f.config_path.empty()) {
        const auto cfg = zrp::io::load_json_file(f.config_path);
        if (cfg.contains("target")) {
            r.target = zrp::io::target_from_json(cfg["target"]);
            target_from_config = true;
            if (cfg["target"].contains("simplex") && cfg["target"]["simplex"].contains("r"))
                simplex_r = cfg["target"]["simplex"]["r"].get<double>();
        }
        if (cfg.contains("model")) {
            ms = cfg["model"].is_string()
                     ? zrp::io::model_from_spec(cfg["model"].get<std::string>())
                     : zrp::io::model_from_json(cfg["model"]);
        }
        if (cfg.contains("regime"))
            ms.regime = zrp::io::regime_from_name(cfg["regime"].get<std::string>());
        if (cfg.contains("grid"))
            r.grid = grid_from_json(cfg["grid"]);
        if (cfg.contains("output_path"))
            r.out = cfg["output_path"].get<std::string>();
        if (cfg.contains("format"))
            r.format = cfg["format"].get<std::string>();
        if (cfg.contains("outputs")) {
            for (const auto& o : cfg["outputs"]) {
                const std::string name = o.get<std::string>();
                if (name != "phases" && name != "cross-section" && name != "time-delay")
                    throw std::runtime_error("config field 'outputs': unknown observable '" +
                                             name + "'");
                r.outputs.push_back(name);
            }
        }
    }

    if (f.model_set)
        ms = zrp::io::model_from_spec(f.model);
    if (f.grid_set)
        r.grid = zrp::parse_grid_spec(f.grid);
    if (!f.out.empty())
        r.out = f.out;
    if (f.format_set || f.config_path.empty())
        r.format = f.format;
    if (r.format != "csv" && r.format != "json")
        throw std::runtime_error("config field 'format': must be 'csv' or 'json', got '" +
                                 r.format + "'");

    if (!target_from_config || f.simplex_set || f.r_set) {
        r.target = zrp::make_simplex(f.simplex_n, f.simplex_n >= 2 ? f.simplex_r : 0.0,
                                     ms.regime.length_unit());
        simplex_r = f.simplex_n >= 2 ? std::optional<double>(f.simplex_r) : std::nullopt;
    }
    r.target.length_unit = ms.regime.length_unit();

    r.model = std::move(ms.model);
    r.regime = ms.regime;
    r.model_desc = ms.description;
    r.target_desc = describe_target(r.target, simplex_r);
    return r;
}

std::string default_out(const std::string& stem, const std::string& format) {
    return stem + (format == "json" ? ".json" : ".csv");
}

// append the format extension unless the name already carries one
std::string ensure_ext(const std::string& name, const std::string& format) {
    const auto dot = name.find_last_of('.');
    const auto slash = name.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return name;
    return default_out(name, format);
}

// eta_0, eta_1, with _m<multiplicity> only when degenerate; letter suffix
// disambiguates repeated labels on generic targets
std::vector<std::string> series_names(const std::string& prefix, const std::vector<int>& labels,
                                      const std::vector<int>& mults) {
    std::map<int, int> label_count, seen;
    for (int l : labels)
        ++label_count[l];
    std::vector<std::string> names;
    for (size_t i = 0; i < labels.size(); ++i) {
        std::string n = prefix + "_" + std::to_string(labels[i]);
        if (i < mults.size() && mults[i] > 1)
            n += "_m" + std::to_string(mults[i]);
        if (label_count[labels[i]] > 1)
            n += std::string(1, static_cast<char>('a' + seen[labels[i]]++));
        names.push_back(std::move(n));
    }
    return names;
}

std::string int_list(const std::vector<int>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    return os.str();
}

zrp::io::Metadata base_metadata(const std::string& subcommand, const Resolved& r) {
    zrp::io::Metadata m;
    m.push_back({"tool", std::string("scatter ") + kVersion});
    m.push_back({"subcommand", subcommand});
    m.push_back({"target", r.target_desc});
    m.push_back({"model", r.model_desc});
    m.push_back({"regime", r.regime.kind == zrp::Regime::AtomicElectron ? "atomic" : "meson"});
    m.push_back({"energy_unit", r.regime.energy_unit()});
    m.push_back({"length_unit", r.regime.length_unit()});
    std::ostringstream g;
    g << r.grid.e_min << ":" << r.grid.e_max << ":" << r.grid.points
      << (r.grid.spacing == zrp::GridSpacing::Log ? ":log" : ":linear");
    m.push_back({"grid", g.str()});
    return m;
}

void write_phase_curve(const Resolved& r, const zrp::PhaseCurve& pc, const std::string& out) {
    auto meta = base_metadata("phases", r);
    meta.push_back({"branch_labels", int_list(pc.labels)});
    meta.push_back({"multiplicities", int_list(pc.multiplicities)});
    if (pc.labels_by_continuity_only)
        meta.push_back({"note", "branch labels by continuity only (low-k scaling inconclusive)"});
    std::vector<zrp::io::CsvColumn> cols{{"E", &pc.energies}, {"k", &pc.k_values}};
    const auto names = series_names("eta", pc.labels, pc.multiplicities);
    for (size_t i = 0; i < pc.branches.size(); ++i)
        cols.push_back({names[i], &pc.branches[i]});
    zrp::io::write_table_file(out, meta, cols, r.format);
}

void write_observable(const std::string& subcommand, const Resolved& r, const zrp::PhaseCurve& pc,
                      const zrp::ObservableCurve& oc, const std::string& out,
                      const zrp::io::Metadata& extra = {}) {
    auto meta = base_metadata(subcommand, r);
    for (const auto& kv : extra)
        meta.push_back(kv);
    std::vector<zrp::io::CsvColumn> cols{{"E", &oc.energies}, {"k", &pc.k_values}};
    if (oc.kind == zrp::CurveKind::TimeDelay) {
        meta.push_back({"branch_labels", int_list(oc.labels)});
        meta.push_back({"multiplicities", int_list(oc.multiplicities)});
        meta.push_back({"tau_unit", r.regime.tau_unit_name()});
        meta.push_back({"tau_unit_seconds", zrp::io::format_g17(r.regime.tau_unit_seconds)});
        const auto names = series_names("tau", oc.labels, oc.multiplicities);
        for (size_t i = 0; i < oc.values.size(); ++i)
            cols.push_back({names[i], &oc.values[i]});
    } else {
        cols.push_back({oc.kind == zrp::CurveKind::CrossSection ? "sigma_bar" : "ratio",
                        &oc.values[0]});
    }
    zrp::io::write_table_file(out, meta, cols, r.format);
}

std::string stem_plus(const std::string& out, const std::string& suffix,
                      const std::string& format) {
    const auto dot = out.find_last_of('.');
    const auto slash = out.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + suffix + default_out("", format);
    return out.substr(0, dot) + suffix + out.substr(dot);
}

int run_scan(const std::string& subcommand, const CommonFlags& f, zrp::DerivativeMethod method,
             bool ratio) {
    Resolved r = resolve(f);
    const auto grid = zrp::make_energy_grid(r.grid);
    const auto pc = zrp::phase_curve(r.target, r.model, r.regime, grid);

    // config may request additional observables alongside the subcommand's own
    std::vector<std::string> wanted = r.outputs;
    if (std::find(wanted.begin(), wanted.end(), subcommand) == wanted.end())
        wanted.insert(wanted.begin(), subcommand);

    const std::string primary_out = r.out.empty() ? default_out(subcommand, r.format) : r.out;
    for (const auto& w : wanted) {
        std::string out = (w == subcommand) ? primary_out : stem_plus(primary_out, "_" + w,
                                                                      r.format);
        if (w == "phases") {
            write_phase_curve(r, pc, out);
        } else if (w == "cross-section") {
            const auto oc = ratio ? zrp::cross_section_ratio_curve(pc)
                                  : zrp::cross_section_curve(pc);
            write_observable(w, r, pc, oc, out);
        } else { // time-delay
            const auto oc = zrp::time_delay_curve(pc, r.regime, method);
            zrp::io::Metadata extra{
                {"method",
                 method == zrp::DerivativeMethod::Analytic ? "analytic" : "finite-difference"}};
            write_observable(w, r, pc, oc, out, extra);
        }
        std::cout << out << "\n";
    }
    return 0;
}

int run_diffraction(const CommonFlags& f, double k, std::vector<double> robs, int theta_points) {
    Resolved r = resolve(f);
    if (robs.empty())
        throw std::runtime_error("diffraction: at least one --robs observation radius required");
    std::sort(robs.begin(), robs.end());
    const double R = (r.target.size() == 2)
                         ? zrp::distance_matrix(r.target)(0, 1)
                         : throw std::runtime_error(
                               "diffraction: the Huygens profile is defined for a two-center "
                               "target (use --simplex 2)");
    const double delta0 = zrp::eval_delta0(r.model, k, r.regime);

    std::vector<double> theta(theta_points);
    for (int i = 0; i < theta_points; ++i)
        theta[i] = std::numbers::pi * i / (theta_points - 1);

    auto meta = base_metadata("diffraction", r);
    meta.push_back({"k", zrp::io::format_g17(k)});
    meta.push_back({"R", zrp::io::format_g17(R)});
    meta.push_back({"delta0", zrp::io::format_g17(delta0)});
    std::vector<zrp::io::CsvColumn> cols{{"theta", &theta}};
    std::vector<zrp::DiffractionProfile> profiles;
    profiles.reserve(robs.size());
    for (double rr : robs)
        profiles.push_back(zrp::huygens_profile(k, R, delta0, rr, theta));
    for (size_t i = 0; i < profiles.size(); ++i) {
        meta.push_back({"robs_" + std::to_string(i + 1), zrp::io::format_g17(robs[i])});
        cols.push_back({"J_" + std::to_string(i + 1), &profiles[i].J});
    }
    const std::string out = r.out.empty() ? default_out("diffraction", r.format) : r.out;
    zrp::io::write_table_file(out, meta, cols, r.format);
    std::cout << out << "\n";
    return 0;
}

// figure presets: R = 2.479 au with delta0 = 2pi - 1.912 k for fig2-fig4,
// R = 2.142 fm with constant delta0 for fig5, fitted meson phase for fig6-fig7
namespace presets {

constexpr double kCarbonR = 2.479;
constexpr double kNucleonR = 2.142;

int fig2(const CommonFlags& f) {
    Resolved r = resolve(f);
    const double k = 1.0;
    const double delta0 = zrp::eval_delta0(zrp::carbon_model(), k,
                                           zrp::UnitRegime::atomic_electron());
    const std::vector<double> ratios{5.0, 10.0, 20.0, 40.0};
    const int n = 3601;
    std::vector<double> theta(n);
    for (int i = 0; i < n; ++i)
        theta[i] = 2.0 * std::numbers::pi * i / (n - 1);

    zrp::io::Metadata meta;
    meta.push_back({"tool", std::string("scatter ") + kVersion});
    meta.push_back({"subcommand", "reproduce fig2"});
    meta.push_back({"target", "two centers, R=2.479 au"});
    meta.push_back({"model", "linear(offset=2*pi, slope=-1.912)"});
    meta.push_back({"k", zrp::io::format_g17(k)});
    meta.push_back({"delta0", zrp::io::format_g17(delta0)});
    std::vector<zrp::io::CsvColumn> cols{{"theta", &theta}};
    std::vector<zrp::DiffractionProfile> profiles;
    profiles.reserve(ratios.size());
    for (double m : ratios)
        profiles.push_back(zrp::huygens_profile(k, kCarbonR, delta0, m * kCarbonR, theta));
    std::vector<std::string> names;
    for (size_t i = 0; i < ratios.size(); ++i) {
        std::ostringstream nm;
        nm << "J_r" << static_cast<int>(ratios[i]) << "R";
        names.push_back(nm.str());
        meta.push_back({names.back(), "r = " + std::to_string(ratios[i] * kCarbonR) + " au"});
    }
    for (size_t i = 0; i < profiles.size(); ++i)
        cols.push_back({names[i], &profiles[i].J});
    const std::string out = f.out.empty() ? default_out("fig2", f.format) : f.out;
    zrp::io::write_table_file(out, meta, cols, f.format);
    std::cout << out << "\n";
    return 0;
}

int fig3(const CommonFlags& f) {
    const auto regime = zrp::UnitRegime::atomic_electron();
    const auto model = zrp::carbon_model();
    const auto grid = zrp::make_energy_grid(zrp::parse_grid_spec("0.05:10:2000"));

    zrp::io::Metadata meta;
    meta.push_back({"tool", std::string("scatter ") + kVersion});
    meta.push_back({"subcommand", "reproduce fig3"});
    meta.push_back({"target", "simplex N=1..4, R=2.479 au"});
    meta.push_back({"model", "linear(offset=2*pi, slope=-1.912)"});
    meta.push_back({"grid", "0.05:10:2000:linear"});
    meta.push_back({"columns", "averaged elastic cross section per target size"});

    std::vector<double> energies, ks;
    std::vector<std::vector<double>> sigma(4);
    for (int n = 1; n <= 4; ++n) {
        const auto t = zrp::make_simplex(n, kCarbonR);
        const auto pc = zrp::phase_curve(t, model, regime, grid);
        const auto oc = zrp::cross_section_curve(pc);
        sigma[n - 1] = oc.values[0];
        if (n == 1) {
            energies = pc.energies;
            ks = pc.k_values;
        }
    }
    std::vector<zrp::io::CsvColumn> cols{{"E", &energies}, {"k", &ks}};
    for (int n = 1; n <= 4; ++n)
        cols.push_back({"sigma_bar_N" + std::to_string(n), &sigma[n - 1]});
    const std::string out = f.out.empty() ? default_out("fig3", f.format) : f.out;
    zrp::io::write_table_file(out, meta, cols, f.format);
    std::cout << out << "\n";
    return 0;
}

int fig4(const CommonFlags& f) {
    const auto regime = zrp::UnitRegime::atomic_electron();
    const auto model = zrp::carbon_model();
    const auto grid = zrp::make_energy_grid(zrp::parse_grid_spec("0.005:10:2000:log"));
    const std::string prefix = f.out.empty() ? "fig4" : f.out;

    for (int n = 1; n <= 4; ++n) {
        const auto t = zrp::make_simplex(n, kCarbonR);
        const auto pc = zrp::phase_curve(t, model, regime, grid);
        const auto oc = zrp::time_delay_curve(pc, regime, zrp::DerivativeMethod::Analytic);

        zrp::io::Metadata meta;
        meta.push_back({"tool", std::string("scatter ") + kVersion});
        meta.push_back({"subcommand", "reproduce fig4"});
        meta.push_back({"target", "simplex N=" + std::to_string(n) + ", R=2.479 au"});
        meta.push_back({"model", "linear(offset=2*pi, slope=-1.912)"});
        meta.push_back({"grid", "0.005:10:2000:log"});
        meta.push_back({"tau_unit", "tau_atomic"});
        meta.push_back({"tau_unit_seconds", zrp::io::format_g17(regime.tau_unit_seconds)});
        meta.push_back({"branch_labels", int_list(oc.labels)});
        meta.push_back({"multiplicities", int_list(oc.multiplicities)});

        std::vector<zrp::io::CsvColumn> cols{{"E", &pc.energies}, {"k", &pc.k_values}};
        const auto names = series_names("tau", oc.labels, oc.multiplicities);
        for (size_t i = 0; i < oc.values.size(); ++i)
            cols.push_back({names[i], &oc.values[i]});
        const std::string out =
            stem_plus(ensure_ext(prefix, f.format), "_N" + std::to_string(n), f.format);
        zrp::io::write_table_file(out, meta, cols, f.format);
        std::cout << out << "\n";
    }
    return 0;
}

int fig5(const CommonFlags& f) {
    const auto regime = zrp::UnitRegime::relativistic_meson();
    const auto grid = zrp::make_energy_grid(zrp::parse_grid_spec("0.4:1200:2000:log"));
    const std::vector<double> deg{20.0, 30.0, 45.0};

    zrp::io::Metadata meta;
    meta.push_back({"tool", std::string("scatter ") + kVersion});
    meta.push_back({"subcommand", "reproduce fig5"});
    meta.push_back({"target", "D: simplex N=2, T: simplex N=3, R=2.142 fm"});
    meta.push_back({"model", "constant delta0 in {20, 30, 45} deg"});
    meta.push_back({"grid", "0.4:1200:2000:log (E in MeV)"});
    meta.push_back({"columns", "sigma_bar / (N sigma_0) vs E, k, kR"});

    std::vector<double> energies, ks, kR;
    std::vector<std::vector<double>> ratios;
    std::vector<std::string> names;
    for (double d : deg) {
        const auto model = zrp::PhaseModel(zrp::ConstantPhase{d * std::numbers::pi / 180.0});
        for (int n : {2, 3}) {
            const auto t = zrp::make_simplex(n, kNucleonR, "fm");
            const auto pc = zrp::phase_curve(t, model, regime, grid);
            const auto oc = zrp::cross_section_ratio_curve(pc);
            ratios.push_back(oc.values[0]);
            std::ostringstream nm;
            nm << "ratio_" << (n == 2 ? "D" : "T") << "_" << static_cast<int>(d) << "deg";
            names.push_back(nm.str());
            if (energies.empty()) {
                energies = pc.energies;
                ks = pc.k_values;
                kR.resize(ks.size());
                for (size_t i = 0; i < ks.size(); ++i)
                    kR[i] = ks[i] * kNucleonR;
            }
        }
    }
    std::vector<zrp::io::CsvColumn> cols{{"E", &energies}, {"k", &ks}, {"kR", &kR}};
    for (size_t i = 0; i < ratios.size(); ++i)
        cols.push_back({names[i], &ratios[i]});
    const std::string out = f.out.empty() ? default_out("fig5", f.format) : f.out;
    zrp::io::write_table_file(out, meta, cols, f.format);
    std::cout << out << "\n";
    return 0;
}

zrp::io::ModelSpec require_meson_fit(const CommonFlags& f) {
    if (!f.model_set)
        throw std::runtime_error(
            "this figure needs the fitted meson-nucleon phase, whose constants are external "
            "data not bundled with the paper's formulas; pass a meson-constants JSON file via "
            "--model <path> (see data/meson_constants.example.json for the schema)");
    auto ms = zrp::io::model_from_spec(f.model);
    if (!std::holds_alternative<zrp::MesonFitPhase>(ms.model.variant()))
        throw std::runtime_error(
            "this figure needs a meson-fit model; '" + f.model +
            "' resolved to " + ms.description +
            " (pass a meson-constants JSON file via --model <path>)");
    return ms;
}

int fig6(const CommonFlags& f) {
    const auto ms = require_meson_fit(f);
    const auto regime = zrp::UnitRegime::relativistic_meson();
    const auto grid = zrp::make_energy_grid(zrp::parse_grid_spec("10:800:1581:linear"));

    zrp::io::Metadata meta;
    meta.push_back({"tool", std::string("scatter ") + kVersion});
    meta.push_back({"subcommand", "reproduce fig6"});
    meta.push_back({"target", "simplex N=2,3,4, R=2.142 fm"});
    meta.push_back({"model", ms.description});
    meta.push_back({"grid", "10:800:1581:linear (E in MeV)"});
    meta.push_back({"columns", "delta_0 plus unwrapped eta_lambda per target size"});

    std::vector<double> energies, ks, delta0;
    std::vector<std::vector<double>> etas;
    std::vector<std::string> names;
    for (int n : {2, 3, 4}) {
        const auto t = zrp::make_simplex(n, kNucleonR, "fm");
        const auto pc = zrp::phase_curve(t, ms.model, regime, grid);
        if (energies.empty()) {
            energies = pc.energies;
            ks = pc.k_values;
            delta0.resize(ks.size());
            for (size_t i = 0; i < ks.size(); ++i)
                delta0[i] = zrp::eval_delta0(ms.model, ks[i], regime);
        }
        for (size_t b = 0; b < pc.branches.size(); ++b) {
            etas.push_back(pc.branches[b]);
            names.push_back("eta_" + std::to_string(pc.labels[b]) + "_N" + std::to_string(n));
        }
    }
    std::vector<zrp::io::CsvColumn> cols{{"E", &energies}, {"k", &ks}, {"delta_0", &delta0}};
    for (size_t i = 0; i < etas.size(); ++i)
        cols.push_back({names[i], &etas[i]});
    const std::string out = f.out.empty() ? default_out("fig6", f.format) : f.out;
    zrp::io::write_table_file(out, meta, cols, f.format);
    std::cout << out << "\n";
    return 0;
}

int fig7(const CommonFlags& f) {
    const auto ms = require_meson_fit(f);
    const auto regime = zrp::UnitRegime::relativistic_meson();
    const auto grid = zrp::make_energy_grid(zrp::parse_grid_spec("10:800:1581:linear"));

    zrp::io::Metadata meta;
    meta.push_back({"tool", std::string("scatter ") + kVersion});
    meta.push_back({"subcommand", "reproduce fig7"});
    meta.push_back({"target", "single nucleon plus simplex N=2,3,4, R=2.142 fm"});
    meta.push_back({"model", ms.description});
    meta.push_back({"grid", "10:800:1581:linear (E in MeV)"});
    meta.push_back({"tau_unit", "tau_nuclear"});
    meta.push_back({"tau_unit_seconds", zrp::io::format_g17(regime.tau_unit_seconds)});

    std::vector<double> energies, ks;
    std::vector<std::vector<double>> taus;
    std::vector<std::string> names;
    for (int n : {1, 2, 3, 4}) {
        const auto t = zrp::make_simplex(n, n == 1 ? 0.0 : kNucleonR, "fm");
        const auto pc = zrp::phase_curve(t, ms.model, regime, grid);
        const auto oc = zrp::time_delay_curve(pc, regime, zrp::DerivativeMethod::Analytic);
        if (energies.empty()) {
            energies = pc.energies;
            ks = pc.k_values;
        }
        for (size_t b = 0; b < oc.values.size(); ++b) {
            taus.push_back(oc.values[b]);
            names.push_back(n == 1 ? std::string("tau_single")
                                   : "tau_" + std::to_string(oc.labels[b]) + "_N" +
                                         std::to_string(n));
        }
    }
    std::vector<zrp::io::CsvColumn> cols{{"E", &energies}, {"k", &ks}};
    for (size_t i = 0; i < taus.size(); ++i)
        cols.push_back({names[i], &taus[i]});
    const std::string out = f.out.empty() ? default_out("fig7", f.format) : f.out;
    zrp::io::write_table_file(out, meta, cols, f.format);
    std::cout << out << "\n";
    return 0;
}

} // namespace presets

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"s-wave scattering by clusters of zero-range potentials"};
    app.set_version_flag("--version", std::string("scatter ") + kVersion);
    app.require_subcommand(1);

    CommonFlags f_ph, f_cs, f_td, f_df, f_rp;

    auto* ph = app.add_subcommand("phases", "scattering phase shifts eta_lambda over a grid");
    add_common(ph, f_ph);

    auto* cs = app.add_subcommand("cross-section", "averaged elastic cross section over a grid");
    add_common(cs, f_cs);
    bool ratio = false;
    cs->add_flag("--ratio", ratio, "emit sigma_bar / (N sigma_0) instead of sigma_bar");

    auto* td = app.add_subcommand("time-delay", "partial EWS time delays over a grid");
    add_common(td, f_td);
    std::string method = "analytic";
    td->add_option("--method", method, "derivative method")
        ->check(CLI::IsMember({"analytic", "fd"}));

    auto* df = app.add_subcommand("diffraction", "two-center Huygens diffraction profile J(theta)");
    add_common(df, f_df);
    double k_df = 1.0;
    std::vector<double> robs;
    int theta_points = 1801;
    df->add_option("--k", k_df, "wavenumber")->required();
    df->add_option("--robs", robs, "observation radii (repeatable)")->required();
    df->add_option("--theta-points", theta_points, "theta samples on [0, pi]")
        ->check(CLI::Range(3, 100000));

    auto* rp = app.add_subcommand("reproduce", "emit the data behind a published figure");
    add_common(rp, f_rp);
    std::string figure;
    rp->add_option("figure", figure, "fig2|fig3|fig4|fig5|fig6|fig7")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5", "fig6", "fig7"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (ph->parsed()) {
            note_explicit(ph, f_ph);
            return run_scan("phases", f_ph, zrp::DerivativeMethod::Analytic, false);
        }
        if (cs->parsed()) {
            note_explicit(cs, f_cs);
            return run_scan("cross-section", f_cs, zrp::DerivativeMethod::Analytic, ratio);
        }
        if (td->parsed()) {
            note_explicit(td, f_td);
            return run_scan("time-delay", f_td,
                            method == "fd" ? zrp::DerivativeMethod::FiniteDifference
                                           : zrp::DerivativeMethod::Analytic,
                            false);
        }
        if (df->parsed()) {
            note_explicit(df, f_df);
            return run_diffraction(f_df, k_df, robs, theta_points);
        }
        if (rp->parsed()) {
            note_explicit(rp, f_rp);
            if (figure == "fig2") return presets::fig2(f_rp);
            if (figure == "fig3") return presets::fig3(f_rp);
            if (figure == "fig4") return presets::fig4(f_rp);
            if (figure == "fig5") return presets::fig5(f_rp);
            if (figure == "fig6") return presets::fig6(f_rp);
            return presets::fig7(f_rp);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
