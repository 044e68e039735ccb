#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <zrp/io.hpp>

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("zrp_io_test_" + name);
}

struct FileGuard {
    fs::path p;
    ~FileGuard() {
        std::error_code ec;
        fs::remove(p, ec);
    }
};

} // namespace

TEST_CASE("parse_grid_spec forms") {
    auto g = zrp::parse_grid_spec("0.05:10:2000");
    REQUIRE(g.e_min == 0.05);
    REQUIRE(g.e_max == 10.0);
    REQUIRE(g.points == 2000);
    REQUIRE(g.spacing == zrp::GridSpacing::Linear); // bare form defaults to linear

    REQUIRE(zrp::parse_grid_spec("0.1:5:100:log").spacing == zrp::GridSpacing::Log);
    REQUIRE(zrp::parse_grid_spec("0.1:5:100:linear").spacing == zrp::GridSpacing::Linear);

    REQUIRE_THROWS_WITH(zrp::parse_grid_spec("1:2"), ContainsSubstring("min:max:points"));
    REQUIRE_THROWS_WITH(zrp::parse_grid_spec("1:2:3:log:x"), ContainsSubstring("min:max:points"));
    REQUIRE_THROWS_WITH(zrp::parse_grid_spec("a:2:3"), ContainsSubstring("non-numeric"));
    REQUIRE_THROWS_WITH(zrp::parse_grid_spec("1:2:3:cubic"), ContainsSubstring("log"));
    REQUIRE_THROWS_WITH(zrp::parse_grid_spec("0:2:3"), ContainsSubstring("e_min"));
    REQUIRE_THROWS_WITH(zrp::parse_grid_spec("5:2:3"), ContainsSubstring("e_min"));
    REQUIRE_THROWS_WITH(zrp::parse_grid_spec("1:2:1"), ContainsSubstring("2 points"));
}

TEST_CASE("energy grids pin both endpoints and ascend") {
    const zrp::GridSpec lin{0.5, 9.5, 19, zrp::GridSpacing::Linear};
    const auto L = zrp::make_energy_grid(lin);
    REQUIRE(L.size() == 19);
    REQUIRE(L.front() == 0.5);
    REQUIRE(L.back() == 9.5);
    for (size_t i = 1; i < L.size(); ++i)
        REQUIRE_THAT(L[i] - L[i - 1], WithinRel(0.5, 1e-12));

    const zrp::GridSpec lg{0.1, 10.0, 41, zrp::GridSpacing::Log};
    const auto G = zrp::make_energy_grid(lg);
    REQUIRE(G.front() == 0.1);
    REQUIRE(G.back() == 10.0);
    for (size_t i = 1; i < G.size(); ++i) {
        REQUIRE(G[i] > G[i - 1]);
        REQUIRE_THAT(G[i] / G[i - 1], WithinRel(std::pow(100.0, 1.0 / 40.0), 1e-9));
    }
}

TEST_CASE("format_g17 round-trips doubles exactly") {
    for (double v : {1.0 / 3.0, -2.5e17, 1e-300, std::numbers::pi, 0.0, -0.9820252739709471}) {
        const auto s = zrp::io::format_g17(v);
        REQUIRE(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("csv writer emits commented metadata, header, then g17 rows") {
    const std::vector<double> x{1.0, 0.5};
    const std::vector<double> y{2.0, -1.0};
    std::ostringstream os;
    zrp::io::write_csv(os, {{"tool", "scatter 0.1.0"}}, {{"x", &x}, {"y", &y}});
    REQUIRE(os.str() == "# tool: scatter 0.1.0\n"
                        "x,y\n"
                        "1.0000000000000000e+00,2.0000000000000000e+00\n"
                        "5.0000000000000000e-01,-1.0000000000000000e+00\n");

    const std::vector<double> bad{1.0};
    std::ostringstream sink;
    REQUIRE_THROWS_WITH(zrp::io::write_csv(sink, {}, {{"x", &x}, {"y", &bad}}),
                        ContainsSubstring("length mismatch"));
    REQUIRE_THROWS_WITH(zrp::io::write_csv(sink, {}, {}), ContainsSubstring("no columns"));
}

TEST_CASE("json writer mirrors metadata and columns") {
    const std::vector<double> x{1.5, 2.5};
    std::ostringstream os;
    zrp::io::write_json(os, {{"target", "simplex(2)"}}, {{"E", &x}});
    const auto j = zrp::io::json::parse(os.str());
    REQUIRE(j["metadata"]["target"] == "simplex(2)");
    REQUIRE(j["columns"]["E"].size() == 2);
    REQUIRE(j["columns"]["E"][1].get<double>() == 2.5);
}

TEST_CASE("write_table_file validates format and path") {
    const std::vector<double> x{1.0};
    FileGuard fmt{temp_file("fmt.xml")};
    REQUIRE_THROWS_WITH(zrp::io::write_table_file(fmt.p.string(), {}, {{"x", &x}}, "xml"),
                        ContainsSubstring("format"));
    REQUIRE_THROWS_WITH(
        zrp::io::write_table_file("/nonexistent_dir_zrp/t.csv", {}, {{"x", &x}}, "csv"),
        ContainsSubstring("cannot open"));

    FileGuard g{temp_file("table.csv")};
    zrp::io::write_table_file(g.p.string(), {{"k", "v"}}, {{"x", &x}}, "csv");
    std::ifstream is(g.p);
    std::string first;
    std::getline(is, first);
    REQUIRE(first == "# k: v");
}

TEST_CASE("load_json_file reports the path on failure") {
    REQUIRE_THROWS_WITH(zrp::io::load_json_file("/no/such/file.json"),
                        ContainsSubstring("/no/such/file.json"));

    FileGuard g{temp_file("broken.json")};
    std::ofstream(g.p) << "{ not json";
    REQUIRE_THROWS_WITH(zrp::io::load_json_file(g.p.string()), ContainsSubstring("invalid JSON"));
}

TEST_CASE("target_from_json accepts both schemas") {
    auto t1 = zrp::io::target_from_json(zrp::io::json::parse(
        R"({"centers": [[0,0,0],[2.1,0,0]], "length_unit": "fm"})"));
    REQUIRE(t1.size() == 2);
    REQUIRE(t1.length_unit == "fm");
    REQUIRE_THAT(t1.centers[1][0], WithinRel(2.1, 1e-15));

    auto t2 = zrp::io::target_from_json(
        zrp::io::json::parse(R"({"simplex": {"n": 3, "r": 2.0}})"));
    REQUIRE(t2.size() == 3);
    const auto R = zrp::distance_matrix(t2);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            REQUIRE_THAT(R(i, j), WithinRel(2.0, 1e-12));

    // single center needs no spacing
    REQUIRE(zrp::io::target_from_json(zrp::io::json::parse(R"({"simplex": {"n": 1}})")).size() == 1);

    REQUIRE_THROWS_WITH(zrp::io::target_from_json(zrp::io::json::parse(R"({"foo": 1})")),
                        ContainsSubstring("'centers' or 'simplex'"));
    REQUIRE_THROWS_WITH(zrp::io::target_from_json(zrp::io::json::parse(R"({"centers": [[1,2]]})")),
                        ContainsSubstring("[x, y, z]"));
    REQUIRE_THROWS_WITH(zrp::io::target_from_json(zrp::io::json::parse(R"({"centers": []})")),
                        ContainsSubstring("empty"));
    REQUIRE_THROWS_WITH(
        zrp::io::target_from_json(zrp::io::json::parse(R"({"simplex": {"n": 2}})")),
        ContainsSubstring("missing field 'r'"));
}

TEST_CASE("meson constants loader names the missing field") {
    auto good = zrp::io::json::parse(
        R"({"b": 5e-4, "f": -8e-10, "d": 2e-16, "x": 0.9,
            "gamma0_MeV": 110.0, "omega0_MeV": 540.0, "q0_MeV_c": 520.0})");
    const auto m = zrp::io::meson_fit_from_json(good);
    REQUIRE(m.q0 == 520.0);

    auto missing = good;
    missing.erase("q0_MeV_c");
    REQUIRE_THROWS_WITH(zrp::io::meson_fit_from_json(missing),
                        ContainsSubstring("missing field 'q0_MeV_c'"));

    auto wrong_type = good;
    wrong_type["x"] = "0.9";
    REQUIRE_THROWS_WITH(zrp::io::meson_fit_from_json(wrong_type),
                        ContainsSubstring("'x' must be a number"));
}

TEST_CASE("model_from_spec shorthand forms") {
    const auto carbon = zrp::io::model_from_spec("carbon");
    REQUIRE(carbon.regime.energy_unit() == std::string("hartree"));
    REQUIRE_THAT(zrp::eval_delta0(carbon.model, 1.0, carbon.regime),
                 WithinRel(2.0 * std::numbers::pi - 1.912, 1e-15));

    const auto c45 = zrp::io::model_from_spec("constant:45deg");
    REQUIRE(c45.regime.energy_unit() == std::string("MeV"));
    REQUIRE_THAT(zrp::eval_delta0(c45.model, 0.8, c45.regime),
                 WithinRel(std::numbers::pi / 4.0, 1e-15));
    REQUIRE_THAT(zrp::eval_delta0(zrp::io::model_from_spec("constant:0.7").model, 0.8,
                                  zrp::UnitRegime::relativistic_meson()),
                 WithinRel(0.7, 1e-15));

    const auto lin = zrp::io::model_from_spec("linear:1.0:-0.5");
    REQUIRE_THAT(zrp::eval_delta0(lin.model, 2.0, lin.regime), WithinRel(0.0, 1e-15));

    REQUIRE_THROWS_WITH(zrp::io::model_from_spec("constant:abc"), ContainsSubstring("numeric"));
    REQUIRE_THROWS_WITH(zrp::io::model_from_spec("linear:1.0"),
                        ContainsSubstring("linear:<offset>:<slope>"));
    // anything else is treated as a file path
    REQUIRE_THROWS_WITH(zrp::io::model_from_spec("no_such_model_file.json"),
                        ContainsSubstring("cannot open"));
}

TEST_CASE("model_from_json composes with_resonance around a base model") {
    auto j = zrp::io::json::parse(
        R"({"type": "with_resonance",
            "base": {"type": "constant", "delta0_rad": 0.4},
            "gamma": 50.0, "e_res": 400.0})");
    const auto ms = zrp::io::model_from_json(j);
    REQUIRE(std::holds_alternative<zrp::ResonanceAugmentedPhase>(ms.model.variant()));
    const auto at_res = zrp::eval_delta0(ms.model, zrp::momentum_from_energy(ms.regime, 400.0),
                                         ms.regime);
    REQUIRE_THAT(at_res, WithinRel(0.4 + std::numbers::pi / 2.0, 1e-12));

    REQUIRE_THROWS_WITH(zrp::io::model_from_json(zrp::io::json::parse(R"({"type": "cubic"})")),
                        ContainsSubstring("unknown model type"));
    REQUIRE_THROWS_WITH(zrp::io::model_from_json(zrp::io::json::parse(R"({"foo": 1})")),
                        ContainsSubstring("'type'"));
    j.erase("gamma");
    REQUIRE_THROWS_WITH(zrp::io::model_from_json(j), ContainsSubstring("missing field 'gamma'"));
}

TEST_CASE("regime_from_name aliases") {
    for (const char* n : {"atomic", "electron", "au"})
        REQUIRE(zrp::io::regime_from_name(n).energy_unit() == std::string("hartree"));
    for (const char* n : {"meson", "nuclear", "fm"})
        REQUIRE(zrp::io::regime_from_name(n).energy_unit() == std::string("MeV"));
    REQUIRE_THROWS_WITH(zrp::io::regime_from_name("imperial"), ContainsSubstring("regime"));
}
