// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include "schilder/cli.hpp"
#include "schilder/counter_rng.hpp"
#include "schilder/io.hpp"
#include "schilder/rate.hpp"

using namespace schilder;

namespace {

struct TempDir {
    std::filesystem::path dir;
    TempDir() {
        dir = std::filesystem::temp_directory_path() /
              ("schilder_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
    }
    ~TempDir() { std::filesystem::remove_all(dir); }
    std::string file(const std::string& name) const { return (dir / name).string(); }
};

DyadicPath small_path() {
    Matrix m(3, 1);
    m(1, 0) = 0.5;
    m(2, 0) = 1.0;
    return DyadicPath(1, 1, std::move(m));
}

}  // namespace

TEST_CASE("parse_config: defaults and overrides") {
    SUBCASE("defaults per the contract") {
        const cli::RunConfig cfg = cli::parse_config({"ldp-curve", "--delta", "0.2",
                                                      "--alpha", "0.4", "--center", "x.csv"});
        CHECK(cfg.alpha == 0.4);
        CHECK(cfg.level == 8);
        CHECK(cfg.channels == 4);
        CHECK(cfg.seed == 42);
        CHECK(cfg.paths == 100000);
        CHECK(cfg.spectrum.kind == DecaySpec::Kind::geometric);
        CHECK(cfg.spectrum.lambda0 == 0.5);
        CHECK(cfg.spectrum.ratio == 0.5);
        CHECK(cfg.command == "ldp-curve");
        CHECK(cfg.delta == 0.2);
    }
    SUBCASE("alpha gate for LDP commands") {
        CHECK_THROWS_WITH_AS(cli::parse_config({"--alpha", "0.6", "ldp-curve"}),
                             "alpha must be < 1/2 for LDP commands", ConfigError);
        CHECK_NOTHROW(cli::parse_config({"--alpha", "0.6", "transform", "forward"}));
        CHECK_THROWS_AS(cli::parse_config({"--alpha", "1.2", "transform", "forward"}),
                        ConfigError);
    }
    SUBCASE("config file values are overridden by flags") {
        TempDir tmp;
        io::write_text(tmp.file("cfg.json"), R"({"J": 8, "delta": 0.7})");
        const cli::RunConfig cfg = cli::parse_config(
            {"--config", tmp.file("cfg.json"), "--J", "10", "simulate"});
        CHECK(cfg.level == 10);
        CHECK(cfg.delta == 0.7);
    }
    SUBCASE("unknown config keys are rejected") {
        TempDir tmp;
        io::write_text(tmp.file("cfg.json"), R"({"JJ": 8})");
        CHECK_THROWS_WITH_AS(cli::parse_config({"--config", tmp.file("cfg.json"), "simulate"}),
                             "unknown config key 'JJ'", ConfigError);
    }
    SUBCASE("unknown flags are rejected") {
        CHECK_THROWS_AS(cli::parse_config({"simulate", "--bogus", "1"}), ConfigError);
    }
}

TEST_CASE("parse_eps_grid") {
    const auto grid = cli::parse_eps_grid("2^-3..2^-6");
    CHECK(grid == std::vector<double>{0.125, 0.0625, 0.03125, 0.015625});
    CHECK(cli::parse_eps_grid("0.25,0.125") == std::vector<double>{0.25, 0.125});
    CHECK(cli::parse_eps_grid("1") == std::vector<double>{1.0});
    CHECK_THROWS_AS(cli::parse_eps_grid("2^-6..2^-3"), ConfigError);
    CHECK_THROWS_AS(cli::parse_eps_grid("0.125,0.25"), ConfigError);
    CHECK_THROWS_AS(cli::parse_eps_grid("abc"), ConfigError);
    CHECK_THROWS_AS(cli::parse_eps_grid("0.5,-1"), ConfigError);
}

TEST_CASE("spectrum descriptors") {
    std::size_t K = 4;
    const DecaySpec geo =
        cli::parse_spectrum_json(R"({"kind":"geometric","lambda0":1.0,"ratio":0.25,"K":3})", K);
    CHECK(K == 3);
    CHECK(geo.lambda0 == 1.0);
    CHECK(geo.ratio == 0.25);
    const DecaySpec exp_list =
        cli::parse_spectrum_json(R"({"kind":"explicit","lambdas":[1.0,0.5]})", K);
    CHECK(K == 2);
    CHECK(exp_list.values == std::vector<double>{1.0, 0.5});
    CHECK_THROWS_AS(cli::parse_spectrum_json(R"({"kind":"nope"})", K), ConfigError);
    CHECK_THROWS_AS(cli::parse_spectrum_json(R"({"kind":"geometric","rato":0.5})", K),
                    ConfigError);
}

TEST_CASE("path CSV: save/load identity and validation errors") {
    TempDir tmp;
    SUBCASE("3-row example loads as the J=1 linear path") {
        io::write_text(tmp.file("p.csv"), "t,ch0\n0,0\n0.5,0.5\n1,1\n");
        const DyadicPath p = io::load_path_csv(tmp.file("p.csv"));
        CHECK(p.level == 1);
        CHECK(p.samples(1, 0) == 0.5);
    }
    SUBCASE("row count must be 2^J + 1") {
        io::write_text(tmp.file("p.csv"), "t,ch0\n0,0\n0.25,0.1\n0.5,0.2\n1,1\n");
        CHECK_THROWS_WITH_AS(io::load_path_csv(tmp.file("p.csv")),
                             "row count 4 is not 2^J + 1", ConfigError);
    }
    SUBCASE("paths start at zero") {
        io::write_text(tmp.file("p.csv"), "t,ch0\n0,0.1\n0.5,0.5\n1,1\n");
        CHECK_THROWS_WITH_AS(io::load_path_csv(tmp.file("p.csv")), "path must start at 0",
                             ConfigError);
    }
    SUBCASE("t column must be the dyadic grid, increasing") {
        io::write_text(tmp.file("p.csv"), "t,ch0\n0,0\n1,0.5\n0.5,1\n");
        CHECK_THROWS_AS(io::load_path_csv(tmp.file("p.csv")), ConfigError);
        io::write_text(tmp.file("q.csv"), "t,ch0\n0,0\n0.4,0.5\n1,1\n");
        CHECK_THROWS_WITH(io::load_path_csv(tmp.file("q.csv")),
                          doctest::Contains("row 3"));
    }
    SUBCASE("save then load reproduces samples exactly") {
        Matrix m(9, 2);
        for (std::size_t j = 1; j < 9; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                m(j, k) = counter_normal(77, j, 0, static_cast<std::uint32_t>(k));
        const DyadicPath p(3, 2, std::move(m));
        io::save_path_csv(p, tmp.file("rt.csv"));
        const DyadicPath back = io::load_path_csv(tmp.file("rt.csv"));
        CHECK(back.level == 3);
        CHECK(back.samples == p.samples);  // 17 digits roundtrip exactly
    }
}

TEST_CASE("coefficient CSV roundtrip") {
    TempDir tmp;
    Matrix raw(8, 2);
    for (std::size_t n = 0; n < 8; ++n)
        for (std::size_t k = 0; k < 2; ++k)
            raw(n, k) = counter_normal(78, n, 0, static_cast<std::uint32_t>(k));
    const CoeffMatrix c = CoeffMatrix::from_raw(std::move(raw), HolderExponent(0.4));
    io::save_coeff_csv(c, tmp.file("c.csv"));
    const CoeffMatrix back = io::load_coeff_csv(tmp.file("c.csv"), HolderExponent(0.4));
    CHECK(back.raw == c.raw);
    CHECK(back.scaled == c.scaled);
}

TEST_CASE("emit_report formatting") {
    SUBCASE("infinity serializes as the string inf") {
        io::Value v = io::Value::object();
        v["value"] = std::numeric_limits<double>::infinity();
        v["finite"] = false;
        CHECK(v.dump() == "{\"finite\":false,\"value\":\"inf\"}\n");
    }
    SUBCASE("keys are sorted and floats carry 17 significant digits") {
        io::Value v = io::Value::object();
        v["b"] = 0.1;
        v["a"] = 1.0 / 3.0;
        CHECK(v.dump() ==
              "{\"a\":0.33333333333333331,\"b\":0.10000000000000001}\n");
    }
    SUBCASE("identical values dump byte-identically") {
        io::Value v = io::Value::object();
        v["x"] = 0.7071067811865476;
        io::Value w = io::Value::object();
        w["x"] = 0.7071067811865476;
        CHECK(v.dump(2) == w.dump(2));
    }
}

TEST_CASE("CLI end-to-end dispatch and exit codes") {
    TempDir tmp;
    SUBCASE("transform forward/inverse roundtrip through files") {
        io::save_path_csv(small_path(), tmp.file("p.csv"));
        CHECK(cli::run({"transform", "forward", "--in", tmp.file("p.csv"), "--out",
                        tmp.file("c.csv"), "--alpha", "0.4"}) == 0);
        const CoeffMatrix c = io::load_coeff_csv(tmp.file("c.csv"), HolderExponent(0.4));
        CHECK(c.raw(0, 0) == 1.0);
        CHECK(cli::run({"transform", "inverse", "--in", tmp.file("c.csv"), "--out",
                        tmp.file("p2.csv"), "--alpha", "0.4", "--J", "1"}) == 0);
        const DyadicPath p2 = io::load_path_csv(tmp.file("p2.csv"));
        CHECK(p2.samples == small_path().samples);
    }
    SUBCASE("rate command on f(t) = t") {
        io::save_path_csv(small_path(), tmp.file("p.csv"));
        CHECK(cli::run({"rate", "--in", tmp.file("p.csv"),
                        "--spectrum", R"({"kind":"explicit","lambdas":[1.0]})"}) == 0);
    }
    SUBCASE("validation failures exit 2") {
        CHECK(cli::run({"ldp-curve", "--alpha", "0.6"}) == 2);
        CHECK(cli::run({"transform", "forward", "--in", tmp.file("missing.csv"), "--out",
                        tmp.file("c.csv")}) == 2);
        CHECK(cli::run({"nonsense-command"}) == 2);
        CHECK(cli::run({}) == 2);
    }
    SUBCASE("ball-inf on a saved center") {
        Matrix raw(4, 1);
        raw(0, 0) = 1.0;
        io::save_coeff_csv(CoeffMatrix::from_raw(std::move(raw), HolderExponent(0.4)),
                           tmp.file("center.csv"));
        CHECK(cli::run({"ball-inf", "--center", tmp.file("center.csv"), "--delta", "0.2",
                        "--spectrum", R"({"kind":"explicit","lambdas":[1.0]})", "--out",
                        tmp.file("ball.json")}) == 0);
        const std::string report = io::read_text(tmp.file("ball.json"));
        CHECK(report.find("0.32000000000000") != std::string::npos);
    }
    SUBCASE("ldp-curve emits the documented schema") {
        Matrix raw(4, 1);
        raw(0, 0) = 1.0;
        io::save_coeff_csv(CoeffMatrix::from_raw(std::move(raw), HolderExponent(0.4)),
                           tmp.file("center.csv"));
        CHECK(cli::run({"ldp-curve", "--center", tmp.file("center.csv"), "--delta", "0.2",
                        "--spectrum", R"({"kind":"explicit","lambdas":[1.0]})", "--eps",
                        "2^-3..2^-5", "--out", tmp.file("curve.json")}) == 0);
        const std::string curve = io::read_text(tmp.file("curve.json"));
        CHECK(curve.find("\"target\"") != std::string::npos);
        CHECK(curve.find("\"points\"") != std::string::npos);
        CHECK(curve.find("\"eps_logp\"") != std::string::npos);
        CHECK(curve.find("\"tail_bound\"") != std::string::npos);
        // CSV flavour.
        CHECK(cli::run({"ldp-curve", "--center", tmp.file("center.csv"), "--delta", "0.2",
                        "--spectrum", R"({"kind":"explicit","lambdas":[1.0]})", "--eps",
                        "2^-3..2^-5", "--format", "csv", "--out", tmp.file("curve.csv")}) ==
              0);
        const std::string csv = io::read_text(tmp.file("curve.csv"));
        CHECK(csv.rfind("eps,logp,tail_bound,eps_logp,mc_p,mc_stderr\n", 0) == 0);
    }
    SUBCASE("identical runs produce byte-identical outputs") {
        Matrix raw(4, 1);
        raw(0, 0) = 1.0;
        io::save_coeff_csv(CoeffMatrix::from_raw(std::move(raw), HolderExponent(0.4)),
                           tmp.file("center.csv"));
        const std::vector<std::string> args = {
            "ldp-curve", "--center", tmp.file("center.csv"), "--delta", "0.2",
            "--spectrum", R"({"kind":"explicit","lambdas":[1.0]})", "--eps", "2^-3..2^-8",
            "--out", tmp.file("a.json")};
        CHECK(cli::run(args) == 0);
        auto args2 = args;
        args2.back() = tmp.file("b.json");
        CHECK(cli::run(args2) == 0);
        CHECK(io::read_text(tmp.file("a.json")) == io::read_text(tmp.file("b.json")));
    }
}
