// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "cqd/experiment.hpp"
#include "cqd/io.hpp"
#include "cqd/majorana.hpp"

using namespace cqd;
using doctest::Approx;

#ifndef CQD_DATA_DIR
#define CQD_DATA_DIR "data"
#endif

TEST_SUITE_BEGIN("io");

TEST_CASE("config json round trip") {
    RunConfig cfg;
    cfg.n_samples = 123;
    cfg.seed = 0xdeadbeefcafef00dull;
    cfg.distribution = Distribution::Isotropic;
    cfg.flip_convention = FlipConvention::CollapseUpIsFlip;
    cfg.error_policy = ErrorPolicy::SkipAndRecord;
    cfg.currents = {0.02, 0.4};
    cfg.max_steps = 777777;
    cfg.fixed_rk4 = true;
    cfg.fixed_steps = 123456;

    const std::string text = io::config_to_json_text(cfg);
    const RunConfig back = io::config_from_json_text(text);
    CHECK(back.n_samples == cfg.n_samples);
    CHECK(back.seed == cfg.seed);
    CHECK(back.distribution == cfg.distribution);
    CHECK(back.flip_convention == cfg.flip_convention);
    CHECK(back.error_policy == cfg.error_policy);
    CHECK(back.currents == cfg.currents);
    CHECK(back.max_steps == cfg.max_steps);
    CHECK(back.fixed_rk4 == cfg.fixed_rk4);
    CHECK(back.fixed_steps == cfg.fixed_steps);
    CHECK(back.rel_tol == cfg.rel_tol);
    CHECK(back.constants.mu_e == cfg.constants.mu_e);
    // serializing again reproduces the same document
    CHECK(io::config_to_json_text(back) == text);
}

TEST_CASE("config json semantics") {
    SUBCASE("empty object yields defaults") {
        const RunConfig d;
        const RunConfig c = io::config_from_json_text("{}");
        CHECK(c.n_samples == d.n_samples);
        CHECK(c.velocity == d.velocity);
        CHECK(c.currents == d.currents);
        CHECK(c.seed == d.seed);
    }
    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_AS(io::config_from_json_text(R"({"n_sample": 10})"),
                        std::domain_error);
        CHECK_THROWS_AS(
            io::config_from_json_text(R"({"constants": {"mu_x": 1.0}})"),
            std::domain_error);
    }
    SUBCASE("run_info is tolerated") {
        CHECK_NOTHROW(io::config_from_json_text(
            R"({"n_samples": 5, "run_info": {"kernel": "avx2"}})"));
    }
    SUBCASE("invalid values fail validation") {
        CHECK_THROWS_AS(io::config_from_json_text(R"({"n_samples": 0})"),
                        std::domain_error);
        CHECK_THROWS_AS(io::config_from_json_text(R"({"tail_start": 99})"),
                        std::domain_error);
        CHECK_THROWS_AS(io::config_from_json_text("[1,2]"),
                        std::domain_error);
        CHECK_THROWS_AS(io::config_from_json_text("not json"),
                        std::domain_error);
    }
    SUBCASE("bad enum strings") {
        CHECK_THROWS_AS(
            io::config_from_json_text(R"({"distribution": "both"})"),
            std::domain_error);
        CHECK_THROWS_AS(
            io::config_from_json_text(R"({"flip_convention": "maybe"})"),
            std::domain_error);
    }
}

TEST_CASE("metadata json feeds back as a config") {
    RunConfig cfg;
    cfg.n_samples = 12;
    cfg.seed = 99;
    io::RunInfo info;
    info.version = "0.1.0";
    info.kernel = "scalar";
    info.threads = 2;
    info.wall_time_s = 1.25;
    info.r_squared = 0.93;
    const std::string text = io::metadata_json_text(cfg, info);
    const RunConfig back = io::config_from_json_text(text);
    CHECK(back.n_samples == 12);
    CHECK(back.seed == 99);
}

TEST_CASE("metadata round trip reproduces the sweep exactly") {
    RunConfig cfg;
    cfg.currents = {0.1};
    cfg.n_samples = 48;
    cfg.seed = 2718;
    const auto first = experiment::run_sweep(cfg);
    const std::string meta = io::metadata_json_text(cfg, {});
    const auto second = experiment::run_sweep(io::config_from_json_text(meta));
    CHECK(io::sweep_csv_text(first) == io::sweep_csv_text(second));
}

TEST_CASE("dataset csv") {
    SUBCASE("shipped file parses and validates") {
        const auto ds =
            io::load_dataset(std::string(CQD_DATA_DIR) +
                             "/frisch_segre_1933.csv");
        CHECK(ds.currents.size() == 8);
        CHECK(ds.currents.front() == 0.01);
        CHECK(ds.currents.back() == 0.5);
        for (double f : ds.fractions) {
            CHECK(f >= 0.0);
            CHECK(f <= 1.0);
        }
    }
    SUBCASE("comments and round-trip idempotence") {
        const std::string text =
            "# provenance line\n# another\ncurrent_A,flip_fraction\n"
            "0.01,0.05\n0.1,0.375\n";
        const auto ds = io::dataset_from_csv_text(text);
        CHECK(ds.currents == std::vector<double>{0.01, 0.1});
        const std::string once = io::dataset_to_csv_text(ds);
        const auto again = io::dataset_from_csv_text(once);
        CHECK(io::dataset_to_csv_text(again) == once);
        CHECK(again.fractions == ds.fractions);
    }
    SUBCASE("rejects malformed input") {
        CHECK_THROWS_AS(io::dataset_from_csv_text(""), std::domain_error);
        CHECK_THROWS_AS(io::dataset_from_csv_text("a,b\n1,2\n"),
                        std::domain_error);
        CHECK_THROWS_AS(io::dataset_from_csv_text(
                            "current_A,flip_fraction\n0.1,bogus\n"),
                        std::domain_error);
        CHECK_THROWS_AS(io::dataset_from_csv_text(
                            "current_A,flip_fraction\n0.2,0.1\n0.1,0.2\n"),
                        std::domain_error);
        CHECK_THROWS_AS(io::dataset_from_csv_text(
                            "current_A,flip_fraction\n0.1,1.5\n"),
                        std::domain_error);
    }
}

TEST_CASE("sweep csv carries full precision") {
    experiment::SweepResult r;
    experiment::SweepPoint p;
    p.current = 0.1;
    p.stats.fraction = 1.0 / 3.0;
    p.stats.std_err = std::sqrt(2.0) * 1e-3;
    p.k0 = 0.21405065063291138;
    r.points.push_back(p);
    const std::string text = io::sweep_csv_text(r);
    CHECK(text.find("current_A,flip_fraction,std_err,k0") == 0);
    // %.17g round-trips doubles exactly
    const auto line = text.substr(text.find('\n') + 1);
    double a, b, c, d;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &c, &d) == 4);
    CHECK(a == p.current);
    CHECK(b == p.stats.fraction);
    CHECK(c == p.stats.std_err);
    CHECK(d == p.k0);
}

TEST_CASE("trace csv") {
    majorana::FlightSolution sol;
    CHECK_THROWS_AS(io::trace_csv_text(sol), std::domain_error);
    sol.trace = std::vector<majorana::TracePoint>{
        {-30.0, {1.0, 0.0}}, {0.0, {0.25, -0.5}}};
    const std::string text = io::trace_csv_text(sol);
    CHECK(text.find("tau,abs_f,re_f,im_f") == 0);
    CHECK(text.find("-0.5") != std::string::npos);
}

TEST_CASE("svg emission is presentation only") {
    experiment::SweepResult r;
    for (double I : {0.01, 0.1, 0.5}) {
        experiment::SweepPoint p;
        p.current = I;
        p.stats.fraction = 0.2 + I;
        r.points.push_back(p);
    }
    const std::string before = io::sweep_csv_text(r);
    const std::string svg = io::sweep_svg_text(r, nullptr);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("fraction of spin flip") != std::string::npos);
    CHECK(io::sweep_csv_text(r) == before);
}

TEST_CASE("angle tokens") {
    CHECK(io::parse_angle("6pi/7") ==
          Approx(6.0 * std::numbers::pi / 7.0).epsilon(1e-15));
    CHECK(io::parse_angle("pi") == Approx(std::numbers::pi).epsilon(1e-15));
    CHECK(io::parse_angle("2pi") ==
          Approx(2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(io::parse_angle("pi/2") ==
          Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(io::parse_angle("-pi/4") ==
          Approx(-std::numbers::pi / 4).epsilon(1e-15));
    CHECK(io::parse_angle("0.5pi") ==
          Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(io::parse_angle("1.5708") == Approx(1.5708).epsilon(1e-15));
    CHECK(io::parse_angle(" 0 ") == 0.0);
    for (const char* bad : {"", "pip", "2x", "pi/0", "pi/", "one", "1.2.3"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(io::parse_angle(bad), std::domain_error);
    }
}

TEST_SUITE_END();
