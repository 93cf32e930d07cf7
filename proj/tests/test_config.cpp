#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "curvelast/config.hpp"

using namespace curvelast;

TEST_CASE("config round-trip: parse -> serialize -> parse is identity") {
    RunConfig cfg;
    cfg.mu = 2.5;
    cfg.d_modulus = 7.0;
    cfg.model = "helfrich";
    cfg.gamma = 0.9;
    cfg.beta_s = 1.75;
    cfg.h0 = -1.45;
    cfg.radius = 0.8;
    cfg.lambda_min = 0.4;
    cfg.lambda_max = 1.2;
    cfg.k_min = 0.05;
    cfg.k_max = 2.0;
    cfg.k_steps = 17;
    cfg.format = "json";
    cfg.output_path = "out.json";

    const std::string text = serialize_config(cfg);
    const std::string path = "roundtrip_test.cfg";
    {
        std::ofstream f(path);
        f << text;
    }
    const RunConfig back = parse_config_file(path);
    std::remove(path.c_str());
    CHECK(serialize_config(back) == text);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    cfg.d_modulus = 1.0;
    cfg.incompressible = true;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    RunConfig bad_model;
    bad_model.model = "helfrich";
    bad_model.alpha_s = 1.0;
    CHECK_THROWS_AS(bad_model.validate(), ConfigError);

    RunConfig bad_range;
    bad_range.lambda_min = 1.0;
    CHECK_THROWS_AS(bad_range.validate(), ConfigError);

    CHECK_THROWS_AS(parse_config({{"nonsense_key", "1"}}), ConfigError);
    CHECK_THROWS_AS(parse_config({{"mu", "abc"}}), ConfigError);
}

TEST_CASE("numeric formatting is locale-independent with 12 significant digits") {
    CHECK(format_number(3.14159265358979) == "3.14159265359");
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(-1.0 / 3.0) == "-0.333333333333");
    CHECK(format_number(1.5e-7).find(',') == std::string::npos);
}

TEST_CASE("nondimensionalization at the boundary") {
    RunConfig cfg;
    cfg.mu = 2.0;
    cfg.radius = 0.5;
    cfg.d_modulus = 8.0;
    cfg.model = "helfrich";
    cfg.gamma = 3.0;
    cfg.beta_s = 0.5;
    cfg.h0 = -2.0;
    const auto sp = scale_problem(cfg);
    CHECK(sp.mat.mu == 1.0);
    CHECK(sp.mat.d_modulus == doctest::Approx(4.0));
    CHECK(sp.surf.gamma == doctest::Approx(3.0 / (2.0 * 0.5)));
    CHECK(sp.surf.beta_s == doctest::Approx(0.5 / (2.0 * 0.125)));
    CHECK(sp.surf.h0 == doctest::Approx(-1.0));
    CHECK(sp.stress_scale == 2.0);
    CHECK(sp.length_scale == 0.5);

    RunConfig inc = cfg;
    inc.d_modulus.reset();
    inc.incompressible = true;
    const auto spi = scale_problem(inc);
    CHECK(spi.mat.d_modulus == kIncompressibleProxyRatio);
    CHECK(spi.closed_form_incompressible);

    RunConfig incs = inc;
    incs.model = "stretch";
    incs.beta_s = 0.0;
    incs.h0 = 0.0;
    incs.alpha_s = 1.0;
    const auto sps = scale_problem(incs);
    CHECK(!sps.closed_form_incompressible);
}
