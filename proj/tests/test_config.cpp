#include <doctest.h>

#include <fstream>

#include "wcounts/config.hpp"

using namespace wcounts;
using nlohmann::json;

namespace {

json minimal_config() {
    return json{{"group", {{"type", "A"}, {"rank", 1}}},
                {"lambda", "log_anticanonical"},
                {"A_D", {1}},
                {"S", {"inf"}},
                {"thresholds", {100, 200, 400}}};
}

} // namespace

TEST_CASE("config round trip: parse -> serialize -> parse is the identity") {
    json j = minimal_config();
    j["action_generators"] = json::array();
    j["zeta"] = {{"prime_cutoff", 500}, {"s_values", {2.0, 3.0}}, {"delta_on", false}, {"depth", 25}};
    j["fit"] = {{"tol_a", 0.2}, {"ratio_tol", 0.15}};
    j["budget"] = 123456;
    j["threads"] = 2;

    ExperimentConfig c1 = parse_config(j);
    json s1 = config_to_json(c1);
    ExperimentConfig c2 = parse_config(s1);
    json s2 = config_to_json(c2);
    CHECK(s1 == s2);
    CHECK(c2.budget == 123456);
    CHECK(c2.zeta_prime_cutoff == 500);
    CHECK(c2.threads == 2);
    CHECK(c2.thresholds == std::vector<Rational>{Rational(100), Rational(200), Rational(400)});
}

TEST_CASE("threshold grids") {
    {
        json j = minimal_config();
        j["thresholds"] = {{"kind", "doubling"}, {"start", 1000}, {"steps", 4}};
        auto c = parse_config(j);
        CHECK(c.thresholds == std::vector<Rational>{Rational(1000), Rational(2000),
                                                    Rational(4000), Rational(8000)});
    }
    {
        json j = minimal_config();
        j["thresholds"] = {{"kind", "geometric"}, {"min", 1000}, {"max", 10000}, {"per_decade", 12}};
        auto c = parse_config(j);
        CHECK(c.thresholds.size() >= 12);
        for (size_t i = 1; i < c.thresholds.size(); ++i)
            CHECK(c.thresholds[i] > c.thresholds[i - 1]);
    }
    {
        json j = minimal_config();
        j["thresholds"] = {{"kind", "nonsense"}};
        CHECK_THROWS_AS(parse_config(j), validation_error);
    }
}

TEST_CASE("config validation failures carry module attribution") {
    {
        json j = minimal_config();
        j["lambda"] = {"0"};
        CHECK_THROWS_WITH_AS(build_experiment(parse_config(j)),
                             doctest::Contains("effective cone"), validation_error);
    }
    {
        json j = minimal_config();
        j["S"] = {2};
        CHECK_THROWS_WITH_AS(build_experiment(parse_config(j)), doctest::Contains("archimedean"),
                             validation_error);
    }
    {
        json j = minimal_config();
        j["group"] = {{"type", "Q"}, {"rank", 1}};
        try {
            build_experiment(parse_config(j));
            FAIL("expected a validation error");
        } catch (const validation_error& e) {
            CHECK(e.module_name() == "root_system");
        }
    }
    {
        // non-orbit-stable boundary under a flip action
        json j = minimal_config();
        j["group"] = {{"type", "A"}, {"rank", 3}};
        j["action_generators"] = {{3, 2, 1}};
        j["A_D"] = {1};
        try {
            build_experiment(parse_config(j));
            FAIL("expected a validation error");
        } catch (const validation_error& e) {
            CHECK(e.module_name() == "picard");
        }
    }
    {
        // lambda not constant on orbits
        json j = minimal_config();
        j["group"] = {{"type", "A"}, {"rank", 3}};
        j["action_generators"] = {{3, 2, 1}};
        j["A_D"] = json::array();
        j["lambda"] = {"1", "2", "3"};
        CHECK_THROWS_AS(build_experiment(parse_config(j)), validation_error);
    }
}

TEST_CASE("predict matches the stored fixtures for the nine configurations") {
    std::ifstream in(std::string(WCOUNTS_SOURCE_DIR) + "/tests/fixtures/predict_fixtures.json");
    REQUIRE(in.good());
    json fixtures;
    in >> fixtures;
    for (const auto& f : fixtures.at("cases")) {
        json j;
        j["group"] = {{"type", f.at("type").get<std::string>()}, {"rank", f.at("rank").get<int>()}};
        j["lambda"] = "log_anticanonical";
        j["A_D"] = f.at("A_D");
        j["S"] = {"inf"};
        Experiment ex = build_experiment(parse_config(j));
        json p = predict(ex);
        CAPTURE(f.dump());
        CHECK(p["a"].get<std::string>() == f.at("a").get<std::string>());
        CHECK(p["b"].get<int>() == f.at("b").get<int>());
        CHECK(p["pic_rank"].get<int>() == f.at("pic_rank").get<int>());
        CHECK(p["achievers_D"] == f.at("achievers_D"));
        CHECK(p["achievers_offD"] == f.at("achievers_offD"));
        CHECK(p["d_per_place"]["inf"].get<int>() == f.at("d_inf").get<int>());
        CHECK(p["lambda"] == f.at("lambda"));
        CHECK(p["is_log_anticanonical"].get<bool>());
        CHECK(p["log_anticanonical_a_is_one"].get<bool>());
    }
}

TEST_CASE("predict example: PGL_3 split, full boundary, S = {inf}") {
    json j = minimal_config();
    j["group"] = {{"type", "A"}, {"rank", 2}};
    j["A_D"] = {1, 2};
    Experiment ex = build_experiment(parse_config(j));
    json p = predict(ex);
    CHECK(p["a"].get<std::string>() == "1");
    CHECK(p["b"].get<int>() == 2);
    CHECK(p["lambda"] == json::array({"2", "2"}));
}

TEST_CASE("report verdicts are a pure function of saved series") {
    json j = minimal_config();
    j["thresholds"] = {{"kind", "doubling"}, {"start", 500}, {"steps", 6}};
    Experiment ex = build_experiment(parse_config(j));
    CountSeries series = run_count(ex);

    json rep1 = make_report(ex, series);
    CHECK(rep1["verdict"]["pass"].get<bool>());

    // round-trip the series through the CSV. identical verdicts must come back
    std::string path = "roundtrip_counts_test.csv";
    write_counts_csv(path, series, 1.0);
    CountSeries series2 = read_counts_csv(path);
    json rep2 = make_report(ex, series2);
    CHECK(rep1 == rep2);
    std::remove(path.c_str());
}

TEST_CASE("zeta summary reports the pole probe table") {
    json j = minimal_config();
    j["A_D"] = json::array();
    j["lambda"] = {"2"};
    j["zeta"] = {{"prime_cutoff", 200}, {"s_values", {1.5, 3.0}}, {"delta_on", true}, {"depth", 20}};
    Experiment ex = build_experiment(parse_config(j));
    json z = zeta_summary(ex);
    CHECK(z["a"].get<std::string>() == "1");
    REQUIRE(z["pole_probe"].size() == 2);
    CHECK(z["pole_probe"][0]["s"].get<double>() == doctest::Approx(1.5));
    CHECK(z["pole_probe"][0]["product"].get<double>() > 1.0);
}

TEST_CASE("count query assembly honors the configured knobs") {
    json j = minimal_config();
    j["budget"] = 999;
    j["threads"] = 3;
    Experiment ex = build_experiment(parse_config(j));
    CountQuery q = make_count_query(ex);
    CHECK(q.budget == 999);
    CHECK(q.threads == 3);
    CHECK(q.n == 2);
    CHECK(q.sel.indices == std::vector<int>{0});
    CHECK(q.lam.coeffs == std::vector<Rational>{Rational(1)});
}
