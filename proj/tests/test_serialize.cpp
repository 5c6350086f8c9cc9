#include "phipart/error.hpp"
#include "phipart/partitioner.hpp"
#include "phipart/serialize.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace phipart;

TEST_CASE("csv parsing") {
    const auto s = parse_samples_csv("x,y\n1,2\n3,4.5\n-1e-3,+7\n");
    CHECK(s.rows() == 3);
    CHECK(s.dim() == 2);
    CHECK(s(2, 0) == -1e-3);
    CHECK(s(2, 1) == 7.0);
    CHECK(parse_samples_csv("1\r\n2\r\n\n3\n").rows() == 3);

    try {
        parse_samples_csv("1,2\n3,4\n5\n");
        FAIL("ragged row accepted");
    } catch (const ParseError& e) {
        CHECK(e.row() == 3);
    }
    try {
        parse_samples_csv("1,2\n3,abc\n");
        FAIL("bad number accepted");
    } catch (const ParseError& e) {
        CHECK(e.row() == 2);
        CHECK(e.column() == 2);
    }
    CHECK_THROWS_AS(parse_samples_csv("1\nnan\n"), ParseError);
    CHECK_THROWS_AS(load_samples("/nonexistent/file.csv"), ParseError);
}

TEST_CASE("csv round trip is exact") {
    const auto s = draw(DistributionSpec::gaussian({0.0, 5.0}, {1e-7, 3e5}), 500, 3);
    const auto path = std::filesystem::temp_directory_path() / "phipart_roundtrip.csv";
    write_samples(path, s);
    const auto back = load_samples(path);
    std::filesystem::remove(path);
    CHECK(back == s);
    CHECK(parse_samples_csv("0.1\n").values()[0] == 0.1);
}

TEST_CASE("extended reals") {
    CHECK(to_json(ExtReal::neg_inf()) == "-inf");
    CHECK(to_json(ExtReal::pos_inf()) == "inf");
    CHECK(ext_real_from_json(to_json(ExtReal::finite(2.5))) == ExtReal::finite(2.5));
    CHECK(ext_real_from_json(nlohmann::json("-inf")) == ExtReal::neg_inf());
    CHECK_THROWS_AS(ext_real_from_json(nlohmann::json("huge")), BadParams);
}

TEST_CASE("partition JSON round trip") {
    const auto q = draw(DistributionSpec::gaussian({0.0, 0.0}, {1.0, 1.0}), 90, 5);
    const auto p = build_partition(q, 3);
    const auto j = to_json(p);
    CHECK(j["schema_version"] == kSchemaVersion);
    CHECK(j["m"] == 9);
    const auto text = format_report(j);
    CHECK(partition_from_json(nlohmann::json::parse(text)) == p);

    auto broken = j;
    broken["cells"][0][0] = nlohmann::json::array({1.0});
    CHECK_THROWS_AS(partition_from_json(broken), BadParams);
    auto missing = j;
    missing.erase("m0");
    CHECK_THROWS_AS(partition_from_json(missing), BadParams);
}

TEST_CASE("distribution and experiment JSON") {
    const auto g = distribution_from_json(nlohmann::json::parse(R"({"kind":"gaussian","mean":[0,1],"sd":[1,2]})"));
    CHECK(g == DistributionSpec::gaussian({0.0, 1.0}, {1.0, 2.0}));
    for (const auto& s : {g, DistributionSpec::uniform({0.0}, {2.0}), DistributionSpec::chi2({3.0}),
                          DistributionSpec::exponential({2.0}, {1.0}), DistributionSpec::cauchy({0.0}, {1.0})}) {
        CHECK(distribution_from_json(to_json(s)) == s);
    }
    CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"kind":"gaussian","loc":[0]})")), BadParams);

    const auto cfg = experiment_from_json(nlohmann::json::parse(R"({
        "p": {"kind": "gaussian", "loc": [0], "scale": [1]},
        "q": {"kind": "gaussian", "loc": [1], "scale": [1]},
        "n_schedule": [64], "m0_schedule": [4], "replications": 2})"));
    CHECK(cfg.family == "kl");
    CHECK(cfg.decompose);
    CHECK(experiment_from_json(to_json(cfg)).n_schedule == cfg.n_schedule);
    CHECK_THROWS_AS(experiment_from_json(nlohmann::json::parse(R"({"p": {}})")), ConfigError);
}

TEST_CASE("reports") {
    CHECK(format_report(nlohmann::json::object()).find("schema_version") != std::string::npos);
    const auto plan = to_json(n_star(4, 1, 0.1, 0.05));
    CHECK(plan["constants_used"]["c1"] == 165888.0);
    CHECK(plan["constants_used"]["C"] == 1.0);

    const auto path = std::filesystem::temp_directory_path() / "phipart_report.json";
    write_report(path, plan);
    CHECK(read_json(path) == plan);
    {
        std::ofstream(path) << "{not json";
    }
    CHECK_THROWS_AS(read_json(path), ParseError);
    std::filesystem::remove(path);
}
