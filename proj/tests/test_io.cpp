#include "towerdyn/io.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace towerdyn;
using towerdyn::io::json;

TEST_CASE("leveled set json") {
    LeveledSet s = LeveledSet::single(3, DyadicSet::interval(Rational(0), Rational(1, 2)));
    s.insert(-1, DyadicSet::unit());
    json j = io::to_json(s);
    CHECK(j["3"] == "0:1/2^1");
    CHECK(j["-1"] == "0:1");
    CHECK(io::leveled_set_from_json(j, "set") == s);

    CHECK_THROWS_AS(io::leveled_set_from_json(json::parse(R"({"x": "0:1/2"})"), "set"),
                    io::ConfigError);
    CHECK_THROWS_AS(io::leveled_set_from_json(json::parse(R"({"0": "0:1/3"})"), "set"),
                    io::ConfigError);
    CHECK_THROWS_AS(io::leveled_set_from_json(json::parse("[]"), "set"), io::ConfigError);
}

TEST_CASE("simple function json") {
    testgen::Rng rng(909);
    for (int i = 0; i < 50; ++i) {
        SimpleFunction f = testgen::random_simple_function(rng, 5);
        CHECK(io::simple_function_from_json(io::to_json(f), "phi") == f);
    }
    CHECK_THROWS_AS(io::simple_function_from_json(json::parse(R"([{"level": 0}])"), "phi"),
                    io::ConfigError);
}

TEST_CASE("system descriptors round trip") {
    TowerSystem bdp = io::system_from_spec("bdp");
    CHECK(bdp.kind() == TowerSystem::Kind::bdp);
    CHECK(io::system_from_json(io::system_descriptor(bdp)).kind() == TowerSystem::Kind::bdp);

    TowerSystem geo = io::system_from_spec("geometric:3/4");
    CHECK(geo.rho() == Rational(3, 4));
    TowerSystem geo2 = io::system_from_json(io::system_descriptor(geo));
    CHECK(geo2.rho() == Rational(3, 4));
    CHECK(geo2.level_measure(2) == Rational(9, 16));

    std::map<long long, StepFunction> window;
    window.emplace(1, StepFunction({Rational(0), Rational(1, 2)}, {Rational(2), Rational(1, 2)}));
    TowerSystem custom = TowerSystem::custom("bump", std::move(window),
                                             StepFunction::constant(Rational(1)));
    TowerSystem custom2 = io::system_from_json(io::system_descriptor(custom));
    CHECK(custom2.density(1) == custom.density(1));
    CHECK(custom2.density(5) == custom.density(5));
    CHECK(custom2.name() == "bump");

    CHECK(io::system_from_spec("identity").uniform_density_over(-4, 4));
    CHECK_THROWS_AS(io::system_from_spec("no-such-system"), io::ConfigError);
    CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"kind": "weird"})")), io::ConfigError);
    CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"kind": "geometric"})")), io::ConfigError);
}

TEST_CASE("csv rows") {
    std::ostringstream os;
    io::write_csv_header(os);
    io::write_csv_row(os, 3, Rational(5, 4), "mu_fwd");
    io::write_csv_row(os, -2, Rational(-1, 3), "defect");
    CHECK(os.str() == "n,value_num,value_den,tag\n3,5,4,mu_fwd\n-2,-1,3,defect\n");
}

TEST_CASE("reports serialize deterministically") {
    TowerSystem sys = TowerSystem::bdp();
    DynamicsReport a = classify(sys, 20);
    DynamicsReport b = classify(sys, 20);
    CHECK(io::to_json(a).dump(2) == io::to_json(b).dump(2));

    json j = io::to_json(a);
    CHECK(j["labels"]["mixing"]["verdict"] == "holds-to-horizon");
    CHECK(j["labels"]["kitai"]["verdict"] == "fails-with-certificate");
    CHECK(j["ksc"]["certificate"]["verified"] == true);
}

TEST_CASE("witness triples serialize exact rationals") {
    TowerSystem sys = TowerSystem::bdp();
    WitnessTriple w = optimal_witness(sys, 0, DyadicSet::unit(), 3, Rational(1, 2));
    json j = io::to_json(w);
    CHECK(j["defect_fwd"] == "1/4");
    CHECK(j["witness"] == "1/2^1:1");
}
