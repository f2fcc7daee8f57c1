#include <doctest.h>

#include <sstream>

#include "cpinf/io.hpp"
#include "test_support.hpp"

using namespace cpinf;
using namespace cpinf::testing;

TEST_CASE("document parsing enforces the schema") {
    SUBCASE("valid gravitational state") {
        const Json j = Json::parse(R"({
            "masses": [1.0, 2.0],
            "interaction": "gravitational",
            "positions": [[0,0,0],[3,0,0]],
            "velocities": [[0,0,0],[0,1,0]]
        })");
        const AlbouyState s = parse_state(j);
        CHECK(s.size() == 2);
        CHECK(s.X()[0] == doctest::Approx(-2.0));  // centre of mass at 1
    }

    SUBCASE("coulomb requires charges") {
        Json j = Json::parse(R"({
            "masses": [1.0, 1.0],
            "interaction": "coulomb",
            "positions": [[0,0,0],[1,0,0]],
            "velocities": [[0,0,0],[0,0,0]]
        })");
        CHECK_THROWS_AS(parse_state(j), ParseError);
        j["charges"] = {1.0, -1.0};
        CHECK_NOTHROW(parse_state(j));
    }

    SUBCASE("charges with gravity are rejected") {
        const Json j = Json::parse(R"({
            "masses": [1.0, 1.0],
            "charges": [1.0, -1.0],
            "interaction": "gravitational",
            "positions": [[0,0,0],[1,0,0]],
            "velocities": [[0,0,0],[0,0,0]]
        })");
        CHECK_THROWS_AS(parse_state(j), ParseError);
    }

    SUBCASE("unknown fields are rejected") {
        const Json j = Json::parse(R"({
            "masses": [1.0, 1.0],
            "interaction": "gravitational",
            "positions": [[0,0,0],[1,0,0]],
            "velocities": [[0,0,0],[0,0,0]],
            "extra": 1
        })");
        CHECK_THROWS_AS(parse_state(j), ParseError);
    }

    SUBCASE("malformed pieces") {
        CHECK_THROWS_AS(parse_state(Json::parse("[1,2,3]")), ParseError);
        CHECK_THROWS_AS(parse_state(Json::parse(R"({"masses":[1.0],"interaction":"vortex",
            "positions":[[0,0,0]],"velocities":[[0,0,0]]})")),
                        ParseError);
        CHECK_THROWS_AS(parse_state(Json::parse(R"({"masses":[1.0,1.0],
            "interaction":"gravitational","positions":[[0,0,0]],
            "velocities":[[0,0,0],[0,0,0]]})")),
                        ParseError);
        CHECK_THROWS_AS(parse_state(Json::parse(R"({"masses":[1.0,1.0],
            "interaction":"gravitational","positions":[[0,0],[1,0]],
            "velocities":[[0,0,0],[0,0,0]]})")),
                        ParseError);
        // system-only documents still need masses + interaction
        CHECK_THROWS_AS(parse_document(Json::parse(R"({"interaction":"gravitational"})"),
                                       false),
                        ParseError);
        // positions without velocities
        CHECK_THROWS_AS(parse_document(Json::parse(R"({"masses":[1.0],
            "interaction":"gravitational","positions":[[0,0,0]]})"),
                                       false),
                        ParseError);
    }
}

TEST_CASE("serialization round trip preserves the reduced integrals exactly") {
    Rng rng(401);
    for (int trial = 0; trial < 20; ++trial) {
        auto sys = random_gravitational(rng, 3);
        const AlbouyState s = random_state(rng, sys);
        const AlbouyState back = parse_state(state_to_json(s));
        const IntegralValues a = reduced_integral_map(s);
        const IntegralValues b = reduced_integral_map(back);
        CHECK(b.H == doctest::Approx(a.H).epsilon(1e-12));
        CHECK(norm(b.L - a.L) <= 1e-12 * std::max(1.0, norm(a.L)));
    }
}

TEST_CASE("jsonl sequences") {
    auto sys = BodySystem::gravitational({1.0, 1.0, 1.0});
    const StateSequence seq = generate_horizontal(sys, {0, 1}, 2, 1.0, {20.0, 2.0, 5});
    std::stringstream buffer;
    write_jsonl_sequence(buffer, seq.states);

    SUBCASE("round trip") {
        const auto states = read_jsonl_sequence(buffer);
        REQUIRE(states.size() == 5);
        for (std::size_t k = 0; k < 5; ++k)
            CHECK(states[k].Z()[2] == doctest::Approx(seq.states[k].Z()[2]).epsilon(1e-15));
    }

    SUBCASE("mixed systems are rejected") {
        buffer << R"({"masses":[2.0,1.0,1.0],"interaction":"gravitational",)"
               << R"("positions":[[0,0,0],[1,0,0],[0,1,0]],)"
               << R"("velocities":[[0,0,0],[0,0,0],[0,0,0]]})" << '\n';
        CHECK_THROWS_AS(read_jsonl_sequence(buffer), ParseError);
    }

    SUBCASE("empty input is an error") {
        std::stringstream empty;
        CHECK_THROWS_AS(read_jsonl_sequence(empty), ParseError);
    }
}

TEST_CASE("diagnostics CSV carries the documented columns") {
    auto sys = BodySystem::gravitational({1.0, 1.0, 1.0});
    const StateSequence seq = generate_horizontal(sys, {0, 1}, 2, 1.0, {20.0, 2.0, 5});
    const SequenceDiagnostics diag = diagnose(seq);
    std::stringstream out;
    write_diagnostics_csv(out, diag);
    std::string header;
    std::getline(out, header);
    CHECK(header ==
          "k,z,residual_norm,H,K,I,V,Lx,Ly,Lz,Iz,Kz,lambda_norm,ratio_kplusv,"
          "min_pair_dist,min_center_dist");
    std::size_t rows = 0;
    std::string line;
    while (std::getline(out, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("format_double survives a string round trip bit-exactly") {
    Rng rng(402);
    for (int trial = 0; trial < 200; ++trial) {
        const double v = uniform(rng, -1.0, 1.0) * std::pow(10.0, uniform(rng, -12.0, 12.0));
        CHECK(std::stod(format_double(v)) == v);
    }
}
