#include "netident/io.hpp"

#include "../support/oracles.hpp"
#include "doctest.h"

using namespace netident;
using netident::io::json;

TEST_CASE("graph json round trip") {
    std::vector<std::string> warnings;
    auto g = io::graph_from_json(json::parse(R"({"n":4,"edges":[[1,2],[3,3],[2,4]]})"), &warnings);
    CHECK(g.edge_count() == 2);
    CHECK(warnings.size() == 1);
    CHECK(io::graph_from_json(io::to_json(g)) == g);
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n":2,"edges":[[1,3]]})")), InputError);
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"edges":[]})")), InputError);
}

TEST_CASE("malformed json reports line and column") {
    try {
        io::parse_json("{\n  \"n\": 3,\n  \"edges\": [[1,2],\n}", "g.json");
        FAIL("expected FormatError");
    } catch (const io::FormatError& e) {
        std::string msg = e.what();
        CHECK(msg.find("g.json:4:") != std::string::npos);
    }
}

TEST_CASE("chronicle and markov round trips") {
    auto d = derived_set(oracle::path(4), NodeSet{1});
    auto c = io::chronicle_from_json(io::to_json(d.chronicle));
    CHECK(c.initial == d.chronicle.initial);
    CHECK(c.forces == d.chronicle.forces);

    auto w = random_weights(oracle::cycle(4), 12);
    auto seq = markov_sequence(w, NodeSet{1, 2}, NodeSet{2, 3}, 5);
    auto back = io::markov_from_json(json::parse(io::to_json(seq).dump()));
    CHECK(back.order == 5);
    CHECK(back.v_in == seq.v_in);
    for (std::size_t k = 0; k < seq.data.size(); ++k) CHECK(back.data[k] == seq.data[k]);

    auto bad = io::to_json(seq);
    bad["K"] = 9;
    CHECK_THROWS_AS(io::markov_from_json(bad), InputError);
}

TEST_CASE("dynamics json accepts bare numbers") {
    auto d = io::dynamics_from_json(json::parse(R"({"A":0.5,"B":1,"C":[[2]],"E":1,"K":1})"));
    CHECK(d.A(0, 0) == 0.5);
    CHECK(d.C(0, 0) == 2.0);
    CHECK_THROWS_AS(io::dynamics_from_json(json::parse(R"({"A":[[1,2]],"B":1,"C":1,"E":1,"K":1})")), InputError);
}

TEST_CASE("matrix csv round trip is exact") {
    auto w = random_weights(oracle::complete(5), 77);
    auto text = io::matrix_to_csv(w.entries());
    CHECK(text.rfind("5\n", 0) == 0);
    CHECK(io::matrix_from_csv(text, "m.csv") == w.entries());
    CHECK_THROWS_AS(io::matrix_from_csv("2\n1,2\n3\n", "m.csv"), InputError);
    CHECK_THROWS_AS(io::matrix_from_csv("2\n1,x\n3,4\n", "m.csv"), InputError);
}
