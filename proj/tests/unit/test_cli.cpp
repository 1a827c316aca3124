#include "netident/cli.hpp"
#include "netident/io.hpp"

#include "doctest.h"

#include <sstream>

using namespace netident;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kPath3 = R"({"n":3,"edges":[[1,2],[2,3]]})";

}  // namespace

TEST_CASE("help lists formats") {
    auto r = run({"--help"});
    CHECK(r.code == 0);
    auto text = r.out + r.err;
    CHECK(text.find("zfs") != std::string::npos);
    CHECK(text.find("json") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"zfs", "min", "--graph", kPath3}).code == cli::kOk);
    CHECK(run({"bogus"}).code == cli::kInputFailure);
    CHECK(run({"zfs", "min", "--graph", R"({"n":3,"edges":[[1,9]]})"}).code == cli::kInputFailure);
    CHECK(run({"zfs", "min", "--graph", "{\"n\":3,"}).code == cli::kInputFailure);
    CHECK(run({"zfs", "min", "--graph", "/nonexistent/graph.json"}).code == cli::kInputFailure);

    // Nilpotent coupling fails the check: domain failure.
    auto nil = run({"hod", "check", "--dyn", R"({"A":[[0,0],[0,0]],"B":[[0],[1]],"C":[[1,0]],"E":[[1,0],[0,1]],"K":[[0,1],[0,0]]})"});
    CHECK(nil.code == cli::kDomainFailure);
}

TEST_CASE("zfs and certify output") {
    auto z = io::json::parse(run({"zfs", "min", "--graph", kPath3}).out);
    CHECK(z["set"] == io::json::array({1}));

    auto c = io::json::parse(run({"ident", "certify", "--graph", kPath3, "--in", "[2]", "--out-nodes", "[1,2,3]", "--format", "json"}).out);
    CHECK(c["verdict"] == "CERTIFIED_PARTIAL");
    CHECK(c["certified_nodes"] == io::json::array({2}));
}

TEST_CASE("simulate then recover") {
    auto sim = run({"sim", "random", "--graph", kPath3, "--seed", "5"});
    REQUIRE(sim.code == 0);
    auto x = io::matrix_from_csv(sim.out, "sim");
    CHECK(run({"sim", "random", "--graph", kPath3, "--seed", "5"}).out == sim.out);

    io::json m = io::matrix_to_json(x);
    auto markov = run({"sim", "markov", "--graph", kPath3, "--matrix", m.dump(), "--in", "[1]", "--out-nodes", "[1]"});
    REQUIRE(markov.code == 0);
    auto rec = run({"ident", "recover", "--graph", kPath3, "--markov", markov.out});
    REQUIRE(rec.code == 0);
    auto y = io::matrix_from_csv(rec.out, "rec");
    CHECK((x - y).cwiseAbs().maxCoeff() < 1e-9);

    auto blocked = run({"ident", "recover", "--graph", kPath3, "--markov",
                        run({"sim", "markov", "--graph", kPath3, "--matrix", m.dump(), "--in", "[2]", "--out-nodes", "[2]"}).out,
                        "--target", "[1,2]"});
    CHECK(blocked.code == cli::kDomainFailure);
}
