#include "netident/errors.hpp"
#include "netident/netsim.hpp"

#include "../support/oracles.hpp"
#include "doctest.h"

using namespace netident;

namespace {

Eigen::MatrixXd two_by_two() {
    Eigen::MatrixXd x(2, 2);
    x << 1, 2, 2, 3;
    return x;
}

double markov_gap(const MarkovSequence& a, const MarkovSequence& b) {
    double gap = 0.0;
    for (std::size_t k = 0; k < a.data.size(); ++k) {
        double scale = std::max(1.0, a.data[k].cwiseAbs().maxCoeff());
        gap = std::max(gap, (a.data[k] - b.data[k]).cwiseAbs().maxCoeff() / scale);
    }
    return gap;
}

}  // namespace

TEST_CASE("positive class membership") {
    auto p3 = oracle::path(3);
    Eigen::MatrixXd x(3, 3);
    x << -1, 2, 0, 2, 5, 1, 0, 1, 0;
    CHECK(in_positive_class(p3, x));
    CHECK(in_sign_free_class(p3, x));

    Eigen::MatrixXd asym = x;
    asym(0, 1) = 3;
    CHECK_FALSE(in_positive_class(p3, asym));

    Eigen::MatrixXd negative = x;
    negative(0, 1) = negative(1, 0) = -2;
    CHECK_FALSE(in_positive_class(p3, negative));
    CHECK(in_sign_free_class(p3, negative));

    Eigen::MatrixXd extra = x;
    extra(0, 2) = extra(2, 0) = 0.5;
    CHECK_FALSE(in_positive_class(p3, extra));

    Eigen::MatrixXd missing = x;
    missing(1, 2) = missing(2, 1) = 0;
    CHECK_FALSE(in_positive_class(p3, missing));
    CHECK_FALSE(in_sign_free_class(p3, missing));

    Eigen::MatrixXd diag = x;
    diag.diagonal() << 100, -100, 0;
    CHECK(in_positive_class(p3, diag));

    CHECK_THROWS_AS(WeightMatrix(p3, negative), InputError);
    CHECK_FALSE(in_positive_class(p3, Eigen::MatrixXd::Zero(2, 2)));
}

TEST_CASE("random weights") {
    auto p2 = oracle::path(2);
    auto lap = random_weights(p2, 17, 0.5, 2.0, DiagonalMode::Laplacian);
    double w = lap(1, 2);
    CHECK(w >= 0.5);
    CHECK(w <= 2.0);
    CHECK(lap(1, 1) == -w);
    CHECK(lap(2, 2) == -w);

    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + trial % 10;
        Graph g(n, oracle::random_edges(n, 0.5, rng));
        auto a = random_weights(g, static_cast<std::uint64_t>(trial));
        auto b = random_weights(g, static_cast<std::uint64_t>(trial));
        CHECK(in_positive_class(g, a.entries()));
        CHECK(a.entries() == b.entries());
        for (auto [i, j] : g.edges()) {
            CHECK(a(i, j) >= kDefaultWeightLo);
            CHECK(a(i, j) <= kDefaultWeightHi);
        }
        for (Node i = 1; i <= n; ++i) CHECK(std::abs(a(i, i)) <= kDefaultWeightHi);
    }

    CHECK_THROWS_AS(random_weights(p2, 1, 0.0, 1.0), InputError);
    CHECK_THROWS_AS(random_weights(p2, 1, 2.0, 1.0), InputError);
}

TEST_CASE("markov sequence of the 2x2 example") {
    auto x = two_by_two();
    // Oracle: explicit powers X^2 = [[5,8],[8,13]], X^3 = [[21,34],[34,55]].
    CHECK(oracle::matrix_power(x, 2)(0, 0) == 5.0);
    CHECK(oracle::matrix_power(x, 3)(0, 0) == 21.0);

    WeightMatrix w(oracle::path(2), x);
    auto seq = markov_sequence(w, NodeSet{1}, NodeSet{1}, 3);
    REQUIRE(seq.data.size() == 4);
    CHECK(seq.data[0](0, 0) == 1.0);
    CHECK(seq.data[1](0, 0) == 1.0);
    CHECK(seq.data[2](0, 0) == 5.0);
    CHECK(seq.data[3](0, 0) == 21.0);

    auto full = markov_sequence(w, NodeSet{1, 2}, NodeSet{1, 2}, 0);
    CHECK(full.data[0] == Eigen::MatrixXd::Identity(2, 2));
    auto disjoint = markov_sequence(w, NodeSet{1}, NodeSet{2}, 0);
    CHECK(disjoint.data[0](0, 0) == 0.0);

    CHECK_THROWS_AS(markov_sequence(w, NodeSet{1}, NodeSet{1}, -1), InputError);
    CHECK_THROWS_AS(markov_sequence(w, NodeSet{3}, NodeSet{1}, 1), InputError);
}

TEST_CASE("sparse and dense markov sequences agree with matrix powers") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 7;
        Graph g(n, oracle::random_edges(n, 0.5, rng));
        auto x = random_weights(g, static_cast<std::uint64_t>(100 + trial));
        auto v_in = oracle::random_subset(n, 1 + trial % n, rng);
        auto v_out = oracle::random_subset(n, 1 + (trial / 2) % n, rng);
        auto sparse = markov_sequence(x, v_in, v_out, 6);
        auto dense = markov_sequence(x.entries(), v_in, v_out, 6);
        Eigen::MatrixXd m = selection_matrix(n, v_in);
        Eigen::MatrixXd nt = selection_matrix(n, v_out);
        for (int k = 0; k <= 6; ++k) {
            Eigen::MatrixXd want = nt.transpose() * oracle::matrix_power(x.entries(), k) * m;
            CHECK(oracle::max_relative_error(sparse.data[static_cast<std::size_t>(k)], want) < 1e-12);
            CHECK(oracle::max_relative_error(dense.data[static_cast<std::size_t>(k)], want) < 1e-12);
        }

        auto square = markov_sequence(x, v_in, v_in, 6);
        for (const auto& d : square.data) CHECK(d.isApprox(d.transpose(), 1e-14));
    }
}

TEST_CASE("transfer matrix evaluation") {
    Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(1, 1);
    CHECK(transfer_eval(zero, NodeSet{1}, NodeSet{1}, 2.0)(0, 0).real() == doctest::Approx(0.5));

    // (10 I - X)^{-1} = [[7, 2], [2, 9]] / 59.
    auto t = transfer_eval(two_by_two(), NodeSet{1}, NodeSet{1}, 10.0);
    CHECK(t(0, 0).real() == doctest::Approx(7.0 / 59.0).epsilon(1e-14));
    CHECK(t(0, 0).imag() == doctest::Approx(0.0));

    CHECK_THROWS_AS(transfer_eval(zero, NodeSet{1}, NodeSet{1}, 0.0), ArithmeticError);
}

TEST_CASE("markov parameters are the Laurent coefficients of the transfer matrix") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 3; ++trial) {
        int n = 3 + trial;
        Graph g(n, oracle::random_connected_edges(n, 0.4, rng));
        auto x = random_weights(g, static_cast<std::uint64_t>(trial));
        auto v_in = oracle::random_subset(n, 2, rng);
        auto v_out = oracle::random_subset(n, 2, rng);
        const int order = 8;
        auto seq = markov_sequence(x, v_in, v_out, order);
        const std::complex<double> s(100.0 * x.entries().norm(), 3.0);
        Eigen::MatrixXcd series = Eigen::MatrixXcd::Zero(2, 2);
        std::complex<double> power = 1.0 / s;
        for (int k = 0; k <= order; ++k) {
            series += seq.data[static_cast<std::size_t>(k)].cast<std::complex<double>>() * power;
            power /= s;
        }
        CHECK((series - transfer_eval(x, v_in, v_out, s)).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("directed scaling counterexample") {
    // Directed path 1 -> 2 -> 3 with unit weights, only node 1 exposed.
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(3, 3);
    x(0, 1) = 1.0;
    x(1, 2) = 1.0;
    auto ce = scaling_counterexample(x, MatrixClass::Directed, NodeSet{1}, NodeSet{1}, 2.0);
    CHECK(ce.hidden == NodeSet{2, 3});
    CHECK_FALSE(ce.hidden_block_only);
    CHECK(ce.perturbed != x);
    CHECK(ce.perturbed(0, 1) == 2.0);
    CHECK(markov_gap(markov_sequence(x, NodeSet{1}, NodeSet{1}, 10),
                     markov_sequence(ce.perturbed, NodeSet{1}, NodeSet{1}, 10)) < 1e-12);
    CHECK_NOTHROW(DirectedWeightMatrix(ce.perturbed));

    CHECK_THROWS_AS(scaling_counterexample(x, MatrixClass::Directed, NodeSet{1}, NodeSet{1}, 1.0), InputError);
    CHECK_THROWS_AS(scaling_counterexample(x, MatrixClass::Directed, NodeSet{1}, NodeSet{1}, -2.0), InputError);
    CHECK_THROWS_AS(scaling_counterexample(x, MatrixClass::Directed, NodeSet{1, 2}, NodeSet{3}), PreconditionError);
}

TEST_CASE("sign-free counterexample flips the hidden cross block") {
    Eigen::MatrixXd x(2, 2);
    x << 1.5, 0.7, 0.7, -2.0;
    auto ce = scaling_counterexample(x, MatrixClass::SignFree, NodeSet{1}, NodeSet{1});
    Eigen::MatrixXd want(2, 2);
    want << 1.5, -0.7, -0.7, -2.0;
    CHECK(ce.perturbed == want);
    CHECK(ce.epsilon == -1.0);
    CHECK(markov_gap(markov_sequence(x, NodeSet{1}, NodeSet{1}, 8),
                     markov_sequence(ce.perturbed, NodeSet{1}, NodeSet{1}, 8)) < 1e-14);

    for (double s : {2.5, -7.0, 11.0, 0.3, 40.0}) {
        auto a = transfer_eval(x, NodeSet{1}, NodeSet{1}, s);
        auto b = transfer_eval(ce.perturbed, NodeSet{1}, NodeSet{1}, s);
        CHECK(std::abs(a(0, 0) - b(0, 0)) < 1e-12);
    }

    CHECK_THROWS_AS(scaling_counterexample(x, MatrixClass::SignFree, NodeSet{1}, NodeSet{1}, 2.0), InputError);
    Eigen::MatrixXd asym = x;
    asym(0, 1) = 1.0;
    CHECK_THROWS_AS(scaling_counterexample(asym, MatrixClass::SignFree, NodeSet{1}, NodeSet{1}), InputError);
}

TEST_CASE("decoupled hidden block is shifted instead") {
    Eigen::MatrixXd x(2, 2);
    x << 1.0, 0.0, 0.0, 3.0;
    auto ce = scaling_counterexample(x, MatrixClass::Directed, NodeSet{1}, NodeSet{1});
    CHECK(ce.hidden_block_only);
    CHECK(ce.perturbed(1, 1) == 4.0);
    CHECK(markov_gap(markov_sequence(x, NodeSet{1}, NodeSet{1}, 6),
                     markov_sequence(ce.perturbed, NodeSet{1}, NodeSet{1}, 6)) == 0.0);
}

TEST_CASE("random directed counterexamples match Markov parameters up to order 2n") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + trial % 6;
        auto x = random_directed_weights(n, 0.4, static_cast<std::uint64_t>(trial)).entries();
        auto v_in = oracle::random_subset(n, 1, rng);
        auto v_out = oracle::random_subset(n, 1, rng);
        auto ce = scaling_counterexample(x, MatrixClass::Directed, v_in, v_out);
        CHECK((ce.perturbed - x).cwiseAbs().maxCoeff() > 0.0);
        CHECK(markov_gap(markov_sequence(x, v_in, v_out, 2 * n), markov_sequence(ce.perturbed, v_in, v_out, 2 * n)) < 1e-10);
    }
}
