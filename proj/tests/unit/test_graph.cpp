#include "netident/errors.hpp"
#include "netident/graph.hpp"

#include "../support/oracles.hpp"
#include "doctest.h"

using namespace netident;

TEST_CASE("neighbours on small graphs") {
    auto p3 = oracle::path(3);
    CHECK(p3.neighbours(2) == NodeSet{1, 3});
    CHECK(p3.neighbours(1) == NodeSet{2});
    CHECK(oracle::complete(4).neighbours(3) == NodeSet{1, 2, 4});
    CHECK(p3.closed_neighbourhood(2) == NodeSet{1, 2, 3});
    CHECK_THROWS_AS(p3.neighbours(0), InputError);
    CHECK_THROWS_AS(p3.neighbours(4), InputError);
}

TEST_CASE("graph construction normalizes edges") {
    Graph g(3, {{2, 1}, {1, 2}, {3, 3}, {2, 3}});
    CHECK(g.edge_count() == 2);
    CHECK(g.stripped_loops() == 1);
    CHECK(g.edges() == std::vector<Edge>{{1, 2}, {2, 3}});
    CHECK_FALSE(g.has_edge(1, 3));
    CHECK_THROWS_AS(Graph(3, {{1, 4}}), InputError);
    CHECK_THROWS_AS(Graph(-1, {}), InputError);
}

TEST_CASE("node sets are sorted and deduplicated") {
    NodeSet s{4, 1, 4, 2};
    CHECK(s.members() == std::vector<Node>{1, 2, 4});
    CHECK(set_intersection(s, NodeSet{2, 3, 4}) == NodeSet{2, 4});
    CHECK(set_union(s, NodeSet{3}) == NodeSet{1, 2, 3, 4});
    CHECK(set_difference(s, NodeSet{2}) == NodeSet{1, 4});
    CHECK(NodeSet{1, 4}.is_subset_of(s));
}

TEST_CASE("induced subgraphs") {
    auto p4 = oracle::path(4);
    auto sub = induced_subgraph(p4, NodeSet{1, 2, 4});
    // Relabelled: 1 -> 1, 2 -> 2, 4 -> 3.
    CHECK(sub.graph().edges() == std::vector<Edge>{{1, 2}});
    CHECK(sub.to_parent(3) == 4);
    CHECK(sub.to_local(4) == 3);
    CHECK(sub.to_local(3) == 0);

    auto c4 = oracle::cycle(4);
    CHECK(induced_subgraph(c4, NodeSet{1, 3}).graph().edge_count() == 0);
    CHECK_THROWS_AS(induced_subgraph(p4, NodeSet{5}), InputError);
}

TEST_CASE("induced subgraph on all nodes is the graph itself") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 1 + trial % 12;
        Graph g(n, oracle::random_edges(n, 0.4, rng));
        CHECK(induced_subgraph(g, g.vertices()).graph() == g);
    }
}

TEST_CASE("neighbourhoods are symmetric on random graphs") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + trial % 15;
        Graph g(n, oracle::random_edges(n, 0.3, rng));
        for (Node i = 1; i <= n; ++i) {
            for (Node j = 1; j <= n; ++j) CHECK(g.neighbours(i).contains(j) == g.neighbours(j).contains(i));
        }
    }
}

TEST_CASE("selection matrices") {
    Eigen::MatrixXd p = selection_matrix(3, NodeSet{2});
    CHECK(p.rows() == 3);
    CHECK(p.cols() == 1);
    CHECK(p(0, 0) == 0.0);
    CHECK(p(1, 0) == 1.0);
    CHECK(p(2, 0) == 0.0);

    Eigen::MatrixXd q = selection_matrix(3, NodeSet{1, 3});
    CHECK(q.col(0) == Eigen::Vector3d(1, 0, 0));
    CHECK(q.col(1) == Eigen::Vector3d(0, 0, 1));
    CHECK(selection_matrix(2, NodeSet{1, 2}) == Eigen::MatrixXd::Identity(2, 2));
    CHECK_THROWS_AS(selection_matrix(2, NodeSet{3}), InputError);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + trial % 9;
        int size = static_cast<int>(rng() % static_cast<std::uint64_t>(n + 1));
        auto s = oracle::random_subset(n, size, rng);
        Eigen::MatrixXd sel = selection_matrix(n, s);
        CHECK((sel.transpose() * sel).isApprox(Eigen::MatrixXd::Identity(size, size)));
    }
}

TEST_CASE("connected components") {
    Graph g(5, {{1, 3}, {4, 5}});
    auto comps = connected_components(g);
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == NodeSet{1, 3});
    CHECK(comps[1] == NodeSet{2});
    CHECK(comps[2] == NodeSet{4, 5});
}
