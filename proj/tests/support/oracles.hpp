#pragma once

// Independent reference computations for the tests. Nothing here calls into the
// library's algorithms; only the Graph container is shared.

#include "netident/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using netident::Edge;
using netident::Graph;
using netident::Node;
using netident::NodeSet;

// Colour-change rule applied by repeated full sweeps over an adjacency matrix.
inline std::set<Node> naive_derived(int n, const std::vector<Edge>& edges, const std::set<Node>& start) {
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n) + 1, std::vector<bool>(static_cast<std::size_t>(n) + 1));
    for (auto [a, b] : edges) {
        if (a == b) continue;
        adj[a][b] = adj[b][a] = true;
    }
    std::set<Node> black = start;
    bool changed = true;
    while (changed) {
        changed = false;
        for (Node u = 1; u <= n; ++u) {
            if (!black.count(u)) continue;
            int white = 0;
            Node last = 0;
            for (Node v = 1; v <= n; ++v) {
                if (adj[u][v] && !black.count(v)) {
                    ++white;
                    last = v;
                }
            }
            if (white == 1) {
                black.insert(last);
                changed = true;
            }
        }
    }
    return black;
}

inline std::set<Node> to_set(const NodeSet& s) { return {s.begin(), s.end()}; }

// Smallest zero forcing set size by plain enumeration of all 2^n subsets.
inline int brute_force_min_zfs_size(int n, const std::vector<Edge>& edges) {
    int best = n;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        int size = __builtin_popcount(mask);
        if (size >= best) continue;
        std::set<Node> start;
        for (int v = 0; v < n; ++v) {
            if (mask & (1u << v)) start.insert(v + 1);
        }
        if (static_cast<int>(naive_derived(n, edges, start).size()) == n) best = size;
    }
    return best;
}

// Whether some subset of the given size forces the whole graph.
inline bool any_zfs_of_size(int n, const std::vector<Edge>& edges, int size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != size) continue;
        std::set<Node> start;
        for (int v = 0; v < n; ++v) {
            if (mask & (1u << v)) start.insert(v + 1);
        }
        if (static_cast<int>(naive_derived(n, edges, start).size()) == n) return true;
    }
    return false;
}

inline Eigen::MatrixXd matrix_power(const Eigen::MatrixXd& x, int k) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(x.rows(), x.cols());
    for (int i = 0; i < k; ++i) out = out * x;
    return out;
}

// ---------------------------------------------------------------------------
// Graph generators

inline std::vector<Edge> path_edges(int n) {
    std::vector<Edge> e;
    for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

inline std::vector<Edge> cycle_edges(int n) {
    auto e = path_edges(n);
    if (n >= 3) e.emplace_back(n, 1);
    return e;
}

inline std::vector<Edge> complete_edges(int n) {
    std::vector<Edge> e;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
    }
    return e;
}

inline Graph path(int n) { return Graph(n, path_edges(n)); }
inline Graph cycle(int n) { return Graph(n, cycle_edges(n)); }
inline Graph complete(int n) { return Graph(n, complete_edges(n)); }

inline std::vector<Edge> random_edges(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> e;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (coin(rng)) e.emplace_back(i, j);
        }
    }
    return e;
}

inline std::vector<Edge> random_tree_edges(int n, std::mt19937_64& rng) {
    std::vector<Edge> e;
    for (int v = 2; v <= n; ++v) {
        std::uniform_int_distribution<int> parent(1, v - 1);
        e.emplace_back(parent(rng), v);
    }
    return e;
}

// Random spanning tree plus extra edges with probability p: always connected.
inline std::vector<Edge> random_connected_edges(int n, double p, std::mt19937_64& rng) {
    auto e = random_tree_edges(n, rng);
    std::bernoulli_distribution coin(p);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            if (coin(rng)) e.emplace_back(i, j);
        }
    }
    // Relabel so the spanning tree does not always hang off node 1.
    std::vector<Node> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& [a, b] : e) {
        a = perm[static_cast<std::size_t>(a - 1)];
        b = perm[static_cast<std::size_t>(b - 1)];
    }
    return e;
}

inline NodeSet random_subset(int n, int size, std::mt19937_64& rng) {
    std::vector<Node> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(size));
    return NodeSet(all);
}

inline double max_relative_error(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
    double scale = std::max(1e-300, want.cwiseAbs().maxCoeff());
    return (got - want).cwiseAbs().maxCoeff() / scale;
}

}  // namespace oracle
