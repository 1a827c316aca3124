#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace netident {

// Nodes are 1-based everywhere in the public interface.
using Node = int;

using Edge = std::pair<Node, Node>;

/// Sorted, duplicate-free list of node identifiers.
class NodeSet {
   public:
    NodeSet() = default;
    NodeSet(std::initializer_list<Node> nodes);
    explicit NodeSet(std::vector<Node> nodes);

    static NodeSet range(Node first, Node last);  // inclusive

    bool contains(Node v) const;
    bool empty() const noexcept { return members_.empty(); }
    std::size_t size() const noexcept { return members_.size(); }
    Node operator[](std::size_t i) const { return members_[i]; }

    const std::vector<Node>& members() const noexcept { return members_; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    bool is_subset_of(const NodeSet& other) const;

    friend bool operator==(const NodeSet&, const NodeSet&) = default;

   private:
    std::vector<Node> members_;
};

NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);

/// Undirected simple graph on nodes 1..n, stored as sorted adjacency lists.
///
/// Self-loops handed to the constructor are dropped (diagonal entries of the
/// weight matrices are free anyway) and counted in stripped_loops(); repeated
/// edges collapse to one.
class Graph {
   public:
    Graph() = default;
    Graph(int n, const std::vector<Edge>& edges);

    int n() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edge_count_; }
    int stripped_loops() const noexcept { return stripped_loops_; }

    // Edges as (i, j) with i < j, lexicographically sorted.
    std::vector<Edge> edges() const;

    // Unchecked view of the neighbours of v, ascending.
    std::span<const Node> adjacent(Node v) const {
        return {adjacency_.data() + offsets_[v - 1], adjacency_.data() + offsets_[v]};
    }
    int degree(Node v) const { return static_cast<int>(offsets_[v] - offsets_[v - 1]); }

    NodeSet neighbours(Node v) const;
    // {v} together with its neighbours.
    NodeSet closed_neighbourhood(Node v) const;
    bool has_edge(Node a, Node b) const;

    bool contains(Node v) const noexcept { return v >= 1 && v <= n_; }
    NodeSet vertices() const { return NodeSet::range(1, n_); }

    // Throws InputError unless every member of s lies in 1..n.
    void check_nodes(const NodeSet& s, const char* what) const;
    void check_node(Node v, const char* what) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.offsets_ == b.offsets_ && a.adjacency_ == b.adjacency_;
    }

   private:
    int n_ = 0;
    std::size_t edge_count_ = 0;
    int stripped_loops_ = 0;
    std::vector<std::size_t> offsets_ = {0};
    std::vector<Node> adjacency_;
};

/// Subgraph induced by a node set, relabelled to 1..|nodes| in ascending order.
class InducedSubgraph {
   public:
    InducedSubgraph(const Graph& parent, NodeSet nodes);

    const NodeSet& nodes() const noexcept { return nodes_; }
    const Graph& graph() const noexcept { return graph_; }

    Node to_parent(Node local) const { return nodes_[static_cast<std::size_t>(local - 1)]; }
    // 0 when the parent node is not part of the subgraph.
    Node to_local(Node parent) const;

   private:
    NodeSet nodes_;
    Graph graph_;
};

InducedSubgraph induced_subgraph(const Graph& g, const NodeSet& s);

/// The n x |s| matrix P with P(i, j) = 1 iff node i is the j-th member of s.
Eigen::MatrixXd selection_matrix(int n, const NodeSet& s);

// Connected components, each as a sorted node set, ordered by smallest member.
std::vector<NodeSet> connected_components(const Graph& g);

}  // namespace netident
