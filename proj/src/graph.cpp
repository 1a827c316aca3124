#include "netident/graph.hpp"

#include "netident/errors.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <queue>
#include <string>

namespace netident {

NodeSet::NodeSet(std::initializer_list<Node> nodes) : NodeSet(std::vector<Node>(nodes)) {}

NodeSet::NodeSet(std::vector<Node> nodes) : members_(std::move(nodes)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

NodeSet NodeSet::range(Node first, Node last) {
    NodeSet s;
    if (last >= first) {
        s.members_.resize(static_cast<std::size_t>(last - first + 1));
        std::iota(s.members_.begin(), s.members_.end(), first);
    }
    return s;
}

bool NodeSet::contains(Node v) const { return std::binary_search(members_.begin(), members_.end(), v); }

bool NodeSet::is_subset_of(const NodeSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    std::vector<Node> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
    std::vector<Node> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    std::vector<Node> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
}

Graph::Graph(int n, const std::vector<Edge>& edges) : n_(n) {
    if (n < 0) throw InputError("graph: node count must be non-negative, got " + std::to_string(n));

    std::vector<Edge> normalized;
    normalized.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (!contains(a) || !contains(b)) {
            throw InputError("graph: edge {" + std::to_string(a) + "," + std::to_string(b) +
                             "} has an endpoint outside 1.." + std::to_string(n));
        }
        if (a == b) {
            ++stripped_loops_;
            continue;
        }
        normalized.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(normalized.begin(), normalized.end());
    normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());
    edge_count_ = normalized.size();

    std::vector<std::size_t> degree(static_cast<std::size_t>(n) + 1, 0);
    for (auto [a, b] : normalized) {
        ++degree[a];
        ++degree[b];
    }
    offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int v = 1; v <= n; ++v) offsets_[v] = offsets_[v - 1] + degree[v];

    adjacency_.resize(offsets_.back());
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (auto [a, b] : normalized) {
        adjacency_[cursor[a - 1]++] = b;
        adjacency_[cursor[b - 1]++] = a;
    }
    for (int v = 1; v <= n; ++v) {
        std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v - 1]),
                  adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]));
    }
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Node v = 1; v <= n_; ++v) {
        for (Node w : adjacent(v)) {
            if (v < w) out.emplace_back(v, w);
        }
    }
    return out;
}

void Graph::check_node(Node v, const char* what) const {
    if (!contains(v)) {
        throw InputError(std::string(what) + ": node " + std::to_string(v) + " is outside 1.." + std::to_string(n_));
    }
}

void Graph::check_nodes(const NodeSet& s, const char* what) const {
    for (Node v : s) check_node(v, what);
}

NodeSet Graph::neighbours(Node v) const {
    check_node(v, "neighbours");
    auto adj = adjacent(v);
    return NodeSet(std::vector<Node>(adj.begin(), adj.end()));
}

NodeSet Graph::closed_neighbourhood(Node v) const {
    check_node(v, "closed_neighbourhood");
    auto adj = adjacent(v);
    std::vector<Node> out(adj.begin(), adj.end());
    out.push_back(v);
    return NodeSet(std::move(out));
}

bool Graph::has_edge(Node a, Node b) const {
    if (!contains(a) || !contains(b)) return false;
    auto adj = adjacent(a);
    return std::binary_search(adj.begin(), adj.end(), b);
}

InducedSubgraph::InducedSubgraph(const Graph& parent, NodeSet nodes) : nodes_(std::move(nodes)) {
    parent.check_nodes(nodes_, "induced_subgraph");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (Node w : parent.adjacent(nodes_[i])) {
            if (w <= nodes_[i]) continue;
            if (Node local = to_local(w); local != 0) edges.emplace_back(static_cast<Node>(i + 1), local);
        }
    }
    graph_ = Graph(static_cast<int>(nodes_.size()), edges);
}

Node InducedSubgraph::to_local(Node parent) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), parent);
    if (it == nodes_.end() || *it != parent) return 0;
    return static_cast<Node>(std::distance(nodes_.begin(), it) + 1);
}

InducedSubgraph induced_subgraph(const Graph& g, const NodeSet& s) { return InducedSubgraph(g, s); }

Eigen::MatrixXd selection_matrix(int n, const NodeSet& s) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(s.size()));
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j] < 1 || s[j] > n) {
            throw InputError("selection_matrix: node " + std::to_string(s[j]) + " is outside 1.." + std::to_string(n));
        }
        p(s[j] - 1, static_cast<Eigen::Index>(j)) = 1.0;
    }
    return p;
}

std::vector<NodeSet> connected_components(const Graph& g) {
    std::vector<NodeSet> out;
    std::vector<char> seen(static_cast<std::size_t>(g.n()) + 1, 0);
    for (Node start = 1; start <= g.n(); ++start) {
        if (seen[start]) continue;
        std::vector<Node> members{start};
        seen[start] = 1;
        for (std::size_t head = 0; head < members.size(); ++head) {
            for (Node w : g.adjacent(members[head])) {
                if (!seen[w]) {
                    seen[w] = 1;
                    members.push_back(w);
                }
            }
        }
        out.emplace_back(std::move(members));
    }
    return out;
}

}  // namespace netident
