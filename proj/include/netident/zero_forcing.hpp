#pragma once

#include "netident/graph.hpp"

#include <optional>
#include <vector>

namespace netident {

struct Force {
    Node u;  // forcing (black) node
    Node v;  // node turned black

    friend bool operator==(const Force&, const Force&) = default;
};

/// Ordered witness of how an initial black set grew to its derived set.
struct ForcingChronicle {
    NodeSet initial;
    std::vector<Force> forces;

    // initial plus every forced node.
    NodeSet derived() const;
};

/// Mutable black/white colouring of a graph, used to replay forces.
class Coloring {
   public:
    Coloring(const Graph& g, const NodeSet& black);

    bool is_black(Node v) const { return black_[static_cast<std::size_t>(v)] != 0; }
    int white_neighbour_count(Node u) const { return white_count_[static_cast<std::size_t>(u)]; }

    // The unique white neighbour of u if u is black and has exactly one.
    std::optional<Node> forced_by(Node u) const;

    // Applies u -> v; throws PreconditionError if the color-change rule does not allow it.
    void apply(const Force& f);

    NodeSet black() const;

   private:
    const Graph* graph_;
    std::vector<char> black_;
    std::vector<int> white_count_;
};

struct DerivedSet {
    NodeSet derived;
    ForcingChronicle chronicle;
};

/// Applies the color-change rule to a fixpoint. Forces are taken smallest forcing
/// node first, so the chronicle is deterministic.
DerivedSet derived_set(const Graph& g, const NodeSet& z);

bool is_zero_forcing_set(const Graph& g, const NodeSet& z);

// Replays a chronicle on g; throws PreconditionError on the first invalid step.
NodeSet replay(const Graph& g, const ForcingChronicle& chronicle);

inline constexpr int kDefaultExactSearchCap = 25;

/// Smallest zero forcing set; ties broken by the lexicographically smallest
/// member list. Refuses (InputError) above `cap` nodes.
NodeSet minimum_zero_forcing_set(const Graph& g, int cap = kDefaultExactSearchCap);

/// Valid zero forcing set from the n - diam construction, processed per connected
/// component. Tree components also try the path-cover construction and keep the
/// smaller result.
NodeSet zfs_heuristic(const Graph& g);

// Starting from z, keep adding the lowest-index node left white until D(z) = V.
NodeSet repair_to_zero_forcing(const Graph& g, NodeSet z);

}  // namespace netident
