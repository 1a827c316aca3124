#pragma once

#include "netident/graph.hpp"
#include "netident/netsim.hpp"
#include "netident/zero_forcing.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace netident {

inline constexpr double kDefaultDegeneracyTolerance = 1e-12;

struct ForceOutcome;

/// Entries (X^k)_{ij} for i, j in a level set U and k = 0..max_order, as if U were
/// both the input and the output set. Symmetric in (i, j).
class ExtendedMarkovTable {
   public:
    // Seeds U = V_I ∩ V_O from the overlapping block of every Markov parameter.
    static ExtendedMarkovTable from_markov(const MarkovSequence& markov);

    NodeSet level_set() const { return NodeSet(nodes_); }
    bool contains(Node v) const;
    int max_order() const noexcept { return max_order_; }

    // (X^k)_{ij}; i, j must be in the level set and 0 <= k <= max_order.
    double value(int k, Node i, Node j) const;

    // Nodes in the order they joined the table.
    const std::vector<Node>& insertion_order() const noexcept { return nodes_; }

   private:
    friend ForceOutcome force_step(const ExtendedMarkovTable&, const Graph&, Node, Node, double, double);

    int index(Node v) const;

    std::vector<Node> nodes_;
    int max_order_ = 0;
    std::vector<Eigen::MatrixXd> powers_;  // powers_[k] indexed by insertion position
};

struct ForceDiagnostic {
    Force force;
    double weight = 0.0;  // recovered X_uv
    double weight_squared = 0.0;
    // Magnitude of the terms cancelled to obtain X_uv^2, divided by X_uv^2.
    double cancellation = 0.0;
    // Running product of cancellation factors: a crude relative error amplification bound.
    double error_bound = 0.0;
    int order_after = 0;
};

struct ForceOutcome {
    ExtendedMarkovTable table;
    ForceDiagnostic diagnostic;
};

/// One step of the recursion: extend the table from U to U ∪ {v} through u -> v,
/// recovering X_uv, then (X^k)_{vw} for w in U and (X^k)_{vv}. Costs two orders.
ForceOutcome force_step(const ExtendedMarkovTable& table, const Graph& g, Node u, Node v,
                        double tolerance = kDefaultDegeneracyTolerance, double running_bound = 1.0);

/// Base Markov order sufficient to replay `forces` forces: 2L + 2.
int required_order(std::size_t forces);
inline int required_order(const ForcingChronicle& chronicle) { return required_order(chronicle.forces.size()); }

struct ReconstructionResult {
    NodeSet nodes;  // rows/columns of `recovered`
    Eigen::MatrixXd recovered;
    NodeSet level_set;
    int residual_order = 0;
    std::vector<ForceDiagnostic> diagnostics;
};

struct IdentifyOptions {
    double tolerance = kDefaultDegeneracyTolerance;
    // Replayed instead of the deterministic chronicle of D(V_I ∩ V_O) when set.
    std::optional<ForcingChronicle> chronicle;
};

/// Rebuilds the principal submatrix of X over `target` from Markov parameters,
/// following forces from V_I ∩ V_O until the target is covered.
/// Throws UncertifiedTargetError if target is not inside D(V_I ∩ V_O).
ReconstructionResult identify(const MarkovSequence& markov, const Graph& g, const NodeSet& target,
                              const IdentifyOptions& options = {});

}  // namespace netident
