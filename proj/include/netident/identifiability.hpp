#pragma once

#include "netident/graph.hpp"
#include "netident/zero_forcing.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace netident {

// Certification is a sufficient condition only, so there is no "not identifiable" verdict.
enum class Verdict { CertifiedFull, CertifiedPartial, Uncertified };

std::string_view to_string(Verdict v);

struct IdentifiabilityReport {
    NodeSet common;  // W = V_I ∩ V_O
    NodeSet derived;  // D(W)
    ForcingChronicle chronicle;
    bool certified_full = false;
    NodeSet certified_nodes;
    Verdict verdict = Verdict::Uncertified;
    std::vector<std::string> notes;
};

/// Zero forcing certificate for (G; V_I; V_O): the principal submatrix of the state
/// matrix over D(V_I ∩ V_O) is identifiable, and the whole matrix when that set is V.
IdentifiabilityReport certify(const Graph& g, const NodeSet& v_in, const NodeSet& v_out);

// True iff s ⊆ D(V_I ∩ V_O).
bool certify_subgraph(const Graph& g, const NodeSet& s, const NodeSet& v_in, const NodeSet& v_out);

/// V_I ∪ V_O = V. Without it, directed and sign-free classes are never identifiable
/// (see scaling_counterexample for the witness).
bool necessity_check_directed(const Graph& g, const NodeSet& v_in, const NodeSet& v_out);

// Nodes that are neither inputs nor outputs.
NodeSet hidden_nodes(int n, const NodeSet& v_in, const NodeSet& v_out);

}  // namespace netident
