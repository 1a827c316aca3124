#include "netident/identifiability.hpp"

#include <sstream>

namespace netident {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::CertifiedFull:
            return "CERTIFIED_FULL";
        case Verdict::CertifiedPartial:
            return "CERTIFIED_PARTIAL";
        case Verdict::Uncertified:
            return "UNCERTIFIED";
    }
    return "UNCERTIFIED";
}

namespace {

std::string list(const NodeSet& s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ']';
    return os.str();
}

}  // namespace

IdentifiabilityReport certify(const Graph& g, const NodeSet& v_in, const NodeSet& v_out) {
    g.check_nodes(v_in, "certify: input nodes");
    g.check_nodes(v_out, "certify: output nodes");

    IdentifiabilityReport report;
    report.common = set_intersection(v_in, v_out);
    auto derived = derived_set(g, report.common);
    report.derived = derived.derived;
    report.chronicle = std::move(derived.chronicle);
    report.certified_nodes = report.derived;
    report.certified_full = static_cast<int>(report.derived.size()) == g.n();

    if (report.certified_full) {
        report.verdict = Verdict::CertifiedFull;
    } else if (!report.certified_nodes.empty()) {
        report.verdict = Verdict::CertifiedPartial;
    } else {
        report.verdict = Verdict::Uncertified;
    }

    if (!report.certified_full) {
        report.notes.push_back(
            "V_I ∩ V_O is not a zero forcing set; the zero forcing condition is sufficient only, so nodes outside " +
            list(report.certified_nodes) + " are uncertified, not shown to be unidentifiable");
    }
    if (auto only_in = set_difference(v_in, v_out); !only_in.empty()) {
        report.notes.push_back("input-only nodes " + list(only_in) + " do not take part in forcing");
    }
    if (auto only_out = set_difference(v_out, v_in); !only_out.empty()) {
        report.notes.push_back("output-only nodes " + list(only_out) + " do not take part in forcing");
    }
    if (auto hidden = hidden_nodes(g.n(), v_in, v_out); !hidden.empty()) {
        report.notes.push_back("nodes " + list(hidden) +
                               " are neither inputs nor outputs; for directed or sign-free weight classes this "
                               "rules out identifiability (see sim counterexample)");
    }
    return report;
}

bool certify_subgraph(const Graph& g, const NodeSet& s, const NodeSet& v_in, const NodeSet& v_out) {
    g.check_nodes(s, "certify_subgraph: target");
    g.check_nodes(v_in, "certify_subgraph: input nodes");
    g.check_nodes(v_out, "certify_subgraph: output nodes");
    return s.is_subset_of(derived_set(g, set_intersection(v_in, v_out)).derived);
}

NodeSet hidden_nodes(int n, const NodeSet& v_in, const NodeSet& v_out) {
    return set_difference(NodeSet::range(1, n), set_union(v_in, v_out));
}

bool necessity_check_directed(const Graph& g, const NodeSet& v_in, const NodeSet& v_out) {
    g.check_nodes(v_in, "necessity_check_directed: input nodes");
    g.check_nodes(v_out, "necessity_check_directed: output nodes");
    return hidden_nodes(g.n(), v_in, v_out).empty();
}

}  // namespace netident
