#include "netident/reconstruct.hpp"

#include "netident/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace netident {

namespace {

std::string list(const NodeSet& s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ']';
    return os.str();
}

std::string force_name(Node u, Node v) { return std::to_string(u) + "->" + std::to_string(v); }

void check_markov(const MarkovSequence& markov) {
    if (markov.order < 0 || markov.data.size() != static_cast<std::size_t>(markov.order) + 1) {
        throw InputError("markov sequence: expected order + 1 matrices");
    }
    for (const auto& m : markov.data) {
        if (m.rows() != static_cast<Eigen::Index>(markov.v_out.size()) ||
            m.cols() != static_cast<Eigen::Index>(markov.v_in.size())) {
            throw InputError("markov sequence: every matrix must be |v_out| x |v_in|");
        }
    }
}

}  // namespace

int ExtendedMarkovTable::index(Node v) const {
    auto it = std::find(nodes_.begin(), nodes_.end(), v);
    return it == nodes_.end() ? -1 : static_cast<int>(it - nodes_.begin());
}

bool ExtendedMarkovTable::contains(Node v) const { return index(v) >= 0; }

double ExtendedMarkovTable::value(int k, Node i, Node j) const {
    int a = index(i);
    int b = index(j);
    if (a < 0 || b < 0 || k < 0 || k > max_order_) {
        throw PreconditionError("extended Markov table: entry (k=" + std::to_string(k) + ", " + std::to_string(i) +
                                ", " + std::to_string(j) + ") is not available");
    }
    return powers_[static_cast<std::size_t>(k)](a, b);
}

ExtendedMarkovTable ExtendedMarkovTable::from_markov(const MarkovSequence& markov) {
    check_markov(markov);
    ExtendedMarkovTable table;
    auto common = set_intersection(markov.v_in, markov.v_out);
    table.nodes_ = common.members();
    table.max_order_ = markov.order;

    std::vector<Eigen::Index> rows;
    std::vector<Eigen::Index> cols;
    for (Node w : common) {
        rows.push_back(std::lower_bound(markov.v_out.begin(), markov.v_out.end(), w) - markov.v_out.begin());
        cols.push_back(std::lower_bound(markov.v_in.begin(), markov.v_in.end(), w) - markov.v_in.begin());
    }
    const auto m = static_cast<Eigen::Index>(common.size());
    for (const auto& data : markov.data) {
        Eigen::MatrixXd block(m, m);
        for (Eigen::Index a = 0; a < m; ++a) {
            for (Eigen::Index b = 0; b < m; ++b) block(a, b) = data(rows[a], cols[b]);
        }
        table.powers_.push_back((block + block.transpose()) / 2.0);
    }
    return table;
}

int required_order(std::size_t forces) { return 2 * static_cast<int>(forces) + 2; }

ForceOutcome force_step(const ExtendedMarkovTable& table, const Graph& g, Node u, Node v, double tolerance,
                        double running_bound) {
    g.check_node(u, "force_step");
    g.check_node(v, "force_step");
    const int iu = table.index(u);
    if (iu < 0) throw PreconditionError("force " + force_name(u, v) + ": forcing node is not in the level set");
    if (table.contains(v)) throw PreconditionError("force " + force_name(u, v) + ": target is already in the level set");
    if (!g.has_edge(u, v)) throw PreconditionError("force " + force_name(u, v) + ": nodes are not adjacent");

    // Z = V_u \ {v}, which the color-change rule puts inside the level set.
    std::vector<Node> rest{u};
    for (Node w : g.adjacent(u)) {
        if (w == v) continue;
        if (!table.contains(w)) {
            throw PreconditionError("force " + force_name(u, v) + ": neighbour " + std::to_string(w) +
                                    " of the forcing node is outside the level set, so " + std::to_string(u) +
                                    " has more than one white neighbour");
        }
        rest.push_back(w);
    }

    const int order = table.max_order();
    if (order < 3) {
        throw InsufficientDataError("force " + force_name(u, v) + ": Markov order exhausted (level has order " +
                                        std::to_string(order) + ", a force needs 3)",
                                    3);
    }

    const auto m = static_cast<Eigen::Index>(table.nodes_.size());
    const auto z = static_cast<Eigen::Index>(rest.size());
    std::vector<Eigen::Index> idx;
    for (Node w : rest) idx.push_back(table.index(w));
    Eigen::VectorXd x_uz(z);
    for (Eigen::Index a = 0; a < z; ++a) x_uz(a) = table.powers_[1](iu, idx[a]);

    const auto& p = table.powers_;
    const double uu2 = p[2](iu, iu);
    const double known = x_uz.squaredNorm();
    const double weight_sq = uu2 - known;
    const double scale = std::abs(uu2) + known;
    if (weight_sq < -tolerance * scale) {
        std::ostringstream os;
        os << "force " << force_name(u, v) << ": recovered squared edge weight " << weight_sq
           << " is negative; the data does not come from a positive-weight system on this graph";
        throw InconsistencyError(os.str());
    }
    if (weight_sq <= tolerance * scale) {
        throw DegeneracyError("force " + force_name(u, v) +
                              ": measured data inconsistent with the positive weight class, forced edge weight vanishes");
    }
    const double weight = std::sqrt(weight_sq);

    const int next_order = order - 2;
    ForceOutcome out;
    ExtendedMarkovTable& next = out.table;
    next.nodes_ = table.nodes_;
    next.nodes_.push_back(v);
    next.max_order_ = next_order;
    next.powers_.reserve(static_cast<std::size_t>(next_order) + 1);

    for (int k = 0; k <= next_order; ++k) {
        const auto& pk = p[static_cast<std::size_t>(k)];
        Eigen::MatrixXd grown(m + 1, m + 1);
        grown.topLeftCorner(m, m) = pk;
        if (k == 0) {
            grown.row(m).setZero();
            grown.col(m).setZero();
            grown(m, m) = 1.0;
            next.powers_.push_back(std::move(grown));
            continue;
        }

        // (X^k)_{vw} = ((X^{k+1})_{uw} - sum_z X_uz (X^k)_{zw}) / X_uv for every w in U.
        Eigen::RowVectorXd vw = p[static_cast<std::size_t>(k) + 1].row(iu);
        for (Eigen::Index a = 0; a < z; ++a) vw -= x_uz(a) * pk.row(idx[a]);
        vw /= weight;

        // (X^k)_{vv} = ((X^{k+2})_{uu} - sum over (i, j) in V_u^2 other than (v, v)) / X_uv^2.
        double cancelled = 0.0;
        for (Eigen::Index a = 0; a < z; ++a) {
            for (Eigen::Index b = 0; b < z; ++b) cancelled += x_uz(a) * pk(idx[a], idx[b]) * x_uz(b);
            cancelled += 2.0 * weight * vw(idx[a]) * x_uz(a);
        }
        const double vv = (p[static_cast<std::size_t>(k) + 2](iu, iu) - cancelled) / weight_sq;

        grown.block(m, 0, 1, m) = vw;
        grown.block(0, m, m, 1) = vw.transpose();
        grown(m, m) = vv;
        next.powers_.push_back(std::move(grown));
    }

    out.diagnostic.force = {u, v};
    out.diagnostic.weight = weight;
    out.diagnostic.weight_squared = weight_sq;
    out.diagnostic.cancellation = scale / weight_sq;
    out.diagnostic.error_bound = running_bound * out.diagnostic.cancellation;
    out.diagnostic.order_after = next_order;
    return out;
}

ReconstructionResult identify(const MarkovSequence& markov, const Graph& g, const NodeSet& target,
                              const IdentifyOptions& options) {
    check_markov(markov);
    g.check_nodes(markov.v_in, "identify: input nodes");
    g.check_nodes(markov.v_out, "identify: output nodes");
    g.check_nodes(target, "identify: target");

    const auto common = set_intersection(markov.v_in, markov.v_out);
    ForcingChronicle chronicle;
    if (options.chronicle) {
        chronicle = *options.chronicle;
        if (chronicle.initial != common) {
            throw InputError("identify: supplied chronicle must start from V_I ∩ V_O = " + list(common));
        }
        try {
            replay(g, chronicle);
        } catch (const PreconditionError& e) {
            throw InputError(std::string("identify: supplied chronicle is invalid: ") + e.what());
        }
    } else {
        chronicle = derived_set(g, common).chronicle;
    }

    const auto derived = chronicle.derived();
    if (!target.is_subset_of(derived)) {
        throw UncertifiedTargetError("identify: target nodes " + list(set_difference(target, derived)) +
                                     " lie outside D(V_I ∩ V_O) = " + list(derived) +
                                     "; the forcing recursion cannot reach them (check with ident certify)");
    }

    // Only the prefix of the chronicle that reaches the target is replayed.
    std::size_t needed = 0;
    std::size_t missing = set_difference(target, common).size();
    for (std::size_t i = 0; i < chronicle.forces.size() && missing > 0; ++i) {
        if (target.contains(chronicle.forces[i].v)) --missing;
        needed = i + 1;
    }
    const int required = required_order(needed);
    if (markov.order < required) {
        throw InsufficientDataError("identify: " + std::to_string(needed) + " forces need Markov parameters up to order " +
                                        std::to_string(required) + ", got " + std::to_string(markov.order),
                                    required);
    }

    ReconstructionResult result;
    auto table = ExtendedMarkovTable::from_markov(markov);
    double bound = 1.0;
    for (std::size_t i = 0; i < needed; ++i) {
        const auto& f = chronicle.forces[i];
        auto step = force_step(table, g, f.u, f.v, options.tolerance, bound);
        bound = step.diagnostic.error_bound;
        result.diagnostics.push_back(step.diagnostic);
        table = std::move(step.table);
    }

    const auto t = static_cast<Eigen::Index>(target.size());
    result.nodes = target;
    result.recovered = Eigen::MatrixXd::Zero(t, t);
    for (Eigen::Index a = 0; a < t; ++a) {
        const Node i = target[static_cast<std::size_t>(a)];
        result.recovered(a, a) = table.value(1, i, i);
        for (Eigen::Index b = a + 1; b < t; ++b) {
            const Node j = target[static_cast<std::size_t>(b)];
            if (!g.has_edge(i, j)) continue;
            const double w = table.value(1, i, j);
            if (!(w > 0.0)) {
                std::ostringstream os;
                os << "identify: recovered weight " << w << " on edge {" << i << "," << j
                   << "} is not positive; the data does not come from a positive-weight system on this graph";
                throw InconsistencyError(os.str());
            }
            result.recovered(a, b) = w;
            result.recovered(b, a) = w;
        }
    }
    result.level_set = table.level_set();
    result.residual_order = table.max_order();
    return result;
}

}  // namespace netident
