#include "netident/netsim.hpp"

#include "netident/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace netident {

namespace {

// Uniform in [lo, hi] from the top 53 bits; the mt19937_64 stream is fixed by the
// standard, so results are identical across platforms.
class Uniform {
   public:
    explicit Uniform(std::uint64_t seed) : engine_(seed) {}

    double operator()(double lo, double hi) {
        double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

   private:
    std::mt19937_64 engine_;
};

void check_range(double lo, double hi) {
    if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
        std::ostringstream os;
        os << "weight range must satisfy 0 < lo <= hi, got [" << lo << ", " << hi << "]";
        throw InputError(os.str());
    }
}

bool structure_matches(const Graph& g, const Eigen::MatrixXd& x, bool positive) {
    if (x.rows() != g.n() || x.cols() != g.n()) return false;
    if (!x.allFinite()) return false;
    for (Node i = 1; i <= g.n(); ++i) {
        for (Node j = i + 1; j <= g.n(); ++j) {
            double a = x(i - 1, j - 1);
            if (a != x(j - 1, i - 1)) return false;
            bool edge = g.has_edge(i, j);
            if (edge && (positive ? !(a > 0.0) : a == 0.0)) return false;
            if (!edge && a != 0.0) return false;
        }
    }
    return true;
}

void check_square(const Eigen::MatrixXd& x, const char* what) {
    if (x.rows() != x.cols()) throw InputError(std::string(what) + ": matrix must be square");
}

}  // namespace

bool in_sign_free_class(const Graph& g, const Eigen::MatrixXd& x) { return structure_matches(g, x, false); }

bool in_positive_class(const Graph& g, const Eigen::MatrixXd& x) { return structure_matches(g, x, true); }

WeightMatrix::WeightMatrix(Graph g, Eigen::MatrixXd entries) : graph_(std::move(g)), entries_(std::move(entries)) {
    if (!in_positive_class(graph_, entries_)) {
        throw InputError("weight matrix is not symmetric with positive entries exactly on the graph's edges");
    }
}

DirectedWeightMatrix::DirectedWeightMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    check_square(entries_, "directed weight matrix");
    for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
        for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
            if (i != j && !(entries_(i, j) >= 0.0)) {
                throw InputError("directed weight matrix: off-diagonal entries must be nonnegative");
            }
        }
    }
}

WeightMatrix random_weights(const Graph& g, std::uint64_t seed, double lo, double hi, DiagonalMode mode) {
    check_range(lo, hi);
    Uniform uniform(seed);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (auto [a, b] : g.edges()) {
        double w = uniform(lo, hi);
        x(a - 1, b - 1) = w;
        x(b - 1, a - 1) = w;
    }
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        x(i, i) = mode == DiagonalMode::Free ? uniform(-hi, hi) : -x.row(i).sum();
    }
    return WeightMatrix(g, std::move(x));
}

DirectedWeightMatrix random_directed_weights(int n, double density, std::uint64_t seed, double lo, double hi) {
    check_range(lo, hi);
    if (n < 0 || !(density >= 0.0 && density <= 1.0)) throw InputError("random_directed_weights: bad size or density");
    Uniform uniform(seed);
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (uniform(0.0, 1.0) < density) x(i, j) = uniform(lo, hi);
        }
    }
    for (int i = 0; i < n; ++i) x(i, i) = uniform(-hi, hi);
    return DirectedWeightMatrix(std::move(x));
}

namespace {

MarkovSequence start_sequence(int n, const NodeSet& v_in, const NodeSet& v_out, int order) {
    if (order < 0) throw InputError("markov_sequence: order must be >= 0");
    MarkovSequence seq;
    seq.v_in = v_in;
    seq.v_out = v_out;
    seq.order = order;
    seq.data.reserve(static_cast<std::size_t>(order) + 1);
    // Validates the node sets as a side effect.
    selection_matrix(n, v_in);
    selection_matrix(n, v_out);
    return seq;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& y, const NodeSet& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), y.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = y.row(rows[i] - 1);
    return out;
}

}  // namespace

MarkovSequence markov_sequence(const WeightMatrix& x, const NodeSet& v_in, const NodeSet& v_out, int order) {
    const Graph& g = x.graph();
    auto seq = start_sequence(g.n(), v_in, v_out, order);
    Eigen::MatrixXd y = selection_matrix(g.n(), v_in);
    Eigen::MatrixXd next(y.rows(), y.cols());
    for (int k = 0;; ++k) {
        seq.data.push_back(select_rows(y, v_out));
        if (k == order) break;
        for (Node i = 1; i <= g.n(); ++i) {
            auto row = next.row(i - 1);
            row = x(i, i) * y.row(i - 1);
            for (Node j : g.adjacent(i)) row += x(i, j) * y.row(j - 1);
        }
        y.swap(next);
    }
    return seq;
}

MarkovSequence markov_sequence(const Eigen::MatrixXd& x, const NodeSet& v_in, const NodeSet& v_out, int order) {
    check_square(x, "markov_sequence");
    const int n = static_cast<int>(x.rows());
    auto seq = start_sequence(n, v_in, v_out, order);
    Eigen::MatrixXd y = selection_matrix(n, v_in);
    for (int k = 0;; ++k) {
        seq.data.push_back(select_rows(y, v_out));
        if (k == order) break;
        y = x * y;
    }
    return seq;
}

Eigen::MatrixXcd transfer_eval(const Eigen::MatrixXd& x, const NodeSet& v_in, const NodeSet& v_out,
                               std::complex<double> s) {
    check_square(x, "transfer_eval");
    const auto n = x.rows();
    Eigen::MatrixXcd shifted = -x.cast<std::complex<double>>();
    shifted.diagonal().array() += s;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(shifted);
    if (!lu.isInvertible()) {
        std::ostringstream os;
        os << "transfer_eval: sI - X is singular at s = " << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "i";
        throw ArithmeticError(os.str());
    }
    Eigen::MatrixXcd m = selection_matrix(static_cast<int>(n), v_in).cast<std::complex<double>>();
    Eigen::MatrixXcd solved = lu.solve(m);
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(v_out.size()), solved.cols());
    for (std::size_t i = 0; i < v_out.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = solved.row(v_out[i] - 1);
    return out;
}

Counterexample scaling_counterexample(const Eigen::MatrixXd& x, MatrixClass cls, const NodeSet& v_in,
                                      const NodeSet& v_out, std::optional<double> epsilon) {
    check_square(x, "scaling_counterexample");
    const int n = static_cast<int>(x.rows());
    selection_matrix(n, v_in);
    selection_matrix(n, v_out);

    if (cls == MatrixClass::Directed) {
        DirectedWeightMatrix validated(x);
        (void)validated;
    } else if (x != x.transpose()) {
        throw InputError("scaling_counterexample: sign-free instances must be symmetric");
    }

    Counterexample out;
    out.hidden = set_difference(NodeSet::range(1, n), set_union(v_in, v_out));
    if (out.hidden.empty()) {
        throw PreconditionError("scaling_counterexample: no hidden node, every node is an input or an output");
    }

    if (cls == MatrixClass::Directed) {
        out.epsilon = epsilon.value_or(kDefaultDirectedEpsilon);
        if (!(out.epsilon > 0.0) || out.epsilon == 1.0) {
            throw InputError("scaling_counterexample: directed epsilon must be positive and different from 1");
        }
    } else {
        out.epsilon = epsilon.value_or(kSignFreeEpsilon);
        if (out.epsilon != -1.0) {
            throw InputError("scaling_counterexample: sign-free instances keep symmetry only with epsilon = -1");
        }
    }

    Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
    for (Node h : out.hidden) scale(h - 1) = out.epsilon;

    bool coupled = false;
    for (Eigen::Index i = 0; i < n && !coupled; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (scale(i) != scale(j) && x(i, j) != 0.0) {
                coupled = true;
                break;
            }
        }
    }

    out.perturbed = x;
    if (coupled) {
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) out.perturbed(i, j) = x(i, j) * scale(j) / scale(i);
        }
    } else {
        out.hidden_block_only = true;
        for (Node h : out.hidden) out.perturbed(h - 1, h - 1) += 1.0;
    }
    return out;
}

}  // namespace netident
