#pragma once

#include "netident/graph.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace netident {

// Symmetric with off-diagonal nonzeros exactly on the edges of g. Diagonal is free.
bool in_sign_free_class(const Graph& g, const Eigen::MatrixXd& x);
// As above, with every edge entry strictly positive.
bool in_positive_class(const Graph& g, const Eigen::MatrixXd& x);

/// A member of the positive qualitative class of a graph.
class WeightMatrix {
   public:
    // Throws InputError unless `entries` belongs to the positive class of g.
    WeightMatrix(Graph g, Eigen::MatrixXd entries);

    const Graph& graph() const noexcept { return graph_; }
    const Eigen::MatrixXd& entries() const noexcept { return entries_; }
    int n() const noexcept { return graph_.n(); }
    double operator()(Node i, Node j) const { return entries_(i - 1, j - 1); }

   private:
    Graph graph_;
    Eigen::MatrixXd entries_;
};

/// Directed counterpart: no symmetry, off-diagonal entries nonnegative.
/// The directed graph is the off-diagonal nonzero pattern.
class DirectedWeightMatrix {
   public:
    explicit DirectedWeightMatrix(Eigen::MatrixXd entries);

    const Eigen::MatrixXd& entries() const noexcept { return entries_; }
    int n() const noexcept { return static_cast<int>(entries_.rows()); }

   private:
    Eigen::MatrixXd entries_;
};

/// data[k] = N X^k M for k = 0..order, N selecting v_out rows and M selecting v_in columns.
struct MarkovSequence {
    NodeSet v_in;
    NodeSet v_out;
    int order = 0;
    std::vector<Eigen::MatrixXd> data;
};

enum class DiagonalMode { Free, Laplacian };

inline constexpr double kDefaultWeightLo = 0.5;
inline constexpr double kDefaultWeightHi = 2.0;

/// Edge weights uniform in [lo, hi]. The diagonal is uniform in [-hi, hi] (Free) or
/// makes every row sum to zero (Laplacian, i.e. a negated Laplacian).
WeightMatrix random_weights(const Graph& g, std::uint64_t seed, double lo = kDefaultWeightLo,
                            double hi = kDefaultWeightHi, DiagonalMode mode = DiagonalMode::Free);

// Random directed pattern with arc probability `density`, arc weights uniform in [lo, hi],
// free diagonal in [-hi, hi].
DirectedWeightMatrix random_directed_weights(int n, double density, std::uint64_t seed,
                                             double lo = kDefaultWeightLo, double hi = kDefaultWeightHi);

/// Iterated multiply using the sparsity of x: O(order * (n + |E|) * |v_in|).
MarkovSequence markov_sequence(const WeightMatrix& x, const NodeSet& v_in, const NodeSet& v_out, int order);
// Dense variant for arbitrary square matrices (directed or sign-free instances).
MarkovSequence markov_sequence(const Eigen::MatrixXd& x, const NodeSet& v_in, const NodeSet& v_out, int order);

/// N (sI - X)^{-1} M via an LU solve. Throws ArithmeticError if s is an eigenvalue.
Eigen::MatrixXcd transfer_eval(const Eigen::MatrixXd& x, const NodeSet& v_in, const NodeSet& v_out,
                               std::complex<double> s);
inline Eigen::MatrixXcd transfer_eval(const WeightMatrix& x, const NodeSet& v_in, const NodeSet& v_out,
                                      std::complex<double> s) {
    return transfer_eval(x.entries(), v_in, v_out, s);
}

enum class MatrixClass { Directed, SignFree };

struct Counterexample {
    Eigen::MatrixXd perturbed;
    NodeSet hidden;  // V \ (V_I ∪ V_O)
    double epsilon = 0.0;
    // Cross blocks were zero: the hidden block was shifted instead of rescaled, since
    // the Markov parameters do not depend on it at all.
    bool hidden_block_only = false;
};

inline constexpr double kDefaultDirectedEpsilon = 2.0;
inline constexpr double kSignFreeEpsilon = -1.0;

/// Builds X' = S^{-1} X S with S = diag(1 on V_I ∪ V_O, epsilon on hidden nodes); X' != X
/// stays in the same class and shares every Markov parameter with X.
/// Directed: epsilon > 0 and != 1 (default 2). Sign-free symmetric: epsilon = -1.
Counterexample scaling_counterexample(const Eigen::MatrixXd& x, MatrixClass cls, const NodeSet& v_in,
                                      const NodeSet& v_out, std::optional<double> epsilon = std::nullopt);

}  // namespace netident
