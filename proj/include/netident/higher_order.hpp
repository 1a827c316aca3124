#pragma once

#include "netident/netsim.hpp"

#include <Eigen/Dense>

#include <optional>

namespace netident {

/// Local node dynamics x' = A x + B u + E z with y = C x and coupling z_i = sum_j X_ij K x_j.
struct NodeDynamics {
    Eigen::MatrixXd A;  // q x q
    Eigen::MatrixXd B;  // q x r
    Eigen::MatrixXd C;  // t x q
    Eigen::MatrixXd E;  // q x s
    Eigen::MatrixXd K;  // s x q

    // Throws InputError on incompatible shapes or q = 0.
    void validate() const;

    Eigen::Index state_dim() const { return A.rows(); }
    Eigen::Index input_dim() const { return B.cols(); }
    Eigen::Index output_dim() const { return C.rows(); }
    Eigen::MatrixXd coupling() const { return E * K; }
};

Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Network of identical higher-order nodes:
/// state I ⊗ A + X ⊗ EK, input M ⊗ B, output N ⊗ C.
struct LiftedSystem {
    WeightMatrix x;
    NodeDynamics dyn;
    NodeSet v_in;
    NodeSet v_out;

    Eigen::MatrixXd state_matrix() const;
    Eigen::MatrixXd input_matrix() const;
    Eigen::MatrixXd output_matrix() const;
};

inline constexpr double kCouplingTolerance = 1e-10;

struct CouplingReport {
    int verified_up_to = 0;
    std::optional<int> first_failure;
    // A finite check cannot settle "for all k".
    bool finite_horizon = true;

    bool ok() const { return !first_failure.has_value(); }
};

/// Checks C (EK)^k B != 0 for k = 1..k_max (default 2q), zero meaning a max-abs entry
/// below 1e-10 times ||C|| ||EK||^k ||B||.
CouplingReport coupling_condition(const NodeDynamics& dyn, std::optional<int> k_max = std::nullopt);

/// N_e X_e^k M_e for k = 0..order. v_in / v_out keep the base node sets; each matrix is
/// (t |v_out|) x (r |v_in|).
MarkovSequence lifted_markov(const LiftedSystem& sys, int order);

/// C W_{k,i} B where W_{k,i} sums every length-k product of A and EK with i factors EK,
/// for 0 <= i <= k <= order. Indexed [k][i].
std::vector<std::vector<Eigen::MatrixXd>> word_coefficients(const NodeDynamics& dyn, int order);

/// Peels lifted Markov parameters back to N X^k M, order by order, using
/// N_e X_e^k M_e = sum_i N X^i M ⊗ C W_{k,i} B.
/// Throws DeconvolutionBlockedError at the first k >= 1 with C (EK)^k B = 0 and
/// InconsistencyError when the data does not factor.
MarkovSequence deconvolve(const MarkovSequence& lifted, const NodeDynamics& dyn, double tolerance = 1e-8);

}  // namespace netident
