#include "netident/higher_order.hpp"

#include "netident/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace netident {

void NodeDynamics::validate() const {
    const auto q = A.rows();
    auto fail = [](const std::string& what) { throw InputError("node dynamics: " + what); };
    if (q < 1 || A.cols() != q) fail("A must be square with q >= 1");
    if (B.rows() != q || B.cols() < 1) fail("B must have q rows and at least one column");
    if (C.cols() != q || C.rows() < 1) fail("C must have q columns and at least one row");
    if (E.rows() != q || E.cols() < 1) fail("E must have q rows and at least one column");
    if (K.cols() != q || K.rows() != E.cols()) fail("K must be s x q where s is the column count of E");
    if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !E.allFinite() || !K.allFinite()) {
        fail("entries must be finite");
    }
}

Eigen::MatrixXd kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Eigen::MatrixXd LiftedSystem::state_matrix() const {
    const auto n = static_cast<Eigen::Index>(x.n());
    return kronecker(Eigen::MatrixXd::Identity(n, n), dyn.A) + kronecker(x.entries(), dyn.coupling());
}

Eigen::MatrixXd LiftedSystem::input_matrix() const { return kronecker(selection_matrix(x.n(), v_in), dyn.B); }

Eigen::MatrixXd LiftedSystem::output_matrix() const {
    return kronecker(selection_matrix(x.n(), v_out).transpose(), dyn.C);
}

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Upper bound on ||C (EK)^k B||_F, the reference for "numerically zero".
double product_scale(const NodeDynamics& dyn, const Eigen::MatrixXd& ek, int k) {
    return dyn.C.norm() * std::pow(ek.norm(), k) * dyn.B.norm();
}

bool vanishes(const Eigen::MatrixXd& product, double scale) {
    return !(max_abs(product) > kCouplingTolerance * scale);
}

}  // namespace

CouplingReport coupling_condition(const NodeDynamics& dyn, std::optional<int> k_max) {
    dyn.validate();
    const int horizon = k_max.value_or(2 * static_cast<int>(dyn.state_dim()));
    if (horizon < 0) throw InputError("coupling_condition: k_max must be >= 0");

    const Eigen::MatrixXd ek = dyn.coupling();
    Eigen::MatrixXd power = ek;
    CouplingReport report;
    for (int k = 1; k <= horizon; ++k) {
        if (vanishes(dyn.C * power * dyn.B, product_scale(dyn, ek, k))) {
            report.first_failure = k;
            break;
        }
        report.verified_up_to = k;
        power = ek * power;
    }
    return report;
}

MarkovSequence lifted_markov(const LiftedSystem& sys, int order) {
    sys.dyn.validate();
    if (order < 0) throw InputError("lifted_markov: order must be >= 0");
    sys.x.graph().check_nodes(sys.v_in, "lifted_markov: input nodes");
    sys.x.graph().check_nodes(sys.v_out, "lifted_markov: output nodes");

    const Eigen::MatrixXd xe = sys.state_matrix();
    const Eigen::MatrixXd ne = sys.output_matrix();
    Eigen::MatrixXd y = sys.input_matrix();

    MarkovSequence seq;
    seq.v_in = sys.v_in;
    seq.v_out = sys.v_out;
    seq.order = order;
    for (int k = 0;; ++k) {
        seq.data.push_back(ne * y);
        if (k == order) break;
        y = xe * y;
    }
    return seq;
}

std::vector<std::vector<Eigen::MatrixXd>> word_coefficients(const NodeDynamics& dyn, int order) {
    dyn.validate();
    const auto q = dyn.state_dim();
    const Eigen::MatrixXd ek = dyn.coupling();

    // words[i] = W_{k,i}; prepending a letter gives W_{k+1,i} = A W_{k,i} + EK W_{k,i-1}.
    std::vector<Eigen::MatrixXd> words{Eigen::MatrixXd::Identity(q, q)};
    std::vector<std::vector<Eigen::MatrixXd>> out;
    for (int k = 0;; ++k) {
        auto& row = out.emplace_back();
        for (const auto& w : words) row.push_back(dyn.C * w * dyn.B);
        if (k == order) break;
        std::vector<Eigen::MatrixXd> next(words.size() + 1, Eigen::MatrixXd::Zero(q, q));
        for (std::size_t i = 0; i < words.size(); ++i) {
            next[i] += dyn.A * words[i];
            next[i + 1] += ek * words[i];
        }
        words = std::move(next);
    }
    return out;
}

MarkovSequence deconvolve(const MarkovSequence& lifted, const NodeDynamics& dyn, double tolerance) {
    dyn.validate();
    const auto t = dyn.output_dim();
    const auto r = dyn.input_dim();
    const auto n_out = static_cast<Eigen::Index>(lifted.v_out.size());
    const auto n_in = static_cast<Eigen::Index>(lifted.v_in.size());
    if (lifted.order < 0 || lifted.data.size() != static_cast<std::size_t>(lifted.order) + 1) {
        throw InputError("deconvolve: expected order + 1 lifted Markov parameters");
    }
    for (const auto& m : lifted.data) {
        if (m.rows() != t * n_out || m.cols() != r * n_in) {
            std::ostringstream os;
            os << "deconvolve: lifted Markov parameters must be " << t * n_out << " x " << r * n_in << ", got "
               << m.rows() << " x " << m.cols();
            throw InputError(os.str());
        }
    }

    const auto coefficients = word_coefficients(dyn, lifted.order);
    const Eigen::MatrixXd ek = dyn.coupling();

    MarkovSequence base;
    base.v_in = lifted.v_in;
    base.v_out = lifted.v_out;
    base.order = lifted.order;

    // N M is fixed by the node sets alone.
    Eigen::MatrixXd nm = Eigen::MatrixXd::Zero(n_out, n_in);
    for (Eigen::Index p = 0; p < n_out; ++p) {
        for (Eigen::Index c = 0; c < n_in; ++c) {
            nm(p, c) = lifted.v_out[static_cast<std::size_t>(p)] == lifted.v_in[static_cast<std::size_t>(c)] ? 1.0 : 0.0;
        }
    }
    {
        const Eigen::MatrixXd expected = kronecker(nm, coefficients[0][0]);
        const double scale = std::max({max_abs(lifted.data[0]), max_abs(expected), 1e-300});
        if (max_abs(lifted.data[0] - expected) > tolerance * scale) {
            throw InconsistencyError("deconvolve: order-0 lifted parameter differs from (N M) ⊗ (C B)");
        }
    }
    base.data.push_back(nm);

    for (int k = 1; k <= lifted.order; ++k) {
        const auto& row = coefficients[static_cast<std::size_t>(k)];
        const Eigen::MatrixXd& lead = row[static_cast<std::size_t>(k)];
        if (vanishes(lead, product_scale(dyn, ek, k))) {
            throw DeconvolutionBlockedError(
                "deconvolve: C (EK)^" + std::to_string(k) + " B vanishes, order " + std::to_string(k) + " is blocked", k);
        }

        Eigen::MatrixXd residual = lifted.data[static_cast<std::size_t>(k)];
        double scale = max_abs(residual);
        for (int i = 0; i < k; ++i) {
            const auto& coeff = row[static_cast<std::size_t>(i)];
            residual -= kronecker(base.data[static_cast<std::size_t>(i)], coeff);
            scale += max_abs(base.data[static_cast<std::size_t>(i)]) * max_abs(coeff);
        }

        // Lead entries by decreasing magnitude: the largest divides, up to three more cross-check.
        std::vector<Eigen::Index> entries(static_cast<std::size_t>(lead.size()));
        std::iota(entries.begin(), entries.end(), 0);
        std::stable_sort(entries.begin(), entries.end(), [&](Eigen::Index a, Eigen::Index b) {
            return std::abs(lead(a % t, a / t)) > std::abs(lead(b % t, b / t));
        });
        const double pivot_floor = kCouplingTolerance * product_scale(dyn, ek, k);
        std::vector<std::pair<Eigen::Index, Eigen::Index>> picks;
        for (auto e : entries) {
            if (picks.size() == 4 || !(std::abs(lead(e % t, e / t)) > pivot_floor)) break;
            picks.emplace_back(e % t, e / t);
        }

        const auto [a, b] = picks.front();
        Eigen::MatrixXd current(n_out, n_in);
        for (Eigen::Index p = 0; p < n_out; ++p) {
            for (Eigen::Index c = 0; c < n_in; ++c) {
                current(p, c) = residual(p * t + a, c * r + b) / lead(a, b);
                for (std::size_t check = 1; check < picks.size(); ++check) {
                    const auto [a2, b2] = picks[check];
                    const double mismatch = residual(p * t + a2, c * r + b2) - current(p, c) * lead(a2, b2);
                    if (std::abs(mismatch) > tolerance * scale) {
                        std::ostringstream os;
                        os << "deconvolve: order " << k << " block (" << p + 1 << "," << c + 1
                           << ") is not a multiple of C (EK)^k B (mismatch " << mismatch << ")";
                        throw InconsistencyError(os.str());
                    }
                }
            }
        }
        base.data.push_back(std::move(current));
    }
    return base;
}

}  // namespace netident
