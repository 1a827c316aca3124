#include "netident/errors.hpp"
#include "netident/higher_order.hpp"
#include "netident/identifiability.hpp"
#include "netident/netsim.hpp"
#include "netident/reconstruct.hpp"
#include "netident/zero_forcing.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace netident;

namespace {

using Nodes = std::vector<Node>;

py::dict chronicle_dict(const ForcingChronicle& c) {
    py::list forces;
    for (auto f : c.forces) forces.append(py::make_tuple(f.u, f.v));
    py::dict d;
    d["initial"] = c.initial.members();
    d["forces"] = forces;
    d["derived"] = c.derived().members();
    return d;
}

}  // namespace

PYBIND11_MODULE(_netident, m) {
    m.doc() = "Zero forcing, identifiability certification and network reconstruction";

    auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    auto domain_error = py::register_exception<DomainError>(m, "DomainError", PyExc_RuntimeError);
    py::register_exception<UncertifiedTargetError>(m, "UncertifiedTargetError", domain_error.ptr());
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", domain_error.ptr());
    py::register_exception<DeconvolutionBlockedError>(m, "DeconvolutionBlockedError", domain_error.ptr());
    (void)input_error;

    py::class_<Graph>(m, "Graph")
        .def(py::init<int, std::vector<Edge>>(), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("edges", &Graph::edges)
        .def("neighbours", [](const Graph& g, Node v) { return g.neighbours(v).members(); })
        .def("has_edge", &Graph::has_edge)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.n()) + ", edges=" + std::to_string(g.edge_count()) + ")";
        });

    m.def("derived_set", [](const Graph& g, const Nodes& z) { return chronicle_dict(derived_set(g, NodeSet(z)).chronicle); },
          py::arg("graph"), py::arg("z"));
    m.def("is_zero_forcing_set", [](const Graph& g, const Nodes& z) { return is_zero_forcing_set(g, NodeSet(z)); },
          py::arg("graph"), py::arg("z"));
    m.def("minimum_zero_forcing_set",
          [](const Graph& g, int cap) {
              py::gil_scoped_release release;
              return minimum_zero_forcing_set(g, cap).members();
          },
          py::arg("graph"), py::arg("cap") = kDefaultExactSearchCap);
    m.def("zfs_heuristic", [](const Graph& g) { return zfs_heuristic(g).members(); }, py::arg("graph"));

    m.def("certify",
          [](const Graph& g, const Nodes& v_in, const Nodes& v_out) {
              auto r = certify(g, NodeSet(v_in), NodeSet(v_out));
              py::dict d;
              d["verdict"] = std::string(to_string(r.verdict));
              d["common"] = r.common.members();
              d["certified_nodes"] = r.certified_nodes.members();
              d["certified_full"] = r.certified_full;
              d["chronicle"] = chronicle_dict(r.chronicle);
              d["notes"] = r.notes;
              return d;
          },
          py::arg("graph"), py::arg("v_in"), py::arg("v_out"));

    m.def("random_weights",
          [](const Graph& g, std::uint64_t seed, double lo, double hi, bool laplacian) {
              return random_weights(g, seed, lo, hi, laplacian ? DiagonalMode::Laplacian : DiagonalMode::Free).entries();
          },
          py::arg("graph"), py::arg("seed"), py::arg("lo") = kDefaultWeightLo, py::arg("hi") = kDefaultWeightHi,
          py::arg("laplacian") = false);

    py::class_<MarkovSequence>(m, "MarkovSequence")
        .def(py::init([](const Nodes& v_in, const Nodes& v_out, std::vector<Eigen::MatrixXd> data) {
                 MarkovSequence s{NodeSet(v_in), NodeSet(v_out), static_cast<int>(data.size()) - 1, std::move(data)};
                 return s;
             }),
             py::arg("v_in"), py::arg("v_out"), py::arg("data"))
        .def_property_readonly("v_in", [](const MarkovSequence& s) { return s.v_in.members(); })
        .def_property_readonly("v_out", [](const MarkovSequence& s) { return s.v_out.members(); })
        .def_readonly("order", &MarkovSequence::order)
        .def_readonly("data", &MarkovSequence::data);

    m.def("markov_sequence",
          [](const Eigen::MatrixXd& x, const Nodes& v_in, const Nodes& v_out, int order) {
              return markov_sequence(x, NodeSet(v_in), NodeSet(v_out), order);
          },
          py::arg("x"), py::arg("v_in"), py::arg("v_out"), py::arg("order"));

    m.def("required_order", [](std::size_t forces) { return required_order(forces); }, py::arg("forces"));

    m.def("identify",
          [](const MarkovSequence& markov, const Graph& g, const Nodes& target, double tol) {
              IdentifyOptions opts;
              opts.tolerance = tol;
              auto r = identify(markov, g, NodeSet(target), opts);
              py::dict d;
              d["nodes"] = r.nodes.members();
              d["recovered"] = r.recovered;
              d["residual_order"] = r.residual_order;
              py::list diags;
              for (const auto& f : r.diagnostics) {
                  py::dict e;
                  e["force"] = py::make_tuple(f.force.u, f.force.v);
                  e["weight"] = f.weight;
                  e["cancellation"] = f.cancellation;
                  e["error_bound"] = f.error_bound;
                  diags.append(e);
              }
              d["diagnostics"] = diags;
              return d;
          },
          py::arg("markov"), py::arg("graph"), py::arg("target"), py::arg("tol") = kDefaultDegeneracyTolerance);

    py::class_<NodeDynamics>(m, "NodeDynamics")
        .def(py::init([](Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c, Eigen::MatrixXd e, Eigen::MatrixXd k) {
                 NodeDynamics d{std::move(a), std::move(b), std::move(c), std::move(e), std::move(k)};
                 d.validate();
                 return d;
             }),
             py::arg("A"), py::arg("B"), py::arg("C"), py::arg("E"), py::arg("K"))
        .def_readonly("A", &NodeDynamics::A)
        .def_readonly("B", &NodeDynamics::B)
        .def_readonly("C", &NodeDynamics::C)
        .def_readonly("E", &NodeDynamics::E)
        .def_readonly("K", &NodeDynamics::K);

    m.def("coupling_condition",
          [](const NodeDynamics& d, std::optional<int> k_max) {
              auto r = coupling_condition(d, k_max);
              py::dict out;
              out["ok"] = r.ok();
              out["verified_up_to"] = r.verified_up_to;
              out["first_failure"] = r.first_failure;
              out["finite_horizon"] = r.finite_horizon;
              return out;
          },
          py::arg("dynamics"), py::arg("k_max") = py::none());

    m.def("lifted_markov",
          [](const Graph& g, const Eigen::MatrixXd& x, const NodeDynamics& d, const Nodes& v_in, const Nodes& v_out,
             int order) { return lifted_markov(LiftedSystem{WeightMatrix(g, x), d, NodeSet(v_in), NodeSet(v_out)}, order); },
          py::arg("graph"), py::arg("x"), py::arg("dynamics"), py::arg("v_in"), py::arg("v_out"), py::arg("order"));

    m.def("deconvolve", &deconvolve, py::arg("lifted"), py::arg("dynamics"), py::arg("tol") = 1e-8);
}
