#pragma once

#include "netident/errors.hpp"
#include "netident/graph.hpp"
#include "netident/higher_order.hpp"
#include "netident/identifiability.hpp"
#include "netident/netsim.hpp"
#include "netident/reconstruct.hpp"
#include "netident/zero_forcing.hpp"

#include "json.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <vector>

namespace netident::io {

using json = nlohmann::json;

// Parse failures; the message carries "<source>:<line>:<column>".
class FormatError : public InputError {
   public:
    using InputError::InputError;
};

json parse_json(const std::string& text, const std::string& source);
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

// {"n": <int>, "edges": [[i, j], ...]}. Self-loops are dropped with a warning appended.
Graph graph_from_json(const json& j, std::vector<std::string>* warnings = nullptr);
json to_json(const Graph& g);

// Plain array of node ids.
NodeSet node_set_from_json(const json& j);
json to_json(const NodeSet& s);

// {"initial": [...], "forces": [[u, v], ...], "derived": [...]}
json to_json(const ForcingChronicle& c);
ForcingChronicle chronicle_from_json(const json& j);

// {"v_in": [...], "v_out": [...], "K": k, "data": [[[...]]]}
json to_json(const MarkovSequence& m);
MarkovSequence markov_from_json(const json& j);

// {"A": [[...]], "B": ..., "C": ..., "E": ..., "K": ...}
NodeDynamics dynamics_from_json(const json& j);
json to_json(const NodeDynamics& d);

json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const json& j, const std::string& what);

json to_json(const IdentifiabilityReport& r);
json to_json(const CouplingReport& r);
json to_json(const ForceDiagnostic& d);

// Matrix CSV: first line is n, then n rows of n comma-separated values.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);
std::string matrix_to_csv(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_csv(const std::string& text, const std::string& source);

}  // namespace netident::io
