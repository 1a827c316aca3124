#include "netident/io.hpp"

#include "netident/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace netident::io {

namespace {

std::string location(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return std::to_string(line) + ":" + std::to_string(column);
}

[[noreturn]] void bad(const std::string& what) { throw FormatError(what); }

int as_int(const json& j, const std::string& what) {
    if (!j.is_number_integer()) bad(what + ": expected an integer");
    return j.get<int>();
}

std::string number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::string detail = e.what();
        if (auto pos = detail.find("syntax error"); pos != std::string::npos) detail = detail.substr(pos);
        bad(source + ":" + location(text, e.byte == 0 ? 0 : e.byte - 1) + ": malformed JSON: " + detail);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string& path) { return parse_json(read_text_file(path), path); }

Graph graph_from_json(const json& j, std::vector<std::string>* warnings) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) bad("graph: expected {\"n\": int, \"edges\": [[i, j], ...]}");
    const int n = as_int(j.at("n"), "graph.n");
    const auto& edges = j.at("edges");
    if (!edges.is_array()) bad("graph.edges: expected an array");
    std::vector<Edge> list;
    for (const auto& e : edges) {
        if (!e.is_array() || e.size() != 2) bad("graph.edges: every edge must be a pair [i, j]");
        list.emplace_back(as_int(e[0], "graph.edges"), as_int(e[1], "graph.edges"));
    }
    Graph g(n, list);
    if (g.stripped_loops() > 0 && warnings) {
        warnings->push_back("graph: dropped " + std::to_string(g.stripped_loops()) +
                            " self-loop(s); diagonal entries are free, so loops carry no information");
    }
    return g;
}

json to_json(const Graph& g) {
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back({a, b});
    return {{"n", g.n()}, {"edges", edges}};
}

NodeSet node_set_from_json(const json& j) {
    if (!j.is_array()) bad("node set: expected an array of node ids");
    std::vector<Node> nodes;
    for (const auto& v : j) nodes.push_back(as_int(v, "node set"));
    return NodeSet(std::move(nodes));
}

json to_json(const NodeSet& s) { return json(s.members()); }

json to_json(const ForcingChronicle& c) {
    json forces = json::array();
    for (const auto& f : c.forces) forces.push_back({f.u, f.v});
    return {{"initial", to_json(c.initial)}, {"forces", forces}, {"derived", to_json(c.derived())}};
}

ForcingChronicle chronicle_from_json(const json& j) {
    if (!j.is_object() || !j.contains("initial") || !j.contains("forces")) bad("chronicle: expected {\"initial\", \"forces\"}");
    ForcingChronicle c;
    c.initial = node_set_from_json(j.at("initial"));
    if (!j.at("forces").is_array()) bad("chronicle.forces: expected an array");
    for (const auto& f : j.at("forces")) {
        if (!f.is_array() || f.size() != 2) bad("chronicle.forces: every force must be a pair [u, v]");
        c.forces.push_back({as_int(f[0], "chronicle.forces"), as_int(f[1], "chronicle.forces")});
    }
    return c;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& what) {
    if (j.is_number()) return Eigen::MatrixXd::Constant(1, 1, j.get<double>());
    if (!j.is_array()) bad(what + ": expected a matrix as an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Eigen::Index cols = -1;
    Eigen::MatrixXd m;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array()) bad(what + ": expected a matrix as an array of rows");
        if (cols < 0) {
            cols = static_cast<Eigen::Index>(row.size());
            m.resize(rows, cols);
        }
        if (static_cast<Eigen::Index>(row.size()) != cols) bad(what + ": rows have different lengths");
        for (Eigen::Index k = 0; k < cols; ++k) {
            const auto& v = row[static_cast<std::size_t>(k)];
            if (!v.is_number()) bad(what + ": entries must be numbers");
            m(i, k) = v.get<double>();
        }
    }
    if (cols < 0) m.resize(0, 0);
    return m;
}

json to_json(const MarkovSequence& m) {
    json data = json::array();
    for (const auto& d : m.data) data.push_back(matrix_to_json(d));
    return {{"v_in", to_json(m.v_in)}, {"v_out", to_json(m.v_out)}, {"K", m.order}, {"data", data}};
}

MarkovSequence markov_from_json(const json& j) {
    if (!j.is_object()) bad("markov: expected an object");
    for (const char* key : {"v_in", "v_out", "K", "data"}) {
        if (!j.contains(key)) bad(std::string("markov: missing \"") + key + "\"");
    }
    MarkovSequence m;
    m.v_in = node_set_from_json(j.at("v_in"));
    m.v_out = node_set_from_json(j.at("v_out"));
    m.order = as_int(j.at("K"), "markov.K");
    if (!j.at("data").is_array()) bad("markov.data: expected an array of matrices");
    for (const auto& d : j.at("data")) {
        auto mat = matrix_from_json(d, "markov.data");
        // An empty JSON matrix carries no column count.
        if (mat.rows() == 0) mat.resize(0, static_cast<Eigen::Index>(m.v_in.size()));
        m.data.push_back(std::move(mat));
    }
    if (m.data.size() != static_cast<std::size_t>(m.order) + 1) bad("markov: \"data\" must hold K + 1 matrices");
    return m;
}

NodeDynamics dynamics_from_json(const json& j) {
    if (!j.is_object()) bad("dynamics: expected {\"A\", \"B\", \"C\", \"E\", \"K\"}");
    for (const char* key : {"A", "B", "C", "E", "K"}) {
        if (!j.contains(key)) bad(std::string("dynamics: missing \"") + key + "\"");
    }
    NodeDynamics d{matrix_from_json(j.at("A"), "dynamics.A"), matrix_from_json(j.at("B"), "dynamics.B"),
                   matrix_from_json(j.at("C"), "dynamics.C"), matrix_from_json(j.at("E"), "dynamics.E"),
                   matrix_from_json(j.at("K"), "dynamics.K")};
    d.validate();
    return d;
}

json to_json(const NodeDynamics& d) {
    return {{"A", matrix_to_json(d.A)},
            {"B", matrix_to_json(d.B)},
            {"C", matrix_to_json(d.C)},
            {"E", matrix_to_json(d.E)},
            {"K", matrix_to_json(d.K)}};
}

json to_json(const IdentifiabilityReport& r) {
    return {{"verdict", std::string(to_string(r.verdict))},
            {"W", to_json(r.common)},
            {"derived", to_json(r.derived)},
            {"certified_full", r.certified_full},
            {"certified_nodes", to_json(r.certified_nodes)},
            {"chronicle", to_json(r.chronicle)},
            {"notes", r.notes}};
}

json to_json(const CouplingReport& r) {
    json out = {{"verified_up_to", r.verified_up_to},
                {"ok", r.ok()},
                {"finite_horizon", r.finite_horizon},
                {"first_failure", nullptr}};
    if (r.first_failure) out["first_failure"] = *r.first_failure;
    return out;
}

json to_json(const ForceDiagnostic& d) {
    return {{"force", {d.force.u, d.force.v}},
            {"weight", d.weight},
            {"weight_squared", d.weight_squared},
            {"cancellation", d.cancellation},
            {"error_bound", d.error_bound},
            {"order_after", d.order_after}};
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
    os << m.rows() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) os << (k ? "," : "") << number(m(i, k));
        os << '\n';
    }
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
    std::ostringstream os;
    write_matrix_csv(os, m);
    return os.str();
}

Eigen::MatrixXd matrix_from_csv(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    };
    auto where = [&] { return source + ":" + std::to_string(line_no) + ": "; };

    if (!next_line()) bad(source + ": empty matrix CSV");
    int n = 0;
    {
        const char* first = line.data() + line.find_first_not_of(" \t");
        const char* last = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(first, last, n);
        if (ec != std::errc() || n < 0 || std::string_view(ptr, last).find_first_not_of(" \t") != std::string_view::npos) {
            bad(where() + "header must be the matrix dimension n");
        }
    }
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!next_line()) bad(source + ": expected " + std::to_string(n) + " rows after the header");
        std::istringstream row(line);
        std::string cell;
        int k = 0;
        while (std::getline(row, cell, ',')) {
            auto start = cell.find_first_not_of(" \t");
            auto stop = cell.find_last_not_of(" \t");
            if (start == std::string::npos) bad(where() + "empty cell");
            if (k >= n) bad(where() + "too many columns");
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data() + start, cell.data() + stop + 1, v);
            if (ec != std::errc() || ptr != cell.data() + stop + 1) bad(where() + "cannot parse '" + cell + "'");
            m(i, k++) = v;
        }
        if (k != n) bad(where() + "expected " + std::to_string(n) + " columns, got " + std::to_string(k));
    }
    if (next_line()) bad(where() + "unexpected trailing content");
    return m;
}

}  // namespace netident::io
