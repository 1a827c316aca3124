#include "netident/cli.hpp"

#include "netident/errors.hpp"
#include "netident/higher_order.hpp"
#include "netident/identifiability.hpp"
#include "netident/io.hpp"
#include "netident/netsim.hpp"
#include "netident/reconstruct.hpp"
#include "netident/zero_forcing.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

namespace netident::cli {

namespace {

using io::json;

constexpr const char* kGraphFormat = "  graph      {\"n\": <int>, \"edges\": [[i,j], ...]}, nodes 1..n; self-loops are dropped\n";
constexpr const char* kSetFormat = "  node set   JSON array of node ids, e.g. [1,3]\n";
constexpr const char* kMatrixFormat = "  matrix     CSV: first line n, then n rows of n comma-separated values\n";
constexpr const char* kMarkovFormat =
    "  markov     {\"v_in\":[...], \"v_out\":[...], \"K\":k, \"data\":[[[...]]]}, data[k] = N X^k M as rows\n";
constexpr const char* kDynFormat =
    "  dynamics   {\"A\":[[...]], \"B\":[[...]], \"C\":[[...]], \"E\":[[...]], \"K\":[[...]]}\n";
constexpr const char* kChronicleFormat =
    "  chronicle  {\"initial\":[...], \"forces\":[[u,v],...], \"derived\":[...]}\n";
constexpr const char* kInlineNote = "File arguments that start with '[' or '{' are read as inline JSON.\n";

std::string footer(std::initializer_list<const char*> formats) {
    std::string text = "\nFormats:\n";
    for (const char* f : formats) text += f;
    return text + kInlineNote;
}

bool looks_inline(const std::string& arg) {
    auto p = arg.find_first_not_of(" \t\n");
    return p != std::string::npos && (arg[p] == '[' || arg[p] == '{');
}

json load_json(const std::string& arg) {
    return looks_inline(arg) ? io::parse_json(arg, "<inline>") : io::read_json_file(arg);
}

Eigen::MatrixXd load_matrix(const std::string& path) {
    if (looks_inline(path)) return io::matrix_from_json(io::parse_json(path, "<inline>"), "matrix");
    return io::matrix_from_csv(io::read_text_file(path), path);
}

enum class Format { Json, Csv, Human };

struct Options {
    std::string graph;
    std::string set;
    std::string in;
    std::string out_nodes;
    std::string target;
    std::string markov;
    std::string dyn;
    std::string matrix;
    std::string chronicle;
    std::optional<int> order;
    std::optional<int> kmax;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    double lo = kDefaultWeightLo;
    double hi = kDefaultWeightHi;
    std::string diagonal = "free";
    std::string matrix_class = "directed";
    std::optional<double> epsilon;
    int cap = kDefaultExactSearchCap;
    std::string format;
};

class Runner {
   public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    Options opt;

    Graph graph() {
        std::vector<std::string> warnings;
        auto g = io::graph_from_json(load_json(opt.graph), &warnings);
        for (const auto& w : warnings) err_ << "warning: " << w << '\n';
        return g;
    }
    NodeSet nodes(const std::string& arg) { return io::node_set_from_json(load_json(arg)); }

    Format format(Format fallback) const {
        if (opt.format.empty()) return fallback;
        static const std::map<std::string, Format> names{{"json", Format::Json}, {"csv", Format::Csv}, {"human", Format::Human}};
        return names.at(opt.format);
    }

    void emit(const json& j) {
        if (format(Format::Json) == Format::Human) {
            for (auto it = j.begin(); it != j.end(); ++it) out_ << it.key() << ": " << it.value().dump() << '\n';
        } else {
            out_ << j.dump() << '\n';
        }
    }

    // Matrix results: CSV on the output stream (diagnostics to the error stream), or one JSON object.
    void emit_matrix(const Eigen::MatrixXd& m, json extra) {
        auto f = format(Format::Csv);
        if (f == Format::Json) {
            extra["matrix"] = io::matrix_to_json(m);
            out_ << extra.dump() << '\n';
            return;
        }
        io::write_matrix_csv(out_, m);
        if (!extra.empty()) err_ << extra.dump() << '\n';
    }

    void zfs_check() {
        auto g = graph();
        auto z = nodes(opt.set);
        emit({{"zero_forcing", is_zero_forcing_set(g, z)}, {"set", io::to_json(z)}});
    }

    void zfs_derive() {
        auto g = graph();
        emit(io::to_json(derived_set(g, nodes(opt.set)).chronicle));
    }

    void zfs_min() {
        auto z = minimum_zero_forcing_set(graph(), opt.cap);
        emit({{"size", z.size()}, {"set", io::to_json(z)}});
    }

    void zfs_heuristic_cmd() {
        auto z = zfs_heuristic(graph());
        emit({{"size", z.size()}, {"set", io::to_json(z)}});
    }

    void ident_certify() {
        auto g = graph();
        emit(io::to_json(certify(g, nodes(opt.in), nodes(opt.out_nodes))));
    }

    void ident_recover() {
        auto g = graph();
        auto markov = io::markov_from_json(load_json(opt.markov));
        recover(g, markov);
    }

    void sim_random() {
        auto g = graph();
        DiagonalMode mode = opt.diagonal == "laplacian" ? DiagonalMode::Laplacian : DiagonalMode::Free;
        auto x = random_weights(g, opt.seed, opt.lo, opt.hi, mode);
        emit_matrix(x.entries(), json::object());
    }

    void sim_markov() {
        auto m = load_matrix(opt.matrix);
        auto v_in = nodes(opt.in);
        auto v_out = nodes(opt.out_nodes);
        const int order = opt.order.value_or(2 * static_cast<int>(m.rows()));
        if (!opt.graph.empty()) {
            WeightMatrix x(graph(), m);
            emit(io::to_json(markov_sequence(x, v_in, v_out, order)));
        } else {
            emit(io::to_json(markov_sequence(m, v_in, v_out, order)));
        }
    }

    void sim_counterexample() {
        auto x = load_matrix(opt.matrix);
        auto v_in = nodes(opt.in);
        auto v_out = nodes(opt.out_nodes);
        auto cls = opt.matrix_class == "signfree" ? MatrixClass::SignFree : MatrixClass::Directed;
        auto ce = scaling_counterexample(x, cls, v_in, v_out, opt.epsilon);

        const int order = opt.order.value_or(2 * static_cast<int>(x.rows()));
        auto a = markov_sequence(x, v_in, v_out, order);
        auto b = markov_sequence(ce.perturbed, v_in, v_out, order);
        double mismatch = 0.0;
        for (std::size_t k = 0; k < a.data.size(); ++k) {
            double scale = std::max(1.0, a.data[k].cwiseAbs().maxCoeff());
            if (a.data[k].size() > 0) mismatch = std::max(mismatch, (a.data[k] - b.data[k]).cwiseAbs().maxCoeff() / scale);
        }
        emit_matrix(ce.perturbed, {{"hidden", io::to_json(ce.hidden)},
                                   {"epsilon", ce.epsilon},
                                   {"branch", ce.hidden_block_only ? "hidden-block-shift" : "similarity-scaling"},
                                   {"checked_order", order},
                                   {"max_relative_markov_mismatch", mismatch}});
    }

    void hod_check() {
        auto dyn = io::dynamics_from_json(load_json(opt.dyn));
        auto report = coupling_condition(dyn, opt.kmax);
        emit(io::to_json(report));
        if (!report.ok()) throw DomainError("coupling condition fails at k = " + std::to_string(*report.first_failure));
    }

    void hod_markov() {
        auto g = graph();
        WeightMatrix x(g, load_matrix(opt.matrix));
        auto dyn = io::dynamics_from_json(load_json(opt.dyn));
        LiftedSystem sys{x, dyn, nodes(opt.in), nodes(opt.out_nodes)};
        emit(io::to_json(lifted_markov(sys, opt.order.value_or(2 * g.n()))));
    }

    void hod_recover() {
        auto g = graph();
        auto dyn = io::dynamics_from_json(load_json(opt.dyn));
        auto lifted = io::markov_from_json(load_json(opt.markov));
        recover(g, deconvolve(lifted, dyn));
    }

   private:
    void recover(const Graph& g, const MarkovSequence& markov) {
        IdentifyOptions options;
        if (opt.tol) options.tolerance = *opt.tol;
        if (!opt.chronicle.empty()) options.chronicle = io::chronicle_from_json(load_json(opt.chronicle));
        NodeSet target = opt.target.empty() ? g.vertices() : nodes(opt.target);
        auto result = identify(markov, g, target, options);

        json diagnostics = json::array();
        for (const auto& d : result.diagnostics) diagnostics.push_back(io::to_json(d));
        double bound = result.diagnostics.empty() ? 1.0 : result.diagnostics.back().error_bound;
        emit_matrix(result.recovered, {{"nodes", io::to_json(result.nodes)},
                                       {"residual_order", result.residual_order},
                                       {"error_amplification", bound},
                                       {"forces", diagnostics}});
    }

    std::ostream& out_;
    std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Runner runner(out, err);
    Options& o = runner.opt;
    std::function<void()> action;

    CLI::App app{"netident: zero forcing certificates and Markov-parameter reconstruction for undirected networks",
                 "netident"};
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
    app.footer(std::string("\nExit status: 0 success, 1 domain failure (uncertified target, coupling failure, "
                           "inconsistent data), 2 input or format error.\nNETIDENT_THREADS caps internal parallelism.\n"));

    auto graph_opt = [&](CLI::App* sub) { return sub->add_option("--graph", o.graph, "Graph JSON file")->required(); };
    auto bind = [&](CLI::App* sub, void (Runner::*fn)()) { sub->callback([&action, &runner, fn] { action = [&runner, fn] { (runner.*fn)(); }; }); };
    auto format_opt = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
    };

    auto* zfs = app.add_subcommand("zfs", "Zero forcing sets");
    zfs->require_subcommand(1);
    {
        auto* check = zfs->add_subcommand("check", "Is the node set a zero forcing set?");
        graph_opt(check);
        check->add_option("--set", o.set, "Initially black nodes (node set JSON)")->required();
        format_opt(check);
        check->footer(footer({kGraphFormat, kSetFormat}));
        bind(check, &Runner::zfs_check);

        auto* derive = zfs->add_subcommand("derive", "Derived set with its forcing chronicle");
        graph_opt(derive);
        derive->add_option("--set", o.set, "Initially black nodes (node set JSON)")->required();
        format_opt(derive);
        derive->footer(footer({kGraphFormat, kSetFormat, kChronicleFormat}));
        bind(derive, &Runner::zfs_derive);

        auto* min = zfs->add_subcommand("min", "Exact minimum zero forcing set (lexicographically first)");
        graph_opt(min);
        min->add_option("--cap", o.cap, "Largest graph the exact search accepts")->capture_default_str();
        format_opt(min);
        min->footer(footer({kGraphFormat}) + "Output: {\"size\": k, \"set\": [...]}\n");
        bind(min, &Runner::zfs_min);

        auto* heur = zfs->add_subcommand("heuristic", "Zero forcing set of size at most n - diam(G)");
        graph_opt(heur);
        format_opt(heur);
        heur->footer(footer({kGraphFormat}) + "Output: {\"size\": k, \"set\": [...]}\n");
        bind(heur, &Runner::zfs_heuristic_cmd);
    }

    auto* ident = app.add_subcommand("ident", "Identifiability certificates and reconstruction");
    ident->require_subcommand(1);
    {
        auto* cert = ident->add_subcommand("certify", "Certify which principal submatrix of X is identifiable");
        graph_opt(cert);
        cert->add_option("--in", o.in, "Input nodes (node set JSON)")->required();
        cert->add_option("--out-nodes,--out", o.out_nodes, "Output nodes (node set JSON)")->required();
        format_opt(cert);
        cert->footer(footer({kGraphFormat, kSetFormat}) +
                     "Output: {\"verdict\": CERTIFIED_FULL|CERTIFIED_PARTIAL|UNCERTIFIED, \"W\", \"derived\", "
                     "\"certified_full\", \"certified_nodes\", \"chronicle\", \"notes\"}\n");
        bind(cert, &Runner::ident_certify);

        auto* rec = ident->add_subcommand("recover", "Reconstruct X over the target from Markov parameters");
        graph_opt(rec);
        rec->add_option("--markov", o.markov, "Markov sequence JSON")->required();
        rec->add_option("--target", o.target, "Nodes to recover (node set JSON, default all)");
        rec->add_option("--chronicle", o.chronicle, "Forcing chronicle to replay instead of the default");
        rec->add_option("--tol", o.tol, "Degeneracy tolerance for recovered squared weights");
        format_opt(rec);
        rec->footer(footer({kGraphFormat, kSetFormat, kMarkovFormat, kChronicleFormat, kMatrixFormat}) +
                    "Output: recovered matrix CSV over the target nodes; per-force diagnostics JSON on stderr.\n");
        bind(rec, &Runner::ident_recover);
    }

    auto* sim = app.add_subcommand("sim", "Instance generation and Markov parameters");
    sim->require_subcommand(1);
    {
        auto* random = sim->add_subcommand("random", "Random member of the positive weight class");
        graph_opt(random);
        random->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
        random->add_option("--lo", o.lo, "Smallest edge weight")->capture_default_str();
        random->add_option("--hi", o.hi, "Largest edge weight")->capture_default_str();
        random->add_option("--diagonal", o.diagonal, "free | laplacian")
            ->check(CLI::IsMember({"free", "laplacian"}))
            ->capture_default_str();
        format_opt(random);
        random->footer(footer({kGraphFormat, kMatrixFormat}));
        bind(random, &Runner::sim_random);

        auto* markov = sim->add_subcommand("markov", "Markov parameters N X^k M, k = 0..order");
        markov->add_option("--graph", o.graph, "Graph JSON; when given, X must match its sign pattern");
        markov->add_option("--matrix", o.matrix, "State matrix CSV")->required();
        markov->add_option("--in", o.in, "Input nodes")->required();
        markov->add_option("--out-nodes,--out", o.out_nodes, "Output nodes")->required();
        markov->add_option("--order", o.order, "Highest power (default 2n)");
        format_opt(markov);
        markov->footer(footer({kGraphFormat, kSetFormat, kMatrixFormat, kMarkovFormat}));
        bind(markov, &Runner::sim_markov);

        auto* ce = sim->add_subcommand("counterexample", "Different X with identical Markov parameters");
        ce->add_option("--matrix", o.matrix, "Directed or symmetric sign-free matrix CSV")->required();
        ce->add_option("--in", o.in, "Input nodes")->required();
        ce->add_option("--out-nodes,--out", o.out_nodes, "Output nodes")->required();
        ce->add_option("--class", o.matrix_class, "directed | signfree")
            ->check(CLI::IsMember({"directed", "signfree"}))
            ->capture_default_str();
        ce->add_option("--epsilon", o.epsilon, "Scaling of hidden nodes (default 2 directed, -1 sign-free)");
        ce->add_option("--order", o.order, "Order up to which Markov equality is checked (default 2n)");
        format_opt(ce);
        ce->footer(footer({kSetFormat, kMatrixFormat}) + "Output: perturbed matrix CSV; witness summary on stderr.\n");
        bind(ce, &Runner::sim_counterexample);
    }

    auto* hod = app.add_subcommand("hod", "Higher-order node dynamics");
    hod->require_subcommand(1);
    {
        auto* check = hod->add_subcommand("check", "Finite-horizon check of C (EK)^k B != 0");
        check->add_option("--dyn", o.dyn, "Node dynamics JSON")->required();
        check->add_option("--kmax", o.kmax, "Largest k checked (default 2q)");
        format_opt(check);
        check->footer(footer({kDynFormat}) +
                      "Output: {\"verified_up_to\", \"ok\", \"finite_horizon\", \"first_failure\"}\n");
        bind(check, &Runner::hod_check);

        auto* markov = hod->add_subcommand("markov", "Lifted Markov parameters of the Kronecker network");
        graph_opt(markov);
        markov->add_option("--matrix", o.matrix, "Network weight matrix CSV")->required();
        markov->add_option("--dyn", o.dyn, "Node dynamics JSON")->required();
        markov->add_option("--in", o.in, "Input nodes")->required();
        markov->add_option("--out-nodes,--out", o.out_nodes, "Output nodes")->required();
        markov->add_option("--order", o.order, "Highest power (default 2n)");
        format_opt(markov);
        markov->footer(footer({kGraphFormat, kSetFormat, kMatrixFormat, kDynFormat, kMarkovFormat}) +
                       "Lifted data[k] has t|v_out| rows and r|v_in| columns.\n");
        bind(markov, &Runner::hod_markov);

        auto* rec = hod->add_subcommand("recover", "Deconvolve lifted Markov parameters, then reconstruct X");
        graph_opt(rec);
        rec->add_option("--markov", o.markov, "Lifted Markov sequence JSON")->required();
        rec->add_option("--dyn", o.dyn, "Node dynamics JSON")->required();
        rec->add_option("--target", o.target, "Nodes to recover (default all)");
        rec->add_option("--chronicle", o.chronicle, "Forcing chronicle to replay instead of the default");
        rec->add_option("--tol", o.tol, "Degeneracy tolerance for recovered squared weights");
        format_opt(rec);
        rec->footer(footer({kGraphFormat, kSetFormat, kMarkovFormat, kDynFormat, kMatrixFormat}));
        bind(rec, &Runner::hod_recover);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        if (code == 0) return kOk;
        const CLI::App* deepest = &app;
        while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
        err << deepest->help();
        return kInputFailure;
    }

    try {
        action();
        return kOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputFailure;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kDomainFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputFailure;
    }
}

}  // namespace netident::cli
