#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tcprof/analysis.hpp"
#include "tcprof/baselines.hpp"
#include "tcprof/error.hpp"
#include "tcprof/pen.hpp"
#include "tcprof/perturb.hpp"
#include "tcprof/pipeline.hpp"
#include "tcprof/ppr.hpp"
#include "tcprof/profiler.hpp"
#include "tcprof/report.hpp"
#include "tcprof/subnet.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace tcprof;

namespace {

py::array_t<double> to_numpy(const DenseMatrix& m) {
    py::array_t<double> out({m.size(), m.size()});
    std::copy(m.values().begin(), m.values().end(), out.mutable_data());
    return out;
}

std::vector<NodeId> resolve(const SignalingNetwork& net, const std::vector<std::string>& symbols) {
    std::vector<NodeId> out;
    for (const auto& s : symbols) {
        const auto id = net.find(s);
        if (!id) throw ValidationError("unknown node '" + s + "'", "genes");
        out.push_back(*id);
    }
    return out;
}

KnownComboSet known_from(const SignalingNetwork& net, const std::vector<std::vector<std::string>>& combos) {
    KnownComboSet known;
    for (const auto& c : combos) {
        auto ids = resolve(net, c);
        std::sort(ids.begin(), ids.end());
        known.combos.push_back(std::move(ids));
    }
    std::sort(known.combos.begin(), known.combos.end());
    known.combos.erase(std::unique(known.combos.begin(), known.combos.end()), known.combos.end());
    if (!known.combos.empty()) known.k = static_cast<unsigned>(known.combos.front().size());
    return known;
}

std::string json_text(const nlohmann::json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Influence profiling of drug-target combinations in signed signaling networks";
    m.attr("__version__") = kToolVersion;

    static py::exception<Error> base(m, "TcprofError");
    static py::exception<ValidationError> validation(m, "ValidationError", base.ptr());
    static py::exception<ParseError> parse(m, "ParseError", validation.ptr());
    static py::exception<ComputeError> compute(m, "ComputeError", base.ptr());
    static py::exception<IoError> io(m, "IoError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::set_error(parse, e.what());
        } catch (const ValidationError& e) {
            py::set_error(validation, e.what());
        } catch (const ComputeError& e) {
            py::set_error(compute, e.what());
        } catch (const IoError& e) {
            py::set_error(io, e.what());
        }
    });

    py::class_<SignalingNetwork>(m, "Network")
        .def_property_readonly("node_count", &SignalingNetwork::node_count)
        .def_property_readonly("edge_count", &SignalingNetwork::edge_count)
        .def_property_readonly("symbols", &SignalingNetwork::symbols)
        .def_property_readonly("digest", [](const SignalingNetwork& n) { return hex_digest(n.digest()); })
        .def("edges",
             [](const SignalingNetwork& n) {
                 std::vector<std::tuple<std::string, std::string, int>> out;
                 for (const auto& e : n.edges())
                     out.emplace_back(n.symbol(e.source), n.symbol(e.target), static_cast<int>(e.sign));
                 return out;
             })
        .def("out_degree", [](const SignalingNetwork& n, const std::string& s) { return n.out_degree(resolve(n, {s})[0]); })
        .def("to_tsv", [](const SignalingNetwork& n) { return serialize_network(n); })
        .def("__repr__", [](const SignalingNetwork& n) {
            return "<Network " + std::to_string(n.node_count()) + " nodes, " + std::to_string(n.edge_count()) + " edges>";
        });

    m.def(
        "parse_network", [](const std::string& text, bool drop_neutral) { return parse_network(text, drop_neutral).network; },
        "text"_a, "drop_neutral"_a = true);
    m.def(
        "load_network", [](const std::filesystem::path& p, bool drop_neutral) { return load_network(p, drop_neutral).network; },
        "path"_a, "drop_neutral"_a = true);

    m.def(
        "build_subnetwork",
        [](const SignalingNetwork& net, const std::vector<std::string>& targets, const std::vector<std::string>& oncogenes,
           unsigned d) { return build_subnetwork(net, {resolve(net, targets), resolve(net, oncogenes), d}); },
        "network"_a, "targets"_a, "oncogenes"_a, "d"_a = 5);

    m.def(
        "ppr",
        [](const SignalingNetwork& net, double alpha, double tol, unsigned threads) {
            py::gil_scoped_release release;
            auto matrix = ppr_all_pairs(net, {alpha, tol}, Executor(threads));
            py::gil_scoped_acquire acquire;
            return to_numpy(matrix.values);
        },
        "network"_a, "alpha"_a = 0.2, "tol"_a = 1e-9, "threads"_a = 1);

    m.def(
        "pen",
        [](const SignalingNetwork& net, double alpha, double tol, double epsilon, unsigned threads) {
            const auto ppr = ppr_all_pairs(net, {alpha, tol}, Executor(threads));
            return to_numpy(pen_matrix(ppr, net, epsilon).values);
        },
        "network"_a, "alpha"_a = 0.2, "tol"_a = 1e-9, "epsilon"_a = kDefaultEpsilon, "threads"_a = 1);

    m.def("pen_distance", &pen_distance, "pi"_a, "out_degree"_a, "epsilon"_a = kDefaultEpsilon);

    m.def(
        "source_diffs",
        [](const SignalingNetwork& net, const std::vector<std::string>& genes, const std::string& measure, double alpha,
           double epsilon) {
            AnalysisParams p;
            p.measure = parse_measure(measure);
            p.ppr.alpha = alpha;
            p.epsilon = epsilon;
            const auto diffs = compute_source_diffs(net, resolve(net, genes), p);
            return py::array_t<double>(diffs.values.size(), diffs.values.data());
        },
        "network"_a, "genes"_a, "measure"_a = "pen", "alpha"_a = 0.2, "epsilon"_a = kDefaultEpsilon);

    m.def(
        "profile",
        [](const SignalingNetwork& net, const std::vector<std::string>& genes,
           const std::vector<std::vector<std::string>>& known, unsigned k, unsigned n_bucket,
           const std::vector<double>& m_levels, const std::string& measure) {
            AnalysisParams p;
            p.measure = parse_measure(measure);
            p.k = k;
            p.histogram = {n_bucket, m_levels};
            return json_text(histogram_json(analyze(net, resolve(net, genes), known_from(net, known), p).histogram));
        },
        "network"_a, "genes"_a, "known"_a, "k"_a = 2, "n_bucket"_a = 5,
        "m_levels"_a = std::vector<double>{1, 10, 20, 50}, "measure"_a = "pen");

    m.def(
        "perturb",
        [](const SignalingNetwork& net, const std::string& mode, double fraction, std::uint64_t seed) {
            return perturb(net, {parse_perturb_mode(mode), fraction, seed});
        },
        "network"_a, "mode"_a, "fraction"_a, "seed"_a);

    m.def(
        "esr",
        [](const std::map<std::string, std::uint64_t>& worst) {
            std::map<MeasureTag, std::uint64_t> sizes;
            for (const auto& [name, size] : worst) sizes[parse_measure(name)] = size;
            std::map<std::string, double> out;
            for (const auto& [tag, entry] : esr(sizes).entries) out[std::string(measure_name(tag))] = entry.ratio;
            return out;
        },
        "worst_bucket_sizes"_a);

    m.def(
        "run_pipeline",
        [](const std::string& config_json, unsigned threads) {
            const auto config = PipelineConfig::from_json(nlohmann::json::parse(config_json));
            const auto result = run_pipeline(config, Executor(threads));
            return py::dict("out_dir"_a = result.out_dir.string(), "ppr_cache_hit"_a = result.ppr_cache_hit,
                            "pen_cache_hit"_a = result.pen_cache_hit, "subnet_nodes"_a = result.subnet_nodes,
                            "subnet_edges"_a = result.subnet_edges);
        },
        "config_json"_a, "threads"_a = 1);
}
