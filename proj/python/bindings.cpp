#include "papr_pts/cli.hpp"
#include "papr_pts/errors.hpp"
#include "papr_pts/harness.hpp"
#include "papr_pts/optimizers.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace papr;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

std::span<const cplx> view(const ComplexArray& a)
{
    if (a.ndim() != 1) {
        throw InvalidInput("expected a one-dimensional array");
    }
    return {a.data(), static_cast<std::size_t>(a.size())};
}

py::array_t<cplx> to_array(std::span<const cplx> values)
{
    const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(values.size())};
    const std::vector<py::ssize_t> strides{static_cast<py::ssize_t>(sizeof(cplx))};
    return py::array_t<cplx>(shape, strides, values.data());
}

Modulation parse_modulation(const std::string& name)
{
    if (name == "qpsk") {
        return Modulation::Qpsk;
    }
    if (name == "16qam") {
        return Modulation::Qam16;
    }
    throw InvalidInput("unknown modulation '" + name + "' (qpsk or 16qam)");
}

PartitionScheme parse_scheme(const std::string& name)
{
    if (name == "random") {
        return PartitionScheme::Random;
    }
    if (name == "adjacent") {
        return PartitionScheme::Adjacent;
    }
    if (name == "interleaved") {
        return PartitionScheme::Interleaved;
    }
    throw InvalidInput("unknown partition scheme '" + name + "'");
}

OptimizerKind parse_kind(const std::string& name)
{
    if (auto kind = parse_optimizer(name)) {
        return *kind;
    }
    throw InvalidInput("unknown optimizer '" + name + "'");
}

} // namespace

PYBIND11_MODULE(papr_pts, m)
{
    m.doc() = "PAPR reduction of OFDM signals by partial transmit sequences";

    py::register_exception<Refusal>(m, "Refusal", PyExc_RuntimeError);

    m.def(
        "oversampled_idft",
        [](const ComplexArray& spectrum, int oversampling) {
            const auto x = view(spectrum);
            CVec out(x.size() * static_cast<std::size_t>(std::max(oversampling, 1)));
            oversampled_idft_into(x, oversampling, out);
            return to_array(out);
        },
        py::arg("spectrum"), py::arg("l") = kDefaultOversampling,
        "Time samples x[k] = N^-1/2 sum_n X_n exp(j2pi nk/(LN)), k = 0..LN-1.");
    m.def(
        "papr", [](const ComplexArray& samples) { return papr::papr(view(samples)); }, py::arg("samples"),
        "Peak power over mean power (linear).");
    m.def("papr_db", &papr_db, py::arg("ratio"));
    m.def(
        "constellation",
        [](const std::string& name) {
            return to_array(Constellation::make(parse_modulation(name)).points());
        },
        py::arg("name"));
    m.def(
        "quantize_phase", [](cplx z, int w) { return quantize_phase(z, PhaseSet(w)); }, py::arg("z"),
        py::arg("w"), "Exponent of the nearest allowed phase, or None for z == 0.");

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("n", &ExperimentConfig::n)
        .def_property(
            "modulation", [](const ExperimentConfig& c) { return std::string(to_string(c.modulation)); },
            [](ExperimentConfig& c, const std::string& v) { c.modulation = parse_modulation(v); })
        .def_readwrite("l", &ExperimentConfig::oversampling)
        .def_readwrite("m", &ExperimentConfig::m)
        .def_readwrite("w", &ExperimentConfig::w)
        .def_property(
            "partition", [](const ExperimentConfig& c) { return std::string(to_string(c.partition)); },
            [](ExperimentConfig& c, const std::string& v) { c.partition = parse_scheme(v); })
        .def_readwrite("per_symbol_partition", &ExperimentConfig::per_symbol_partition)
        .def_property(
            "optimizer", [](const ExperimentConfig& c) { return std::string(to_string(c.optimizer)); },
            [](ExperimentConfig& c, const std::string& v) { c.optimizer = parse_kind(v); })
        .def_property(
            "s", [](const ExperimentConfig& c) { return c.abc.population; },
            [](ExperimentConfig& c, int v) { c.abc.population = v; })
        .def_property(
            "limit", [](const ExperimentConfig& c) { return c.abc.limit; },
            [](ExperimentConfig& c, int v) { c.abc.limit = v; })
        .def_property(
            "k", [](const ExperimentConfig& c) { return c.abc.max_iterations; },
            [](ExperimentConfig& c, int v) { c.abc.max_iterations = v; })
        .def_property(
            "perturb",
            [](const ExperimentConfig& c) {
                return c.abc.perturbation == Perturbation::SingleCoordinate ? "one" : "all";
            },
            [](ExperimentConfig& c, const std::string& v) {
                if (v != "all" && v != "one") {
                    throw InvalidInput("perturb must be 'all' or 'one'");
                }
                c.abc.perturbation = v == "one" ? Perturbation::SingleCoordinate : Perturbation::AllCoordinates;
            })
        .def_readwrite("trials", &ExperimentConfig::rs_trials)
        .def_readwrite("r", &ExperimentConfig::gd_radius)
        .def_readwrite("iters", &ExperimentConfig::gd_iterations)
        .def_readwrite("fix_first", &ExperimentConfig::fix_first)
        .def_readwrite("cap", &ExperimentConfig::exhaustive_cap)
        .def_readwrite("symbols", &ExperimentConfig::symbol_count)
        .def_readwrite("seed", &ExperimentConfig::master_seed)
        .def_readwrite("thresholds_db", &ExperimentConfig::thresholds_db)
        .def("validate", &ExperimentConfig::validate);

    py::class_<CcdfCurve>(m, "CcdfCurve")
        .def_readonly("thresholds_db", &CcdfCurve::thresholds_db)
        .def_readonly("probabilities", &CcdfCurve::probabilities)
        .def_readonly("sample_count", &CcdfCurve::sample_count)
        .def(
            "crossing", [](const CcdfCurve& c, double target) { return ccdf_crossing(c, target); },
            py::arg("target"), "Threshold (dB) where the curve falls to `target`.");

    m.def("threshold_grid", &threshold_grid, py::arg("first"), py::arg("last"), py::arg("step"));
    m.def(
        "run_symbols",
        [](const ExperimentConfig& c, unsigned workers) {
            std::vector<SymbolOutcome> outcomes;
            {
                py::gil_scoped_release release;
                outcomes = run_symbols(c, workers);
            }
            py::list rows;
            for (const auto& o : outcomes) {
                rows.append(py::make_tuple(o.papr_db, o.evaluations));
            }
            return rows;
        },
        py::arg("config"), py::arg("workers") = 0u, "Per-symbol (papr_db, evaluations) pairs.");
    m.def("run_ccdf", &run_ccdf, py::arg("config"), py::arg("workers") = 0u,
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "run_convergence",
        [](const ExperimentConfig& c, std::size_t runs, unsigned workers) {
            return run_convergence(c, runs, workers).mean_best_db;
        },
        py::arg("config"), py::arg("runs"), py::arg("workers") = 0u, py::call_guard<py::gil_scoped_release>(),
        "Mean best PAPR (dB) after each iteration.");
    m.def(
        "oracle_check",
        [](int n, int mm, int w, const std::vector<std::uint64_t>& seeds) {
            const OracleReport r = oracle_check(n, mm, w, seeds);
            return py::make_tuple(r.pass_count(), r.entries.size());
        },
        py::arg("n"), py::arg("m"), py::arg("w"), py::arg("seeds"), "(passed, total).");
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = cli::run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
