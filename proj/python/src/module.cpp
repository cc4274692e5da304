#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seqwls/basis.hpp"
#include "seqwls/budget.hpp"
#include "seqwls/harness.hpp"
#include "seqwls/leastsq.hpp"
#include "seqwls/linalg.hpp"
#include "seqwls/rng.hpp"
#include "seqwls/samplers.hpp"

namespace py = pybind11;
using namespace seqwls;

namespace {

SymMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    SymMatrix a(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw std::invalid_argument("matrix must be square");
        for (int j = 0; j < n; ++j)
            a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (a(i, j) != a(j, i)) throw std::invalid_argument("matrix must be symmetric");
    return a;
}

std::vector<std::vector<double>> rows_from_matrix(const SymMatrix& a) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(a.size()));
    for (int i = 0; i < a.size(); ++i) {
        rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(a.size()));
        for (int j = 0; j < a.size(); ++j)
            rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a(i, j);
    }
    return rows;
}

BudgetRule make_rule(double eps, bool per_step) {
    return per_step ? BudgetRule::per_step(eps) : BudgetRule::fixed(eps);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Optimal weighted least-squares sampling with sequential sample recycling";

    py::register_exception<SingularWeightError>(m, "SingularWeightError");
    py::register_exception<BracketError>(m, "BracketError");
    py::register_exception<IterationCapError>(m, "IterationCapError");

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream_id") = 0)
        .def("next_u64", &RngStream::next_u64)
        .def("next_double", &RngStream::next_double)
        .def("next_below", &RngStream::next_below, py::arg("n"));

    py::class_<HaarNode>(m, "HaarNode")
        .def(py::init<int, std::int64_t>(), py::arg("level"), py::arg("shift"))
        .def_readonly("level", &HaarNode::level)
        .def_readonly("shift", &HaarNode::shift)
        .def("__eq__", [](const HaarNode& a, const HaarNode& b) { return a == b; })
        .def("__repr__", [](const HaarNode& n) {
            return "HaarNode(level=" + std::to_string(n.level) +
                   ", shift=" + std::to_string(n.shift) + ")";
        });

    py::class_<Basis>(m, "Basis")
        .def_static("hermite", &Basis::hermite)
        .def_static(
            "haar_tree",
            [](const std::vector<std::pair<int, std::int64_t>>& nodes) {
                std::vector<HaarNode> v;
                v.reserve(nodes.size());
                for (const auto& [level, shift] : nodes) v.push_back({level, shift});
                return Basis::haar_tree(std::move(v));
            },
            py::arg("nodes"))
        .def_static("haar_random_tree", &Basis::haar_random_tree, py::arg("seed"),
                    py::arg("m_max"))
        .def_property_readonly(
            "kind",
            [](const Basis& b) { return b.kind() == BasisKind::Hermite ? "hermite" : "haar"; })
        .def_property_readonly("nodes", &Basis::nodes)
        .def("max_dim", &Basis::max_dim)
        .def("in_domain", &Basis::in_domain, py::arg("x"))
        .def("eval", &Basis::eval, py::arg("j"), py::arg("x"))
        .def(
            "eval_all",
            [](const Basis& b, int m, double x) {
                std::vector<double> out(static_cast<std::size_t>(m));
                b.eval_all(m, x, out);
                return out;
            },
            py::arg("m"), py::arg("x"))
        .def("christoffel", &Basis::christoffel, py::arg("m"), py::arg("x"))
        .def("optimal_weight", &Basis::optimal_weight, py::arg("m"), py::arg("x"))
        .def("max_level", &Basis::max_level, py::arg("m"));

    m.def("grow_random_tree", &grow_random_tree, py::arg("seed"), py::arg("m_max"));
    m.def("hermite_eval", &hermite_eval, py::arg("j"), py::arg("x"));
    m.def(
        "haar_eval", [](int level, std::int64_t shift, double x) {
            return haar_eval({level, shift}, x);
        },
        py::arg("level"), py::arg("shift"), py::arg("x"));

    m.def("n_eps", &n_eps, py::arg("m"), py::arg("eps"));
    m.def("n_uniform", &n_uniform, py::arg("m"), py::arg("eps0"));
    m.def("eps_schedule", &eps_schedule, py::arg("m"), py::arg("eps0"));
    m.def(
        "budget", [](int m, double eps, bool per_step) { return make_rule(eps, per_step).n(m); },
        py::arg("m"), py::arg("eps"), py::arg("per_step") = false);
    m.def(
        "harmonic_cost_sum",
        [](int m, double eps, bool per_step) {
            return harmonic_cost_sum(make_rule(eps, per_step), m);
        },
        py::arg("m"), py::arg("eps"), py::arg("per_step") = false);
    m.def(
        "chernoff_tail",
        [](double tau, double xbar) {
            const ChernoffTail t = chernoff_tail(tau, xbar);
            return std::make_pair(t.exact, t.simplified);
        },
        py::arg("tau"), py::arg("xbar"));
    m.def(
        "cost_tail_bound",
        [](int m, double tau, double eps, bool per_step) {
            return cost_tail_bound(make_rule(eps, per_step), m, tau);
        },
        py::arg("m"), py::arg("tau"), py::arg("eps"), py::arg("per_step") = false);
    m.def("matrix_chernoff_bound", &matrix_chernoff_bound, py::arg("m"), py::arg("n"),
          py::arg("k"));

    py::class_<SampleSet>(m, "SampleSet")
        .def(py::init<>())
        .def_readwrite("step", &SampleSet::step)
        .def_readwrite("points", &SampleSet::points);

    py::class_<CostLedger::Entry>(m, "LedgerEntry")
        .def_readonly("m", &CostLedger::Entry::m)
        .def_readonly("size", &CostLedger::Entry::size)
        .def_readonly("replacements", &CostLedger::Entry::replacements)
        .def_readonly("extensions", &CostLedger::Entry::extensions)
        .def_readonly("refills", &CostLedger::Entry::refills)
        .def_readonly("cumulative", &CostLedger::Entry::cumulative);

    py::class_<CostLedger>(m, "CostLedger")
        .def(py::init<>())
        .def("raw_draws", &CostLedger::raw_draws)
        .def("entries", &CostLedger::entries)
        .def("total_cost", &CostLedger::total_cost, py::arg("m"))
        .def("replacements_into", &CostLedger::replacements_into, py::arg("m"));

    m.def("hermite_cdf", &hermite_cdf, py::arg("j"), py::arg("x"));
    m.def(
        "sample_sigma",
        [](const Basis& b, int j, RngStream& rng, double tol) {
            return sample_sigma(b, j, rng, tol);
        },
        py::arg("basis"), py::arg("j"), py::arg("rng"), py::arg("tol") = 1e-12);
    m.def(
        "sample_mu",
        [](const Basis& b, int mm, RngStream& rng, double tol) {
            return sample_mu(b, mm, rng, tol);
        },
        py::arg("basis"), py::arg("m"), py::arg("rng"), py::arg("tol") = 1e-12);
    m.def("algorithm1_step", &algorithm1_step, py::arg("basis"), py::arg("s"), py::arg("n_next"),
          py::arg("rng"), py::arg("ledger"));
    m.def("algorithm2_step", &algorithm2_step, py::arg("basis"), py::arg("s"), py::arg("n_next"),
          py::arg("rng"), py::arg("ledger"));
    m.def(
        "algorithm3_step",
        [](const Basis& b, const SampleSet& s, RngStream& rng, CostLedger& ledger,
           double cap_eps, std::int64_t cap_multiplier, double tol) {
            return algorithm3_step(b, s, rng, ledger, {cap_eps, cap_multiplier, tol});
        },
        py::arg("basis"), py::arg("s"), py::arg("rng"), py::arg("ledger"),
        py::arg("cap_eps") = 0.01, py::arg("cap_multiplier") = 100, py::arg("tol") = 1e-12);
    m.def("multi_step", &multi_step, py::arg("basis"), py::arg("s"), py::arg("q"),
          py::arg("n_next"), py::arg("rng"), py::arg("ledger"));

    py::class_<WlsFit>(m, "WlsFit")
        .def_readonly("coefficients", &WlsFit::coefficients)
        .def_readonly("delta", &WlsFit::delta)
        .def_readonly("kappa", &WlsFit::kappa)
        .def_readonly("accepted", &WlsFit::accepted);

    m.def(
        "assemble_gramian",
        [](const Basis& b, int mm, const std::vector<double>& pts) {
            return rows_from_matrix(assemble_gramian(b, mm, pts));
        },
        py::arg("basis"), py::arg("m"), py::arg("points"));
    m.def(
        "spectral_deviation",
        [](const std::vector<std::vector<double>>& rows) {
            return spectral_deviation(matrix_from_rows(rows));
        },
        py::arg("matrix"));
    m.def(
        "condition_number",
        [](const std::vector<std::vector<double>>& rows) {
            return condition_number(matrix_from_rows(rows));
        },
        py::arg("matrix"));
    m.def(
        "solve_spd",
        [](const std::vector<std::vector<double>>& rows, const std::vector<double>& b) {
            return solve_spd(matrix_from_rows(rows), b);
        },
        py::arg("matrix"), py::arg("rhs"));
    m.def("wls_fit", &wls_fit, py::arg("basis"), py::arg("m"), py::arg("xs"), py::arg("ys"));
    m.def(
        "l2_error",
        [](const Basis& b, int mm, const std::vector<double>& c,
           const std::function<double(double)>& u) { return l2_error(b, mm, c, u); },
        py::arg("basis"), py::arg("m"), py::arg("coefficients"), py::arg("u"));
    m.def(
        "projection_coefficients",
        [](const Basis& b, int mm, const std::function<double(double)>& u) {
            return projection_coefficients(b, mm, u);
        },
        py::arg("basis"), py::arg("m"), py::arg("u"));
    m.def(
        "best_approx_error",
        [](const Basis& b, int mm, const std::function<double(double)>& u) {
            return best_approx_error(b, mm, u);
        },
        py::arg("basis"), py::arg("m"), py::arg("u"));

    m.def(
        "simulate_quantiles",
        [](const std::string& basis, int alg, double eps, bool per_step, int m_max, int trials,
           std::uint64_t seed, std::uint64_t tree_seed) {
            TrialConfig config;
            config.basis = basis == "hermite" ? BasisKind::Hermite : BasisKind::HaarTree;
            config.tree_seed = tree_seed;
            config.algorithm = static_cast<AlgorithmKind>(alg);
            config.rule = make_rule(eps, per_step);
            config.m_max = m_max;
            config.trials = trials;
            config.seed = seed;
            std::vector<TrialRecord> records;
            QuantileTable table;
            {
                py::gil_scoped_release release;
                records = run_trials(config);
                table = summarize(records, config);
            }
            std::vector<std::tuple<int, std::string, std::string, double>> rows;
            for (const QuantileRow& row : table.rows)
                for (std::size_t i = 0; i < row.values.size(); ++i)
                    rows.emplace_back(row.m, row.stat, kQuantileLevels[i], row.values[i]);
            return rows;
        },
        py::arg("basis") = "hermite", py::arg("alg") = 1, py::arg("eps") = 0.01,
        py::arg("per_step") = false, py::arg("m_max") = 10, py::arg("trials") = 100,
        py::arg("seed") = 1, py::arg("tree_seed") = 7,
        "Run a sequential experiment and return (m, stat, level, value) quantile rows");

    m.def("verify_bounds", []() {
        const VerifyReport report = run_verification_sweeps();
        return std::make_pair(report.checks, report.violations);
    });
}
