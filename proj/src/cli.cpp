#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "seqwls/harness.hpp"
#include "seqwls/leastsq.hpp"

namespace seqwls {

namespace {

void parse_xy_file(const std::string& path, std::vector<double>& xs, std::vector<double>& ys) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double x, y;
        if (!(ss >> x)) continue; // blank or comment-only line
        std::string rest;
        if (!(ss >> y) || (ss >> rest)) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected `x y` pair");
        }
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.empty()) throw std::runtime_error(path + ": no sample pairs found");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int run_simulate(const TrialConfig& config, const std::string& records_path) {
    const std::vector<TrialRecord> records = run_trials(config);
    const QuantileTable table = summarize(records, config);
    if (config.format == OutputFormat::Csv)
        emit_table_csv(table, config.out_path);
    else
        emit_table_json(table, config, config.out_path);
    if (!records_path.empty()) emit_records_csv(records, records_path);
    if (table.failed_trials > 0)
        std::cerr << table.failed_trials << " of " << config.trials
                  << " trials failed; see records output\n";
    std::cout << "wrote " << config.out_path << " (" << config.trials << " trials)\n";
    return 0;
}

int run_budget(int m_min, int m_max, double eps, double eps0) {
    std::cout << "m,n_eps,n_uniform,chernoff_bound\n";
    for (int m = m_min; m <= m_max; ++m) {
        const std::int64_t n = n_eps(m, eps);
        std::cout << m << ',' << n << ',' << n_uniform(m, eps0) << ','
                  << fmt17(matrix_chernoff_bound(m, n, static_cast<double>(m))) << '\n';
    }
    return 0;
}

int run_fit(const std::string& basis_name, int m, const std::string& path,
            std::uint64_t tree_seed, int tree_size) {
    std::vector<double> xs, ys;
    parse_xy_file(path, xs, ys);
    const Basis basis = basis_name == "hermite"
                            ? Basis::hermite()
                            : Basis::haar_random_tree(tree_seed, tree_size > 0 ? tree_size : m);
    const WlsFit fit = wls_fit(basis, m, xs, ys);
    std::cout << "accepted = " << (fit.accepted ? "true" : "false") << '\n';
    std::cout << "delta = " << fmt17(fit.delta) << '\n';
    std::cout << "kappa = " << fmt17(fit.kappa) << '\n';
    for (std::size_t j = 0; j < fit.coefficients.size(); ++j)
        std::cout << "c[" << j + 1 << "] = " << fmt17(fit.coefficients[j]) << '\n';
    return 0;
}

int run_verify() {
    const VerifyReport report = run_verification_sweeps();
    for (const std::string& v : report.violations) std::cout << "violation: " << v << '\n';
    std::cout << report.checks << " checks, " << report.violations.size() << " violations\n";
    return report.ok() ? 0 : 1;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Optimal weighted least-squares sampling: sequential sample "
                 "recycling, budget rules, and Monte Carlo experiments"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    std::string basis = "hermite";
    int alg = 1;
    double eps = 0.01;
    double eps0 = 0.0;
    int m_min = 1;
    int m_max = 50;
    int trials = 1000;
    int fit_m = 1;
    int tree_size = 0;
    std::uint64_t seed = 1;
    std::uint64_t tree_seed = 7;
    std::string out_path;
    std::string format = "csv";
    std::string records_path;
    std::string in_path;

    CLI::App* sim = app.add_subcommand("simulate", "Run a sequential sampling experiment and "
                                                   "emit quantile tables");
    sim->add_option("--basis", basis, "Basis family")
        ->check(CLI::IsMember({"hermite", "haar"}));
    sim->add_option("--alg", alg, "Sampling algorithm")->check(CLI::Range(1, 3));
    sim->add_option("--eps", eps, "Per-step failure probability (fixed rule)");
    CLI::Option* sim_eps0 =
        sim->add_option("--eps0", eps0, "Total failure probability (per-step schedule)");
    sim->add_option("--m-max", m_max, "Largest dimension");
    sim->add_option("--trials", trials, "Number of independent trials");
    sim->add_option("--seed", seed, "Base RNG seed");
    sim->add_option("--tree-seed", tree_seed, "Haar tree growth seed");
    sim->add_option("--out", out_path, "Output path")->required();
    sim->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("--records", records_path, "Optional per-trial records CSV");

    CLI::App* budget = app.add_subcommand("budget", "Print budget and bound tables");
    budget->add_option("--m-min", m_min, "First dimension");
    budget->add_option("--m-max", m_max, "Last dimension")->required();
    budget->add_option("--eps", eps, "Failure probability for n_eps");
    CLI::Option* budget_eps0 =
        budget->add_option("--eps0", eps0, "Total failure probability for n_uniform");

    CLI::App* fit = app.add_subcommand("fit", "Weighted least-squares fit of an x/y sample file");
    fit->add_option("--basis", basis, "Basis family")
        ->check(CLI::IsMember({"hermite", "haar"}));
    fit->add_option("--m", fit_m, "Number of basis functions")->required();
    fit->add_option("--in", in_path, "Sample file, one `x y` pair per line")->required();
    fit->add_option("--tree-seed", tree_seed, "Haar tree growth seed");
    fit->add_option("--tree-size", tree_size, "Haar tree size (defaults to m)");

    CLI::App* verify = app.add_subcommand("verify", "Run the deterministic bound sweeps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) {
            TrialConfig config;
            config.basis = basis == "hermite" ? BasisKind::Hermite : BasisKind::HaarTree;
            config.tree_seed = tree_seed;
            config.algorithm = static_cast<AlgorithmKind>(alg);
            config.rule = sim_eps0->count() > 0 ? BudgetRule::per_step(eps0)
                                                : BudgetRule::fixed(eps);
            config.m_max = m_max;
            config.trials = trials;
            config.seed = seed;
            config.out_path = out_path;
            config.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
            return run_simulate(config, records_path);
        }
        if (budget->parsed())
            return run_budget(m_min, m_max, eps, budget_eps0->count() > 0 ? eps0 : eps);
        if (fit->parsed()) return run_fit(basis, fit_m, in_path, tree_seed, tree_size);
        if (verify->parsed()) return run_verify();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace seqwls
