#include "seqwls/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "seqwls/leastsq.hpp"
#include "seqwls/samplers.hpp"

namespace seqwls {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_number(double v) {
    if (std::isfinite(v)) return fmt17(v);
    if (std::isnan(v)) return "\"nan\"";
    return v > 0 ? "\"inf\"" : "\"-inf\"";
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void validate(const TrialConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (config.m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    if (!(config.rule.eps > 0.0 && config.rule.eps < 1.0))
        throw std::invalid_argument("failure probability must lie in (0,1)");
}

double nearest_rank(const std::vector<double>& sorted, double p) {
    const auto n = static_cast<double>(sorted.size());
    auto idx = static_cast<std::size_t>(std::ceil(p * n));
    if (idx == 0) idx = 1;
    return sorted[std::min(idx, sorted.size()) - 1];
}

QuantileRow make_row(int m, const char* stat, std::vector<double> values) {
    std::sort(values.begin(), values.end());
    QuantileRow row{m, stat, {}};
    row.values = {values.front(),          nearest_rank(values, 0.10),
                  nearest_rank(values, 0.25), nearest_rank(values, 0.50),
                  nearest_rank(values, 0.75), nearest_rank(values, 0.90),
                  values.back()};
    return row;
}

} // namespace

std::vector<TrialRecord> run_trials(const TrialConfig& config) {
    validate(config);
    const Basis basis = config.basis == BasisKind::Hermite
                            ? Basis::hermite()
                            : Basis::haar_random_tree(config.tree_seed, config.m_max);
    std::vector<TrialRecord> records(static_cast<std::size_t>(config.trials));
    for (int t = 0; t < config.trials; ++t) {
        TrialRecord rec;
        rec.trial = t;
        RngStream rng(config.seed, static_cast<std::uint64_t>(t), StreamPurpose::Sampling);
        CostLedger ledger;
        SampleSet s;
        try {
            for (int m = 1; m <= config.m_max; ++m) {
                switch (config.algorithm) {
                case AlgorithmKind::Alg1:
                    s = algorithm1_step(basis, s, config.rule.n(m), rng, ledger);
                    break;
                case AlgorithmKind::Alg2:
                    s = algorithm2_step(basis, s, config.rule.n(m), rng, ledger);
                    break;
                case AlgorithmKind::Alg3:
                    s = algorithm3_step(basis, s, rng, ledger);
                    break;
                }
                const SymMatrix g = assemble_gramian(basis, m, s.points);
                const double delta = spectral_deviation(g);
                StepStats stats;
                stats.m = m;
                stats.size = static_cast<std::int64_t>(s.points.size());
                stats.replacements = ledger.replacements_into(m);
                stats.cost = ledger.total_cost(m);
                stats.delta = delta;
                stats.kappa = condition_number(g);
                stats.accepted = delta <= 0.5;
                rec.steps.push_back(stats);
            }
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
        }
        records[static_cast<std::size_t>(t)] = std::move(rec);
    }
    return records;
}

QuantileTable summarize(const std::vector<TrialRecord>& records, const TrialConfig& config) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");
    QuantileTable table;
    for (const TrialRecord& rec : records)
        if (rec.failed) ++table.failed_trials;

    for (int m = 1; m <= config.m_max; ++m) {
        std::vector<double> kappas;
        std::vector<double> ratios;
        std::vector<double> growth;
        for (const TrialRecord& rec : records) {
            if (rec.failed) continue;
            const StepStats& st = rec.steps[static_cast<std::size_t>(m) - 1];
            kappas.push_back(st.kappa);
            ratios.push_back(static_cast<double>(st.cost) /
                             static_cast<double>(config.rule.n(m)));
            if (config.algorithm == AlgorithmKind::Alg3 && m >= 2) {
                const double lm = std::log(static_cast<double>(m));
                growth.push_back(static_cast<double>(st.cost) / (m * lm * lm));
            }
        }
        if (kappas.empty()) continue;
        table.rows.push_back(make_row(m, "kappa", std::move(kappas)));
        table.rows.push_back(make_row(m, "cost_ratio", std::move(ratios)));
        if (!growth.empty()) table.rows.push_back(make_row(m, "cost_mlog2m", std::move(growth)));
    }
    return table;
}

void emit_table_csv(const QuantileTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "m,stat,level,value\n";
    for (const QuantileRow& row : table.rows)
        for (std::size_t i = 0; i < row.values.size(); ++i)
            out << row.m << ',' << row.stat << ',' << kQuantileLevels[i] << ','
                << fmt17(row.values[i]) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_table_json(const QuantileTable& table, const TrialConfig& config,
                     const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "{\n  \"config\": {\n";
    out << "    \"basis\": \"" << (config.basis == BasisKind::Hermite ? "hermite" : "haar")
        << "\",\n";
    out << "    \"tree_seed\": " << config.tree_seed << ",\n";
    out << "    \"algorithm\": " << static_cast<int>(config.algorithm) << ",\n";
    out << "    \"rule\": \""
        << (config.rule.kind == BudgetRule::Kind::FixedEps ? "fixed" : "per_step") << "\",\n";
    out << "    \"eps\": " << fmt17(config.rule.eps) << ",\n";
    out << "    \"m_max\": " << config.m_max << ",\n";
    out << "    \"trials\": " << config.trials << ",\n";
    out << "    \"seed\": " << config.seed << "\n";
    out << "  },\n";
    out << "  \"failed_trials\": " << table.failed_trials << ",\n";
    out << "  \"rows\": [";
    bool first = true;
    for (const QuantileRow& row : table.rows) {
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            out << (first ? "\n" : ",\n");
            first = false;
            out << "    {\"m\": " << row.m << ", \"stat\": \"" << row.stat << "\", \"level\": \""
                << kQuantileLevels[i] << "\", \"value\": " << json_number(row.values[i]) << "}";
        }
    }
    out << "\n  ]\n}\n";
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_records_csv(const std::vector<TrialRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "trial,m,size,replacements,cost,delta,kappa,accepted,error\n";
    for (const TrialRecord& rec : records) {
        if (rec.failed) {
            out << rec.trial << ",,,,,,,," << csv_quote(rec.error) << '\n';
            continue;
        }
        for (const StepStats& st : rec.steps)
            out << rec.trial << ',' << st.m << ',' << st.size << ',' << st.replacements << ','
                << st.cost << ',' << fmt17(st.delta) << ',' << fmt17(st.kappa) << ','
                << (st.accepted ? 1 : 0) << ",\n";
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

// Long-double reevaluations of the closed-form budgets. These shadow the
// double-precision implementations with ~19 significant digits so that a
// ceil() landing on the wrong side would be caught.
std::int64_t oracle_n_eps(int m, long double eps) {
    if (m == 0) return 0;
    const long double c = 2.0L / (1.0L - std::log(2.0L));
    return static_cast<std::int64_t>(
        std::ceil(c * m * (std::log(2.0L * m) - std::log(eps))));
}

std::int64_t oracle_n_uniform(int m, long double eps0) {
    const long double c = 2.0L / (1.0L - std::log(2.0L));
    const long double pi = std::numbers::pi_v<long double>;
    return static_cast<std::int64_t>(std::ceil(
        c * m * (std::log(2.0L * m) + 2.0L * std::log(static_cast<long double>(m)) -
                 std::log(6.0L * eps0 / (pi * pi)))));
}

} // namespace

VerifyReport run_verification_sweeps() {
    VerifyReport report;
    auto fail = [&report](const std::string& what) { report.violations.push_back(what); };
    const double eps_grid[] = {0.5, 0.1, 0.01, 0.001};
    constexpr int kMaxM = 10000;
    const double c = kBudgetConstant;

    for (double eps : eps_grid) {
        for (int m = 0; m <= kMaxM; ++m) {
            ++report.checks;
            if (n_eps(m, eps) != oracle_n_eps(m, eps))
                fail("n_eps mismatch at m=" + std::to_string(m) + " eps=" + fmt17(eps));
            if (m >= 1) {
                ++report.checks;
                if (n_uniform(m, eps) != oracle_n_uniform(m, eps))
                    fail("n_uniform mismatch at m=" + std::to_string(m) + " eps0=" + fmt17(eps));
            }
        }
    }

    // Expected replacement totals stay inside the bracketing bounds for both
    // budget rules; the lower-bound constant is 2c for the fixed rule and 6c
    // for the per-step schedule.
    for (double eps : eps_grid) {
        for (int variant = 0; variant < 2; ++variant) {
            const BudgetRule rule =
                variant == 0 ? BudgetRule::fixed(eps) : BudgetRule::per_step(eps);
            const double slack_c = variant == 0 ? 2.0 * c : 6.0 * c;
            double running = 0.0;
            for (int m = 1; m <= kMaxM; ++m) {
                running += static_cast<double>(rule.n(m)) / (m + 1.0);
                const double nm = static_cast<double>(rule.n(m));
                ++report.checks;
                if (!(0.5 * nm - slack_c - 1e-9 <= running && running <= nm + 1.0 + 1e-9))
                    fail("cost-sum bracket violated at m=" + std::to_string(m) +
                         " eps=" + fmt17(eps) + (variant == 0 ? " fixed" : " per-step"));
            }
        }
    }

    for (int i = 0; i <= 20; ++i) {
        const double tau = i * 0.05;
        for (double xbar : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 1000.0}) {
            const ChernoffTail tail = chernoff_tail(tau, xbar);
            ++report.checks;
            if (!(tail.exact <= tail.simplified + 1e-15))
                fail("exact Chernoff exceeds simplified at tau=" + fmt17(tau) +
                     " xbar=" + fmt17(xbar));
        }
    }

    for (double eps : eps_grid) {
        for (int m = 1; m <= 1000; ++m) {
            ++report.checks;
            if (!(matrix_chernoff_bound(m, n_eps(m, eps), static_cast<double>(m)) <=
                  eps * (1.0 + 1e-12)))
                fail("matrix Chernoff bound exceeds eps at m=" + std::to_string(m) +
                     " eps=" + fmt17(eps));
        }
    }

    for (int variant = 0; variant < 2; ++variant) {
        const BudgetRule rule =
            variant == 0 ? BudgetRule::fixed(0.01) : BudgetRule::per_step(0.01);
        for (double tau : {0.25, 0.5, 1.0}) {
            double prev = std::numeric_limits<double>::infinity();
            for (int m = 2; m <= 200; ++m) {
                // the bound underflows to an honest 0 once n(m-1) tau^2/6
                // passes ~745, so nonnegative rather than positive
                const double bound = cost_tail_bound(rule, m, tau);
                ++report.checks;
                if (!(bound >= 0.0 && bound <= prev * (1.0 + 1e-12)))
                    fail("cost tail bound not decreasing at m=" + std::to_string(m) +
                         " tau=" + fmt17(tau));
                prev = bound;
            }
        }
    }

    for (double eps0 : {0.5, 0.01}) {
        double partial = 0.0;
        for (int m = 1; m <= kMaxM; ++m) partial += eps_schedule(m, eps0);
        ++report.checks;
        if (!(partial < eps0 && partial > eps0 * (1.0 - 1e-3)))
            fail("eps schedule partial sum out of range for eps0=" + fmt17(eps0));
    }

    return report;
}

} // namespace seqwls
