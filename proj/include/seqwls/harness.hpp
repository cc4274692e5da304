#ifndef SEQWLS_HARNESS_HPP
#define SEQWLS_HARNESS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "seqwls/basis.hpp"
#include "seqwls/budget.hpp"

namespace seqwls {

enum class AlgorithmKind { Alg1 = 1, Alg2 = 2, Alg3 = 3 };
enum class OutputFormat { Csv, Json };

/// Everything that determines a Monte Carlo experiment. The output is a pure
/// function of this struct.
struct TrialConfig {
    BasisKind basis = BasisKind::Hermite;
    std::uint64_t tree_seed = 7; // HaarTree only; the tree is grown once and shared
    AlgorithmKind algorithm = AlgorithmKind::Alg1;
    BudgetRule rule = BudgetRule::fixed(0.01);
    int m_max = 50;
    int trials = 1000;
    std::uint64_t seed = 1;
    std::string out_path;
    OutputFormat format = OutputFormat::Csv;
};

struct StepStats {
    int m = 0;
    std::int64_t size = 0;         // #(S_m)
    std::int64_t replacements = 0; // n~(m-1)
    std::int64_t cost = 0;         // C_m
    double delta = 0.0;            // ||G_m - I||_2
    double kappa = 0.0;            // condition number (inf when singular)
    bool accepted = false;         // delta <= 1/2
};

struct TrialRecord {
    int trial = 0;
    std::vector<StepStats> steps;
    bool failed = false; // sampler/algorithm error; the message is kept, the
    std::string error;   // trial is excluded from quantiles
};

/// Runs config.trials independent sequential experiments, each stepping the
/// configured algorithm from the empty set up to m_max with its own RNG
/// stream derived from (seed, trial index).
std::vector<TrialRecord> run_trials(const TrialConfig& config);

inline constexpr std::array<const char*, 7> kQuantileLevels = {"min", "p10", "p25", "p50",
                                                               "p75", "p90", "max"};

struct QuantileRow {
    int m = 0;
    std::string stat; // "kappa" | "cost_ratio" | "cost_mlog2m"
    std::array<double, 7> values{};
};

struct QuantileTable {
    std::vector<QuantileRow> rows;
    int failed_trials = 0;
};

/// Nearest-rank quantiles per m of kappa_m and C_m/n(m); Algorithm 3 tables
/// additionally carry C_m/(m ln^2 m) for m >= 2. Failed trials are excluded
/// and tallied.
QuantileTable summarize(const std::vector<TrialRecord>& records, const TrialConfig& config);

/// CSV with header `m,stat,level,value`, one row per (m, stat, level),
/// floats printed with 17 significant digits.
void emit_table_csv(const QuantileTable& table, const std::string& path);

/// The same rows as the CSV plus a config echo, as JSON. Non-finite values
/// are emitted as strings since JSON numbers cannot carry them.
void emit_table_json(const QuantileTable& table, const TrialConfig& config,
                     const std::string& path);

/// Raw per-step records, one CSV row per (trial, m); failed trials keep one
/// row with the error message in the last column.
void emit_records_csv(const std::vector<TrialRecord>& records, const std::string& path);

struct VerifyReport {
    std::int64_t checks = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Deterministic sweeps over the closed-form results: budget formulas
/// against a long-double reevaluation, the expected-cost bracketing lemma,
/// scalar and matrix Chernoff bound consistency, and the failure-probability
/// schedule. Runs in well under a second.
VerifyReport run_verification_sweeps();

/// Entry point behind the `seqwls` binary; separated so tests can invoke
/// subcommands in-process. Returns 0 on success, 2 on usage errors, 1 on
/// runtime failures.
int cli_main(int argc, const char* const* argv);

} // namespace seqwls

#endif
