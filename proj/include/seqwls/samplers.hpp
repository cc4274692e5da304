#ifndef SEQWLS_SAMPLERS_HPP
#define SEQWLS_SAMPLERS_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "seqwls/basis.hpp"
#include "seqwls/rng.hpp"

namespace seqwls {

/// Bracket expansion for the Hermite CDF inversion exceeded the hard radius.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Algorithm 3 exceeded its iteration cap without certifying stability;
/// indicates a pathological basis or sampler bug, not a statistical event.
class IterationCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An i.i.d. sample from the optimal measure mu_m for the step it targets.
/// step 0 with no points is the empty bootstrap state.
struct SampleSet {
    int step = 0;
    std::vector<double> points;
};

/// Per-step draw accounting for a sequential run. All fresh draws pass
/// through sample_sigma with the ledger attached, so raw_draws() equals the
/// recorded cumulative cost.
class CostLedger {
public:
    struct Entry {
        int m = 0;
        std::int64_t size = 0;         // #(S_m)
        std::int64_t replacements = 0; // fresh sigma draws made while building S_m
        std::int64_t extensions = 0;   // fresh mu_m draws appended (Algorithm 1 / multi-step)
        std::int64_t refills = 0;      // fresh mu_{m-1} draws after the queue ran dry (Algorithms 2/3)
        std::int64_t cumulative = 0;   // C_m: all fresh draws consumed through S_m
    };

    void count_draw() { ++raw_; }

    void record_set(int m, std::int64_t size, std::int64_t replacements, std::int64_t extensions,
                    std::int64_t refills) {
        const std::int64_t prev = entries_.empty() ? 0 : entries_.back().cumulative;
        entries_.push_back({m, size, replacements, extensions, refills,
                            prev + replacements + extensions + refills});
    }

    std::int64_t raw_draws() const { return raw_; }
    const std::vector<Entry>& entries() const { return entries_; }

    const Entry& entry_for(int m) const {
        for (const Entry& e : entries_)
            if (e.m == m) return e;
        throw std::out_of_range("CostLedger: no entry for requested step");
    }

    /// C_m, the total number of fresh draws used to produce S_1,...,S_m.
    std::int64_t total_cost(int m) const { return entry_for(m).cumulative; }

    /// n~(m-1): fresh sigma_m draws spent replacing recycled points while
    /// building S_m.
    std::int64_t replacements_into(int m) const { return entry_for(m).replacements; }

private:
    std::vector<Entry> entries_;
    std::int64_t raw_ = 0;
};

/// CDF of the update measure sigma_j for the Hermite family:
/// Phi_j(x) = Phi(x) - sum_{k=1}^{j-1} H_k(x) H_{k-1}(x) / sqrt(k) * g(x),
/// evaluated with a scaled recurrence so that large |x| cannot overflow.
double hermite_cdf(int j, double x);

/// One draw from sigma_j. Haar: uniform on the support of node j. Hermite:
/// inverse transform sampling, solving Phi_j(x) = z by bracketed bisection to
/// bracket width tol.
double sample_sigma(const Basis& basis, int j, RngStream& rng, double tol = 1e-12,
                    CostLedger* ledger = nullptr);

/// One draw from mu_m by mixture sampling: j uniform in {1..m}, then sigma_j.
double sample_mu(const Basis& basis, int m, RngStream& rng, double tol = 1e-12,
                 CostLedger* ledger = nullptr);

/// Algorithm 1: per-slot replacement. Each recycled point is swapped for a
/// fresh sigma_{m+1} draw with probability 1/(m+1); extension slots are fresh
/// mu_{m+1} draws. Marginal law of every output point is mu_{m+1}.
SampleSet algorithm1_step(const Basis& basis, const SampleSet& s, std::int64_t n_next,
                          RngStream& rng, CostLedger& ledger);

/// Algorithm 2: sample queue. Slots take a fresh sigma_{m+1} draw with
/// probability 1/(m+1), otherwise consume the previous sample in order; after
/// the queue is exhausted, fresh draws come from mu_m (as printed).
SampleSet algorithm2_step(const Basis& basis, const SampleSet& s, std::int64_t n_next,
                          RngStream& rng, CostLedger& ledger);

struct Algorithm3Options {
    double cap_eps = 0.01;            // cap = cap_multiplier * n_eps(m+1, cap_eps)
    std::int64_t cap_multiplier = 100;
    double tol = 1e-12;
};

/// Algorithm 3: grows the Algorithm-2 stream one sample at a time and stops
/// at the first i >= m+1 with ||G~ - I||_2 <= 1/2, so the returned set
/// certifies kappa(G_{m+1}) <= 3. The output size is data-dependent.
SampleSet algorithm3_step(const Basis& basis, const SampleSet& s, RngStream& rng,
                          CostLedger& ledger, const Algorithm3Options& options = {});

/// q-step variant of Algorithm 1: replacement probability q/(m+q), with
/// replacement draws taken from the uniform mixture of sigma_{m+1..m+q}.
/// q = 1 coincides with algorithm1_step draw for draw.
SampleSet multi_step(const Basis& basis, const SampleSet& s, int q, std::int64_t n_next,
                     RngStream& rng, CostLedger& ledger);

} // namespace seqwls

#endif
