#include "seqwls/samplers.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "seqwls/budget.hpp"
#include "seqwls/leastsq.hpp"

namespace seqwls {

namespace {

constexpr double kHardBracketRadius = 1e6;

double initial_bracket(int j) {
    return 2.0 * std::sqrt(std::log(static_cast<double>(j)) + 10.0) + 10.0;
}

// Uniform draw on the support [k 2^-l, (k+1) 2^-l) of a Haar node. The
// scaled sum can round up onto the right endpoint when the shift is huge, so
// nudge back inside: the endpoint belongs to the neighboring node.
double sample_haar_support(const HaarNode& node, RngStream& rng) {
    const double u = rng.next_double();
    const double lo = std::ldexp(static_cast<double>(node.shift), -node.level);
    const double hi = std::ldexp(static_cast<double>(node.shift) + 1.0, -node.level);
    double x = std::ldexp(static_cast<double>(node.shift) + u, -node.level);
    if (x >= hi) x = std::nextafter(hi, lo);
    return x;
}

// Solves Phi_j(x) = z by bisection after geometric bracket expansion.
double invert_hermite_cdf(int j, double z, double tol) {
    double b = initial_bracket(j);
    while (!(hermite_cdf(j, -b) < z && z < hermite_cdf(j, b))) {
        if (b >= kHardBracketRadius)
            throw BracketError("sigma_" + std::to_string(j) +
                               " quantile bracket exceeded radius 1e6");
        b = std::min(2.0 * b, kHardBracketRadius);
    }
    double lo = -b;
    double hi = b;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (hermite_cdf(j, mid) < z) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

void check_step_dim(const Basis& basis, int next_step) {
    if (next_step > basis.max_dim())
        throw std::invalid_argument("sampler step exceeds basis dimension");
}

} // namespace

double hermite_cdf(int j, double x) {
    if (j < 1) throw std::invalid_argument("hermite_cdf: index must be >= 1");
    const double phi = 0.5 * std::erfc(-x / std::numbers::sqrt2);
    if (j == 1) return phi;
    // Work with h~_k = H_k(x) exp(-x^2/4): the recurrence coefficients are
    // unchanged and the products h~_k h~_{k-1} equal H_k H_{k-1} g(x) up to
    // the 1/sqrt(2 pi), with no overflow anywhere on the real line.
    double prev = 0.0;
    double cur = std::exp(-0.25 * x * x);
    double sum = 0.0;
    for (int k = 1; k < j; ++k) {
        const double rk = std::sqrt(static_cast<double>(k));
        const double next = (x * cur - std::sqrt(static_cast<double>(k - 1)) * prev) / rk;
        sum += next * cur / rk;
        prev = cur;
        cur = next;
    }
    return phi - sum / std::sqrt(2.0 * std::numbers::pi);
}

double sample_sigma(const Basis& basis, int j, RngStream& rng, double tol, CostLedger* ledger) {
    if (j < 1 || j > basis.max_dim())
        throw std::invalid_argument("sample_sigma: index out of range");
    if (ledger) ledger->count_draw();
    if (basis.kind() == BasisKind::HaarTree)
        return sample_haar_support(basis.nodes()[static_cast<std::size_t>(j) - 1], rng);
    double z;
    do {
        z = rng.next_double();
    } while (z == 0.0);
    return invert_hermite_cdf(j, z, tol);
}

double sample_mu(const Basis& basis, int m, RngStream& rng, double tol, CostLedger* ledger) {
    if (m < 1 || m > basis.max_dim())
        throw std::invalid_argument("sample_mu: dimension out of range");
    const int j = rng.next_int_in(1, m);
    return sample_sigma(basis, j, rng, tol, ledger);
}

SampleSet algorithm1_step(const Basis& basis, const SampleSet& s, std::int64_t n_next,
                          RngStream& rng, CostLedger& ledger) {
    const int m = s.step;
    const auto n_m = static_cast<std::int64_t>(s.points.size());
    check_step_dim(basis, m + 1);
    if (n_next < n_m) throw std::invalid_argument("algorithm1_step: budget must not shrink");

    SampleSet out{m + 1, s.points};
    out.points.resize(static_cast<std::size_t>(n_next));
    std::int64_t replacements = 0;
    for (std::int64_t i = 0; i < n_m; ++i) {
        if (rng.next_int_in(1, m + 1) == m + 1) {
            out.points[static_cast<std::size_t>(i)] = sample_sigma(basis, m + 1, rng, 1e-12, &ledger);
            ++replacements;
        }
    }
    for (std::int64_t i = n_m; i < n_next; ++i)
        out.points[static_cast<std::size_t>(i)] = sample_mu(basis, m + 1, rng, 1e-12, &ledger);
    ledger.record_set(m + 1, n_next, replacements, n_next - n_m, 0);
    return out;
}

SampleSet algorithm2_step(const Basis& basis, const SampleSet& s, std::int64_t n_next,
                          RngStream& rng, CostLedger& ledger) {
    const int m = s.step;
    const auto n_m = static_cast<std::int64_t>(s.points.size());
    check_step_dim(basis, m + 1);
    if (n_next < 0) throw std::invalid_argument("algorithm2_step: negative budget");

    SampleSet out{m + 1, {}};
    out.points.resize(static_cast<std::size_t>(n_next));
    std::int64_t queue = 0;
    std::int64_t replacements = 0;
    std::int64_t refills = 0;
    for (std::int64_t i = 0; i < n_next; ++i) {
        double x;
        if (rng.next_int_in(1, m + 1) == m + 1) {
            x = sample_sigma(basis, m + 1, rng, 1e-12, &ledger);
            ++replacements;
        } else if (queue < n_m) {
            x = s.points[static_cast<std::size_t>(queue++)];
        } else {
            x = sample_mu(basis, m, rng, 1e-12, &ledger);
            ++refills;
        }
        out.points[static_cast<std::size_t>(i)] = x;
    }
    ledger.record_set(m + 1, n_next, replacements, 0, refills);
    return out;
}

SampleSet algorithm3_step(const Basis& basis, const SampleSet& s, RngStream& rng,
                          CostLedger& ledger, const Algorithm3Options& options) {
    const int m = s.step;
    const auto n_m = static_cast<std::int64_t>(s.points.size());
    check_step_dim(basis, m + 1);
    const std::int64_t cap = options.cap_multiplier * n_eps(m + 1, options.cap_eps);

    SampleSet out{m + 1, {}};
    IncrementalGramian gram(basis, m + 1);
    std::int64_t queue = 0;
    std::int64_t replacements = 0;
    std::int64_t refills = 0;
    while (true) {
        if (static_cast<std::int64_t>(out.points.size()) >= cap)
            throw IterationCapError("stability certificate not reached within " +
                                    std::to_string(cap) + " samples at dimension " +
                                    std::to_string(m + 1));
        double x;
        if (rng.next_int_in(1, m + 1) == m + 1) {
            x = sample_sigma(basis, m + 1, rng, options.tol, &ledger);
            ++replacements;
        } else if (queue < n_m) {
            x = s.points[static_cast<std::size_t>(queue++)];
        } else {
            x = sample_mu(basis, m, rng, options.tol, &ledger);
            ++refills;
        }
        out.points.push_back(x);
        gram.add(x);
        if (gram.count() >= m + 1 && gram.within_half_deviation()) break;
    }
    ledger.record_set(m + 1, static_cast<std::int64_t>(out.points.size()), replacements, 0,
                      refills);
    return out;
}

SampleSet multi_step(const Basis& basis, const SampleSet& s, int q, std::int64_t n_next,
                     RngStream& rng, CostLedger& ledger) {
    if (q < 1) throw std::invalid_argument("multi_step: q must be >= 1");
    const int m = s.step;
    const auto n_m = static_cast<std::int64_t>(s.points.size());
    check_step_dim(basis, m + q);
    if (n_next < n_m) throw std::invalid_argument("multi_step: budget must not shrink");

    SampleSet out{m + q, s.points};
    out.points.resize(static_cast<std::size_t>(n_next));
    std::int64_t replacements = 0;
    for (std::int64_t i = 0; i < n_m; ++i) {
        // One uniform label in {1..m+q} decides both whether to replace
        // (label beyond m, probability q/(m+q)) and which update measure the
        // fresh point comes from; conditioned on replacing, the label is
        // uniform on {m+1..m+q} as the mixture requires.
        const int a = rng.next_int_in(1, m + q);
        if (a > m) {
            out.points[static_cast<std::size_t>(i)] = sample_sigma(basis, a, rng, 1e-12, &ledger);
            ++replacements;
        }
    }
    for (std::int64_t i = n_m; i < n_next; ++i)
        out.points[static_cast<std::size_t>(i)] = sample_mu(basis, m + q, rng, 1e-12, &ledger);
    ledger.record_set(m + q, n_next, replacements, n_next - n_m, 0);
    return out;
}

} // namespace seqwls
