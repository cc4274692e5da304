#ifndef SEQWLS_BUDGET_HPP
#define SEQWLS_BUDGET_HPP

#include <cstdint>
#include <numbers>

namespace seqwls {

/// gamma = (1 - ln 2) / 2, the matrix Chernoff exponent constant.
inline constexpr double kChernoffGamma = 0.5 * (1.0 - std::numbers::ln2);

/// c = gamma^{-1} = 2 / (1 - ln 2), the sample-budget constant.
inline constexpr double kBudgetConstant = 2.0 / (1.0 - std::numbers::ln2);

/// Sample budget n_eps(m) = ceil(c m (ln(2m) - ln eps)), with n_eps(0) = 0.
/// Guarantees P(||G_m - I|| >= 1/2) <= eps. Throws std::domain_error unless
/// eps is in (0,1).
std::int64_t n_eps(int m, double eps);

/// Per-step failure probability eps(m) = 6 eps0 / (pi m)^2; the schedule sums
/// to eps0 over m >= 1.
double eps_schedule(int m, double eps0);

/// Uniform-in-m budget n_{eps(m)}(m) = ceil(c m (ln(2m) + 2 ln m -
/// ln(6 eps0 / pi^2))); equals n_eps(m, eps_schedule(m, eps0)).
std::int64_t n_uniform(int m, double eps0);

/// Which budget sequence n(m) a sequential run follows.
struct BudgetRule {
    enum class Kind { FixedEps, PerStepEps };
    Kind kind = Kind::FixedEps;
    double eps = 0.01; // eps for FixedEps, eps0 for PerStepEps

    static BudgetRule fixed(double eps) { return {Kind::FixedEps, eps}; }
    static BudgetRule per_step(double eps0) { return {Kind::PerStepEps, eps0}; }

    std::int64_t n(int m) const {
        return kind == Kind::FixedEps ? n_eps(m, eps) : n_uniform(m, eps);
    }
};

/// sum_{k=1}^{m} n(k)/(k+1): the expected replacement total E(s(m+1)) of the
/// sequential scheme, each term being E(n~(k)) = n(k)/(k+1).
double harmonic_cost_sum(const BudgetRule& rule, int m);

struct ChernoffTail {
    double exact;      // (1+tau)^{-(1+tau) xbar} e^{tau xbar}
    double simplified; // e^{-tau^2 xbar / 3}, meaningful for tau in [0,1]
};

/// Tail bounds for a sum of independent Bernoulli variables with mean xbar:
/// P(sum >= (1+tau) xbar) <= exact <= simplified.
ChernoffTail chernoff_tail(double tau, double xbar);

/// Tail bound on the sequential total cost:
/// P(C_m >= n(m) + (1+tau)(n(m-1)+1)) <= M_tau e^{-tau^2 n(m-1)/6} with
/// M_tau = e^{2 c tau^2 / 3} (FixedEps) or e^{2 c tau^2} (PerStepEps).
double cost_tail_bound(const BudgetRule& rule, int m, double tau);

/// Matrix Chernoff bound 2 m exp(-gamma n / K) on P(||G_m - I|| >= 1/2),
/// where K is an almost-sure bound on the sampled rank-one matrices
/// (K = m under optimal sampling). Throws std::domain_error when K < m.
double matrix_chernoff_bound(int m, std::int64_t n, double K);

} // namespace seqwls

#endif
