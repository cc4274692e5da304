#include "seqwls/budget.hpp"

#include <cmath>
#include <stdexcept>

namespace seqwls {

namespace {

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("failure probability must be in (0,1)");
}

} // namespace

std::int64_t n_eps(int m, double eps) {
    check_eps(eps);
    if (m < 0) throw std::domain_error("n_eps: m must be >= 0");
    if (m == 0) return 0;
    const double v = kBudgetConstant * m * (std::log(2.0 * m) - std::log(eps));
    return static_cast<std::int64_t>(std::ceil(v));
}

double eps_schedule(int m, double eps0) {
    check_eps(eps0);
    if (m < 1) throw std::domain_error("eps_schedule: m must be >= 1");
    const double pim = std::numbers::pi * m;
    return 6.0 * eps0 / (pim * pim);
}

std::int64_t n_uniform(int m, double eps0) {
    check_eps(eps0);
    if (m < 1) throw std::domain_error("n_uniform: m must be >= 1");
    const double log_term = std::log(2.0 * m) + 2.0 * std::log(static_cast<double>(m)) -
                            std::log(6.0 * eps0 / (std::numbers::pi * std::numbers::pi));
    return static_cast<std::int64_t>(std::ceil(kBudgetConstant * m * log_term));
}

double harmonic_cost_sum(const BudgetRule& rule, int m) {
    if (m < 1) throw std::domain_error("harmonic_cost_sum: m must be >= 1");
    double s = 0.0;
    for (int k = 1; k <= m; ++k) s += static_cast<double>(rule.n(k)) / (k + 1);
    return s;
}

ChernoffTail chernoff_tail(double tau, double xbar) {
    if (tau < 0.0 || xbar < 0.0) throw std::domain_error("chernoff_tail: tau, xbar must be >= 0");
    const double log_exact = tau * xbar - (1.0 + tau) * xbar * std::log1p(tau);
    return {std::exp(log_exact), std::exp(-tau * tau * xbar / 3.0)};
}

double cost_tail_bound(const BudgetRule& rule, int m, double tau) {
    if (m < 2) throw std::domain_error("cost_tail_bound: m must be >= 2");
    if (tau < 0.0 || tau > 1.0) throw std::domain_error("cost_tail_bound: tau must be in [0,1]");
    const double mtau_log = rule.kind == BudgetRule::Kind::FixedEps
                                ? 2.0 * kBudgetConstant * tau * tau / 3.0
                                : 2.0 * kBudgetConstant * tau * tau;
    const double n_prev = static_cast<double>(rule.n(m - 1));
    return std::exp(mtau_log - tau * tau * n_prev / 6.0);
}

double matrix_chernoff_bound(int m, std::int64_t n, double K) {
    if (m < 1 || n < 0) throw std::domain_error("matrix_chernoff_bound: bad m or n");
    if (K < m) throw std::domain_error("matrix_chernoff_bound: K must be >= m");
    return 2.0 * m * std::exp(-kChernoffGamma * static_cast<double>(n) / K);
}

} // namespace seqwls
