#include "seqwls/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace seqwls {

namespace {

double off_diagonal_mass(const SymMatrix& a) {
    const int n = a.size();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

} // namespace

std::vector<double> symmetric_eigenvalues(SymMatrix a) {
    const int n = a.size();
    if (n == 0) return {};
    if (n == 1) return {a(0, 0)};

    constexpr double kOffTol = 1e-12;
    constexpr int kMaxSweeps = 100;

    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_mass(a) > kOffTol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = s * akp + c * akq;
                    a(q, k) = a(k, q);
                }
            }
        }
    }

    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::optional<std::vector<double>> cholesky_lower(const SymMatrix& a) {
    const int n = a.size();
    std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
    auto L = [&](int i, int j) -> double& { return l[static_cast<std::size_t>(i) * n + j]; };
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0)) return std::nullopt;
        const double ljj = std::sqrt(d);
        L(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / ljj;
        }
    }
    return l;
}

bool is_positive_definite(const SymMatrix& a) { return cholesky_lower(a).has_value(); }

std::vector<double> solve_spd(const SymMatrix& a, std::span<const double> b) {
    const int n = a.size();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("solve_spd: dimension mismatch");
    auto chol = cholesky_lower(a);
    if (!chol) throw std::runtime_error("solve_spd: matrix is not positive definite");
    const std::vector<double>& l = *chol;
    auto L = [&](int i, int j) { return l[static_cast<std::size_t>(i) * n + j]; };

    std::vector<double> x(b.begin(), b.end());
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) x[static_cast<std::size_t>(i)] -= L(i, k) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] /= L(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) x[static_cast<std::size_t>(i)] -= L(k, i) * x[static_cast<std::size_t>(k)];
        x[static_cast<std::size_t>(i)] /= L(i, i);
    }
    return x;
}

} // namespace seqwls
