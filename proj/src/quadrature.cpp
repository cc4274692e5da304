#include "seqwls/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "seqwls/basis.hpp"
#include "seqwls/linalg.hpp"

namespace seqwls {

namespace {

QuadratureRule build_gauss_hermite(int n) {
    // Golub-Welsch nodes: eigenvalues of the Jacobi matrix of the
    // probabilists' recurrence (zero diagonal, off-diagonal sqrt(k)).
    SymMatrix jac(n);
    for (int k = 1; k < n; ++k) {
        jac(k - 1, k) = std::sqrt(static_cast<double>(k));
        jac(k, k - 1) = jac(k - 1, k);
    }
    QuadratureRule rule;
    rule.nodes = symmetric_eigenvalues(jac);
    rule.weights.resize(static_cast<std::size_t>(n));

    const Basis hermite = Basis::hermite();
    std::vector<double> phi(static_cast<std::size_t>(n + 1));
    for (int i = 0; i < n; ++i) {
        double& x = rule.nodes[static_cast<std::size_t>(i)];
        // Newton polish on phi_{n+1} (the degree-n polynomial whose roots are
        // the nodes), using phi'_{k} = sqrt(k-1) phi_{k-1}.
        for (int it = 0; it < 2; ++it) {
            hermite.eval_all(n + 1, x, phi);
            const double deriv = std::sqrt(static_cast<double>(n)) * phi[static_cast<std::size_t>(n - 1)];
            if (deriv != 0.0) x -= phi[static_cast<std::size_t>(n)] / deriv;
        }
        // Christoffel weights w_i = 1 / k_n(x_i); accurate even where the
        // weight underflows toward the edge of the spectrum.
        rule.weights[static_cast<std::size_t>(i)] = 1.0 / hermite.christoffel(n, x);
    }
    return rule;
}

QuadratureRule build_gauss_legendre(int n) {
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

template <typename Builder>
const QuadratureRule& cached(int n, std::map<int, QuadratureRule>& cache, std::mutex& mu,
                             Builder build) {
    if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build(n)).first;
    return it->second;
}

} // namespace

const QuadratureRule& gauss_hermite(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mu;
    return cached(n, cache, mu, build_gauss_hermite);
}

const QuadratureRule& gauss_legendre(int n) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mu;
    return cached(n, cache, mu, build_gauss_legendre);
}

} // namespace seqwls
