#ifndef SEQWLS_TESTS_SUPPORT_HPP
#define SEQWLS_TESTS_SUPPORT_HPP

// Statistical helpers shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "seqwls/basis.hpp"
#include "seqwls/samplers.hpp"

namespace testsupport {

// Upper critical value of chi^2 with 49 degrees of freedom at significance
// 1e-3, frozen from an external quantile computation.
inline constexpr double kChiSquareCrit49 = 85.35056460859305;

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_variance(const std::vector<double>& v) {
    const double mu = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return s / static_cast<double>(v.size() - 1);
}

inline double standard_error(const std::vector<double>& v) {
    return std::sqrt(sample_variance(v) / static_cast<double>(v.size()));
}

// CDF of the optimal measure mu_m, the equal-weight mixture of the update
// measures sigma_1..sigma_m.
inline double mu_cdf(const seqwls::Basis& basis, int m, double x) {
    double f = 0.0;
    if (basis.kind() == seqwls::BasisKind::Hermite) {
        for (int j = 1; j <= m; ++j) f += seqwls::hermite_cdf(j, x);
    } else {
        // sigma_j is uniform on the dyadic support of node j
        for (int j = 1; j <= m; ++j) {
            const seqwls::HaarNode& node = basis.nodes()[static_cast<std::size_t>(j) - 1];
            const double a = std::ldexp(static_cast<double>(node.shift), -node.level);
            const double h = std::ldexp(1.0, -node.level);
            f += std::clamp((x - a) / h, 0.0, 1.0);
        }
    }
    return f / m;
}

// Interior edges cutting mu_m into `bins` cells of equal mass, by bisection
// of the mixture CDF.
inline std::vector<double> equal_mass_edges(const seqwls::Basis& basis, int m, int bins) {
    const bool hermite = basis.kind() == seqwls::BasisKind::Hermite;
    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(bins) - 1);
    for (int i = 1; i < bins; ++i) {
        const double target = static_cast<double>(i) / bins;
        double lo = hermite ? -50.0 : 0.0;
        double hi = hermite ? 50.0 : 1.0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            (mu_cdf(basis, m, mid) < target ? lo : hi) = mid;
        }
        edges.push_back(0.5 * (lo + hi));
    }
    return edges;
}

// Pearson statistic of `draws` against the uniform expectation over the
// equal-mass bins delimited by `edges`.
inline double chi_square_equal_mass(const std::vector<double>& draws,
                                    const std::vector<double>& edges) {
    std::vector<std::int64_t> counts(edges.size() + 1, 0);
    for (double x : draws) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), x);
        ++counts[static_cast<std::size_t>(it - edges.begin())];
    }
    const double expected =
        static_cast<double>(draws.size()) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::int64_t c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

// Kolmogorov-Smirnov statistic against U[0,1).
inline double ks_uniform(std::vector<double> draws) {
    std::sort(draws.begin(), draws.end());
    const auto n = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double hi = (static_cast<double>(i) + 1.0) / n - draws[i];
        const double lo = draws[i] - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    return d;
}

} // namespace testsupport

#endif
