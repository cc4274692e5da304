#ifndef SEQWLS_QUADRATURE_HPP
#define SEQWLS_QUADRATURE_HPP

#include <vector>

namespace seqwls {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Hermite rule for the standard Gaussian probability measure
/// (probabilists' normalization, weights sum to 1). Exact for polynomials of
/// degree <= 2n-1. Rules are cached per n.
const QuadratureRule& gauss_hermite(int n);

/// Gauss-Legendre rule on [-1, 1] with weight dx. Cached per n.
const QuadratureRule& gauss_legendre(int n);

} // namespace seqwls

#endif
