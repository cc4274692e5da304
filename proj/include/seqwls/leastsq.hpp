#ifndef SEQWLS_LEASTSQ_HPP
#define SEQWLS_LEASTSQ_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "seqwls/basis.hpp"
#include "seqwls/linalg.hpp"

namespace seqwls {

/// Weighted Gramian G_{jk} = (1/n) sum_i w(x_i) phi_j(x_i) phi_k(x_i) over a
/// sample of the optimal measure. E(G) = I when the x_i are mu_m draws.
SymMatrix assemble_gramian(const Basis& basis, int m, const std::vector<double>& points);

/// Streaming Gramian accumulator: add() folds one weighted rank-one update
/// into the running sum, so a growing sample never requires reassembly.
class IncrementalGramian {
public:
    IncrementalGramian(const Basis& basis, int m);

    void add(double x);
    std::int64_t count() const { return count_; }

    /// The Gramian of everything added so far. Requires count() >= 1.
    SymMatrix current() const;

    /// Whether ||G - I||_2 <= 1/2. Screens with two shifted Cholesky
    /// factorizations (G - I/2 and 3I/2 - G both positive definite iff the
    /// deviation is < 1/2), and confirms borderline passes with the exact
    /// spectral deviation.
    bool within_half_deviation() const;

private:
    const Basis* basis_;
    int m_;
    std::int64_t count_ = 0;
    SymMatrix sum_;
    std::vector<double> phi_; // scratch
};

/// max_j |lambda_j(G) - 1|, the operator-norm deviation of G from identity.
double spectral_deviation(const SymMatrix& g);

/// lambda_max / lambda_min, or +infinity when lambda_min <= 0.
double condition_number(const SymMatrix& g);

struct WlsFit {
    std::vector<double> coefficients; // all zero when rejected
    double delta = 0.0;               // ||G - I||_2
    double kappa = 0.0;               // condition number of G
    bool accepted = false;            // delta <= 1/2
};

/// Conditional weighted least squares: assembles G and the weighted moment
/// vector d from (x_i, y_i), solves G c = d when ||G - I||_2 <= 1/2, and
/// returns the zero estimator otherwise.
WlsFit wls_fit(const Basis& basis, int m, const std::vector<double>& xs,
               const std::vector<double>& ys);

/// ||u - sum_j c_j phi_j||_{L2(rho)} by quadrature exact for the basis part:
/// Gauss-Hermite (200 nodes) for the Hermite family, composite Gauss-Legendre
/// on the dyadic cells one level below the finest basis node for Haar trees.
double l2_error(const Basis& basis, int m, const std::vector<double>& coefficients,
                const std::function<double(double)>& u);

/// Quadrature approximations of the projection coefficients <u, phi_j>.
std::vector<double> projection_coefficients(const Basis& basis, int m,
                                            const std::function<double(double)>& u);

/// e_m(u): the L2 error of the quadrature projection, the yardstick the
/// conditional estimator is compared against.
double best_approx_error(const Basis& basis, int m, const std::function<double(double)>& u);

} // namespace seqwls

#endif
