#include "seqwls/leastsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "seqwls/quadrature.hpp"

namespace seqwls {

namespace {

double christoffel_from(const std::vector<double>& phi) {
    double k = 0.0;
    for (double p : phi) k += p * p;
    return k;
}

// Dyadic cells on which phi_1..phi_m are all constant: start from [0,1] and
// split the support of each tree node into halves. An admissible order
// guarantees each node's support is a current cell when its turn comes, so
// the result is a partition with m+1 cells.
std::vector<HaarNode> leaf_cells(const Basis& basis, int m) {
    std::set<std::pair<int, std::int64_t>> cells{{0, 0}};
    for (int i = 0; i < m; ++i) {
        const HaarNode& node = basis.nodes()[static_cast<std::size_t>(i)];
        cells.erase({node.level, node.shift});
        cells.insert({node.level + 1, 2 * node.shift});
        cells.insert({node.level + 1, 2 * node.shift + 1});
    }
    std::vector<HaarNode> out;
    out.reserve(cells.size());
    for (const auto& [level, shift] : cells) out.push_back({level, shift});
    return out;
}

void check_fit_dims(const Basis& basis, int m) {
    if (m < 1 || m > basis.max_dim())
        throw std::invalid_argument("approximation dimension out of range");
}

} // namespace

SymMatrix assemble_gramian(const Basis& basis, int m, const std::vector<double>& points) {
    check_fit_dims(basis, m);
    if (points.empty()) throw std::invalid_argument("assemble_gramian: empty sample");
    SymMatrix sum(m);
    std::vector<double> phi(static_cast<std::size_t>(m));
    for (double x : points) {
        basis.eval_all(m, x, phi);
        const double k = christoffel_from(phi);
        if (!(k > 0.0)) throw SingularWeightError("sample point with vanishing Christoffel function");
        sum.add_scaled_outer_upper(phi, static_cast<double>(m) / k);
    }
    SymMatrix g = sum.scaled(1.0 / static_cast<double>(points.size()));
    g.symmetrize_from_upper();
    return g;
}

IncrementalGramian::IncrementalGramian(const Basis& basis, int m)
    : basis_(&basis), m_(m), sum_(m), phi_(static_cast<std::size_t>(m)) {
    check_fit_dims(basis, m);
}

void IncrementalGramian::add(double x) {
    basis_->eval_all(m_, x, phi_);
    const double k = christoffel_from(phi_);
    if (!(k > 0.0)) throw SingularWeightError("sample point with vanishing Christoffel function");
    sum_.add_scaled_outer_upper(phi_, static_cast<double>(m_) / k);
    ++count_;
}

SymMatrix IncrementalGramian::current() const {
    if (count_ == 0) throw std::logic_error("IncrementalGramian: no samples added");
    SymMatrix g = sum_.scaled(1.0 / static_cast<double>(count_));
    g.symmetrize_from_upper();
    return g;
}

bool IncrementalGramian::within_half_deviation() const {
    const SymMatrix g = current();
    // ||G - I|| < 1/2 iff G - I/2 and 3I/2 - G are both positive definite;
    // two Cholesky attempts decide that in O(m^3/3) each, much cheaper than
    // an eigensolve per added sample.
    SymMatrix lo(m_);
    SymMatrix hi(m_);
    for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < m_; ++j) {
            const double shift = i == j ? 0.5 : 0.0;
            lo(i, j) = g(i, j) - shift;
            hi(i, j) = (i == j ? 1.5 : 0.0) - g(i, j);
        }
    }
    if (!is_positive_definite(lo) || !is_positive_definite(hi)) return false;
    return spectral_deviation(g) <= 0.5;
}

double spectral_deviation(const SymMatrix& g) {
    if (g.size() < 1) throw std::invalid_argument("spectral_deviation: empty matrix");
    const std::vector<double> eig = symmetric_eigenvalues(g);
    return std::max(std::abs(eig.front() - 1.0), std::abs(eig.back() - 1.0));
}

double condition_number(const SymMatrix& g) {
    if (g.size() < 1) throw std::invalid_argument("condition_number: empty matrix");
    const std::vector<double> eig = symmetric_eigenvalues(g);
    if (!(eig.front() > 0.0)) return std::numeric_limits<double>::infinity();
    return eig.back() / eig.front();
}

WlsFit wls_fit(const Basis& basis, int m, const std::vector<double>& xs,
               const std::vector<double>& ys) {
    check_fit_dims(basis, m);
    if (xs.size() != ys.size()) throw std::invalid_argument("wls_fit: x/y length mismatch");
    if (xs.empty()) throw std::invalid_argument("wls_fit: empty sample");

    const auto n = static_cast<double>(xs.size());
    SymMatrix sum(m);
    std::vector<double> d(static_cast<std::size_t>(m), 0.0);
    std::vector<double> phi(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        basis.eval_all(m, xs[i], phi);
        const double k = christoffel_from(phi);
        if (!(k > 0.0)) throw SingularWeightError("sample point with vanishing Christoffel function");
        const double w = static_cast<double>(m) / k;
        sum.add_scaled_outer_upper(phi, w);
        const double wy = w * ys[i];
        for (int j = 0; j < m; ++j) d[static_cast<std::size_t>(j)] += wy * phi[static_cast<std::size_t>(j)];
    }
    SymMatrix g = sum.scaled(1.0 / n);
    g.symmetrize_from_upper();
    for (double& v : d) v /= n;

    WlsFit fit;
    fit.delta = spectral_deviation(g);
    fit.kappa = condition_number(g);
    if (fit.delta <= 0.5) {
        fit.coefficients = solve_spd(g, d);
        fit.accepted = true;
    } else {
        fit.coefficients.assign(static_cast<std::size_t>(m), 0.0);
        fit.accepted = false;
    }
    return fit;
}

double l2_error(const Basis& basis, int m, const std::vector<double>& coefficients,
                const std::function<double(double)>& u) {
    check_fit_dims(basis, m);
    if (static_cast<int>(coefficients.size()) != m)
        throw std::invalid_argument("l2_error: coefficient count must equal m");

    std::vector<double> phi(static_cast<std::size_t>(m));
    double acc = 0.0;
    if (basis.kind() == BasisKind::Hermite) {
        const QuadratureRule& q = gauss_hermite(200);
        for (std::size_t i = 0; i < q.nodes.size(); ++i) {
            const double x = q.nodes[i];
            basis.eval_all(m, x, phi);
            double v = 0.0;
            for (int j = 0; j < m; ++j)
                v += coefficients[static_cast<std::size_t>(j)] * phi[static_cast<std::size_t>(j)];
            const double r = u(x) - v;
            acc += q.weights[i] * r * r;
        }
    } else {
        const QuadratureRule& q = gauss_legendre(64);
        for (const HaarNode& cell : leaf_cells(basis, m)) {
            const double a = std::ldexp(static_cast<double>(cell.shift), -cell.level);
            const double h = std::ldexp(1.0, -cell.level);
            // every phi_j is constant on the open cell
            basis.eval_all(m, a + 0.5 * h, phi);
            double v = 0.0;
            for (int j = 0; j < m; ++j)
                v += coefficients[static_cast<std::size_t>(j)] * phi[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < q.nodes.size(); ++i) {
                const double x = a + 0.5 * h * (q.nodes[i] + 1.0);
                const double r = u(x) - v;
                acc += 0.5 * h * q.weights[i] * r * r;
            }
        }
    }
    return std::sqrt(std::max(acc, 0.0));
}

std::vector<double> projection_coefficients(const Basis& basis, int m,
                                            const std::function<double(double)>& u) {
    check_fit_dims(basis, m);
    std::vector<double> b(static_cast<std::size_t>(m), 0.0);
    std::vector<double> phi(static_cast<std::size_t>(m));
    if (basis.kind() == BasisKind::Hermite) {
        const QuadratureRule& q = gauss_hermite(200);
        for (std::size_t i = 0; i < q.nodes.size(); ++i) {
            basis.eval_all(m, q.nodes[i], phi);
            const double wu = q.weights[i] * u(q.nodes[i]);
            for (int j = 0; j < m; ++j) b[static_cast<std::size_t>(j)] += wu * phi[static_cast<std::size_t>(j)];
        }
    } else {
        const QuadratureRule& q = gauss_legendre(64);
        for (const HaarNode& cell : leaf_cells(basis, m)) {
            const double a = std::ldexp(static_cast<double>(cell.shift), -cell.level);
            const double h = std::ldexp(1.0, -cell.level);
            double cell_integral = 0.0;
            for (std::size_t i = 0; i < q.nodes.size(); ++i)
                cell_integral += 0.5 * h * q.weights[i] * u(a + 0.5 * h * (q.nodes[i] + 1.0));
            basis.eval_all(m, a + 0.5 * h, phi);
            for (int j = 0; j < m; ++j)
                b[static_cast<std::size_t>(j)] += phi[static_cast<std::size_t>(j)] * cell_integral;
        }
    }
    return b;
}

double best_approx_error(const Basis& basis, int m, const std::function<double(double)>& u) {
    return l2_error(basis, m, projection_coefficients(basis, m, u), u);
}

} // namespace seqwls
