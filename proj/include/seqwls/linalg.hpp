#ifndef SEQWLS_LINALG_HPP
#define SEQWLS_LINALG_HPP

#include <optional>
#include <span>
#include <vector>

namespace seqwls {

/// Dense symmetric matrix, full storage. Sized for the Gramians that appear
/// here (a few hundred rows at most).
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int size() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    /// A += s * v v^T, keeping both triangles in sync.
    void add_scaled_outer(std::span<const double> v, double s) {
        add_scaled_outer_upper(v, s);
        symmetrize_from_upper();
    }

    /// Accumulation half of add_scaled_outer: touches the upper triangle
    /// only. Callers streaming many updates use this and symmetrize once.
    void add_scaled_outer_upper(std::span<const double> v, double s) {
        for (int i = 0; i < n_; ++i) {
            const double si = s * v[static_cast<std::size_t>(i)];
            double* row = &a_[static_cast<std::size_t>(i) * n_];
            for (int j = i; j < n_; ++j) row[j] += si * v[static_cast<std::size_t>(j)];
        }
    }

    void symmetrize_from_upper() {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < i; ++j) (*this)(i, j) = (*this)(j, i);
    }

    SymMatrix scaled(double s) const {
        SymMatrix m(n_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = s * a_[k];
        return m;
    }

private:
    int n_ = 0;
    std::vector<double> a_;
};

/// Eigenvalues of a symmetric matrix in ascending order, by cyclic Jacobi
/// rotations. Converges when the off-diagonal Frobenius mass drops below
/// 1e-12 (absolute), which leaves eigenvalue errors far under the 1e-10
/// tolerances used by the callers.
std::vector<double> symmetric_eigenvalues(SymMatrix a);

/// Cholesky factor L (lower, row-packed) of a symmetric positive definite
/// matrix; nullopt when a pivot is not strictly positive.
std::optional<std::vector<double>> cholesky_lower(const SymMatrix& a);

/// Whether a is symmetric positive definite (Cholesky succeeds).
bool is_positive_definite(const SymMatrix& a);

/// Solve A x = b via Cholesky. Throws std::runtime_error when A is not
/// positive definite.
std::vector<double> solve_spd(const SymMatrix& a, std::span<const double> b);

} // namespace seqwls

#endif
