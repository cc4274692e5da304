#ifndef SEQWLS_BASIS_HPP
#define SEQWLS_BASIS_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "seqwls/rng.hpp"

namespace seqwls {

/// Raised when the optimal weight m / k_m(x) is requested at a point where
/// the Christoffel function vanishes. The sampling measure never produces
/// such points, so hitting this indicates a caller bug.
class SingularWeightError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dyadic index of a Haar wavelet: support [k 2^-l, (k+1) 2^-l).
struct HaarNode {
    int level = 0;
    std::int64_t shift = 0;
    friend bool operator==(const HaarNode&, const HaarNode&) = default;
};

enum class BasisKind { Hermite, HaarTree };

/// phi_j = H_{j-1}, the orthonormal probabilists' Hermite polynomial,
/// evaluated by the normalized three-term recurrence.
double hermite_eval(int j, double x);

/// Haar wavelet psi_{l,k}(x) = 2^{l/2} psi(2^l x - k) on [0,1], with the
/// right-continuous convention at dyadic breakpoints and value 0 at x = 1.
/// Throws std::domain_error for x outside [0,1].
double haar_eval(const HaarNode& node, double x);

/// Grows a tree-admissible Haar index set of size m_max at random: starts
/// from the root (0,0) and repeatedly picks uniformly among the children of
/// already-selected nodes. Deterministic in (seed, m_max).
std::vector<HaarNode> grow_random_tree(std::uint64_t seed, int m_max);

/// One of the two orthonormal families: probabilists' Hermite polynomials
/// under the standard Gaussian, or a tree-admissible set of Haar wavelets
/// under the uniform measure on [0,1].
class Basis {
public:
    static Basis hermite() { return Basis(BasisKind::Hermite, {}); }

    /// Tree order must be admissible: the root first, every other node
    /// preceded by its parent. Throws std::invalid_argument otherwise.
    static Basis haar_tree(std::vector<HaarNode> nodes);

    static Basis haar_random_tree(std::uint64_t seed, int m_max) {
        return haar_tree(grow_random_tree(seed, m_max));
    }

    BasisKind kind() const { return kind_; }
    const std::vector<HaarNode>& nodes() const { return nodes_; }

    /// Largest usable dimension (unbounded for Hermite).
    int max_dim() const {
        return kind_ == BasisKind::Hermite ? std::numeric_limits<int>::max()
                                           : static_cast<int>(nodes_.size());
    }

    bool in_domain(double x) const;

    /// phi_j(x), j >= 1.
    double eval(int j, double x) const;

    /// Fills out[0..m-1] with phi_1(x)..phi_m(x) in one recurrence pass.
    void eval_all(int m, double x, std::span<double> out) const;

    /// Christoffel function k_m(x) = sum_{j<=m} phi_j(x)^2.
    double christoffel(int m, double x) const;

    /// Optimal weight w_m(x) = m / k_m(x); throws SingularWeightError when
    /// k_m(x) = 0.
    double optimal_weight(int m, double x) const;

    /// Density of the update measure sigma_j relative to the reference
    /// measure: phi_j(x)^2.
    double sigma_relative_density(int j, double x) const { return eval(j, x) * eval(j, x); }

    /// Maximum wavelet level among the first m nodes (HaarTree only).
    int max_level(int m) const;

private:
    Basis(BasisKind kind, std::vector<HaarNode> nodes) : kind_(kind), nodes_(std::move(nodes)) {}
    void check_dim(int m) const {
        if (m < 1 || m > max_dim()) throw std::invalid_argument("basis dimension out of range");
    }

    BasisKind kind_;
    std::vector<HaarNode> nodes_;
};

} // namespace seqwls

#endif
