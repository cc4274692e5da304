#include "seqwls/basis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace seqwls {

double hermite_eval(int j, double x) {
    if (j < 1) throw std::invalid_argument("hermite_eval: index must be >= 1");
    // H_0 = 1, H_1 = x, H_{k+1} = (x H_k - sqrt(k) H_{k-1}) / sqrt(k+1).
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < j - 1; ++k) {
        const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                            std::sqrt(static_cast<double>(k + 1));
        prev = cur;
        cur = next;
    }
    return cur;
}

double haar_eval(const HaarNode& node, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("haar_eval: x outside [0,1]");
    if (x == 1.0) return 0.0;
    const double t = std::ldexp(x, node.level) - static_cast<double>(node.shift);
    if (t < 0.0 || t >= 1.0) return 0.0;
    const double amp = std::ldexp(1.0, node.level / 2) * (node.level % 2 ? std::sqrt(2.0) : 1.0);
    return t < 0.5 ? amp : -amp;
}

std::vector<HaarNode> grow_random_tree(std::uint64_t seed, int m_max) {
    if (m_max < 1) throw std::invalid_argument("grow_random_tree: m_max must be >= 1");
    RngStream rng(seed, 0, StreamPurpose::TreeGrowth);
    std::vector<HaarNode> tree;
    tree.reserve(static_cast<std::size_t>(m_max));
    tree.push_back({0, 0});
    std::vector<HaarNode> frontier = {{1, 0}, {1, 1}};
    while (static_cast<int>(tree.size()) < m_max) {
        const auto idx = static_cast<std::size_t>(rng.next_below(frontier.size()));
        const HaarNode picked = frontier[idx];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(idx));
        tree.push_back(picked);
        frontier.push_back({picked.level + 1, 2 * picked.shift});
        frontier.push_back({picked.level + 1, 2 * picked.shift + 1});
    }
    return tree;
}

Basis Basis::haar_tree(std::vector<HaarNode> nodes) {
    if (nodes.empty()) throw std::invalid_argument("haar_tree: empty node list");
    if (!(nodes.front() == HaarNode{0, 0}))
        throw std::invalid_argument("haar_tree: first node must be the root (0,0)");
    std::set<std::pair<int, std::int64_t>> seen;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const HaarNode& n = nodes[i];
        if (n.level < 0 || n.shift < 0 || n.shift >= (std::int64_t{1} << n.level))
            throw std::invalid_argument("haar_tree: node index out of range");
        if (!seen.insert({n.level, n.shift}).second)
            throw std::invalid_argument("haar_tree: duplicate node");
        if (i > 0 && !seen.count({n.level - 1, n.shift / 2}))
            throw std::invalid_argument("haar_tree: child listed before its parent");
    }
    return Basis(BasisKind::HaarTree, std::move(nodes));
}

bool Basis::in_domain(double x) const {
    if (kind_ == BasisKind::Hermite) return std::isfinite(x);
    return x >= 0.0 && x <= 1.0;
}

double Basis::eval(int j, double x) const {
    check_dim(j);
    if (kind_ == BasisKind::Hermite) return hermite_eval(j, x);
    return haar_eval(nodes_[static_cast<std::size_t>(j - 1)], x);
}

void Basis::eval_all(int m, double x, std::span<double> out) const {
    check_dim(m);
    if (kind_ == BasisKind::Hermite) {
        double prev = 0.0, cur = 1.0;
        out[0] = cur;
        for (int k = 0; k + 1 < m; ++k) {
            const double next = (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                                std::sqrt(static_cast<double>(k + 1));
            prev = cur;
            cur = next;
            out[static_cast<std::size_t>(k + 1)] = cur;
        }
        return;
    }
    for (int j = 0; j < m; ++j)
        out[static_cast<std::size_t>(j)] = haar_eval(nodes_[static_cast<std::size_t>(j)], x);
}

double Basis::christoffel(int m, double x) const {
    check_dim(m);
    if (!in_domain(x)) throw std::domain_error("christoffel: x outside the basis domain");
    double k = 0.0;
    if (kind_ == BasisKind::Hermite) {
        double prev = 0.0, cur = 1.0;
        k = 1.0;
        for (int i = 0; i + 1 < m; ++i) {
            const double next = (x * cur - std::sqrt(static_cast<double>(i)) * prev) /
                                std::sqrt(static_cast<double>(i + 1));
            prev = cur;
            cur = next;
            k += cur * cur;
        }
        return k;
    }
    for (int j = 0; j < m; ++j) {
        const double v = haar_eval(nodes_[static_cast<std::size_t>(j)], x);
        k += v * v;
    }
    return k;
}

double Basis::optimal_weight(int m, double x) const {
    const double k = christoffel(m, x);
    if (k <= 0.0) throw SingularWeightError("optimal_weight: Christoffel function vanishes at x");
    return static_cast<double>(m) / k;
}

int Basis::max_level(int m) const {
    check_dim(m);
    if (kind_ == BasisKind::Hermite)
        throw std::logic_error("max_level: only meaningful for Haar trees");
    int l = 0;
    for (int j = 0; j < m; ++j) l = std::max(l, nodes_[static_cast<std::size_t>(j)].level);
    return l;
}

} // namespace seqwls
