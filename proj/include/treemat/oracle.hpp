#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "treemat/dense.hpp"
#include "treemat/errors.hpp"

namespace treemat {

/*
 * Exact integer elimination oracle.
 *
 * Both the determinant and the inverse use fraction-free (Bareiss style)
 * elimination: every intermediate value is a minor of the input matrix, so
 * all divisions are exact and no rationals or floating point appear. Rows
 * whose leading entry is already zero are skipped outright when the current
 * pivot equals the previous one, and rescaled by pivot/previous otherwise;
 * that keeps the sweep cheap on the nearly triangular matrices this library
 * produces while staying correct for arbitrary integer input.
 *
 * Values are stored as 64-bit integers with 128-bit intermediates. Overflow
 * of a stored value raises Overflow; it is never wrapped.
 */

namespace detail {

// One fraction-free elimination step: (p*a - lead*b) / prev, exact.
inline long long fraction_free_step(long long p, long long a, long long lead, long long b,
                                    long long prev) {
    internal_check(prev != 0, "fraction-free elimination divided by zero");
    const __int128 t = static_cast<__int128>(p) * a - static_cast<__int128>(lead) * b;
    internal_check(t % prev == 0, "fraction-free elimination produced a non-integer");
    const __int128 q = t / prev;
    if (q > INT64_MAX || q < INT64_MIN) {
        throw Overflow("elimination intermediate");
    }
    return static_cast<long long>(q);
}

}  // namespace detail

// Exact determinant by fraction-free elimination with partial pivoting.
inline long long det_oracle(DenseMatrix m) {
    if (m.rows() != m.cols()) {
        throw PreconditionViolated("determinant requires a square matrix");
    }
    const int n = m.rows();
    if (n == 0) {
        return 1;
    }
    long long prev = 1;
    int sign = 1;
    for (int k = 1; k < n; ++k) {
        int pivot_row = 0;
        for (int r = k; r <= n; ++r) {
            if (m.at(r, k) != 0) {
                pivot_row = r;
                break;
            }
        }
        if (pivot_row == 0) {
            return 0;
        }
        if (pivot_row != k) {
            for (int y = k; y <= n; ++y) {
                std::swap(m.at(k, y), m.at(pivot_row, y));
            }
            sign = -sign;
        }
        const long long p = m.at(k, k);
        for (int r = k + 1; r <= n; ++r) {
            const long long lead = m.at(r, k);
            if (lead == 0 && p == prev) {
                continue;
            }
            for (int y = k + 1; y <= n; ++y) {
                m.at(r, y) = detail::fraction_free_step(p, m.at(r, y), lead, m.at(k, y), prev);
            }
            m.at(r, k) = 0;
        }
        prev = p;
    }
    return sign * m.at(n, n);
}

// Exact inverse: a dense integer grid over one common positive denominator,
// reduced by the gcd of all entries and the denominator.
class ExactMatrix {
public:
    ExactMatrix(DenseMatrix numerators, long long denominator)
        : num_(std::move(numerators)), den_(denominator) {
        internal_check(den_ >= 1, "exact matrix denominator must be positive");
        reduce();
    }

    int n() const { return num_.rows(); }
    long long denominator() const { return den_; }
    const DenseMatrix& numerators() const { return num_; }
    bool is_integral() const { return den_ == 1; }

    // Integer entry access; only meaningful once the denominator reduced to 1.
    long long int_at(int r, int c) const {
        internal_check(den_ == 1, "integer access to a non-integral exact matrix");
        return num_.at(r, c);
    }

private:
    void reduce() {
        long long g = den_;
        for (const auto& [r, c, v] : num_.nonzero_entries()) {
            (void)r;
            (void)c;
            g = std::gcd(g, v < 0 ? -v : v);
            if (g == 1) {
                break;
            }
        }
        if (g > 1) {
            for (int r = 1; r <= num_.rows(); ++r) {
                for (int c = 1; c <= num_.cols(); ++c) {
                    num_.at(r, c) /= g;
                }
            }
            den_ /= g;
        }
    }

    DenseMatrix num_;
    long long den_;
};

// Exact inverse by one-step fraction-free Gauss-Jordan elimination on the
// augmented tableau [m | I]. On completion the left block equals d*I with
// d = |det(m)| (checked), and the right block over d is the inverse.
inline ExactMatrix invert_oracle(const DenseMatrix& m) {
    if (m.rows() != m.cols()) {
        throw PreconditionViolated("inverse requires a square matrix");
    }
    const int n = m.rows();
    DenseMatrix t(n, 2 * n);
    for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) {
            t.at(r, c) = m.at(r, c);
        }
        t.at(r, n + r) = 1;
    }

    long long prev = 1;
    for (int k = 1; k <= n; ++k) {
        int pivot_row = 0;
        for (int r = k; r <= n; ++r) {
            if (t.at(r, k) != 0) {
                pivot_row = r;
                break;
            }
        }
        if (pivot_row == 0) {
            throw SingularMatrix();
        }
        if (pivot_row != k) {
            for (int y = 1; y <= 2 * n; ++y) {
                std::swap(t.at(k, y), t.at(pivot_row, y));
            }
        }
        const long long p = t.at(k, k);
        for (int r = 1; r <= n; ++r) {
            if (r == k) {
                continue;
            }
            const long long lead = t.at(r, k);
            if (lead == 0 && p == prev) {
                continue;
            }
            for (int y = 1; y <= 2 * n; ++y) {
                t.at(r, y) = detail::fraction_free_step(p, t.at(r, y), lead, t.at(k, y), prev);
            }
        }
        prev = p;
    }

    long long d = prev;
    if (d < 0) {
        d = -d;
        for (int r = 1; r <= n; ++r) {
            for (int y = 1; y <= 2 * n; ++y) {
                t.at(r, y) = -t.at(r, y);
            }
        }
    }
    DenseMatrix inv(n, n);
    for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) {
            internal_check(t.at(r, c) == (r == c ? d : 0),
                           "Gauss-Jordan left block is not a scaled identity");
            inv.at(r, c) = t.at(r, n + c);
        }
    }
    ExactMatrix out(std::move(inv), d);

    // Cheap sizes get an unconditional product check against the input.
    if (n <= 64) {
        const DenseMatrix product = multiply(m, out.numerators());
        for (int r = 1; r <= n; ++r) {
            for (int c = 1; c <= n; ++c) {
                internal_check(product.at(r, c) == (r == c ? out.denominator() : 0),
                               "exact inverse failed the product check");
            }
        }
    }
    return out;
}

// Signed node-edge incidence matrix of an undirected graph over labels
// 0..max: one column per edge, +1 at the larger endpoint's row, -1 at the
// smaller one's. Row r holds label r-1; the datum label 0 keeps its row.
// For a tree numbered monotonically, deleting row 1 of this matrix yields
// exactly the forward adjacency matrix; for a graph with a cycle the columns
// around the cycle are linearly dependent, so the square case (edge count
// equal to node count) has determinant zero.
inline DenseMatrix edge_incidence_matrix(const std::vector<std::pair<int, int>>& edges) {
    if (edges.empty()) {
        throw PreconditionViolated("incidence matrix of an empty edge list");
    }
    int max_label = 0;
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0) {
            throw PreconditionViolated("node labels must be non-negative");
        }
        max_label = std::max(max_label, std::max(u, v));
    }
    DenseMatrix m(max_label + 1, static_cast<int>(edges.size()));
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        const auto [u, v] = edges[static_cast<std::size_t>(e)];
        if (u == v) {
            throw SelfLoop(u);
        }
        m.at(std::max(u, v) + 1, e + 1) = 1;
        m.at(std::min(u, v) + 1, e + 1) = -1;
    }
    return m;
}

}  // namespace treemat
