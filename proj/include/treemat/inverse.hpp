#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "treemat/dense.hpp"
#include "treemat/errors.hpp"
#include "treemat/matrix.hpp"
#include "treemat/oracle.hpp"
#include "treemat/tree.hpp"

namespace treemat {

/*
 * The inverse of the forward adjacency matrix is a 0/1 upper-triangular
 * matrix whose (i, j) entry is 1 exactly when node i lies on node j's path
 * from the datum. Three independent constructions of it live here:
 *
 *   invert_fast      walks each node's ancestor chain (the path result),
 *   invert_cofactor  evaluates signed minors pair by pair,
 *   invert_oracle    runs exact fraction-free elimination on the dense A.
 *
 * verify_inverse_triple runs all three, compares them entrywise, and
 * multiplies A by the result in exact integer arithmetic.
 */

// 0/1 upper-triangular matrix stored as one bit per feasible entry: column
// j owns bits for rows 1..j, so the whole matrix takes n(n+1)/2 bits. The
// triangular layout keeps column construction sequential in memory, which
// is what makes the n = 100000 path benchmark feasible; row views are
// derived on demand.
class PathMatrix {
public:
    explicit PathMatrix(int n) : n_(n) {
        if (n < 1) {
            throw PreconditionViolated("path matrix dimension must be positive");
        }
        col_off_.assign(static_cast<std::size_t>(n_) + 1, 0);
        std::size_t total = 0;
        for (int j = 1; j <= n_; ++j) {
            col_off_[static_cast<std::size_t>(j)] = total;
            total += words_per_col(j);
        }
        words_.assign(total, 0);
    }

    int n() const { return n_; }

    bool entry(int i, int j) const {
        check_index(i);
        check_index(j);
        if (i > j) {
            return false;
        }
        const std::size_t bit = static_cast<std::size_t>(i) - 1;
        return (word(j, bit / 64) >> (bit % 64)) & 1U;
    }

    unsigned long long ones() const { return ones_; }

    // Total set bits recounted from storage, for consistency checks against
    // the maintained counter.
    unsigned long long popcount() const {
        unsigned long long total = 0;
        for (const std::uint64_t w : words_) {
            total += static_cast<unsigned long long>(__builtin_popcountll(w));
        }
        return total;
    }

    // Support of row k: all j with entry(k, j) set, ascending.
    std::vector<int> row_support(int k) const {
        check_index(k);
        std::vector<int> out;
        for (int j = k; j <= n_; ++j) {
            if (entry(k, j)) {
                out.push_back(j);
            }
        }
        return out;
    }

    // Support of column j: all i with entry(i, j) set, ascending.
    std::vector<int> column_support(int j) const {
        check_index(j);
        std::vector<int> out;
        for (std::size_t w = 0; w < words_per_col(j); ++w) {
            std::uint64_t bits = word(j, w);
            while (bits != 0) {
                const int b = __builtin_ctzll(bits);
                out.push_back(static_cast<int>(w * 64) + b + 1);
                bits &= bits - 1;
            }
        }
        return out;
    }

    // Dense renders are refused beyond a size where the grid alone would be
    // hundreds of megabytes; the large case is reachable only through the
    // benchmark, which never renders.
    DenseMatrix dense() const {
        if (n_ > 10000) {
            throw PreconditionViolated("dense render refused above n = 10000");
        }
        DenseMatrix m(n_, n_);
        for (int j = 1; j <= n_; ++j) {
            for (const int i : column_support(j)) {
                m.at(i, j) = 1;
            }
        }
        return m;
    }

private:
    friend PathMatrix invert_fast(const Tree& tree);
    friend PathMatrix invert_cofactor(const FwdAdjMatrix& a, const Tree& tree);

    static std::size_t words_per_col(int j) {
        return (static_cast<std::size_t>(j) + 63) / 64;
    }

    std::uint64_t word(int j, std::size_t w) const {
        return words_[col_off_[static_cast<std::size_t>(j)] + w];
    }

    void check_index(int v) const {
        if (v < 1 || v > n_) {
            throw IndexOutOfRange("path matrix index " + std::to_string(v));
        }
    }

    void set(int i, int j) {
        const std::size_t bit = static_cast<std::size_t>(i) - 1;
        std::uint64_t& w = words_[col_off_[static_cast<std::size_t>(j)] + bit / 64];
        internal_check(((w >> (bit % 64)) & 1U) == 0, "path matrix bit set twice");
        w |= std::uint64_t{1} << (bit % 64);
        ++ones_;
    }

    int n_;
    std::vector<std::uint64_t> words_;
    std::vector<std::size_t> col_off_;
    unsigned long long ones_ = 0;
};

// Path construction: column j is column parent(j) plus the diagonal bit,
// because j's datum path extends its parent's by one node. Copying the
// parent column word by word does the per-ancestor marking of the whole
// chain at once; the work stays proportional to the sum of node depths and
// the mark counter advances by exactly depth(j) per column.
inline PathMatrix invert_fast(const Tree& tree) {
    const int n = tree.node_count();
    PathMatrix out(n);
    for (int j = 1; j <= n; ++j) {
        const int p = tree.parent(j);
        if (p >= 1) {
            std::memcpy(&out.words_[out.col_off_[static_cast<std::size_t>(j)]],
                        &out.words_[out.col_off_[static_cast<std::size_t>(p)]],
                        PathMatrix::words_per_col(p) * sizeof(std::uint64_t));
            out.ones_ += static_cast<unsigned long long>(tree.depth(j)) - 1;
        }
        out.set(j, j);
    }
    internal_check(out.ones() == out.popcount(),
                   "fast inverse mark count disagrees with stored bits");
    return out;
}

// Cofactor construction: entry (i, j) above the diagonal is
// (-1)^(i+j) times the minor determinant det M_{j,i}, which is
// (-1)^(i-j) when i is forward-connected to j and 0 otherwise. Each column
// walks its datum path once so the connectivity test per pair is O(1).
inline PathMatrix invert_cofactor(const FwdAdjMatrix& a, const Tree& tree) {
    const int n = tree.node_count();
    internal_check(a.n() == n, "matrix and tree disagree on the dimension");
    PathMatrix out(n);
    std::vector<char> on_path(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> path;
    for (int j = 1; j <= n; ++j) {
        path.clear();
        for (int cur = tree.parent(j); cur >= 1; cur = tree.parent(cur)) {
            path.push_back(cur);
            on_path[static_cast<std::size_t>(cur)] = 1;
        }
        for (int i = 1; i < j; ++i) {
            const int minor_det = on_path[static_cast<std::size_t>(i)] != 0
                                      ? ((j - i) % 2 == 0 ? 1 : -1)
                                      : 0;
            const int cofactor_sign = (i + j) % 2 == 0 ? 1 : -1;
            const int value = cofactor_sign * minor_det;
            internal_check(value == 0 || value == 1, "cofactor produced an entry outside {0, 1}");
            if (value == 1) {
                out.set(i, j);
            }
        }
        out.set(j, j);
        for (const int cur : path) {
            on_path[static_cast<std::size_t>(cur)] = 0;
        }
    }
    return out;
}

struct VerifyMismatch {
    std::string kind;
    int i = 0;
    int j = 0;
};

// Outcome of the three-way cross check. Mismatches are report content, not
// exceptions; only the first mismatch_cap of them are kept verbatim.
struct VerifyReport {
    static constexpr std::size_t mismatch_cap = 100;

    int n = 0;
    bool ok = true;
    unsigned long long ones = 0;
    unsigned long long total_mismatches = 0;
    std::vector<VerifyMismatch> mismatches;

    void add(const std::string& kind, int i, int j) {
        ok = false;
        ++total_mismatches;
        if (mismatches.size() < mismatch_cap) {
            mismatches.push_back({kind, i, j});
        }
    }

    std::string to_text() const {
        if (ok) {
            return "OK\n";
        }
        std::string out;
        for (const auto& m : mismatches) {
            out += "mismatch " + m.kind + " (" + std::to_string(m.i) + ", " +
                   std::to_string(m.j) + ")\n";
        }
        out += "total mismatches: " + std::to_string(total_mismatches) + "\n";
        return out;
    }

    std::string to_json() const {
        std::string out = "{\"mismatches\":[";
        for (std::size_t s = 0; s < mismatches.size(); ++s) {
            if (s > 0) {
                out += ',';
            }
            out += "{\"i\":" + std::to_string(mismatches[s].i) +
                   ",\"j\":" + std::to_string(mismatches[s].j) + ",\"kind\":\"" +
                   mismatches[s].kind + "\"}";
        }
        out += "],\"n\":" + std::to_string(n);
        out += std::string(",\"ok\":") + (ok ? "true" : "false");
        out += ",\"ones\":" + std::to_string(ones);
        out += ",\"total_mismatches\":" + std::to_string(total_mismatches) + "}";
        return out;
    }
};

// Runs all three inversion methods, compares them entrywise, and checks
// A * inv = inv * A = I by exact integer multiplication over the
// triangular index range (terms outside it are identically zero).
inline VerifyReport verify_inverse_triple(const Tree& tree) {
    const int n = tree.node_count();
    VerifyReport report;
    report.n = n;

    const FwdAdjMatrix a = build_A(tree);
    const PathMatrix fast = invert_fast(tree);
    const PathMatrix cofactor = invert_cofactor(a, tree);
    const ExactMatrix oracle = invert_oracle(a.dense());
    report.ones = fast.ones();

    if (!oracle.is_integral()) {
        report.add("oracle-denominator", 0, 0);
    }
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            const int f = fast.entry(i, j) ? 1 : 0;
            const int c = cofactor.entry(i, j) ? 1 : 0;
            if (f != c) {
                report.add("fast-vs-cofactor", i, j);
            }
            if (oracle.is_integral() && f != oracle.int_at(i, j)) {
                report.add("fast-vs-oracle", i, j);
            }
        }
    }

    std::vector<int> parent(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 1; k <= n; ++k) {
        parent[static_cast<std::size_t>(k)] = tree.parent(k);
    }
    const auto a_entry = [&](int r, int c) -> long long {
        if (r == c) {
            return 1;
        }
        return parent[static_cast<std::size_t>(c)] == r && r >= 1 ? -1 : 0;
    };
    for (int i = 1; i <= n; ++i) {
        for (int k = 1; k <= n; ++k) {
            long long left = 0;
            long long right = 0;
            for (int m = i; m <= k; ++m) {
                left += a_entry(i, m) * (fast.entry(m, k) ? 1 : 0);
                right += (fast.entry(i, m) ? 1 : 0) * a_entry(m, k);
            }
            const long long expected = i == k ? 1 : 0;
            if (left != expected) {
                report.add("left-product", i, k);
            }
            if (right != expected) {
                report.add("right-product", i, k);
            }
        }
    }
    return report;
}

}  // namespace treemat
