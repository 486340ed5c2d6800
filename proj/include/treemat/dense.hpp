#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "treemat/errors.hpp"

namespace treemat {

// Dense integer matrix with 1-based indexing. Node indices double as matrix
// indices throughout the library, and those are 1-based by convention (the
// datum node 0 has no row or column), so every matrix API here is 1-based.
class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}

    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), v_(static_cast<std::size_t>(rows) * cols, 0) {
        if (rows < 0 || cols < 0) {
            throw PreconditionViolated("matrix dimensions must be non-negative");
        }
    }

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 1; i <= n; ++i) {
            m.at(i, i) = 1;
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    long long& at(int r, int c) {
        check_index(r, c);
        return v_[static_cast<std::size_t>(r - 1) * cols_ + (c - 1)];
    }

    long long at(int r, int c) const {
        check_index(r, c);
        return v_[static_cast<std::size_t>(r - 1) * cols_ + (c - 1)];
    }

    bool operator==(const DenseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && v_ == o.v_;
    }
    bool operator!=(const DenseMatrix& o) const { return !(*this == o); }

    // Nonzero entries as (row, column, value), column-major order. This is
    // the canonical ordering for the sparse text renders.
    std::vector<std::tuple<int, int, long long>> nonzero_entries() const {
        std::vector<std::tuple<int, int, long long>> out;
        for (int c = 1; c <= cols_; ++c) {
            for (int r = 1; r <= rows_; ++r) {
                const long long v = at(r, c);
                if (v != 0) {
                    out.emplace_back(r, c, v);
                }
            }
        }
        return out;
    }

private:
    void check_index(int r, int c) const {
        if (r < 1 || r > rows_ || c < 1 || c > cols_) {
            throw IndexOutOfRange("matrix entry (" + std::to_string(r) + ", " +
                                  std::to_string(c) + ") of a " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_) + " matrix");
        }
    }

    int rows_;
    int cols_;
    std::vector<long long> v_;
};

// Text render: one row per line, entries space-separated signed integers,
// every line newline-terminated. All golden-file comparisons use this form.
inline std::string render_dense(const DenseMatrix& m) {
    std::string out;
    for (int r = 1; r <= m.rows(); ++r) {
        for (int c = 1; c <= m.cols(); ++c) {
            if (c > 1) {
                out += ' ';
            }
            out += std::to_string(m.at(r, c));
        }
        out += '\n';
    }
    return out;
}

// Matrix Market coordinate render, integer general, 1-based indices,
// entries in column-major order.
inline std::string render_matrix_market(const DenseMatrix& m) {
    const auto entries = m.nonzero_entries();
    std::string out = "%%MatrixMarket matrix coordinate integer general\n";
    out += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " +
           std::to_string(entries.size()) + "\n";
    for (const auto& [r, c, v] : entries) {
        out += std::to_string(r) + " " + std::to_string(c) + " " + std::to_string(v) + "\n";
    }
    return out;
}

// Copy with one row and one column removed.
inline DenseMatrix delete_row_col(const DenseMatrix& m, int row, int col) {
    if (row < 1 || row > m.rows() || col < 1 || col > m.cols()) {
        throw IndexOutOfRange("row/column deletion");
    }
    DenseMatrix out(m.rows() - 1, m.cols() - 1);
    for (int r = 1; r <= out.rows(); ++r) {
        for (int c = 1; c <= out.cols(); ++c) {
            out.at(r, c) = m.at(r < row ? r : r + 1, c < col ? c : c + 1);
        }
    }
    return out;
}

// Exact dense product with overflow checking. Intended for verification at
// moderate sizes, not for performance.
inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw PreconditionViolated("matrix product dimension mismatch");
    }
    DenseMatrix out(a.rows(), b.cols());
    for (int i = 1; i <= a.rows(); ++i) {
        for (int k = 1; k <= a.cols(); ++k) {
            const long long aik = a.at(i, k);
            if (aik == 0) {
                continue;
            }
            for (int j = 1; j <= b.cols(); ++j) {
                const __int128 term = static_cast<__int128>(aik) * b.at(k, j);
                const __int128 sum = static_cast<__int128>(out.at(i, j)) + term;
                if (sum > INT64_MAX || sum < INT64_MIN) {
                    throw Overflow("matrix product entry");
                }
                out.at(i, j) = static_cast<long long>(sum);
            }
        }
    }
    return out;
}

}  // namespace treemat
