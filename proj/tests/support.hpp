#pragma once

// Shared helpers for the test suites: fixture loading and the twelve-node
// worked example used by the golden files.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "treemat/dense.hpp"
#include "treemat/tree.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(TREEMAT_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline treemat::DenseMatrix load_dense(const std::string& path) {
    const std::string text = slurp(path);
    std::vector<std::vector<long long>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::vector<long long> row;
        long long v = 0;
        while (fields >> v) {
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::runtime_error("no matrix rows in " + path);
    }
    treemat::DenseMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 1; r <= m.rows(); ++r) {
        const auto& row = rows[static_cast<std::size_t>(r) - 1];
        if (static_cast<int>(row.size()) != m.cols()) {
            throw std::runtime_error("ragged matrix rows in " + path);
        }
        for (int c = 1; c <= m.cols(); ++c) {
            m.at(r, c) = row[static_cast<std::size_t>(c) - 1];
        }
    }
    return m;
}

// The twelve-node tree behind all golden fixtures: a trunk 0-1-2 that splits
// at 2 into a chain through 3, a leaf 6, and a branch 7-8, with 3 carrying a
// chain to 5 and a branch at 9.
inline const std::vector<int>& tree12_parents() {
    static const std::vector<int> parents{0, 1, 2, 3, 4, 2, 2, 7, 3, 9, 9, 11};
    return parents;
}

inline treemat::Tree tree12() {
    return treemat::Tree::from_parents(tree12_parents());
}

}  // namespace testsupport
