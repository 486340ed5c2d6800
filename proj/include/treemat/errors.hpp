#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace treemat {

// Base class for all errors raised by this library. Domain errors (invalid
// trees, singular matrices, arithmetic overflow) and input parse errors both
// derive from it, so callers that only need pass/fail can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class CycleDetected : public Error {
public:
    CycleDetected() : Error("cycle detected: input graph is not a tree") {}
};

class Disconnected : public Error {
public:
    Disconnected() : Error("graph is disconnected") {}
};

class IsolatedNode : public Error {
public:
    explicit IsolatedNode(int node)
        : Error("isolated node " + std::to_string(node)), node_(node) {}
    int node() const { return node_; }

private:
    int node_;
};

class SelfLoop : public Error {
public:
    explicit SelfLoop(int node)
        : Error("self loop at node " + std::to_string(node)), node_(node) {}
    int node() const { return node_; }

private:
    int node_;
};

class DuplicateEdge : public Error {
public:
    DuplicateEdge(int u, int v)
        : Error("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")"),
          u_(u),
          v_(v) {}
    int u() const { return u_; }
    int v() const { return v_; }

private:
    int u_;
    int v_;
};

// Raised when a node numbering breaks the monotone rule that every parent
// index is smaller than its child index. Carries every violating edge as a
// (parent, child) pair so callers can report all of them at once.
class NonMonotoneNumbering : public Error {
public:
    explicit NonMonotoneNumbering(std::vector<std::pair<int, int>> violations)
        : Error(describe(violations)), violations_(std::move(violations)) {}
    const std::vector<std::pair<int, int>>& violations() const { return violations_; }

private:
    static std::string describe(const std::vector<std::pair<int, int>>& v) {
        std::string msg = "non-monotone numbering:";
        for (const auto& [p, c] : v) {
            msg += " (" + std::to_string(p) + "," + std::to_string(c) + ")";
        }
        return msg;
    }

    std::vector<std::pair<int, int>> violations_;
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& what) : Error("index out of range: " + what) {}
};

class PreconditionViolated : public Error {
public:
    explicit PreconditionViolated(const std::string& what)
        : Error("precondition violated: " + what) {}
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("singular matrix") {}
};

class Overflow : public Error {
public:
    explicit Overflow(const std::string& what) : Error("integer overflow: " + what) {}
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& reason)
        : Error("parse error at line " + std::to_string(line) + ": " + reason), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Internal consistency guard. These checks cover claims the library proves
// about its own intermediate results (verified column sums, triangular
// shapes, exact divisions). They stay active in release builds; a failure
// means a bug in this library, not bad user input.
inline void internal_check(bool ok, const char* what) {
    if (!ok) {
        throw std::logic_error(std::string("internal invariant violated: ") + what);
    }
}

}  // namespace treemat
