#pragma once

#include <stdexcept>
#include <string>

namespace dk {

/// Evaluation requested at (or too close to) a genuine pole of the kernel,
/// e.g. sh(omega*t) vanishing away from t = 0.
class PoleError : public std::runtime_error {
public:
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

/// Time argument lies outside the validity sector of the series / integral.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A truncated expansion cannot reach the requested tolerance at the
/// admissible order.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Laplace integral does not converge for the given (t, direction).
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// The Hankel system of a Pade approximant is rank deficient.
class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

/// An integral required to be finite is not.
class InfiniteError : public std::runtime_error {
public:
    explicit InfiniteError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dk
