#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace moepap {

// Column vectors hold one decision or objective vector.
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// One point per row, one objective per column.
template <typename Scalar>
using PointSet = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using VectorXd = Vector<double>;
using PointSetXd = PointSet<double>;
using Index = Eigen::Index;

/// Precondition broken by the caller (wrong sizes, out-of-range input, ...).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid or inconsistent configuration (bad config pairing, missing metadata).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed portfolio, manifest, or data file.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Requested feature or problem that this build does not provide.
class Unsupported : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message)
{
    if (!condition)
        throw ContractViolation(message);
}

} // namespace moepap
