#pragma once

#include <stdexcept>
#include <string>

namespace qwc {

/// Bad arguments, malformed files, violated parameter ranges. CLI exit 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical precondition failures: non-unitary input, divergent series,
/// measures undefined on the given graph. CLI exit 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Random generation could not satisfy the requested constraints.
class GenerationError : public NumericError {
public:
    using NumericError::NumericError;
};

/// A centrality or correlation value is undefined on this input
/// (edgeless graph, all-tied score vector).
class UndefinedMeasureError : public NumericError {
public:
    using NumericError::NumericError;
};

/// A series defining the requested quantity does not converge
/// (e.g. relaxation times of a non-lazy walk on a bipartite graph).
class NonConvergentError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace qwc
