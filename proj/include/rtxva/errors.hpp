#pragma once

#include <stdexcept>
#include <string>

namespace rtxva {

// Bad inputs or violated contracts: CLI exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failures (non-embeddable matrix, diverging log, ...): CLI exit code 3.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct RowSumError : ValidationError {
    explicit RowSumError(const std::string& what) : ValidationError(what) {}
};

struct NegativeEntryError : ValidationError {
    explicit NegativeEntryError(const std::string& what) : ValidationError(what) {}
};

struct NonAbsorbingDefaultError : ValidationError {
    explicit NonAbsorbingDefaultError(const std::string& what) : ValidationError(what) {}
};

struct EvalAfterMaturityError : ValidationError {
    explicit EvalAfterMaturityError(const std::string& what) : ValidationError(what) {}
};

struct InconsistentPathSetError : ValidationError {
    explicit InconsistentPathSetError(const std::string& what) : ValidationError(what) {}
};

struct InsufficientPathsError : ValidationError {
    explicit InsufficientPathsError(const std::string& what) : ValidationError(what) {}
};

struct MissingBaselineError : ValidationError {
    explicit MissingBaselineError(const std::string& what) : ValidationError(what) {}
};

struct ParseError : ValidationError {
    explicit ParseError(const std::string& what) : ValidationError(what) {}
};

struct LogDivergenceError : NumericError {
    explicit LogDivergenceError(const std::string& what) : NumericError(what) {}
};

struct EmbeddingFailureError : NumericError {
    explicit EmbeddingFailureError(const std::string& what) : NumericError(what) {}
};

struct NegativeIntensityError : NumericError {
    explicit NegativeIntensityError(const std::string& what) : NumericError(what) {}
};

struct NoRootError : NumericError {
    explicit NoRootError(const std::string& what) : NumericError(what) {}
};

}  // namespace rtxva
