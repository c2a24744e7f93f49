#pragma once

#include <Eigen/Dense>
#include <string>

namespace rtxva {

// Rating categories are labelled 1..k, ordered best to worst; k is the
// absorbing default state.
struct RatingScale {
    int k = 4;

    explicit RatingScale(int categories);

    // "A".."Z" for k <= 26, otherwise "R1".."Rk".
    std::string label(int category) const;
    int parse_label(const std::string& text) const;
};

struct TransitionMatrix {
    double horizon_years = 1.0;
    Eigen::MatrixXd p;  // row-stochastic, categories 1..k map to rows 0..k-1
};

// Returns the matrix unchanged iff all invariants hold. Throws RowSumError,
// NegativeEntryError or NonAbsorbingDefaultError otherwise.
const TransitionMatrix& validate_transition_matrix(const TransitionMatrix& m);

struct GeneratorMatrix {
    Eigen::MatrixXd a;  // rows sum to 0, off-diagonals >= 0, units 1/year

    int dim() const { return static_cast<int>(a.rows()); }
};

// Throws NumericError if `a` violates the generator invariants.
void validate_generator(const Eigen::MatrixXd& a, double row_tol = 1e-10, double neg_tol = 1e-12);

struct EmbeddedGenerator {
    GeneratorMatrix generator;
    double reproduction_error;  // max-abs entrywise gap between exp(G*h) and the input
};

// Principal matrix logarithm (inverse scaling-and-squaring) followed by the
// diagonal-adjustment regularization: negative off-diagonals clamped to 0,
// diagonals reset to minus the row sum, rows of absorbing states zeroed.
// Throws LogDivergenceError when no real principal log exists and
// EmbeddingFailureError when the regularized generator reproduces the input
// worse than 1e-3 entrywise.
EmbeddedGenerator generator_from_annual_matrix(const TransitionMatrix& m);

}  // namespace rtxva
