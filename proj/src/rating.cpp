#include "rtxva/rating.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "rtxva/errors.hpp"

namespace rtxva {

RatingScale::RatingScale(int categories) : k(categories) {
    if (k < 2) throw ValidationError("rating scale needs at least 2 categories, got " + std::to_string(k));
}

std::string RatingScale::label(int category) const {
    if (category < 1 || category > k)
        throw ValidationError("category " + std::to_string(category) + " outside 1.." + std::to_string(k));
    if (k <= 26) return std::string(1, static_cast<char>('A' + category - 1));
    return "R" + std::to_string(category);
}

int RatingScale::parse_label(const std::string& text) const {
    if (text.size() == 1 && text[0] >= 'A' && text[0] < 'A' + std::min(k, 26))
        return text[0] - 'A' + 1;
    try {
        size_t pos = 0;
        const std::string digits = (text.size() > 1 && text[0] == 'R') ? text.substr(1) : text;
        const int c = std::stoi(digits, &pos);
        if (pos == digits.size() && c >= 1 && c <= k) return c;
    } catch (const std::exception&) {
    }
    throw ValidationError("cannot parse rating category '" + text + "' on a " + std::to_string(k) +
                          "-category scale");
}

const TransitionMatrix& validate_transition_matrix(const TransitionMatrix& m) {
    const auto& p = m.p;
    if (p.rows() != p.cols() || p.rows() < 2)
        throw ValidationError("transition matrix must be square with dimension >= 2");
    const int k = static_cast<int>(p.rows());
    for (int i = 0; i < k; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < k; ++j) {
            const double v = p(i, j);
            if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12)
                throw NegativeEntryError("transition probability out of [0,1] at row " + std::to_string(i + 1) +
                                         ", col " + std::to_string(j + 1) + ": " + std::to_string(v));
            row_sum += v;
        }
        if (std::abs(row_sum - 1.0) > 1e-9)
            throw RowSumError("row " + std::to_string(i + 1) + " sums to " + std::to_string(row_sum) +
                              ", expected 1");
    }
    for (int j = 0; j < k; ++j) {
        const double expected = (j == k - 1) ? 1.0 : 0.0;
        if (std::abs(p(k - 1, j) - expected) > 1e-12)
            throw NonAbsorbingDefaultError("default row must be the unit vector on the last category");
    }
    return m;
}

void validate_generator(const Eigen::MatrixXd& a, double row_tol, double neg_tol) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw NumericError("generator must be square");
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (!std::isfinite(a(i, j))) throw NumericError("non-finite generator entry");
            if (i != j && a(i, j) < -neg_tol)
                throw NumericError("negative off-diagonal intensity at (" + std::to_string(i) + "," +
                                   std::to_string(j) + "): " + std::to_string(a(i, j)));
            row_sum += a(i, j);
        }
        if (std::abs(row_sum) > row_tol)
            throw NumericError("generator row " + std::to_string(i) + " sums to " + std::to_string(row_sum));
    }
}

namespace {

bool row_is_absorbing(const Eigen::MatrixXd& p, int i) {
    for (int j = 0; j < p.cols(); ++j) {
        const double expected = (j == i) ? 1.0 : 0.0;
        if (std::abs(p(i, j) - expected) > 1e-12) return false;
    }
    return true;
}

}  // namespace

EmbeddedGenerator generator_from_annual_matrix(const TransitionMatrix& m) {
    validate_transition_matrix(m);
    const Eigen::MatrixXd& p = m.p;
    const int k = static_cast<int>(p.rows());

    // The principal log is real only when no eigenvalue sits on the closed
    // negative real axis.
    Eigen::EigenSolver<Eigen::MatrixXd> es(p);
    if (es.info() != Eigen::Success) throw LogDivergenceError("eigenvalue computation failed");
    for (int i = 0; i < k; ++i) {
        const std::complex<double> ev = es.eigenvalues()(i);
        if (ev.real() <= 1e-12 && std::abs(ev.imag()) <= 1e-12)
            throw LogDivergenceError("matrix has an eigenvalue on the closed negative real axis; "
                                     "no real principal logarithm");
    }

    Eigen::MatrixXd g = p.log();
    if (!g.allFinite()) throw LogDivergenceError("matrix logarithm did not converge");
    g /= m.horizon_years;

    for (int i = 0; i < k; ++i) {
        if (row_is_absorbing(p, i)) {
            g.row(i).setZero();
            continue;
        }
        double off_sum = 0.0;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            if (g(i, j) < 0.0) g(i, j) = 0.0;
            off_sum += g(i, j);
        }
        g(i, i) = -off_sum;
    }

    const Eigen::MatrixXd reproduced = (g * m.horizon_years).exp();
    const double err = (reproduced - p).cwiseAbs().maxCoeff();
    if (err > 1e-3)
        throw EmbeddingFailureError("regularized generator reproduces the transition matrix only to " +
                                    std::to_string(err) + " (> 1e-3); matrix is far from embeddable");
    validate_generator(g);
    return EmbeddedGenerator{GeneratorMatrix{std::move(g)}, err};
}

}  // namespace rtxva
