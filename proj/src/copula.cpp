#include "rtxva/copula.hpp"

#include <cmath>
#include <string>

#include "rtxva/errors.hpp"

namespace rtxva {

namespace {

void check_alpha(const CopulaSpec& spec) {
    if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0))
        throw ValidationError("copula alpha must lie in [0,1], got " + std::to_string(spec.alpha));
}

void check_marginals(const GeneratorMatrix& g1, const GeneratorMatrix& g2) {
    if (g1.dim() != g2.dim()) throw ValidationError("marginal generators must share the rating scale");
    validate_generator(g1.a);
    validate_generator(g2.a);
}

void set_diagonal_to_minus_row_sum(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    for (int u = 0; u < n; ++u) {
        double off = 0.0;
        for (int v = 0; v < n; ++v)
            if (v != u) off += a(u, v);
        a(u, u) = -off;
    }
}

}  // namespace

JointGenerator build_joint_generator(const GeneratorMatrix& g1, const GeneratorMatrix& g2,
                                     const CopulaSpec& spec) {
    check_alpha(spec);
    check_marginals(g1, g2);
    const int k = g1.dim();
    const double alpha = spec.alpha;
    const auto& a1 = g1.a;
    const auto& a2 = g2.a;

    JointGenerator jg;
    jg.k = k;
    jg.n_components = 2;
    jg.a = Eigen::MatrixXd::Zero(k * k, k * k);

    for (int i = 1; i <= k; ++i) {
        for (int h = 1; h <= k; ++h) {
            const int u = jg.index(i, h);
            // Common jumps: both components move to category j.
            for (int j = 1; j <= k; ++j) {
                if (j == i || j == h) continue;
                jg.a(u, jg.index(j, j)) = alpha * std::min(a1(i - 1, j - 1), a2(h - 1, j - 1));
            }
            // Single moves of component 1, with the common-jump allocation
            // subtracted so the marginal equations hold exactly.
            for (int j = 1; j <= k; ++j) {
                if (j == i) continue;
                double rate = a1(i - 1, j - 1);
                if (j != h) rate -= alpha * std::min(a1(i - 1, j - 1), a2(h - 1, j - 1));
                if (rate < -1e-12)
                    throw NegativeIntensityError("single-move intensity (" + std::to_string(i) + "," +
                                                 std::to_string(h) + ")->(" + std::to_string(j) + "," +
                                                 std::to_string(h) + ") is negative: " + std::to_string(rate));
                jg.a(u, jg.index(j, h)) = std::max(rate, 0.0);
            }
            // Single moves of component 2.
            for (int m = 1; m <= k; ++m) {
                if (m == h) continue;
                double rate = a2(h - 1, m - 1);
                if (m != i) rate -= alpha * std::min(a1(i - 1, m - 1), a2(h - 1, m - 1));
                if (rate < -1e-12)
                    throw NegativeIntensityError("single-move intensity (" + std::to_string(i) + "," +
                                                 std::to_string(h) + ")->(" + std::to_string(i) + "," +
                                                 std::to_string(m) + ") is negative: " + std::to_string(rate));
                jg.a(u, jg.index(i, m)) = std::max(rate, 0.0);
            }
        }
    }
    set_diagonal_to_minus_row_sum(jg.a);
    validate_generator(jg.a);
    return jg;
}

JointGenerator build_joint_generator_3(const GeneratorMatrix& g1, const GeneratorMatrix& g2,
                                       const GeneratorMatrix& g3, const CopulaSpec& spec) {
    const JointGenerator pair = build_joint_generator(g1, g2, spec);
    if (g3.dim() != pair.k) throw ValidationError("third marginal generator must share the rating scale");
    validate_generator(g3.a);

    const int k = pair.k;
    const int d2 = k * k;
    JointGenerator jg;
    jg.k = k;
    jg.n_components = 3;
    jg.a = Eigen::MatrixXd::Zero(d2 * k, d2 * k);

    // Kronecker sum: either the (1,2) block moves or component 3 moves.
    for (int u = 0; u < d2; ++u) {
        for (int l = 0; l < k; ++l) {
            const int row = u * k + l;
            for (int v = 0; v < d2; ++v)
                if (v != u) jg.a(row, v * k + l) = pair.a(u, v);
            for (int m = 0; m < k; ++m)
                if (m != l) jg.a(row, u * k + m) = g3.a(l, m);
        }
    }
    set_diagonal_to_minus_row_sum(jg.a);
    validate_generator(jg.a);
    return jg;
}

JointGenerator change_measure(const JointGenerator& g, const MeasureChangeSpec& spec) {
    if (std::abs(spec.alpha1) > 50.0 || std::abs(spec.alpha2) > 50.0)
        throw ValidationError("measure-change exponents limited to |alpha| <= 50");

    JointGenerator out = g;
    const int n = g.dim();
    std::vector<double> h(n);
    for (int u = 0; u < n; ++u)
        h[u] = std::exp(spec.alpha1 * g.component(u, 1) + spec.alpha2 * g.component(u, 2));

    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (v != u) out.a(u, v) = g.a(u, v) * (h[v] / h[u]);
    set_diagonal_to_minus_row_sum(out.a);
    validate_generator(out.a);
    return out;
}

}  // namespace rtxva
