#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "rtxva/copula.hpp"
#include "rtxva/errors.hpp"
#include "rtxva/rng.hpp"
#include "testdata.hpp"

using namespace rtxva;

namespace {

GeneratorMatrix table_generator(const TransitionMatrix& m) {
    return generator_from_annual_matrix(m).generator;
}

// Strong marginal-consistency check: from EVERY product state, the mass
// aggregated over the other components must match the marginal law of
// component c started from that state's c-th category.
double marginal_error(const JointGenerator& jg, double t, int c, const Eigen::MatrixXd& target) {
    const Eigen::MatrixXd full = (jg.a * t).exp();
    const int k = jg.k;
    const int n = jg.dim();
    double worst = 0.0;
    for (int u = 0; u < n; ++u) {
        for (int j = 1; j <= k; ++j) {
            double mass = 0.0;
            for (int v = 0; v < n; ++v)
                if (jg.component(v, c) == j) mass += full(u, v);
            worst = std::max(worst, std::abs(mass - target(jg.component(u, c) - 1, j - 1)));
        }
    }
    return worst;
}

// Random valid generator with absorbing last state.
GeneratorMatrix random_generator(int k, Rng& rng, double scale = 0.4) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i + 1 < k; ++i) {
        double off = 0.0;
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            a(i, j) = scale * rng.uniform();
            off += a(i, j);
        }
        a(i, i) = -off;
    }
    return GeneratorMatrix{a};
}

}  // namespace

TEST_SUITE("copula") {

TEST_CASE("alpha outside [0,1] is rejected") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    CHECK_THROWS_AS(build_joint_generator(g1, g2, CopulaSpec{-0.1}), ValidationError);
    CHECK_THROWS_AS(build_joint_generator(g1, g2, CopulaSpec{1.5}), ValidationError);
}

TEST_CASE("alpha = 0 gives the independent Kronecker-sum generator") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    const JointGenerator jg = build_joint_generator(g1, g2, CopulaSpec{0.0});
    const int k = jg.k;
    for (int i = 1; i <= k; ++i)
        for (int h = 1; h <= k; ++h)
            for (int j = 1; j <= k; ++j)
                for (int m = 1; m <= k; ++m) {
                    if (i == j && h == m) continue;
                    const double expected = (h == m ? g1.a(i - 1, j - 1) : 0.0) +
                                            (i == j ? g2.a(h - 1, m - 1) : 0.0);
                    CHECK(jg.a(jg.index(i, h), jg.index(j, m)) ==
                          doctest::Approx(expected).epsilon(1e-14));
                }
}

TEST_CASE("alpha = 1 with equal marginals puts min intensity on common jumps") {
    const GeneratorMatrix g = table_generator(testdata::p1());
    const JointGenerator jg = build_joint_generator(g, g, CopulaSpec{1.0});
    const int k = jg.k;
    for (int i = 1; i <= k; ++i)
        for (int h = 1; h <= k; ++h)
            for (int j = 1; j <= k; ++j) {
                if (j == i || j == h) continue;
                CHECK(jg.a(jg.index(i, h), jg.index(j, j)) ==
                      std::min(g.a(i - 1, j - 1), g.a(h - 1, j - 1)));
            }
}

TEST_CASE("common-jump intensity is linear in alpha") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    const JointGenerator at_one = build_joint_generator(g1, g2, CopulaSpec{1.0});
    const JointGenerator at_alpha = build_joint_generator(g1, g2, CopulaSpec{0.37});
    const int k = at_one.k;
    for (int i = 1; i <= k; ++i)
        for (int h = 1; h <= k; ++h)
            for (int j = 1; j <= k; ++j) {
                if (j == i || j == h) continue;
                CHECK(at_alpha.a(at_alpha.index(i, h), at_alpha.index(j, j)) ==
                      doctest::Approx(0.37 * at_one.a(at_one.index(i, h), at_one.index(j, j)))
                          .epsilon(1e-14));
            }
}

TEST_CASE("marginal consistency on the reference generators") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
        const JointGenerator jg = build_joint_generator(g1, g2, CopulaSpec{alpha});
        for (double t : {0.25, 0.5, 1.0, 2.0, 5.0}) {
            CHECK(marginal_error(jg, t, 1, (g1.a * t).exp()) <= 1e-8);
            CHECK(marginal_error(jg, t, 2, (g2.a * t).exp()) <= 1e-8);
        }
    }
}

TEST_CASE("marginal consistency on random generators") {
    Rng rng(987654321ULL);
    for (int rep = 0; rep < 3; ++rep) {
        const GeneratorMatrix g1 = random_generator(4, rng);
        const GeneratorMatrix g2 = random_generator(4, rng);
        for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
            const JointGenerator jg = build_joint_generator(g1, g2, CopulaSpec{alpha});
            for (double t : {0.5, 2.0}) {
                CHECK(marginal_error(jg, t, 1, (g1.a * t).exp()) <= 1e-8);
                CHECK(marginal_error(jg, t, 2, (g2.a * t).exp()) <= 1e-8);
            }
        }
    }
}

TEST_CASE("trivariate: alpha = 0 is the triple Kronecker sum") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    const GeneratorMatrix g3 = table_generator(testdata::p3());
    const JointGenerator jg = build_joint_generator_3(g1, g2, g3, CopulaSpec{0.0});
    const int k = jg.k;
    CHECK(jg.dim() == k * k * k);
    // Spot-check: single-component moves carry the marginal intensity.
    CHECK(jg.a(jg.index3(1, 1, 1), jg.index3(2, 1, 1)) ==
          doctest::Approx(g1.a(0, 1)).epsilon(1e-14));
    CHECK(jg.a(jg.index3(1, 1, 1), jg.index3(1, 3, 1)) ==
          doctest::Approx(g2.a(0, 2)).epsilon(1e-14));
    CHECK(jg.a(jg.index3(2, 1, 3), jg.index3(2, 1, 4)) ==
          doctest::Approx(g3.a(2, 3)).epsilon(1e-14));
    // No simultaneous moves of component 3 with anything else.
    CHECK(jg.a(jg.index3(1, 1, 1), jg.index3(2, 1, 2)) == 0.0);
    CHECK(jg.a(jg.index3(1, 1, 1), jg.index3(2, 2, 2)) == 0.0);
}

TEST_CASE("trivariate: frozen third component reduces to the bivariate copula") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    GeneratorMatrix g3{Eigen::MatrixXd::Zero(4, 4)};
    const JointGenerator tri = build_joint_generator_3(g1, g2, g3, CopulaSpec{0.6});
    const JointGenerator bi = build_joint_generator(g1, g2, CopulaSpec{0.6});
    const int k = tri.k;
    for (int u = 0; u < k * k; ++u)
        for (int v = 0; v < k * k; ++v)
            CHECK(tri.a(u * k + 0, v * k + 0) == doctest::Approx(bi.a(u, v)).epsilon(1e-14));
    // Component 3 never moves.
    for (int u = 0; u < tri.dim(); ++u)
        for (int v = 0; v < tri.dim(); ++v)
            if (tri.component(u, 3) != tri.component(v, 3)) CHECK(tri.a(u, v) == 0.0);
}

TEST_CASE("trivariate marginals including the reference entity") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    const GeneratorMatrix g3 = table_generator(testdata::p3());
    const JointGenerator jg = build_joint_generator_3(g1, g2, g3, CopulaSpec{1.0});
    CHECK(marginal_error(jg, 1.0, 3, (g3.a * 1.0).exp()) <= 1e-8);
    CHECK(marginal_error(jg, 1.0, 3, testdata::p3().p) <= 1e-3);
    CHECK(marginal_error(jg, 2.0, 1, (g1.a * 2.0).exp()) <= 1e-8);
    CHECK(marginal_error(jg, 2.0, 2, (g2.a * 2.0).exp()) <= 1e-8);
}

TEST_CASE("measure change with zero exponents is the identity map") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    const JointGenerator jg = build_joint_generator(g1, g2, CopulaSpec{0.5});
    const JointGenerator changed = change_measure(jg, MeasureChangeSpec{0.0, 0.0});
    CHECK((changed.a - jg.a).cwiseAbs().maxCoeff() == 0.0);  // entrywise equality
}

TEST_CASE("measure change preserves generator invariants") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    const JointGenerator jg = build_joint_generator(g1, g2, CopulaSpec{0.5});
    const JointGenerator changed = change_measure(jg, MeasureChangeSpec{0.1, 0.0});
    const int n = changed.dim();
    for (int u = 0; u < n; ++u) {
        CHECK(std::abs(changed.a.row(u).sum()) <= 1e-10);
        for (int v = 0; v < n; ++v)
            if (v != u) CHECK(changed.a(u, v) >= 0.0);
    }
    CHECK_THROWS_AS(change_measure(jg, MeasureChangeSpec{60.0, 0.0}), ValidationError);
}

TEST_CASE("product-state indexing is row-major") {
    const GeneratorMatrix g1 = table_generator(testdata::p1());
    const GeneratorMatrix g2 = table_generator(testdata::p2());
    const JointGenerator jg = build_joint_generator(g1, g2, CopulaSpec{0.0});
    CHECK(jg.index(1, 1) == 0);
    CHECK(jg.index(1, 4) == 3);
    CHECK(jg.index(2, 1) == 4);
    CHECK(jg.index(3, 2) == 9);
    CHECK(jg.component(9, 1) == 3);
    CHECK(jg.component(9, 2) == 2);
    CHECK(jg.index3(2, 3, 4) == ((2 - 1) * 4 + (3 - 1)) * 4 + (4 - 1));
}

}  // TEST_SUITE
