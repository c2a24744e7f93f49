#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "rtxva/ctmc.hpp"
#include "rtxva/errors.hpp"
#include "testdata.hpp"

using namespace rtxva;

namespace {

JointGenerator reference_joint(double alpha) {
    const GeneratorMatrix g1 = generator_from_annual_matrix(testdata::p1()).generator;
    const GeneratorMatrix g2 = generator_from_annual_matrix(testdata::p2()).generator;
    return build_joint_generator(g1, g2, CopulaSpec{alpha});
}

// Single-component chain wrapped as a 1-component JointGenerator.
JointGenerator single_chain(const Eigen::MatrixXd& a) {
    JointGenerator jg;
    jg.k = static_cast<int>(a.rows());
    jg.n_components = 1;
    jg.a = a;
    return jg;
}

bool has_simultaneous_jump(const JointRatingPath& path) {
    int prev = path.initial_state;
    for (size_t i = 0; i < path.jump_states.size(); ++i) {
        const int next = path.jump_states[i];
        if (path.component_of(prev, 1) != path.component_of(next, 1) &&
            path.component_of(prev, 2) != path.component_of(next, 2))
            return true;
        prev = next;
    }
    return false;
}

}  // namespace

TEST_SUITE("ctmc") {

TEST_CASE("zero generator produces no jumps") {
    const JointGenerator jg = single_chain(Eigen::MatrixXd::Zero(3, 3));
    const JointRatingPath path = simulate_path(jg, 0, 100.0, 42ULL);
    CHECK(path.jump_times.empty());
    CHECK(path.state_at(50.0) == 0);
}

TEST_CASE("determinism: identical seed gives identical paths") {
    const JointGenerator jg = reference_joint(0.5);
    const JointRatingPath a = simulate_path(jg, 0, 10.0, 12345ULL);
    const JointRatingPath b = simulate_path(jg, 0, 10.0, 12345ULL);
    REQUIRE(a.jump_times.size() == b.jump_times.size());
    for (size_t i = 0; i < a.jump_times.size(); ++i) {
        CHECK(a.jump_times[i] == b.jump_times[i]);
        CHECK(a.jump_states[i] == b.jump_states[i]);
    }
    const JointRatingPath c = simulate_path(jg, 0, 10.0, 12346ULL);
    CHECK(a.jump_times != c.jump_times);
}

TEST_CASE("mean first-jump time of a unit-rate chain") {
    Eigen::MatrixXd a(2, 2);
    a << -1.0, 1.0, 0.0, 0.0;
    const JointGenerator jg = single_chain(a);
    const int n = 100000;
    double sum = 0.0;
    for (int p = 0; p < n; ++p) {
        Rng rng = Rng::for_path(777ULL, static_cast<std::uint64_t>(p), 0);
        const JointRatingPath path = simulate_path(jg, 0, 1e6, rng);
        REQUIRE(path.jump_times.size() == 1);
        sum += path.jump_times[0];
    }
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("jump times are strictly increasing and within (0, T]") {
    const JointGenerator jg = reference_joint(1.0);
    for (int p = 0; p < 200; ++p) {
        Rng rng = Rng::for_path(5150ULL, static_cast<std::uint64_t>(p), 0);
        const JointRatingPath path = simulate_path(jg, 0, 10.0, rng);
        double prev = 0.0;
        for (double t : path.jump_times) {
            CHECK(t > prev);
            CHECK(t <= 10.0);
            prev = t;
        }
        // Default is absorbing componentwise.
        int state = path.initial_state;
        bool dead1 = false;
        for (int s : path.jump_states) {
            if (dead1) CHECK(path.component_of(s, 1) == path.k);
            if (path.component_of(s, 1) == path.k) dead1 = true;
            state = s;
        }
    }
}

TEST_CASE("common jumps occur iff alpha > 0") {
    const int n = 10000;
    int count_zero = 0, count_one = 0;
    const JointGenerator independent = reference_joint(0.0);
    const JointGenerator comonotone = reference_joint(1.0);
    for (int p = 0; p < n; ++p) {
        Rng r1 = Rng::for_path(31337ULL, static_cast<std::uint64_t>(p), 0);
        Rng r2 = Rng::for_path(31337ULL, static_cast<std::uint64_t>(p), 0);
        if (has_simultaneous_jump(simulate_path(independent, 0, 10.0, r1))) ++count_zero;
        if (has_simultaneous_jump(simulate_path(comonotone, 0, 10.0, r2))) ++count_one;
    }
    CHECK(count_zero == 0);
    CHECK(count_one > 0);
}

TEST_CASE("one-year transition frequencies match the dense exponential") {
    const JointGenerator jg = reference_joint(0.7);
    const Eigen::MatrixXd expected = (jg.a * 1.0).exp();
    const int start = jg.index(1, 1);
    const int n = 100000;
    std::vector<int> counts(static_cast<size_t>(jg.dim()), 0);
    for (int p = 0; p < n; ++p) {
        Rng rng = Rng::for_path(20120512ULL, static_cast<std::uint64_t>(p), 0);
        const JointRatingPath path = simulate_path(jg, start, 1.0, rng);
        ++counts[static_cast<size_t>(path.state_at(1.0))];
    }
    for (int v = 0; v < jg.dim(); ++v) {
        const double prob = expected(start, v);
        const double freq = static_cast<double>(counts[static_cast<size_t>(v)]) / n;
        const double se = std::sqrt(std::max(prob * (1.0 - prob), 1e-12) / n);
        CHECK(std::abs(freq - prob) <= 3.0 * se);
    }
}

TEST_CASE("stopping times: no jumps means no stopping") {
    JointRatingPath path;
    path.k = 4;
    path.n_components = 2;
    path.initial_state = 0;  // (A, A)
    path.horizon = 10.0;
    const StoppingTimes st = extract_stopping_times(path, TriggerLevels{3, 3}, 10.0);
    CHECK(st.tau1 == kNever);
    CHECK(st.tau_r == kNever);
    CHECK(st.classification == TriggerClass::None);
}

TEST_CASE("stopping times: downgrade to the trigger level") {
    JointRatingPath path;
    path.k = 4;
    path.n_components = 2;
    path.initial_state = 0;
    path.horizon = 10.0;
    // Component 1 jumps A -> C at t = 3 (state (C, A) = (3-1)*4 + 0 = 8).
    path.jump_times = {3.0};
    path.jump_states = {8};
    const StoppingTimes st = extract_stopping_times(path, TriggerLevels{3, 3}, 10.0);
    CHECK(st.tau_hat_r1 == 3.0);
    CHECK(st.tau_r1 == 3.0);
    CHECK(st.tau1 == kNever);
    CHECK(st.tau_r == 3.0);
    CHECK(st.classification == TriggerClass::PureTrigger);
}

TEST_CASE("stopping times: straight default is a trigger crossing") {
    JointRatingPath path;
    path.k = 4;
    path.n_components = 2;
    path.initial_state = 0;
    path.horizon = 10.0;
    // Component 1 jumps A -> D at t = 2 (state (D, A) = 12).
    path.jump_times = {2.0};
    path.jump_states = {12};
    const StoppingTimes st = extract_stopping_times(path, TriggerLevels{3, 3}, 10.0);
    CHECK(st.tau1 == 2.0);
    CHECK(st.tau_r1 == 2.0);
    CHECK(st.tau_hat_r1 == kNever);  // the non-default trigger set was never visited
    CHECK(st.classification == TriggerClass::CounterpartyDefault);
}

TEST_CASE("stopping times: common jump to default classifies as both") {
    JointRatingPath path;
    path.k = 4;
    path.n_components = 2;
    path.initial_state = 0;
    path.horizon = 10.0;
    path.jump_times = {4.5};
    path.jump_states = {15};  // (D, D)
    const StoppingTimes st = extract_stopping_times(path, TriggerLevels{2, 2}, 10.0);
    CHECK(st.tau1 == 4.5);
    CHECK(st.tau2 == 4.5);
    CHECK(st.classification == TriggerClass::BothDefault);
}

TEST_CASE("trigger at the default level disables the non-default crossing") {
    const JointGenerator jg = reference_joint(0.5);
    for (int p = 0; p < 500; ++p) {
        Rng rng = Rng::for_path(99ULL, static_cast<std::uint64_t>(p), 0);
        const JointRatingPath path = simulate_path(jg, 0, 10.0, rng);
        const StoppingTimes st = extract_stopping_times(path, TriggerLevels{4, 4}, 10.0);
        CHECK(st.tau_r1 == st.tau1);
        CHECK(st.tau_r2 == st.tau2);
        CHECK(st.tau_r == st.tau);
        if (st.tau_r <= 10.0) CHECK(st.classification != TriggerClass::PureTrigger);
    }
}

TEST_CASE("stopping-time invariants on simulated paths") {
    const JointGenerator jg = reference_joint(1.0);
    for (int p = 0; p < 2000; ++p) {
        Rng rng = Rng::for_path(2718ULL, static_cast<std::uint64_t>(p), 0);
        const JointRatingPath path = simulate_path(jg, 0, 10.0, rng);
        const StoppingTimes st = extract_stopping_times(path, TriggerLevels{2, 3}, 10.0);
        CHECK(st.tau_r1 == std::min(st.tau_hat_r1, st.tau1));
        CHECK(st.tau_r2 == std::min(st.tau_hat_r2, st.tau2));
        CHECK(st.tau_r <= st.tau);
        if (st.classification == TriggerClass::BothDefault) {
            CHECK(st.tau1 == st.tau_r);
            CHECK(st.tau2 == st.tau_r);
        }
    }
}

TEST_CASE("trigger validation") {
    JointRatingPath path;
    path.k = 4;
    path.n_components = 2;
    path.initial_state = 5;  // (B, B)
    path.horizon = 10.0;
    CHECK_THROWS_AS(extract_stopping_times(path, TriggerLevels{2, 3}, 10.0), ValidationError);
    CHECK_THROWS_AS(extract_stopping_times(path, TriggerLevels{1, 3}, 10.0), ValidationError);
    CHECK_THROWS_AS(extract_stopping_times(path, TriggerLevels{5, 3}, 10.0), ValidationError);
}

}  // TEST_SUITE
