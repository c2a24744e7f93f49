#include "rtxva/ctmc.hpp"

#include <algorithm>
#include <string>

#include "rtxva/errors.hpp"

namespace rtxva {

int JointRatingPath::state_at(double t) const {
    int s = initial_state;
    for (size_t i = 0; i < jump_times.size() && jump_times[i] <= t; ++i) s = jump_states[i];
    return s;
}

int JointRatingPath::component_at(double t, int c) const { return component_of(state_at(t), c); }

JointRatingPath simulate_path(const JointGenerator& g, int initial_state, double horizon, Rng& rng) {
    if (horizon <= 0.0) throw ValidationError("simulation horizon must be positive");
    const int n = g.dim();
    if (initial_state < 0 || initial_state >= n) throw ValidationError("initial product state out of range");

    JointRatingPath path;
    path.k = g.k;
    path.n_components = g.n_components;
    path.initial_state = initial_state;
    path.horizon = horizon;

    int state = initial_state;
    double t = 0.0;
    for (;;) {
        // Total exit rate from the off-diagonal row; zero-rate states
        // (absorbing or isolated) hold forever.
        double total = 0.0;
        for (int v = 0; v < n; ++v)
            if (v != state) total += g.a(state, v);
        if (total <= 0.0) break;

        t += rng.exponential(total);
        if (t > horizon) break;

        const double u = rng.uniform() * total;
        double cum = 0.0;
        int next = -1;
        for (int v = 0; v < n; ++v) {
            if (v == state) continue;
            cum += g.a(state, v);
            if (u < cum) {
                next = v;
                break;
            }
        }
        if (next < 0) {  // u landed on the rounding tail; take the last positive cell
            for (int v = n - 1; v >= 0; --v)
                if (v != state && g.a(state, v) > 0.0) {
                    next = v;
                    break;
                }
        }
        path.jump_times.push_back(t);
        path.jump_states.push_back(next);
        state = next;
    }
    return path;
}

JointRatingPath simulate_path(const JointGenerator& g, int initial_state, double horizon,
                              std::uint64_t seed) {
    Rng rng(seed);
    return simulate_path(g, initial_state, horizon, rng);
}

StoppingTimes extract_stopping_times(const JointRatingPath& path, const TriggerLevels& triggers,
                                     double horizon) {
    const int k = path.k;
    if (triggers.k1 <= 1 || triggers.k1 > k || triggers.k2 <= 1 || triggers.k2 > k)
        throw ValidationError("trigger levels must satisfy 1 < K_i <= K");
    const int x1_0 = path.component_of(path.initial_state, 1);
    const int x2_0 = path.component_of(path.initial_state, 2);
    if (x1_0 >= triggers.k1 || x2_0 >= triggers.k2)
        throw ValidationError("initial ratings must be strictly better than the trigger levels");

    StoppingTimes st;
    st.path_id = path.path_id;
    for (size_t i = 0; i < path.jump_times.size(); ++i) {
        const double t = path.jump_times[i];
        const int s = path.jump_states[i];
        const int x1 = path.component_of(s, 1);
        const int x2 = path.component_of(s, 2);
        if (st.tau1 == kNever && x1 == k) st.tau1 = t;
        if (st.tau2 == kNever && x2 == k) st.tau2 = t;
        if (st.tau_hat_r1 == kNever && x1 >= triggers.k1 && x1 < k) st.tau_hat_r1 = t;
        if (st.tau_hat_r2 == kNever && x2 >= triggers.k2 && x2 < k) st.tau_hat_r2 = t;
        if (path.n_components >= 3 && st.tau3 == kNever && path.component_of(s, 3) == k) st.tau3 = t;
    }
    st.tau_r1 = std::min(st.tau_hat_r1, st.tau1);
    st.tau_r2 = std::min(st.tau_hat_r2, st.tau2);
    st.tau = std::min(st.tau1, st.tau2);
    st.tau_r = std::min(st.tau_r1, st.tau_r2);

    // Classification of the single transition that crossed the trigger.
    // Common jumps are one transition in the product chain, so simultaneity
    // is a state comparison, never a float coincidence test.
    if (st.tau_r <= horizon) {
        const bool d1 = (st.tau1 == st.tau_r);
        const bool d2 = (st.tau2 == st.tau_r);
        if (d1 && d2)
            st.classification = TriggerClass::BothDefault;
        else if (d1)
            st.classification = TriggerClass::CounterpartyDefault;
        else if (d2)
            st.classification = TriggerClass::InvestorDefault;
        else
            st.classification = TriggerClass::PureTrigger;
    }
    return st;
}

}  // namespace rtxva
