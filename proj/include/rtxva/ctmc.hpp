#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "rtxva/copula.hpp"
#include "rtxva/rng.hpp"

namespace rtxva {

inline constexpr double kNever = std::numeric_limits<double>::infinity();

// Exact jump-chain trajectory of the product rating chain; no time
// discretization, so stopping times read off the jump list are exact.
struct JointRatingPath {
    int k = 0;
    int n_components = 0;
    int initial_state = 0;
    double horizon = 0.0;
    std::vector<double> jump_times;   // strictly increasing, in (0, horizon]
    std::vector<int> jump_states;    // product state entered at each jump
    std::uint64_t path_id = 0;

    int state_at(double t) const;  // right-continuous
    int component_at(double t, int c) const;
    int component_of(int state, int c) const {
        int div = 1;
        for (int j = n_components - c; j > 0; --j) div *= k;
        return (state / div) % k + 1;
    }
};

JointRatingPath simulate_path(const JointGenerator& g, int initial_state, double horizon, Rng& rng);
JointRatingPath simulate_path(const JointGenerator& g, int initial_state, double horizon,
                              std::uint64_t seed);

struct TriggerLevels {
    int k1 = 0;  // counterparty trigger category
    int k2 = 0;  // investor trigger category
};

enum class TriggerClass {
    None,                 // no trigger crossing before the horizon
    CounterpartyDefault,  // tau^R = tau_1 (and tau_1 < tau_2 or tau_2 > tau^R)
    InvestorDefault,      // tau^R = tau_2
    BothDefault,          // tau^R = tau_1 = tau_2, a common jump to default
    PureTrigger,          // tau^R = tau_hat^R, no default at the crossing
};

struct StoppingTimes {
    std::uint64_t path_id = 0;
    double tau1 = kNever, tau2 = kNever, tau3 = kNever;
    double tau_hat_r1 = kNever, tau_hat_r2 = kNever;  // non-default trigger times
    double tau_r1 = kNever, tau_r2 = kNever;          // tau_i^R = min(tau_hat_i^R, tau_i)
    double tau = kNever;                              // min(tau1, tau2)
    double tau_r = kNever;                            // min(tau_r1, tau_r2)
    TriggerClass classification = TriggerClass::None;
};

// First-passage scan over the jump list. Trigger levels are validated against
// 1 < K_i <= K and the path's initial ratings (X_0^i < K_i).
StoppingTimes extract_stopping_times(const JointRatingPath& path, const TriggerLevels& triggers,
                                     double horizon);

}  // namespace rtxva
