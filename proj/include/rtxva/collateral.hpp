#pragma once

#include <vector>

#include "rtxva/ctmc.hpp"

namespace rtxva {

enum class CollateralScheme {
    None,         // no margin agreement, C identically 0
    Linear,       // rho(x) = (K - x) / (K - 1)
    Exponential,  // rho(x) = e^{1-x} for x < K, 0 at default
    Custom,       // per-category table
};

struct CollateralSpec {
    CollateralScheme scheme = CollateralScheme::None;
    std::vector<double> rho1;  // per category 1..K, used when scheme == Custom
    std::vector<double> rho2;
    double mta = 0.0;            // theta, minimum transfer amount
    double ia_cpty = 0.0;        // beta_1 >= 0
    double ia_inv = 0.0;         // beta_2 <= 0
    double margin_period = 0.0;  // Delta, years
    std::vector<double> call_dates;
};

void validate_collateral(const CollateralSpec& spec, int k, double horizon);

// Collateral rate rho^i(category) in [0,1]; party is 1 (counterparty) or 2.
double collateral_rate(const CollateralSpec& spec, int category, int k, int party);

// One margin-call update: both transfer tests evaluated against the incoming
// collateral balance, as in the CSA covenant.
double margin_update(double prev_c, double s, double bank, int x1, int x2, const CollateralSpec& spec,
                     int k);

// Margin account trajectory: values[i] is the balance set at call_dates[i],
// in effect on (t_i, t_{i+1}]. The account starts at 0 and is evaluated with
// value_before(), which also realizes the freeze at tau^R: a read at tau^R
// only sees updates from call dates strictly before it.
struct CollateralLedger {
    const std::vector<double>* call_dates = nullptr;
    std::vector<double> values;
    std::uint64_t path_id = 0;

    double value_before(double t) const;
};

// Builds the ledger up to (excluding) `cutoff`. s_at_calls, bank_at_calls,
// x1/x2_at_calls must cover every call date < cutoff.
CollateralLedger build_ledger(const CollateralSpec& spec, int k, double cutoff,
                              const std::vector<double>& s_at_calls,
                              const std::vector<double>& bank_at_calls,
                              const std::vector<int>& x1_at_calls, const std::vector<int>& x2_at_calls);

// Close-out haircut under rehypothecation. c_tilde is the combined amount of
// the risky-dividend definition; c_tilde_1 / c_tilde_2 are the legs entering
// the CVA^{R,h} representation.
struct CloseoutSplit {
    double c_tilde = 0.0;
    double c_tilde_1 = 0.0;
    double c_tilde_2 = 0.0;
};

CloseoutSplit closeout_collateral(double c, TriggerClass classification, double rh1, double rh2);

}  // namespace rtxva
