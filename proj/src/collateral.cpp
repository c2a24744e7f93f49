#include "rtxva/collateral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rtxva/errors.hpp"

namespace rtxva {

void validate_collateral(const CollateralSpec& spec, int k, double horizon) {
    if (spec.mta < 0.0) throw ValidationError("minimum transfer amount must be nonnegative");
    if (spec.margin_period < 0.0) throw ValidationError("margin period of risk must be nonnegative");
    if (spec.ia_cpty < 0.0) throw ValidationError("counterparty independent amount must be nonnegative");
    if (spec.ia_inv > 0.0) throw ValidationError("investor independent amount must be nonpositive");
    if (spec.scheme == CollateralScheme::Custom) {
        if (static_cast<int>(spec.rho1.size()) != k || static_cast<int>(spec.rho2.size()) != k)
            throw ValidationError("custom collateral tables need one rate per category");
        for (double r : spec.rho1)
            if (r < 0.0 || r > 1.0) throw ValidationError("collateral rates must lie in [0,1]");
        for (double r : spec.rho2)
            if (r < 0.0 || r > 1.0) throw ValidationError("collateral rates must lie in [0,1]");
    }
    double prev = 0.0;
    for (double t : spec.call_dates) {
        if (t <= 0.0 || t >= horizon)
            throw ValidationError("margin call dates must lie strictly inside (0, T)");
        if (t <= prev) throw ValidationError("margin call dates must be strictly increasing");
        prev = t;
    }
}

double collateral_rate(const CollateralSpec& spec, int category, int k, int party) {
    if (category < 1 || category > k)
        throw ValidationError("category " + std::to_string(category) + " outside 1.." + std::to_string(k));
    switch (spec.scheme) {
        case CollateralScheme::None:
            return 0.0;
        case CollateralScheme::Linear:
            return static_cast<double>(k - category) / (k - 1);
        case CollateralScheme::Exponential:
            return category < k ? std::exp(1.0 - category) : 0.0;
        case CollateralScheme::Custom:
            return (party == 1 ? spec.rho1 : spec.rho2)[category - 1];
    }
    return 0.0;
}

double margin_update(double prev_c, double s, double bank, int x1, int x2, const CollateralSpec& spec,
                     int k) {
    const double gamma1 = collateral_rate(spec, x1, k, 1) * s;
    const double gamma2 = collateral_rate(spec, x2, k, 2) * s;
    const double ia = spec.ia_cpty - spec.ia_inv;  // beta_1 - beta_2
    double c = prev_c;
    const double post = s + bank * ia - gamma1 - prev_c;
    if (post > spec.mta) c += post;
    const double call_back = s - bank * ia - gamma2 - prev_c;
    if (call_back < -spec.mta) c += call_back;
    return c;
}

double CollateralLedger::value_before(double t) const {
    if (call_dates == nullptr || values.empty()) return 0.0;
    // Balance in effect at t: set at the last call date strictly before t.
    const auto it = std::lower_bound(call_dates->begin(), call_dates->end(), t);
    const size_t n_before = static_cast<size_t>(it - call_dates->begin());
    const size_t usable = std::min(n_before, values.size());
    return usable == 0 ? 0.0 : values[usable - 1];
}

CollateralLedger build_ledger(const CollateralSpec& spec, int k, double cutoff,
                              const std::vector<double>& s_at_calls,
                              const std::vector<double>& bank_at_calls,
                              const std::vector<int>& x1_at_calls, const std::vector<int>& x2_at_calls) {
    CollateralLedger ledger;
    ledger.call_dates = &spec.call_dates;
    if (spec.scheme == CollateralScheme::None) return ledger;  // C identically 0

    double c = 0.0;
    for (size_t i = 0; i < spec.call_dates.size(); ++i) {
        const double t = spec.call_dates[i];
        if (t >= cutoff) break;
        if (i >= s_at_calls.size() || i >= bank_at_calls.size() || i >= x1_at_calls.size() ||
            i >= x2_at_calls.size())
            throw ValidationError("ledger inputs shorter than the call dates before the cutoff");
        c = margin_update(c, s_at_calls[i], bank_at_calls[i], x1_at_calls[i], x2_at_calls[i], spec, k);
        ledger.values.push_back(c);
    }
    return ledger;
}

CloseoutSplit closeout_collateral(double c, TriggerClass classification, double rh1, double rh2) {
    CloseoutSplit out;
    const double pos = c > 0.0 ? c : 0.0;
    const double nonpos = c <= 0.0 ? c : 0.0;
    switch (classification) {
        case TriggerClass::CounterpartyDefault:
            out.c_tilde = rh1 * pos + nonpos;
            out.c_tilde_1 = out.c_tilde;
            out.c_tilde_2 = 0.0;
            break;
        case TriggerClass::InvestorDefault:
            out.c_tilde = pos + rh2 * nonpos;
            out.c_tilde_1 = 0.0;
            out.c_tilde_2 = out.c_tilde;
            break;
        case TriggerClass::BothDefault:
            out.c_tilde = rh1 * pos + rh2 * nonpos;
            out.c_tilde_1 = out.c_tilde;
            out.c_tilde_2 = out.c_tilde;
            break;
        case TriggerClass::PureTrigger:
        case TriggerClass::None:
            out.c_tilde = c;
            out.c_tilde_1 = 0.0;
            out.c_tilde_2 = 0.0;
            break;
    }
    return out;
}

}  // namespace rtxva
