#pragma once

#include <cstdint>
#include <vector>

#include "rtxva/rng.hpp"

namespace rtxva {

// Short-rate dynamics dr = (theta - alpha_mr * r) dt + sigma dW, so the
// long-run level is theta / alpha_mr.
struct VasicekParams {
    double r0 = 0.0;
    double theta = 0.0;     // drift level, 1/yr^2 units
    double alpha_mr = 0.0;  // mean-reversion speed, 1/yr
    double sigma = 0.0;     // volatility, 1/yr^(3/2)

    double long_run_mean() const { return theta / alpha_mr; }
};

void validate_vasicek(const VasicekParams& p);

// Rate trajectory on a fixed grid with the running integral of r (log of the
// bank account) accumulated by trapezoid. Values between grid points are
// linear in r and in log B, i.e. log-linear in B.
struct ShortRatePath {
    std::vector<double> t;
    std::vector<double> r;
    std::vector<double> log_bank;  // log B_t = int_0^t r ds
    std::uint64_t path_id = 0;

    double rate_at(double time) const;
    double log_bank_at(double time) const;
    double bank_at(double time) const;

private:
    size_t segment(double time) const;
};

// Union of [0, horizon] refined to at most `max_step`, plus every date in
// `extra`; sorted, deduplicated.
std::vector<double> build_time_grid(double horizon, const std::vector<double>& extra,
                                    double max_step = 1.0 / 48.0);

// Exact Ornstein-Uhlenbeck transition between grid points.
ShortRatePath simulate_rate_path(const VasicekParams& p, const std::vector<double>& grid, Rng& rng);
ShortRatePath simulate_rate_path(const VasicekParams& p, const std::vector<double>& grid,
                                 std::uint64_t seed);

// Affine zero-coupon bond price P(t, T) given r_t.
double bond_price(const VasicekParams& p, double r_t, double t, double T);

// Simple LIBOR fixed at t_prev for [t_prev, t_next], L = (1/P - 1)/delta.
double libor_fixing(const VasicekParams& p, double r_at_prev, double t_prev, double t_next);

// Fixed rate that zeroes the spot-starting swap: (P(0,T0)-P(0,Tn)) / annuity.
double par_swap_rate(const VasicekParams& p, double tenor, int payments_per_year);

}  // namespace rtxva
