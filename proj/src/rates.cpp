#include "rtxva/rates.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rtxva/errors.hpp"

namespace rtxva {

void validate_vasicek(const VasicekParams& p) {
    if (!(p.sigma >= 0.0)) throw ValidationError("sigma must be nonnegative");
    if (!(p.alpha_mr > 0.0)) throw ValidationError("mean-reversion speed must be positive");
    if (!std::isfinite(p.r0) || !std::isfinite(p.theta)) throw ValidationError("non-finite rate parameter");
}

size_t ShortRatePath::segment(double time) const {
    // Index i with t[i] <= time < t[i+1]; clamps outside the grid.
    const auto it = std::upper_bound(t.begin(), t.end(), time);
    if (it == t.begin()) return 0;
    size_t i = static_cast<size_t>(it - t.begin()) - 1;
    if (i + 1 >= t.size()) i = t.size() - 2;
    return i;
}

double ShortRatePath::rate_at(double time) const {
    if (time <= t.front()) return r.front();
    if (time >= t.back()) return r.back();
    const size_t i = segment(time);
    const double w = (time - t[i]) / (t[i + 1] - t[i]);
    return r[i] + w * (r[i + 1] - r[i]);
}

double ShortRatePath::log_bank_at(double time) const {
    if (time <= t.front()) return log_bank.front();
    if (time >= t.back()) return log_bank.back();
    const size_t i = segment(time);
    const double w = (time - t[i]) / (t[i + 1] - t[i]);
    return log_bank[i] + w * (log_bank[i + 1] - log_bank[i]);
}

double ShortRatePath::bank_at(double time) const { return std::exp(log_bank_at(time)); }

std::vector<double> build_time_grid(double horizon, const std::vector<double>& extra, double max_step) {
    if (horizon <= 0.0) throw ValidationError("grid horizon must be positive");
    std::vector<double> grid;
    const int n = static_cast<int>(std::ceil(horizon / max_step));
    grid.reserve(static_cast<size_t>(n) + extra.size() + 2);
    for (int i = 0; i <= n; ++i) grid.push_back(horizon * i / n);
    for (double d : extra)
        if (d >= 0.0 && d <= horizon) grid.push_back(d);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               grid.end());
    return grid;
}

ShortRatePath simulate_rate_path(const VasicekParams& p, const std::vector<double>& grid, Rng& rng) {
    validate_vasicek(p);
    if (grid.size() < 2 || grid.front() != 0.0) throw ValidationError("rate grid must start at 0");

    const double b = p.long_run_mean();
    const double a = p.alpha_mr;

    ShortRatePath path;
    path.t = grid;
    path.r.resize(grid.size());
    path.log_bank.resize(grid.size());
    path.r[0] = p.r0;
    path.log_bank[0] = 0.0;
    for (size_t i = 1; i < grid.size(); ++i) {
        const double dt = grid[i] - grid[i - 1];
        const double decay = std::exp(-a * dt);
        const double mean = b + (path.r[i - 1] - b) * decay;
        const double var = p.sigma * p.sigma * (1.0 - decay * decay) / (2.0 * a);
        path.r[i] = mean + std::sqrt(var) * rng.normal();
        path.log_bank[i] = path.log_bank[i - 1] + 0.5 * (path.r[i - 1] + path.r[i]) * dt;
    }
    return path;
}

ShortRatePath simulate_rate_path(const VasicekParams& p, const std::vector<double>& grid,
                                 std::uint64_t seed) {
    Rng rng(seed);
    return simulate_rate_path(p, grid, rng);
}

double bond_price(const VasicekParams& p, double r_t, double t, double T) {
    if (T < t) throw ValidationError("bond maturity before evaluation time");
    const double a = p.alpha_mr;
    const double b = p.long_run_mean();
    const double tau = T - t;
    const double B = (1.0 - std::exp(-a * tau)) / a;
    const double sig2 = p.sigma * p.sigma;
    const double lnA = (b - sig2 / (2.0 * a * a)) * (B - tau) - sig2 * B * B / (4.0 * a);
    return std::exp(lnA - B * r_t);
}

double libor_fixing(const VasicekParams& p, double r_at_prev, double t_prev, double t_next) {
    if (t_next <= t_prev) throw ValidationError("LIBOR accrual period must have positive length");
    const double delta = t_next - t_prev;
    return (1.0 / bond_price(p, r_at_prev, t_prev, t_next) - 1.0) / delta;
}

double par_swap_rate(const VasicekParams& p, double tenor, int payments_per_year) {
    if (tenor <= 0.0) throw ValidationError("swap tenor must be positive");
    if (payments_per_year < 1) throw ValidationError("payment frequency must be at least 1 per year");
    const int n = static_cast<int>(std::lround(tenor * payments_per_year));
    const double delta = 1.0 / payments_per_year;
    double annuity = 0.0;
    double p_last = 1.0;
    for (int kk = 1; kk <= n; ++kk) {
        p_last = bond_price(p, p.r0, 0.0, delta * kk);
        annuity += delta * p_last;
    }
    return (1.0 - p_last) / annuity;
}

}  // namespace rtxva
