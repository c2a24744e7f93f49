#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "rtxva/rates.hpp"
#include "rtxva/rating.hpp"

namespace rtxva {

struct CleanPrice {
    double s = 0.0;        // ex-dividend mark-to-market
    double s_delta = 0.0;  // S + dividend atom at the evaluation time
};

struct IrsSpec {
    double notional = 1.0;
    double tenor = 10.0;                // years
    int freq = 4;                       // payments per year
    std::optional<double> fixed_rate;   // empty -> par at inception
    bool payer = true;                  // investor pays fixed, receives LIBOR
};

// Fixed-for-float swap priced off the affine Vasicek bond formula; the
// running period uses the LIBOR fixed at the previous reset, future periods
// use the forwards implied by the current short rate.
class IrsPricer {
public:
    IrsPricer(const IrsSpec& spec, const VasicekParams& params);

    const std::vector<double>& payment_dates() const { return dates_; }
    double fixed_rate() const { return fixed_rate_; }
    double tenor() const { return spec_.tenor; }

    CleanPrice value(const ShortRatePath& rates, double t) const;

private:
    IrsSpec spec_;
    VasicekParams params_;
    std::vector<double> dates_;  // T_1..T_n
    double delta_;
    double fixed_rate_;
};

struct CdsSpec {
    double notional = 1.0;
    double tenor = 10.0;                 // years
    std::optional<double> spread;        // empty -> par at inception
    double reference_recovery = 0.4;     // R_3
};

// Protection minus premium legs by deterministic quadrature: the reference
// default-time law comes from the marginal generator (spectral form of
// exp(G s)), the discount curve from the Vasicek affine bond at the path's
// current rate. Independence of the reference chain and the short rate
// factorizes the expectation.
class CdsPricer {
public:
    CdsPricer(const CdsSpec& spec, const GeneratorMatrix& ref_generator, const VasicekParams& params);

    double tenor() const { return spec_.tenor; }
    double spread() const { return spread_; }
    double recovery() const { return spec_.reference_recovery; }
    void set_spread(double kappa) { spread_ = kappa; }

    // Pre-default clean price, reference alive in category `ref_rating`.
    double clean_price(int ref_rating, double r_t, double t) const;

    // Protection and annuity legs separately (per unit notional, no spread).
    double protection_leg(int ref_rating, double r_t, double t) const;
    double risky_annuity(int ref_rating, double r_t, double t) const;

    // Survival probability of the reference over s years from `ref_rating`.
    double survival(int ref_rating, double s) const;

    // Full evaluation including the post-default branch and the protection
    // atom at tau3.
    CleanPrice value_at(int ref_rating, double tau3, double r_t, double t) const;

    // Spread that zeroes the clean price at t = 0 (bisection to 1e-12).
    double par_spread(int ref_rating, double r0) const;

    // Precompute quadrature caches for a fixed set of evaluation times; call
    // once before sharing the pricer across threads.
    void precompute_eval_times(const std::vector<double>& times);

private:
    struct QuadCache {
        std::vector<double> s;                             // nodes in [0, m]
        std::vector<double> w;                             // GL weights
        std::vector<double> ln_a;                          // Vasicek ln A(s)
        std::vector<double> b;                             // Vasicek B(s)
        std::vector<std::vector<std::complex<double>>> e;  // e[node][eig] = exp(d_c * s)
    };

    QuadCache build_cache(double m) const;
    const QuadCache* find_cache(double m) const;
    void legs(int ref_rating, double r_t, double m, double* protection, double* annuity) const;

    CdsSpec spec_;
    VasicekParams params_;
    int k_;
    double spread_ = 0.0;
    std::vector<std::complex<double>> eig_;                 // eigenvalues of G3
    std::vector<std::vector<std::complex<double>>> w_cdf_;  // [rating][eig]
    std::vector<std::vector<std::complex<double>>> w_pdf_;  // derivative weights
    std::map<double, QuadCache> caches_;
};

}  // namespace rtxva
