#include "rtxva/instruments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "rtxva/errors.hpp"

namespace rtxva {

namespace {

constexpr double kDateTol = 1e-12;

double vasicek_b(double a, double s) { return (1.0 - std::exp(-a * s)) / a; }

double vasicek_ln_a(const VasicekParams& p, double s) {
    const double a = p.alpha_mr;
    const double b = p.long_run_mean();
    const double big_b = vasicek_b(a, s);
    const double sig2 = p.sigma * p.sigma;
    return (b - sig2 / (2.0 * a * a)) * (big_b - s) - sig2 * big_b * big_b / (4.0 * a);
}

// Gauss-Legendre nodes/weights on [-1, 1], Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double xi = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = xi;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
            const double dx = p1 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x[i] = xi;
        w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
}

const int kGlOrder = 8;
const int kPanelsPerYear = 12;

}  // namespace

IrsPricer::IrsPricer(const IrsSpec& spec, const VasicekParams& params) : spec_(spec), params_(params) {
    validate_vasicek(params_);
    if (spec_.tenor <= 0.0) throw ValidationError("IRS tenor must be positive");
    if (spec_.freq < 1) throw ValidationError("IRS frequency must be at least 1 per year");
    const double n_exact = spec_.tenor * spec_.freq;
    const int n = static_cast<int>(std::lround(n_exact));
    if (std::abs(n_exact - n) > 1e-9)
        throw ValidationError("IRS tenor times frequency must be an integral number of periods");
    delta_ = 1.0 / spec_.freq;
    dates_.resize(n);
    for (int i = 0; i < n; ++i) dates_[i] = delta_ * (i + 1);
    fixed_rate_ = spec_.fixed_rate ? *spec_.fixed_rate : par_swap_rate(params_, spec_.tenor, spec_.freq);
    if (fixed_rate_ < 0.0) throw ValidationError("IRS fixed rate must be nonnegative");
}

CleanPrice IrsPricer::value(const ShortRatePath& rates, double t) const {
    const double T = spec_.tenor;
    if (t > T + kDateTol) throw EvalAfterMaturityError("IRS evaluated at " + std::to_string(t) +
                                                       " after maturity " + std::to_string(T));
    const double sign = spec_.payer ? 1.0 : -1.0;
    const int n = static_cast<int>(dates_.size());

    // Dividend atom if t falls exactly on a payment date.
    double atom = 0.0;
    {
        const int m = static_cast<int>(std::lround(t / delta_));
        if (m >= 1 && m <= n && std::abs(t - dates_[m - 1]) <= kDateTol) {
            const double reset = dates_[m - 1] - delta_;
            const double libor = libor_fixing(params_, rates.rate_at(reset), reset, dates_[m - 1]);
            atom = spec_.notional * sign * (libor - fixed_rate_) * delta_;
        }
    }

    // First payment date strictly after t.
    int j = static_cast<int>(std::upper_bound(dates_.begin(), dates_.end(), t + kDateTol) - dates_.begin());
    if (j >= n) {
        // At (or within tolerance of) maturity the swap is ex-dividend zero.
        return CleanPrice{0.0, atom};
    }
    const double t_next = dates_[j];
    const double reset = t_next - delta_;
    const double r_t = rates.rate_at(t);
    const double libor = libor_fixing(params_, rates.rate_at(reset), reset, t_next);

    const double p_next = bond_price(params_, r_t, t, t_next);
    const double p_last = bond_price(params_, r_t, t, dates_[n - 1]);
    double annuity = delta_ * p_next;
    for (int kk = j + 1; kk < n; ++kk) annuity += delta_ * bond_price(params_, r_t, t, dates_[kk]);

    const double float_leg = delta_ * libor * p_next + p_next - p_last;
    const double fixed_leg = fixed_rate_ * annuity;
    const double s = spec_.notional * sign * (float_leg - fixed_leg);
    return CleanPrice{s, s + atom};
}

CdsPricer::CdsPricer(const CdsSpec& spec, const GeneratorMatrix& ref_generator,
                     const VasicekParams& params)
    : spec_(spec), params_(params), k_(ref_generator.dim()) {
    validate_vasicek(params_);
    if (spec_.tenor <= 0.0) throw ValidationError("CDS tenor must be positive");
    if (spec_.reference_recovery < 0.0 || spec_.reference_recovery > 1.0)
        throw ValidationError("reference recovery must lie in [0,1]");
    if (spec_.spread && *spec_.spread < 0.0) throw ValidationError("CDS spread must be nonnegative");
    validate_generator(ref_generator.a);
    spread_ = spec_.spread.value_or(0.0);

    Eigen::EigenSolver<Eigen::MatrixXd> es(ref_generator.a);
    if (es.info() != Eigen::Success) throw NumericError("eigendecomposition of the reference generator failed");
    const Eigen::MatrixXcd v = es.eigenvectors();
    const Eigen::VectorXcd d = es.eigenvalues();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(v);
    if (!lu.isInvertible())
        throw NumericError("reference generator is defective; spectral CDS pricer unavailable");
    const Eigen::MatrixXcd v_inv = lu.inverse();
    const double recon =
        (v * d.asDiagonal() * v_inv - ref_generator.a.cast<std::complex<double>>()).cwiseAbs().maxCoeff();
    if (recon > 1e-8 * std::max(1.0, ref_generator.a.cwiseAbs().maxCoeff()))
        throw NumericError("reference generator eigendecomposition inaccurate (error " +
                           std::to_string(recon) + ")");

    eig_.resize(k_);
    for (int c = 0; c < k_; ++c) eig_[c] = d(c);
    w_cdf_.assign(k_, std::vector<std::complex<double>>(k_));
    w_pdf_.assign(k_, std::vector<std::complex<double>>(k_));
    for (int x = 0; x < k_; ++x) {
        for (int c = 0; c < k_; ++c) {
            const std::complex<double> weight = v(x, c) * v_inv(c, k_ - 1);
            w_cdf_[x][c] = weight;          // [exp(G s)]_{x,K}
            w_pdf_[x][c] = weight * d(c);   // d/ds of the above
        }
    }
}

CdsPricer::QuadCache CdsPricer::build_cache(double m) const {
    // Thread-safe one-time init (magic static).
    static const auto gl = [] {
        std::pair<std::vector<double>, std::vector<double>> nodes;
        gauss_legendre(kGlOrder, nodes.first, nodes.second);
        return nodes;
    }();
    const std::vector<double>& gl_x = gl.first;
    const std::vector<double>& gl_w = gl.second;

    QuadCache cache;
    if (m <= 0.0) return cache;
    const int panels = std::max(1, static_cast<int>(std::ceil(m * kPanelsPerYear)));
    cache.s.reserve(panels * kGlOrder);
    cache.w.reserve(panels * kGlOrder);
    for (int p = 0; p < panels; ++p) {
        const double lo = m * p / panels;
        const double hi = m * (p + 1) / panels;
        const double half = 0.5 * (hi - lo);
        const double mid = 0.5 * (hi + lo);
        for (int i = 0; i < kGlOrder; ++i) {
            cache.s.push_back(mid + half * gl_x[i]);
            cache.w.push_back(half * gl_w[i]);
        }
    }
    const size_t nn = cache.s.size();
    cache.ln_a.resize(nn);
    cache.b.resize(nn);
    cache.e.resize(nn);
    for (size_t i = 0; i < nn; ++i) {
        cache.ln_a[i] = vasicek_ln_a(params_, cache.s[i]);
        cache.b[i] = vasicek_b(params_.alpha_mr, cache.s[i]);
        cache.e[i].resize(k_);
        for (int c = 0; c < k_; ++c) cache.e[i][c] = std::exp(eig_[c] * cache.s[i]);
    }
    return cache;
}

const CdsPricer::QuadCache* CdsPricer::find_cache(double m) const {
    const auto it = caches_.find(m);
    return it == caches_.end() ? nullptr : &it->second;
}

void CdsPricer::precompute_eval_times(const std::vector<double>& times) {
    for (double t : times) {
        const double m = spec_.tenor - t;
        if (m > 0.0 && caches_.find(m) == caches_.end()) caches_.emplace(m, build_cache(m));
    }
}

void CdsPricer::legs(int ref_rating, double r_t, double m, double* protection, double* annuity) const {
    *protection = 0.0;
    *annuity = 0.0;
    if (m <= 0.0) return;
    if (ref_rating < 1 || ref_rating >= k_)
        throw ValidationError("CDS clean price needs a live reference rating (1.." + std::to_string(k_ - 1) +
                              "), got " + std::to_string(ref_rating));
    const QuadCache* cache = find_cache(m);
    QuadCache local;
    if (cache == nullptr) {
        local = build_cache(m);
        cache = &local;
    }
    const auto& w_cdf = w_cdf_[ref_rating - 1];
    const auto& w_pdf = w_pdf_[ref_rating - 1];
    double prot = 0.0, ann = 0.0;
    for (size_t i = 0; i < cache->s.size(); ++i) {
        const double disc = std::exp(cache->ln_a[i] - cache->b[i] * r_t);
        std::complex<double> cdf(0.0, 0.0), pdf(0.0, 0.0);
        for (int c = 0; c < k_; ++c) {
            cdf += w_cdf[c] * cache->e[i][c];
            pdf += w_pdf[c] * cache->e[i][c];
        }
        prot += cache->w[i] * disc * pdf.real();
        ann += cache->w[i] * disc * (1.0 - cdf.real());
    }
    *protection = (1.0 - spec_.reference_recovery) * prot * spec_.notional;
    *annuity = ann * spec_.notional;
}

double CdsPricer::protection_leg(int ref_rating, double r_t, double t) const {
    double prot, ann;
    legs(ref_rating, r_t, spec_.tenor - t, &prot, &ann);
    return prot;
}

double CdsPricer::risky_annuity(int ref_rating, double r_t, double t) const {
    double prot, ann;
    legs(ref_rating, r_t, spec_.tenor - t, &prot, &ann);
    return ann;
}

double CdsPricer::survival(int ref_rating, double s) const {
    if (ref_rating < 1 || ref_rating > k_) throw ValidationError("rating out of range");
    if (s <= 0.0) return ref_rating == k_ ? 0.0 : 1.0;
    std::complex<double> cdf(0.0, 0.0);
    for (int c = 0; c < k_; ++c) cdf += w_cdf_[ref_rating - 1][c] * std::exp(eig_[c] * s);
    return 1.0 - cdf.real();
}

double CdsPricer::clean_price(int ref_rating, double r_t, double t) const {
    if (t > spec_.tenor + kDateTol)
        throw EvalAfterMaturityError("CDS evaluated at " + std::to_string(t) + " after maturity " +
                                     std::to_string(spec_.tenor));
    double prot, ann;
    legs(ref_rating, r_t, spec_.tenor - t, &prot, &ann);
    return prot - spread_ * ann;
}

CleanPrice CdsPricer::value_at(int ref_rating, double tau3, double r_t, double t) const {
    if (t > spec_.tenor + kDateTol)
        throw EvalAfterMaturityError("CDS evaluated at " + std::to_string(t) + " after maturity " +
                                     std::to_string(spec_.tenor));
    if (t >= tau3) {
        // Protection settles at tau3; afterwards the contract carries no value.
        const double atom =
            (std::abs(t - tau3) <= kDateTol) ? (1.0 - spec_.reference_recovery) * spec_.notional : 0.0;
        return CleanPrice{0.0, atom};
    }
    const double s = clean_price(ref_rating, r_t, t);
    return CleanPrice{s, s};
}

double CdsPricer::par_spread(int ref_rating, double r0) const {
    double prot, ann;
    legs(ref_rating, r0, spec_.tenor, &prot, &ann);
    if (prot <= 1e-300) return 0.0;  // zero-hazard or full-recovery reference
    if (ann <= 1e-300) throw NoRootError("risky annuity vanishes; no par spread exists");

    double lo = 0.0, hi = 1.0;
    auto price = [&](double kappa) { return prot - kappa * ann; };
    while (price(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw NoRootError("par spread bracketing failed");
    }
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (price(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace rtxva
