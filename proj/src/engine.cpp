#include "rtxva/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <thread>

#include "rtxva/errors.hpp"

namespace rtxva {

void validate_recovery(const RecoverySpec& rec) {
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(rec.r1) || !in_unit(rec.r2) || !in_unit(rec.rh1) || !in_unit(rec.rh2))
        throw ValidationError("recoveries must lie in [0,1]");
    if (rec.r1 > rec.rh1 || rec.r2 > rec.rh2)
        throw ValidationError("rehypothecation recoveries require R_i <= Rh_i");
}

PathTerms pathwise_cva_terms(const StoppingTimes& stops, const PathValuation& prices,
                             const CollateralLedger& ledger, const RecoverySpec& rec,
                             const ShortRatePath& bank, double horizon) {
    if (stops.path_id != ledger.path_id || stops.path_id != bank.path_id ||
        stops.path_id != prices.path_id())
        throw InconsistentPathSetError("stopping times, ledger, prices and bank account come from "
                                       "different paths");
    PathTerms terms;
    const double lgd1 = 1.0 - rec.r1;
    const double lgd2 = 1.0 - rec.r2;

    // Close-out at the first trigger time when it coincides with a default.
    const bool cpty_at_trigger = stops.classification == TriggerClass::CounterpartyDefault ||
                                 stops.classification == TriggerClass::BothDefault;
    const bool inv_at_trigger = stops.classification == TriggerClass::InvestorDefault ||
                                stops.classification == TriggerClass::BothDefault;
    if (stops.tau_r <= horizon && (cpty_at_trigger || inv_at_trigger)) {
        const double c = ledger.value_before(stops.tau_r);
        const CleanPrice cp = prices.at(stops.tau_r);
        const double disc = 1.0 / bank.bank_at(stops.tau_r);
        const CloseoutSplit split = closeout_collateral(c, stops.classification, rec.rh1, rec.rh2);
        const double gap = cp.s_delta - c;
        if (cpty_at_trigger) {
            terms.ucva_r = disc * lgd1 * std::max(gap, 0.0);
            terms.ucva_rh = disc * lgd1 * std::max(cp.s_delta - split.c_tilde_1, 0.0);
        }
        if (inv_at_trigger) {
            terms.dva_r = disc * lgd2 * std::max(-gap, 0.0);
            terms.dva_rh = disc * lgd2 * std::max(-(cp.s_delta - split.c_tilde_2), 0.0);
        }
    }

    // Defaults strictly after the first trigger crossing feed the RVA legs;
    // the collateral keeps updating to tau in the trigger-free contract, which
    // value_before() realizes by reading the same ledger at the later time.
    if (stops.tau <= horizon) {
        if (stops.tau1 == stops.tau && stops.tau_r < stops.tau1) {
            const CleanPrice cp = prices.at(stops.tau1);
            const double c = ledger.value_before(stops.tau1);
            const double disc = 1.0 / bank.bank_at(stops.tau1);
            terms.urva = disc * lgd1 * std::max(cp.s_delta - c, 0.0);
        }
        if (stops.tau2 == stops.tau && stops.tau_r < stops.tau2) {
            const CleanPrice cp = prices.at(stops.tau2);
            const double c = ledger.value_before(stops.tau2);
            const double disc = 1.0 / bank.bank_at(stops.tau2);
            terms.drva = disc * lgd2 * std::max(-(cp.s_delta - c), 0.0);
        }
    }
    return terms;
}

namespace {

// Pathwise quantity streams accumulated per grid cell.
enum Stream {
    kUcvaR = 0, kDvaR, kUrva, kDrva, kUcvaRh, kDvaRh,
    kUcva, kDva, kCva, kCvaR, kRva, kCvaRh, kRvaH, kUrvaH, kDrvaH,
    kNumStreams,
};

struct CellAccum {
    double sum[kNumStreams] = {};
    double sumsq[kNumStreams] = {};

    void add(const PathTerms& t) {
        double v[kNumStreams];
        v[kUcvaR] = t.ucva_r;
        v[kDvaR] = t.dva_r;
        v[kUrva] = t.urva;
        v[kDrva] = t.drva;
        v[kUcvaRh] = t.ucva_rh;
        v[kDvaRh] = t.dva_rh;
        v[kUcva] = t.ucva();
        v[kDva] = t.dva();
        v[kCva] = v[kUcva] - v[kDva];
        v[kCvaR] = t.ucva_r - t.dva_r;
        v[kRva] = t.urva - t.drva;
        v[kCvaRh] = t.ucva_rh - t.dva_rh;
        v[kRvaH] = v[kCva] - v[kCvaRh];
        v[kUrvaH] = t.ucva_r - t.ucva_rh;
        v[kDrvaH] = t.dva_rh - t.dva_r;
        for (int i = 0; i < kNumStreams; ++i) {
            sum[i] += v[i];
            sumsq[i] += v[i] * v[i];
        }
    }

    void merge(const CellAccum& other) {
        for (int i = 0; i < kNumStreams; ++i) {
            sum[i] += other.sum[i];
            sumsq[i] += other.sumsq[i];
        }
    }
};

Estimate to_estimate(const CellAccum& acc, int stream, long n) {
    Estimate e;
    e.value = acc.sum[stream] / n;
    if (n > 1) {
        const double var = std::max(0.0, (acc.sumsq[stream] - acc.sum[stream] * acc.sum[stream] / n) /
                                             (n - 1));
        e.se = std::sqrt(var / n);
    }
    return e;
}

class IrsPathValuation : public PathValuation {
public:
    IrsPathValuation(const IrsPricer& pricer, const ShortRatePath& rates)
        : pricer_(pricer), rates_(rates) {}
    CleanPrice at(double t) const override { return pricer_.value(rates_, t); }
    std::uint64_t path_id() const override { return rates_.path_id; }

private:
    const IrsPricer& pricer_;
    const ShortRatePath& rates_;
};

class CdsPathValuation : public PathValuation {
public:
    CdsPathValuation(const CdsPricer& pricer, const JointRatingPath& ratings,
                     const ShortRatePath& rates, double tau3)
        : pricer_(pricer), ratings_(ratings), rates_(rates), tau3_(tau3) {}
    CleanPrice at(double t) const override {
        const int x3 = t < tau3_ ? ratings_.component_at(t, 3) : ratings_.k;
        return pricer_.value_at(x3, tau3_, rates_.rate_at(t), t);
    }
    std::uint64_t path_id() const override { return rates_.path_id; }

private:
    const CdsPricer& pricer_;
    const JointRatingPath& ratings_;
    const ShortRatePath& rates_;
    double tau3_;
};

void validate_request(const GridRequest& req) {
    if (req.joint == nullptr) throw ValidationError("grid request needs a joint generator");
    if ((req.irs == nullptr) == (req.cds == nullptr))
        throw ValidationError("grid request needs exactly one instrument");
    if (req.n_paths <= 0)
        throw InsufficientPathsError("Monte Carlo needs a positive path count, got " +
                                     std::to_string(req.n_paths));
    if (req.horizon <= 0.0) throw ValidationError("horizon must be positive");
    if (req.schemes.empty() || req.triggers.empty())
        throw ValidationError("grid request needs at least one scheme and one trigger pair");
    validate_recovery(req.recovery);
    const int k = req.joint->k;
    const int x1_0 = req.joint->component(req.initial_state, 1);
    const int x2_0 = req.joint->component(req.initial_state, 2);
    for (const TriggerLevels& tl : req.triggers) {
        if (tl.k1 <= 1 || tl.k1 > k || tl.k2 <= 1 || tl.k2 > k)
            throw ValidationError("trigger levels must satisfy 1 < K_i <= K");
        if (x1_0 >= tl.k1 || x2_0 >= tl.k2)
            throw ValidationError("initial ratings must be strictly better than the trigger levels");
    }
    for (const CollateralSpec& spec : req.schemes) {
        validate_collateral(spec, k, req.horizon);
        if (spec.call_dates != req.schemes.front().call_dates)
            throw ValidationError("common random numbers require every scheme to share the margin "
                                  "call dates");
    }
    if (req.irs != nullptr && req.joint->n_components != 2)
        throw ValidationError("IRS scenarios use a bivariate rating chain");
    if (req.cds != nullptr && req.joint->n_components != 3)
        throw ValidationError("CDS scenarios use a trivariate rating chain");
}

struct PriceCache {
    // Tiny per-path memo of clean prices keyed by evaluation time.
    std::vector<std::pair<double, CleanPrice>> entries;

    const CleanPrice& get(const PathValuation& prices, double t) {
        for (const auto& e : entries)
            if (e.first == t) return e.second;
        entries.emplace_back(t, prices.at(t));
        return entries.back().second;
    }
};

// Wraps a PathValuation with the per-path memo so repeated trigger pairs do
// not re-run the quadrature.
class CachedValuation : public PathValuation {
public:
    CachedValuation(const PathValuation& inner, PriceCache& cache) : inner_(inner), cache_(cache) {}
    CleanPrice at(double t) const override { return cache_.get(inner_, t); }
    std::uint64_t path_id() const override { return inner_.path_id(); }

private:
    const PathValuation& inner_;
    PriceCache& cache_;
};

}  // namespace

std::vector<AdjustmentReport> estimate_grid(const GridRequest& req) {
    validate_request(req);
    const int k = req.joint->k;
    const size_t n_schemes = req.schemes.size();
    const size_t n_triggers = req.triggers.size();
    const size_t n_cells = n_schemes * n_triggers;
    const double horizon = req.horizon;

    const long block_size = 2048;
    const long n_blocks = (req.n_paths + block_size - 1) / block_size;
    std::vector<std::vector<CellAccum>> block_accums(static_cast<size_t>(n_blocks),
                                                     std::vector<CellAccum>(n_cells));

    // Ledger inputs are shared across schemes; only rho differs.
    const bool any_collateral =
        std::any_of(req.schemes.begin(), req.schemes.end(),
                    [](const CollateralSpec& s) { return s.scheme != CollateralScheme::None; });

    std::atomic<long> next_block{0};
    auto worker = [&]() {
        std::vector<double> s_at_calls, bank_at_calls;
        std::vector<int> x1_at_calls, x2_at_calls;
        for (;;) {
            const long blk = next_block.fetch_add(1);
            if (blk >= n_blocks) break;
            std::vector<CellAccum>& cells = block_accums[static_cast<size_t>(blk)];
            const long begin = blk * block_size;
            const long end = std::min(req.n_paths, begin + block_size);
            for (long p = begin; p < end; ++p) {
                Rng rating_rng = Rng::for_path(req.seed, static_cast<std::uint64_t>(p), 0);
                JointRatingPath ratings =
                    simulate_path(*req.joint, req.initial_state, horizon, rating_rng);
                ratings.path_id = static_cast<std::uint64_t>(p);

                // First default of the two contract parties; every loss leg
                // needs a default before maturity, so trigger-only or
                // default-free paths contribute zeros.
                double tau1 = kNever, tau2 = kNever, tau3 = kNever;
                for (size_t j = 0; j < ratings.jump_times.size(); ++j) {
                    const int s = ratings.jump_states[j];
                    if (tau1 == kNever && ratings.component_of(s, 1) == k) tau1 = ratings.jump_times[j];
                    if (tau2 == kNever && ratings.component_of(s, 2) == k) tau2 = ratings.jump_times[j];
                    if (ratings.n_components >= 3 && tau3 == kNever && ratings.component_of(s, 3) == k)
                        tau3 = ratings.jump_times[j];
                }
                const double tau = std::min(tau1, tau2);
                if (tau > horizon) continue;

                Rng rate_rng = Rng::for_path(req.seed, static_cast<std::uint64_t>(p), 1);
                ShortRatePath rates = simulate_rate_path(req.rates, req.rate_grid, rate_rng);
                rates.path_id = static_cast<std::uint64_t>(p);

                std::optional<IrsPathValuation> irs_val;
                std::optional<CdsPathValuation> cds_val;
                const PathValuation* base_val = nullptr;
                if (req.irs != nullptr) {
                    irs_val.emplace(*req.irs, rates);
                    base_val = &*irs_val;
                } else {
                    cds_val.emplace(*req.cds, ratings, rates, tau3);
                    base_val = &*cds_val;
                }
                PriceCache price_cache;
                CachedValuation prices(*base_val, price_cache);

                // Margin-call inputs up to the last call before tau; the
                // ledger values are trigger-independent, freezes happen at
                // read time.
                const std::vector<double>& calls = req.schemes.front().call_dates;
                size_t n_calls = 0;
                if (any_collateral) {
                    s_at_calls.clear();
                    bank_at_calls.clear();
                    x1_at_calls.clear();
                    x2_at_calls.clear();
                    size_t jump_idx = 0;
                    int state = ratings.initial_state;
                    for (double tc : calls) {
                        if (tc >= tau) break;
                        while (jump_idx < ratings.jump_times.size() &&
                               ratings.jump_times[jump_idx] <= tc)
                            state = ratings.jump_states[jump_idx++];
                        s_at_calls.push_back(prices.at(tc).s);
                        bank_at_calls.push_back(rates.bank_at(tc));
                        x1_at_calls.push_back(ratings.component_of(state, 1));
                        x2_at_calls.push_back(ratings.component_of(state, 2));
                        ++n_calls;
                    }
                }

                for (size_t sc = 0; sc < n_schemes; ++sc) {
                    CollateralLedger ledger =
                        build_ledger(req.schemes[sc], k, tau, s_at_calls, bank_at_calls, x1_at_calls,
                                     x2_at_calls);
                    ledger.path_id = static_cast<std::uint64_t>(p);
                    for (size_t tr = 0; tr < n_triggers; ++tr) {
                        const StoppingTimes stops =
                            extract_stopping_times(ratings, req.triggers[tr], horizon);
                        const PathTerms terms = pathwise_cva_terms(stops, prices, ledger,
                                                                   req.recovery, rates, horizon);
                        cells[sc * n_triggers + tr].add(terms);
                    }
                }
            }
        }
    };

    const int n_threads = std::max(1, req.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Ordered reduction over blocks keeps the sums bitwise independent of the
    // thread schedule.
    std::vector<CellAccum> totals(n_cells);
    for (long blk = 0; blk < n_blocks; ++blk)
        for (size_t c = 0; c < n_cells; ++c) totals[c].merge(block_accums[static_cast<size_t>(blk)][c]);

    std::vector<AdjustmentReport> reports;
    reports.reserve(n_cells);
    const long n = req.n_paths;
    for (size_t sc = 0; sc < n_schemes; ++sc) {
        for (size_t tr = 0; tr < n_triggers; ++tr) {
            const CellAccum& acc = totals[sc * n_triggers + tr];
            AdjustmentReport rep;
            rep.triggers = req.triggers[tr];
            rep.scheme = req.schemes[sc].scheme;
            rep.alpha = req.alpha;
            rep.n_paths = n;
            rep.seed = req.seed;
            rep.ucva_r = to_estimate(acc, kUcvaR, n);
            rep.dva_r = to_estimate(acc, kDvaR, n);
            rep.urva = to_estimate(acc, kUrva, n);
            rep.drva = to_estimate(acc, kDrva, n);
            rep.ucva_rh = to_estimate(acc, kUcvaRh, n);
            rep.dva_rh = to_estimate(acc, kDvaRh, n);
            rep.ucva = to_estimate(acc, kUcva, n);
            rep.dva = to_estimate(acc, kDva, n);
            // Derived values keep the decomposition identities exact.
            rep.cva = to_estimate(acc, kCva, n);
            rep.cva.value = rep.ucva.value - rep.dva.value;
            rep.cva_r = to_estimate(acc, kCvaR, n);
            rep.cva_r.value = rep.ucva_r.value - rep.dva_r.value;
            rep.rva = to_estimate(acc, kRva, n);
            rep.rva.value = rep.urva.value - rep.drva.value;
            rep.cva_rh = to_estimate(acc, kCvaRh, n);
            rep.cva_rh.value = rep.ucva_rh.value - rep.dva_rh.value;
            rep.rva_h = to_estimate(acc, kRvaH, n);
            rep.rva_h.value = rep.cva.value - rep.cva_rh.value;
            rep.urva_h = to_estimate(acc, kUrvaH, n);
            rep.urva_h.value = rep.ucva_r.value - rep.ucva_rh.value;
            rep.drva_h = to_estimate(acc, kDrvaH, n);
            rep.drva_h.value = rep.dva_rh.value - rep.dva_r.value;
            rep.mitigation_pct = std::abs(rep.cva.value) > 0.0
                                     ? (std::abs(rep.cva.value) - std::abs(rep.cva_r.value)) /
                                           std::abs(rep.cva.value) * 100.0
                                     : 0.0;

            // Identity suite, hard assertions on every run.
            const double scale = std::max({1e-6, std::abs(rep.cva.value), std::abs(rep.cva_r.value)});
            if (std::abs((rep.cva.value - rep.cva_r.value) - rep.rva.value) > 1e-12 * scale)
                throw NumericError("identity RVA = CVA - CVA^R violated beyond rounding");
            if (std::abs((rep.ucva.value - rep.ucva_r.value) - rep.urva.value) > 1e-12 * scale)
                throw NumericError("identity URVA = UCVA - UCVA^R violated beyond rounding");
            if (std::abs((rep.dva.value - rep.dva_r.value) - rep.drva.value) > 1e-12 * scale)
                throw NumericError("identity DRVA = DVA - DVA^R violated beyond rounding");
            if (req.triggers[tr].k1 == k && req.triggers[tr].k2 == k) {
                if (acc.sum[kUrva] != 0.0 || acc.sum[kDrva] != 0.0 ||
                    acc.sum[kUcva] != acc.sum[kUcvaR] || acc.sum[kDva] != acc.sum[kDvaR])
                    throw NumericError("triggers at default level must reproduce the no-trigger "
                                       "adjustments pathwise");
            }
            if (req.recovery.rh1 == 1.0 && req.recovery.rh2 == 1.0) {
                if (acc.sum[kUcvaRh] != acc.sum[kUcvaR] || acc.sum[kDvaRh] != acc.sum[kDvaR])
                    throw NumericError("full rehypothecation recovery must reproduce CVA^R pathwise");
            }
            reports.push_back(rep);
        }
    }
    return reports;
}

AdjustmentReport estimate_adjustments(const GridRequest& request, const CollateralSpec& scheme,
                                      const TriggerLevels& triggers) {
    GridRequest single = request;
    single.schemes = {scheme};
    single.triggers = {triggers};
    return estimate_grid(single).front();
}

std::vector<MitigationCell> mitigation_table(const std::vector<AdjustmentReport>& reports, int k) {
    const AdjustmentReport* baseline = nullptr;
    for (const auto& rep : reports)
        if (rep.triggers.k1 == k && rep.triggers.k2 == k) baseline = &rep;
    if (baseline == nullptr)
        throw MissingBaselineError("mitigation table needs the (D, D) no-trigger baseline");
    const double base = std::abs(baseline->cva_r.value);
    if (base <= 0.0) throw MissingBaselineError("baseline |CVA^R| vanishes; mitigation undefined");

    std::vector<MitigationCell> cells;
    cells.reserve(reports.size());
    for (const auto& rep : reports)
        cells.push_back(MitigationCell{rep.triggers, (base - std::abs(rep.cva_r.value)) / base * 100.0});
    return cells;
}

}  // namespace rtxva
