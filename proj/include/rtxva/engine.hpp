#pragma once

#include <cstdint>
#include <vector>

#include "rtxva/collateral.hpp"
#include "rtxva/copula.hpp"
#include "rtxva/ctmc.hpp"
#include "rtxva/instruments.hpp"
#include "rtxva/rates.hpp"

namespace rtxva {

struct RecoverySpec {
    double r1 = 0.4;
    double r2 = 0.4;
    double rh1 = 1.0;  // rehypothecation recoveries, R_i <= Rh_i
    double rh2 = 1.0;
};

void validate_recovery(const RecoverySpec& rec);

struct Estimate {
    double value = 0.0;
    double se = 0.0;
};

struct AdjustmentReport {
    TriggerLevels triggers;
    CollateralScheme scheme = CollateralScheme::None;
    double alpha = 0.0;
    long n_paths = 0;
    std::uint64_t seed = 0;

    Estimate ucva, dva, cva;          // trigger-free adjustments
    Estimate ucva_r, dva_r, cva_r;    // with rating triggers
    Estimate urva, drva, rva;         // rating valuation adjustment legs
    Estimate ucva_rh, dva_rh, cva_rh; // rating triggers + rehypothecation
    Estimate urva_h, drva_h, rva_h;
    double mitigation_pct = 0.0;      // (|CVA| - |CVA^R|) / |CVA| * 100
};

// Per-path clean-price surface, evaluable at stopping times and call dates.
class PathValuation {
public:
    virtual ~PathValuation() = default;
    virtual CleanPrice at(double t) const = 0;
    virtual std::uint64_t path_id() const = 0;
};

// Discounted close-out loss legs of one path, from the representation
// formulas. ucva/dva recombine exactly as ucva_r + urva / dva_r + drva
// because the defining events partition.
struct PathTerms {
    double ucva_r = 0.0, dva_r = 0.0;
    double urva = 0.0, drva = 0.0;
    double ucva_rh = 0.0, dva_rh = 0.0;

    double ucva() const { return ucva_r + urva; }
    double dva() const { return dva_r + drva; }
};

PathTerms pathwise_cva_terms(const StoppingTimes& stops, const PathValuation& prices,
                             const CollateralLedger& ledger, const RecoverySpec& rec,
                             const ShortRatePath& bank, double horizon);

// One Monte Carlo experiment: a joint rating generator (copula + measure
// change already applied), one instrument, and a (scheme x trigger-pair)
// grid evaluated on common random numbers.
struct GridRequest {
    const JointGenerator* joint = nullptr;
    int initial_state = 0;
    double horizon = 0.0;
    const IrsPricer* irs = nullptr;  // exactly one of irs/cds set
    const CdsPricer* cds = nullptr;
    std::vector<double> rate_grid;
    VasicekParams rates;
    std::vector<CollateralSpec> schemes;
    std::vector<TriggerLevels> triggers;
    RecoverySpec recovery;
    long n_paths = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    double alpha = 0.0;  // provenance only
};

// Reports in row-major (scheme-major, trigger-minor) order. Deterministic:
// fixed block partition with an ordered reduction, so results are bitwise
// identical for a given seed regardless of the thread count.
std::vector<AdjustmentReport> estimate_grid(const GridRequest& request);

AdjustmentReport estimate_adjustments(const GridRequest& request, const CollateralSpec& scheme,
                                      const TriggerLevels& triggers);

// Mitigation percentages against the (D, D) no-trigger baseline:
// (|CVA^R(D,D)| - |CVA^R(K1,K2)|) / |CVA^R(D,D)| * 100.
struct MitigationCell {
    TriggerLevels triggers;
    double pct = 0.0;
};

std::vector<MitigationCell> mitigation_table(const std::vector<AdjustmentReport>& reports, int k);

}  // namespace rtxva
