#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rtxva/engine.hpp"

namespace rtxva {

// A full experiment description: rating model, copula grid, instrument,
// rate model, collateralization menu, recoveries and Monte Carlo controls.
struct Scenario {
    RatingScale scale{4};
    TransitionMatrix p1, p2;
    std::optional<TransitionMatrix> p3;
    int x1_0 = 1, x2_0 = 1, x3_0 = 1;

    std::vector<double> alphas{0.0};
    MeasureChangeSpec measure;
    std::vector<TriggerLevels> triggers;

    enum class Instrument { Irs, Cds };
    Instrument instrument = Instrument::Irs;
    IrsSpec irs;
    CdsSpec cds;

    VasicekParams rates;

    std::vector<CollateralScheme> schemes{CollateralScheme::None};
    int call_freq = 0;  // 0 -> instrument default (quarterly IRS, monthly CDS)
    double mta = 0.0, ia_cpty = 0.0, ia_inv = 0.0, margin_period = 0.0;
    std::vector<double> rho1, rho2;  // custom scheme tables

    RecoverySpec recovery;

    long n_paths = 200000;
    std::uint64_t seed = 20120512;
    std::string output_prefix = "run";

    double horizon() const { return instrument == Instrument::Irs ? irs.tenor : cds.tenor; }
};

// Parses the documented key = value format; throws ParseError with line
// diagnostics or ValidationError naming the violated invariant.
Scenario load_scenario(const std::string& text);
Scenario load_scenario_file(const std::string& path);

std::uint64_t config_hash(const std::string& text);

struct RunOptions {
    std::string out_dir = ".";
    int threads = 1;
    bool dump_paths = false;
    std::optional<long> paths_override;
    std::optional<std::uint64_t> seed_override;
    std::uint64_t config_fingerprint = 0;
};

struct RunResult {
    std::vector<AdjustmentReport> reports;  // all (alpha, scheme, trigger) cells
    std::vector<std::string> files_written;
};

// Runs the full (alpha x scheme x trigger) grid and writes one adjustment
// table and one mitigation table per (scheme, alpha) combination, as CSV and
// aligned text. Output bytes are independent of the worker-thread count.
RunResult run_grid(const Scenario& scenario, const RunOptions& options, std::ostream& log);

const char* scheme_name(CollateralScheme scheme);

}  // namespace rtxva
