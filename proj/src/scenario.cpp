#include "rtxva/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "rtxva/errors.hpp"

namespace rtxva {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

struct ConfigMap {
    struct Entry {
        std::string value;
        int line;
        mutable bool used = false;
    };
    std::map<std::string, Entry> entries;

    bool has(const std::string& key) const { return entries.count(key) != 0; }

    const std::string* find(const std::string& key) const {
        const auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        it->second.used = true;
        return &it->second.value;
    }

    std::string require(const std::string& key) const {
        const std::string* v = find(key);
        if (v == nullptr) throw ParseError("missing required config key '" + key + "'");
        return *v;
    }

    double get_double(const std::string& key) const {
        const std::string text = require(key);
        return parse_double(key, text);
    }

    double get_double_or(const std::string& key, double fallback) const {
        const std::string* v = find(key);
        return v == nullptr ? fallback : parse_double(key, *v);
    }

    long get_long_or(const std::string& key, long fallback) const {
        const std::string* v = find(key);
        if (v == nullptr) return fallback;
        try {
            size_t pos = 0;
            const long x = std::stol(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("trailing characters");
            return x;
        } catch (const std::exception&) {
            throw ParseError("key '" + key + "' (line " + std::to_string(line_of(key)) +
                             "): cannot parse integer from '" + *v + "'");
        }
    }

    std::uint64_t get_u64_or(const std::string& key, std::uint64_t fallback) const {
        const std::string* v = find(key);
        if (v == nullptr) return fallback;
        try {
            size_t pos = 0;
            const unsigned long long x = std::stoull(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("trailing characters");
            return x;
        } catch (const std::exception&) {
            throw ParseError("key '" + key + "' (line " + std::to_string(line_of(key)) +
                             "): cannot parse unsigned integer from '" + *v + "'");
        }
    }

    std::string get_string_or(const std::string& key, const std::string& fallback) const {
        const std::string* v = find(key);
        return v == nullptr ? fallback : *v;
    }

    bool get_bool_or(const std::string& key, bool fallback) const {
        const std::string* v = find(key);
        if (v == nullptr) return fallback;
        if (*v == "true" || *v == "1" || *v == "yes") return true;
        if (*v == "false" || *v == "0" || *v == "no") return false;
        throw ParseError("key '" + key + "' (line " + std::to_string(line_of(key)) +
                         "): expected a boolean, got '" + *v + "'");
    }

    double parse_double(const std::string& key, const std::string& text) const {
        try {
            size_t pos = 0;
            const double x = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument("trailing characters");
            return x;
        } catch (const std::exception&) {
            throw ParseError("key '" + key + "' (line " + std::to_string(line_of(key)) +
                             "): cannot parse number from '" + text + "'");
        }
    }

    int line_of(const std::string& key) const {
        const auto it = entries.find(key);
        return it == entries.end() ? 0 : it->second.line;
    }

    void check_all_used() const {
        for (const auto& [key, entry] : entries)
            if (!entry.used)
                throw ParseError("unknown config key '" + key + "' on line " + std::to_string(entry.line));
    }
};

ConfigMap parse_config(const std::string& text) {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + line +
                             "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty key");
        if (cfg.entries.count(key))
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        cfg.entries[key] = ConfigMap::Entry{value, line_no};
    }
    return cfg;
}

TransitionMatrix parse_matrix(const ConfigMap& cfg, const std::string& key, int k) {
    const std::string text = cfg.require(key);
    std::vector<std::vector<double>> rows;
    std::string row_text;
    std::istringstream in(text);
    while (std::getline(in, row_text, ';')) {
        const auto toks = split_ws(row_text);
        if (toks.empty()) continue;
        std::vector<double> row;
        row.reserve(toks.size());
        for (const auto& t : toks) row.push_back(cfg.parse_double(key, t));
        rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) != k)
        throw ParseError("key '" + key + "' (line " + std::to_string(cfg.line_of(key)) + "): expected " +
                         std::to_string(k) + " rows, got " + std::to_string(rows.size()));
    TransitionMatrix m;
    m.p.resize(k, k);
    for (int i = 0; i < k; ++i) {
        if (static_cast<int>(rows[i].size()) != k)
            throw ParseError("key '" + key + "' (line " + std::to_string(cfg.line_of(key)) + "): row " +
                             std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                             " entries, expected " + std::to_string(k));
        for (int j = 0; j < k; ++j) m.p(i, j) = rows[i][j];
    }
    return m;
}

CollateralScheme parse_scheme(const std::string& tok) {
    if (tok == "none") return CollateralScheme::None;
    if (tok == "linear") return CollateralScheme::Linear;
    if (tok == "exponential") return CollateralScheme::Exponential;
    if (tok == "custom") return CollateralScheme::Custom;
    throw ParseError("unknown collateral scheme '" + tok +
                     "' (expected none|linear|exponential|custom)");
}

std::vector<double> parse_double_list(const ConfigMap& cfg, const std::string& key) {
    std::vector<double> out;
    for (const auto& tok : split_ws(cfg.require(key))) out.push_back(cfg.parse_double(key, tok));
    return out;
}

}  // namespace

const char* scheme_name(CollateralScheme scheme) {
    switch (scheme) {
        case CollateralScheme::None: return "none";
        case CollateralScheme::Linear: return "linear";
        case CollateralScheme::Exponential: return "exponential";
        case CollateralScheme::Custom: return "custom";
    }
    return "?";
}

std::uint64_t config_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

Scenario load_scenario(const std::string& text) {
    const ConfigMap cfg = parse_config(text);
    Scenario sc;

    sc.scale = RatingScale(static_cast<int>(cfg.get_long_or("scale.k", 4)));
    const int k = sc.scale.k;

    sc.p1 = validate_transition_matrix(parse_matrix(cfg, "p1", k));
    sc.p2 = validate_transition_matrix(parse_matrix(cfg, "p2", k));

    const std::string instrument = cfg.get_string_or("instrument.type", "irs");
    if (instrument == "irs")
        sc.instrument = Scenario::Instrument::Irs;
    else if (instrument == "cds")
        sc.instrument = Scenario::Instrument::Cds;
    else
        throw ParseError("instrument.type must be 'irs' or 'cds', got '" + instrument + "'");

    if (sc.instrument == Scenario::Instrument::Cds || cfg.has("p3"))
        sc.p3 = validate_transition_matrix(parse_matrix(cfg, "p3", k));

    sc.x1_0 = sc.scale.parse_label(cfg.get_string_or("initial.x1", "A"));
    sc.x2_0 = sc.scale.parse_label(cfg.get_string_or("initial.x2", "A"));
    sc.x3_0 = sc.scale.parse_label(cfg.get_string_or("initial.x3", "A"));
    if (sc.x1_0 >= k || sc.x2_0 >= k)
        throw ValidationError("contract parties must start alive (rating < default)");

    if (cfg.has("copula.alpha")) {
        sc.alphas = parse_double_list(cfg, "copula.alpha");
        if (sc.alphas.empty()) throw ParseError("copula.alpha must list at least one value");
        for (double a : sc.alphas)
            if (!(a >= 0.0 && a <= 1.0))
                throw ValidationError("copula alpha must lie in [0,1], got " + std::to_string(a));
    }
    sc.measure.alpha1 = cfg.get_double_or("measure.alpha1", 0.0);
    sc.measure.alpha2 = cfg.get_double_or("measure.alpha2", 0.0);

    // Trigger grid, pairs like "B:C"; D (the default category) disables the
    // trigger for that party.
    for (const auto& tok : split_ws(cfg.require("triggers"))) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw ParseError("trigger pair '" + tok + "' must look like K1:K2 (line " +
                             std::to_string(cfg.line_of("triggers")) + ")");
        TriggerLevels tl;
        tl.k1 = sc.scale.parse_label(tok.substr(0, colon));
        tl.k2 = sc.scale.parse_label(tok.substr(colon + 1));
        if (tl.k1 <= 1 || tl.k2 <= 1)
            throw ValidationError("trigger levels must be strictly worse than the best rating");
        if (sc.x1_0 >= tl.k1 || sc.x2_0 >= tl.k2)
            throw ValidationError("initial ratings must be strictly better than the trigger levels (" +
                                  tok + ")");
        sc.triggers.push_back(tl);
    }

    if (sc.instrument == Scenario::Instrument::Irs) {
        sc.irs.tenor = cfg.get_double_or("irs.tenor", 10.0);
        sc.irs.freq = static_cast<int>(cfg.get_long_or("irs.freq", 4));
        if (cfg.has("irs.fixed_rate")) sc.irs.fixed_rate = cfg.get_double("irs.fixed_rate");
        sc.irs.payer = cfg.get_bool_or("irs.payer", true);
        sc.irs.notional = cfg.get_double_or("irs.notional", 1.0);
    } else {
        sc.cds.tenor = cfg.get_double_or("cds.tenor", 10.0);
        if (cfg.has("cds.spread")) sc.cds.spread = cfg.get_double("cds.spread");
        sc.cds.reference_recovery = cfg.get_double_or("cds.recovery3", 0.4);
        sc.cds.notional = cfg.get_double_or("cds.notional", 1.0);
    }

    sc.rates.r0 = cfg.get_double("rates.r0");
    sc.rates.theta = cfg.get_double("rates.theta");
    sc.rates.alpha_mr = cfg.get_double("rates.alpha");
    sc.rates.sigma = cfg.get_double("rates.sigma");
    validate_vasicek(sc.rates);

    if (cfg.has("collateral.scheme")) {
        sc.schemes.clear();
        for (const auto& tok : split_ws(cfg.require("collateral.scheme")))
            sc.schemes.push_back(parse_scheme(tok));
        if (sc.schemes.empty()) throw ParseError("collateral.scheme must list at least one scheme");
    }
    sc.call_freq = static_cast<int>(cfg.get_long_or(
        "collateral.call_freq", sc.instrument == Scenario::Instrument::Irs ? 4 : 12));
    if (sc.call_freq < 1) throw ValidationError("collateral.call_freq must be at least 1 per year");
    sc.mta = cfg.get_double_or("collateral.mta", 0.0);
    sc.ia_cpty = cfg.get_double_or("collateral.ia1", 0.0);
    sc.ia_inv = cfg.get_double_or("collateral.ia2", 0.0);
    sc.margin_period = cfg.get_double_or("collateral.delta", 0.0);
    if (cfg.has("collateral.rho1")) sc.rho1 = parse_double_list(cfg, "collateral.rho1");
    if (cfg.has("collateral.rho2")) sc.rho2 = parse_double_list(cfg, "collateral.rho2");

    sc.recovery.r1 = cfg.get_double_or("recovery.r1", 0.4);
    sc.recovery.r2 = cfg.get_double_or("recovery.r2", 0.4);
    sc.recovery.rh1 = cfg.get_double_or("recovery.rh1", 1.0);
    sc.recovery.rh2 = cfg.get_double_or("recovery.rh2", 1.0);
    validate_recovery(sc.recovery);

    sc.n_paths = cfg.get_long_or("mc.paths", 200000);
    if (sc.n_paths <= 0) throw InsufficientPathsError("mc.paths must be positive");
    sc.seed = cfg.get_u64_or("mc.seed", 20120512ULL);
    sc.output_prefix = cfg.get_string_or("output.prefix", "run");

    cfg.check_all_used();
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario(buf.str());
}

namespace {

std::vector<double> make_call_dates(double horizon, int freq) {
    std::vector<double> dates;
    for (int i = 1; static_cast<double>(i) / freq < horizon - 1e-12; ++i)
        dates.push_back(static_cast<double>(i) / freq);
    return dates;
}

CollateralSpec make_collateral_spec(const Scenario& sc, CollateralScheme scheme,
                                    const std::vector<double>& call_dates) {
    CollateralSpec spec;
    spec.scheme = scheme;
    spec.rho1 = sc.rho1;
    spec.rho2 = sc.rho2;
    spec.mta = sc.mta;
    spec.ia_cpty = sc.ia_cpty;
    spec.ia_inv = sc.ia_inv;
    spec.margin_period = sc.margin_period;
    spec.call_dates = call_dates;
    return spec;
}

std::string format_alpha(double alpha) {
    std::ostringstream out;
    out << alpha;
    std::string s = out.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

std::string csv_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.8f", x);
    return buf;
}

void write_cell_csv(std::ostream& out, const AdjustmentReport& rep, const RatingScale& scale,
                    double mitigation) {
    const double u = 1e3;  // table units: 1$ x 10^-3
    out << scheme_name(rep.scheme) << ',' << rep.alpha << ',' << scale.label(rep.triggers.k1) << ','
        << scale.label(rep.triggers.k2) << ',' << rep.n_paths << ',' << rep.seed;
    const Estimate* cols[] = {&rep.ucva,   &rep.dva,   &rep.cva,    &rep.ucva_r, &rep.dva_r,
                              &rep.cva_r,  &rep.urva,  &rep.drva,   &rep.rva,    &rep.ucva_rh,
                              &rep.dva_rh, &rep.cva_rh, &rep.urva_h, &rep.drva_h, &rep.rva_h};
    for (const Estimate* e : cols) out << ',' << csv_number(e->value * u) << ',' << csv_number(e->se * u);
    out << ',' << csv_number(mitigation) << '\n';
}

void write_tables(const std::vector<AdjustmentReport>& slice, const Scenario& sc,
                  const RunOptions& opt, const std::string& stem, double alpha, RunResult& result) {
    const RatingScale& scale = sc.scale;
    const auto path_for = [&](const std::string& name) {
        return (std::filesystem::path(opt.out_dir) / name).string();
    };
    const std::string meta = "# rtxva " + sc.output_prefix + " | alpha=" + std::to_string(alpha) +
                             " scheme=" + scheme_name(slice.front().scheme) +
                             " | paths=" + std::to_string(slice.front().n_paths) +
                             " seed=" + std::to_string(slice.front().seed) + " config_hash=" +
                             std::to_string(opt.config_fingerprint);

    {
        const std::string file = path_for(stem + ".csv");
        std::ofstream out(file);
        out << meta << '\n';
        out << "scheme,alpha,k1,k2,n_paths,seed"
               ",ucva,ucva_se,dva,dva_se,cva,cva_se"
               ",ucva_r,ucva_r_se,dva_r,dva_r_se,cva_r,cva_r_se"
               ",urva,urva_se,drva,drva_se,rva,rva_se"
               ",ucva_rh,ucva_rh_se,dva_rh,dva_rh_se,cva_rh,cva_rh_se"
               ",urva_h,urva_h_se,drva_h,drva_h_se,rva_h,rva_h_se,mitigation_pct\n";
        for (const auto& rep : slice) write_cell_csv(out, rep, scale, rep.mitigation_pct);
        result.files_written.push_back(file);
    }
    {
        const std::string file = path_for(stem + ".txt");
        std::ofstream out(file);
        out << meta << '\n';
        out << "# CVA and RVA components (1$ x 10^-3)\n";
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%3s %3s %10s %10s %10s %10s %10s %10s\n", "K1", "K2", "URVA",
                      "DRVA", "RVA", "UCVA^R", "DVA^R", "CVA^R");
        out << buf;
        for (const auto& rep : slice) {
            const double u = 1e3;
            std::snprintf(buf, sizeof(buf), "%3s %3s %10.5f %10.5f %10.5f %10.5f %10.5f %10.5f\n",
                          scale.label(rep.triggers.k1).c_str(), scale.label(rep.triggers.k2).c_str(),
                          rep.urva.value * u, rep.drva.value * u, rep.rva.value * u,
                          rep.ucva_r.value * u, rep.dva_r.value * u, rep.cva_r.value * u);
            out << buf;
        }
        result.files_written.push_back(file);
    }

    // Mitigation table only when the (D, D) no-trigger baseline is in the grid.
    const bool has_baseline = std::any_of(slice.begin(), slice.end(), [&](const AdjustmentReport& r) {
        return r.triggers.k1 == scale.k && r.triggers.k2 == scale.k;
    });
    if (has_baseline) {
        const std::vector<MitigationCell> cells = mitigation_table(slice, scale.k);
        {
            const std::string file = path_for(stem + "_mitigation.csv");
            std::ofstream out(file);
            out << meta << '\n';
            out << "scheme,alpha,k1,k2,n_paths,seed,mitigation_vs_dd_pct\n";
            for (size_t i = 0; i < cells.size(); ++i) {
                const auto& rep = slice[i];
                out << scheme_name(rep.scheme) << ',' << rep.alpha << ','
                    << scale.label(cells[i].triggers.k1) << ',' << scale.label(cells[i].triggers.k2)
                    << ',' << rep.n_paths << ',' << rep.seed << ',' << csv_number(cells[i].pct) << '\n';
            }
            result.files_written.push_back(file);
        }
        {
            const std::string file = path_for(stem + "_mitigation.txt");
            std::ofstream out(file);
            out << meta << '\n';
            out << "# Mitigation in the CVA vs the (D,D) baseline (in %)\n";
            std::ostringstream head, vals;
            char buf[64];
            for (size_t i = 0; i < cells.size(); ++i) {
                if (cells[i].triggers.k1 == scale.k && cells[i].triggers.k2 == scale.k) continue;
                std::snprintf(buf, sizeof(buf), "%10s",
                              ("(" + scale.label(cells[i].triggers.k1) + "," +
                               scale.label(cells[i].triggers.k2) + ")")
                                  .c_str());
                head << buf;
                std::snprintf(buf, sizeof(buf), "%10.2f", cells[i].pct);
                vals << buf;
            }
            out << head.str() << '\n' << vals.str() << '\n';
            result.files_written.push_back(file);
        }
    }
}

}  // namespace

RunResult run_grid(const Scenario& sc, const RunOptions& opt, std::ostream& log) {
    RunResult result;
    const long n_paths = opt.paths_override.value_or(sc.n_paths);
    const std::uint64_t seed = opt.seed_override.value_or(sc.seed);
    if (n_paths <= 0) throw InsufficientPathsError("path count must be positive");

    std::filesystem::create_directories(opt.out_dir);

    // Marginal generators from the annual matrices; reproduction errors are
    // part of the run record.
    const EmbeddedGenerator g1 = generator_from_annual_matrix(sc.p1);
    const EmbeddedGenerator g2 = generator_from_annual_matrix(sc.p2);
    std::optional<EmbeddedGenerator> g3;
    if (sc.p3) g3 = generator_from_annual_matrix(*sc.p3);

    log << "generator embedding error: P1 " << g1.reproduction_error << ", P2 " << g2.reproduction_error;
    if (g3) log << ", P3 " << g3->reproduction_error;
    log << "\n";
    log << "short-rate model: dr = (theta - alpha*r) dt + sigma dW, implied long-run mean theta/alpha = "
        << sc.rates.long_run_mean() << "\n";

    const double horizon = sc.horizon();
    const std::vector<double> call_dates = make_call_dates(horizon, sc.call_freq);

    std::optional<IrsPricer> irs;
    std::optional<CdsPricer> cds;
    std::vector<double> payment_dates;
    if (sc.instrument == Scenario::Instrument::Irs) {
        irs.emplace(sc.irs, sc.rates);
        payment_dates = irs->payment_dates();
        log << "IRS par rate: " << irs->fixed_rate() << " (tenor " << sc.irs.tenor << "y, "
            << sc.irs.freq << " payments/yr)\n";
    } else {
        cds.emplace(sc.cds, g3->generator, sc.rates);
        if (!sc.cds.spread) cds->set_spread(cds->par_spread(sc.x3_0, sc.rates.r0));
        log << "CDS spread: " << cds->spread() << " (tenor " << sc.cds.tenor << "y, R3 "
            << sc.cds.reference_recovery << ")\n";
        std::vector<double> eval_times = call_dates;
        eval_times.push_back(0.0);
        cds->precompute_eval_times(eval_times);
    }

    std::vector<double> extra = call_dates;
    extra.insert(extra.end(), payment_dates.begin(), payment_dates.end());
    const std::vector<double> rate_grid = build_time_grid(horizon, extra);

    std::vector<CollateralSpec> schemes;
    for (CollateralScheme scheme : sc.schemes) schemes.push_back(make_collateral_spec(sc, scheme, call_dates));

    for (double alpha : sc.alphas) {
        JointGenerator joint;
        if (sc.instrument == Scenario::Instrument::Irs)
            joint = build_joint_generator(g1.generator, g2.generator, CopulaSpec{alpha});
        else
            joint = build_joint_generator_3(g1.generator, g2.generator, g3->generator,
                                            CopulaSpec{alpha});
        if (sc.measure.alpha1 != 0.0 || sc.measure.alpha2 != 0.0) joint = change_measure(joint, sc.measure);

        GridRequest req;
        req.joint = &joint;
        req.initial_state = sc.instrument == Scenario::Instrument::Irs
                                ? joint.index(sc.x1_0, sc.x2_0)
                                : joint.index3(sc.x1_0, sc.x2_0, sc.x3_0);
        req.horizon = horizon;
        req.irs = irs ? &*irs : nullptr;
        req.cds = cds ? &*cds : nullptr;
        req.rate_grid = rate_grid;
        req.rates = sc.rates;
        req.schemes = schemes;
        req.triggers = sc.triggers;
        req.recovery = sc.recovery;
        req.n_paths = n_paths;
        req.seed = seed;
        req.threads = opt.threads;
        req.alpha = alpha;

        const std::vector<AdjustmentReport> reports = estimate_grid(req);

        for (size_t s = 0; s < schemes.size(); ++s) {
            std::vector<AdjustmentReport> slice(reports.begin() + s * sc.triggers.size(),
                                                reports.begin() + (s + 1) * sc.triggers.size());
            const std::string stem = sc.output_prefix + "_alpha" + format_alpha(alpha) + "_" +
                                     scheme_name(schemes[s].scheme);
            write_tables(slice, sc, opt, stem, alpha, result);
        }
        result.reports.insert(result.reports.end(), reports.begin(), reports.end());

        if (opt.dump_paths) {
            const std::string path_file =
                (std::filesystem::path(opt.out_dir) / (sc.output_prefix + "_alpha" + format_alpha(alpha) +
                                                       "_paths.csv")).string();
            std::ofstream out(path_file);
            out << "path_id,time,state\n";
            for (long p = 0; p < n_paths; ++p) {
                Rng rng = Rng::for_path(seed, static_cast<std::uint64_t>(p), 0);
                const JointRatingPath path = simulate_path(joint, req.initial_state, horizon, rng);
                out << p << ',' << csv_number(0.0) << ',' << path.initial_state << '\n';
                for (size_t j = 0; j < path.jump_times.size(); ++j)
                    out << p << ',' << csv_number(path.jump_times[j]) << ',' << path.jump_states[j]
                        << '\n';
            }
            result.files_written.push_back(path_file);
        }
    }
    return result;
}

}  // namespace rtxva
