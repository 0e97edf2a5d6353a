#include "zcssc/sim.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "zcssc/baseline_mdc.hpp"
#include "zcssc/channel.hpp"
#include "zcssc/errors.hpp"
#include "zcssc/parallel.hpp"
#include "zcssc/seeding.hpp"

namespace zcssc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
    if (v == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    }
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long n = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    }
}

int parse_int32(const std::string& key, const std::string& v) {
    const long long n = parse_int(key, v);
    if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) {
        throw ConfigError("key '" + key + "': value out of range");
    }
    return static_cast<int>(n);
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1" || v == "yes") return true;
    if (v == "off" || v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "': '" + v + "' is not a boolean");
}

const std::set<std::string>& numeric_keys() {
    static const std::set<std::string> keys = {
        "n_prb",      "ofdm_symbols", "K",         "L",        "alpha",          "L_prime",
        "mdc_segments", "cnr_db",     "snr_db",    "snr_offset_db", "k_factor_db", "doppler_hz",
        "slot_ms",    "seed",         "R",         "T_R_slots", "feedback_delay_slots", "residual_threshold",
        "trials",     "max_errors",   "drop_slots", "workers"};
    return keys;
}

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string feedback_label(const SimConfig& cfg) {
    if (!cfg.stop_feedback || cfg.repetitions == 1) return "off";
    return cfg.feedback_mode == SuccessDetection::kGenie ? "genie" : "threshold";
}

}  // namespace

bool is_numeric_key(const std::string& key) { return numeric_keys().contains(key); }

std::string scheme_name(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::kMdc: return "mdc";
        case SchemeKind::kSsc: return "ssc";
        case SchemeKind::kSscIndicated: return "ssc_indicated";
    }
    return "?";
}

void SimConfig::set(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "scheme") {
        if (v == "mdc") scheme = SchemeKind::kMdc;
        else if (v == "ssc") scheme = SchemeKind::kSsc;
        else if (v == "ssc_indicated") scheme = SchemeKind::kSscIndicated;
        else throw ConfigError("unknown scheme '" + v + "'");
    } else if (key == "n_prb") n_prb = parse_int32(key, v);
    else if (key == "ofdm_symbols") ofdm_symbols = parse_int32(key, v);
    else if (key == "K") info_bits = parse_int32(key, v);
    else if (key == "L") sparsity = parse_int32(key, v);
    else if (key == "alpha") alpha = parse_double(key, v);
    else if (key == "L_prime") l_prime = parse_int32(key, v);
    else if (key == "mdc_segments") mdc_segments = parse_int32(key, v);
    else if (key == "cnr_db") cnr_db = parse_double(key, v);
    else if (key == "snr_db") {
        if (v == "budget") snr_db.reset();
        else snr_db = parse_double(key, v);
    } else if (key == "snr_offset_db") snr_offset_db = parse_double(key, v);
    else if (key == "k_factor_db") k_factor_db = parse_double(key, v);
    else if (key == "doppler_hz") doppler_hz = parse_double(key, v);
    else if (key == "slot_ms") slot_ms = parse_double(key, v);
    else if (key == "seed") {
        const long long s = parse_int(key, v);
        if (s < 0) throw ConfigError("seed must be non-negative");
        seed = static_cast<std::uint64_t>(s);
    } else if (key == "R") repetitions = parse_int32(key, v);
    else if (key == "T_R_slots") spacing_slots = parse_int32(key, v);
    else if (key == "feedback_mode") {
        if (v == "genie") feedback_mode = SuccessDetection::kGenie;
        else if (v == "threshold") feedback_mode = SuccessDetection::kResidualThreshold;
        else throw ConfigError("unknown feedback_mode '" + v + "'");
    } else if (key == "stop_feedback") stop_feedback = parse_bool(key, v);
    else if (key == "feedback_delay_slots") feedback_delay_slots = parse_int32(key, v);
    else if (key == "residual_threshold") residual_threshold = parse_double(key, v);
    else if (key == "reuse_mode") {
        if (v == "new_data") reuse = ReuseMode::kNewData;
        else if (v == "extra_repetitions") reuse = ReuseMode::kExtraRepetitions;
        else if (v == "none") reuse = ReuseMode::kNone;
        else throw ConfigError("unknown reuse_mode '" + v + "'");
    } else if (key == "trials") trials = parse_int32(key, v);
    else if (key == "max_errors") max_errors = parse_int32(key, v);
    else if (key == "drop_slots") drop_slots = parse_int32(key, v);
    else if (key == "workers") workers = parse_int32(key, v);
    else throw ConfigError("unknown config key '" + key + "'");
}

double SimConfig::effective_snr_db() const {
    if (snr_db) return *snr_db + snr_offset_db;
    return snr_from_budget({cnr_db, n_prb}) + snr_offset_db;
}

int SimConfig::effective_drop_slots() const {
    if (drop_slots > 0) return drop_slots;
    return repetitions == 1 ? 1 : 40;
}

SimConfig parse_config(std::istream& in) {
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        }
        cfg.set(key, value);
    }
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::unique_ptr<Scheme> make_scheme(const SimConfig& cfg) {
    if (cfg.n_prb < 1) throw ConfigError("n_prb must be >= 1");
    if (cfg.ofdm_symbols < 1) throw ConfigError("ofdm_symbols must be >= 1");
    if (cfg.repetitions < 1) throw ConfigError("R must be >= 1");
    if (cfg.spacing_slots < 1) throw ConfigError("T_R_slots must be >= 1");
    if (cfg.feedback_delay_slots < 0) throw ConfigError("feedback_delay_slots must be >= 0");
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
    const int n_sc = 12 * cfg.n_prb;
    if (n_sc % cfg.repetitions != 0) {
        throw ConfigError(std::to_string(n_sc) + " subcarriers do not split into R = " +
                          std::to_string(cfg.repetitions) + " segments");
    }
    const int seg_sc = n_sc / cfg.repetitions;

    try {
        switch (cfg.scheme) {
            case SchemeKind::kMdc: {
                if (cfg.mdc_segments < 1 || cfg.info_bits % cfg.mdc_segments != 0) {
                    throw ConfigError("K must split evenly over mdc_segments");
                }
                MdcConfig m{seg_sc, cfg.ofdm_symbols, cfg.mdc_segments, cfg.info_bits / cfg.mdc_segments};
                return std::make_unique<MdcScheme>(m);
            }
            case SchemeKind::kSsc:
            case SchemeKind::kSscIndicated: {
                DecoderConfig dec;
                dec.l_prime = cfg.l_prime;
                dec.alpha = cfg.scheme == SchemeKind::kSscIndicated ? cfg.alpha : 1.0;
                auto s = std::make_unique<SscScheme>(seg_sc, cfg.ofdm_symbols, cfg.sparsity, cfg.info_bits,
                                                     cfg.scheme == SchemeKind::kSscIndicated, dec);
                if (cfg.scheme == SchemeKind::kSscIndicated &&
                    (cfg.l_prime < cfg.sparsity || cfg.l_prime > s->spec().length() - 1)) {
                    throw ConfigError("L_prime must lie in [L, P-1]");
                }
                return s;
            }
        }
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unhandled scheme");
}

SimResult run_campaign(const SimConfig& cfg) {
    const auto started = std::chrono::steady_clock::now();
    const std::unique_ptr<Scheme> scheme = make_scheme(cfg);

    LinkParams lp;
    lp.schedule = {cfg.repetitions, cfg.spacing_slots};
    lp.feedback = {cfg.feedback_mode, cfg.feedback_delay_slots, cfg.residual_threshold, cfg.stop_feedback};
    lp.reuse = cfg.reuse;
    lp.fading = {cfg.k_factor_db, cfg.doppler_hz, cfg.slot_ms * 1e-3};
    lp.snr_db = cfg.effective_snr_db();
    lp.num_subcarriers = 12 * cfg.n_prb;
    lp.num_symbols = cfg.ofdm_symbols;
    lp.window_slots = cfg.effective_drop_slots();

    SimResult res;
    std::int64_t codewords = 0;
    std::int64_t errors = 0;
    std::int64_t transmissions = 0;

    // Drops are evaluated in batches but folded strictly in index order, and
    // the stop rule is checked after each drop, so the outcome does not
    // depend on the worker count.
    const std::size_t batch = static_cast<std::size_t>(cfg.workers) * 4;
    std::uint64_t next_drop = 0;
    bool done = false;
    while (!done) {
        std::vector<DropResult> drops(batch);
        parallel_for(batch, cfg.workers, [&](std::size_t i) {
            drops[i] = run_drop(*scheme, lp, derive_seed(cfg.seed, {next_drop + i}));
        });
        for (const DropResult& d : drops) {
            res.window_slots += d.window_slots;
            for (const TrialRecord& r : d.records) {
                ++codewords;
                transmissions += r.transmissions;
                res.res_consumed += r.res_consumed;
                ++res.tx_histogram[r.transmissions];
                if (r.success) {
                    res.successful_bits += scheme->info_bits();
                } else {
                    ++errors;
                }
            }
            if (codewords >= cfg.trials || (cfg.max_errors > 0 && errors >= cfg.max_errors)) {
                done = true;
                break;
            }
        }
        next_drop += batch;
    }

    ResultRow& row = res.row;
    row.scheme = scheme_name(cfg.scheme);
    row.n_prb = cfg.n_prb;
    row.K = scheme->info_bits();
    row.L = cfg.scheme == SchemeKind::kMdc ? 1 : cfg.sparsity;
    row.alpha = cfg.scheme == SchemeKind::kSscIndicated ? cfg.alpha : 1.0;
    row.L_prime = cfg.scheme == SchemeKind::kSscIndicated ? cfg.l_prime : 0;
    row.R = cfg.repetitions;
    row.T_R = cfg.spacing_slots;
    row.feedback = feedback_label(cfg);
    row.snr_db = lp.snr_db;
    row.trials = codewords;
    row.block_errors = errors;
    row.bler = static_cast<double>(errors) / static_cast<double>(codewords);
    row.bler_ci95 = 1.96 * std::sqrt(row.bler * (1.0 - row.bler) / static_cast<double>(codewords));
    row.throughput_bits_per_slot =
        static_cast<double>(res.successful_bits) / static_cast<double>(res.window_slots);
    row.avg_tx_per_codeword = static_cast<double>(transmissions) / static_cast<double>(codewords);
    row.seed = cfg.seed;
    res.throughput_bits_per_re =
        res.res_consumed > 0 ? static_cast<double>(res.successful_bits) / static_cast<double>(res.res_consumed) : 0.0;
    res.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return res;
}

std::vector<SimResult> sweep(const SimConfig& base, const std::string& axis, const std::vector<std::string>& values) {
    if (!is_numeric_key(axis)) throw ParameterError("unknown or non-numeric sweep axis '" + axis + "'");
    std::vector<SimResult> out;
    for (const auto& v : values) {
        SimConfig cfg = base;
        cfg.set(axis, v);
        out.push_back(run_campaign(cfg));
    }
    return out;
}

const char* const kCsvHeader =
    "scheme,n_prb,K,L,alpha,L_prime,R,T_R,feedback,snr_db,trials,block_errors,bler,bler_ci95,"
    "throughput_bits_per_slot,avg_tx_per_codeword,seed";

namespace {

nlohmann::json row_to_json(const ResultRow& r) {
    return {{"scheme", r.scheme},
            {"n_prb", r.n_prb},
            {"K", r.K},
            {"L", r.L},
            {"alpha", r.alpha},
            {"L_prime", r.L_prime},
            {"R", r.R},
            {"T_R", r.T_R},
            {"feedback", r.feedback},
            {"snr_db", std::isinf(r.snr_db) ? nlohmann::json(fmt_double(r.snr_db)) : nlohmann::json(r.snr_db)},
            {"trials", r.trials},
            {"block_errors", r.block_errors},
            {"bler", r.bler},
            {"bler_ci95", r.bler_ci95},
            {"throughput_bits_per_slot", r.throughput_bits_per_slot},
            {"avg_tx_per_codeword", r.avg_tx_per_codeword},
            {"seed", r.seed}};
}

void check_emittable(const std::vector<SimResult>& results) {
    for (const auto& r : results) {
        if (r.row.trials <= 0) throw std::runtime_error("refusing to emit BLER for a zero-trial result");
    }
}

}  // namespace

std::string format_results(const std::vector<SimResult>& results, ResultFormat format) {
    check_emittable(results);
    if (format == ResultFormat::kJson) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : results) arr.push_back(row_to_json(r.row));
        return arr.dump(2) + "\n";
    }
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& res : results) {
        const ResultRow& r = res.row;
        out << r.scheme << ',' << r.n_prb << ',' << r.K << ',' << r.L << ',' << fmt_double(r.alpha) << ','
            << r.L_prime << ',' << r.R << ',' << r.T_R << ',' << r.feedback << ',' << fmt_double(r.snr_db) << ','
            << r.trials << ',' << r.block_errors << ',' << fmt_double(r.bler) << ',' << fmt_double(r.bler_ci95)
            << ',' << fmt_double(r.throughput_bits_per_slot) << ',' << fmt_double(r.avg_tx_per_codeword) << ','
            << r.seed << '\n';
    }
    return out.str();
}

void emit_results(const std::vector<SimResult>& results, ResultFormat format, const std::string& path) {
    const std::string text = format_results(results, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write results to '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::vector<ResultRow> parse_results_json(const std::string& text) {
    const nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<ResultRow> rows;
    for (const auto& j : arr) {
        ResultRow r;
        r.scheme = j.at("scheme").get<std::string>();
        r.n_prb = j.at("n_prb").get<int>();
        r.K = j.at("K").get<int>();
        r.L = j.at("L").get<int>();
        r.alpha = j.at("alpha").get<double>();
        r.L_prime = j.at("L_prime").get<int>();
        r.R = j.at("R").get<int>();
        r.T_R = j.at("T_R").get<int>();
        r.feedback = j.at("feedback").get<std::string>();
        const auto& snr = j.at("snr_db");
        r.snr_db = snr.is_string() ? parse_double("snr_db", snr.get<std::string>()) : snr.get<double>();
        r.trials = j.at("trials").get<std::int64_t>();
        r.block_errors = j.at("block_errors").get<std::int64_t>();
        r.bler = j.at("bler").get<double>();
        r.bler_ci95 = j.at("bler_ci95").get<double>();
        r.throughput_bits_per_slot = j.at("throughput_bits_per_slot").get<double>();
        r.avg_tx_per_codeword = j.at("avg_tx_per_codeword").get<double>();
        r.seed = j.at("seed").get<std::uint64_t>();
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace zcssc
