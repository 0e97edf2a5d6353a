#pragma once

// Monte-Carlo campaign harness: configuration, seeded drops, BLER and
// throughput accounting, CSV/JSON result files.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zcssc/link.hpp"
#include "zcssc/scheme.hpp"

namespace zcssc {

enum class SchemeKind { kMdc, kSsc, kSscIndicated };

struct SimConfig {
    SchemeKind scheme = SchemeKind::kSscIndicated;
    int n_prb = 2;
    int ofdm_symbols = 14;
    int info_bits = 30;  // K
    int sparsity = 2;    // L
    double alpha = 0.5;
    int l_prime = 7;
    int mdc_segments = 2;

    double cnr_db = -2.15;
    std::optional<double> snr_db;  // overrides the budget when set; +inf is noiseless
    double snr_offset_db = 0.0;
    double k_factor_db = 10.0;
    double doppler_hz = 5.6;
    double slot_ms = 1.0;
    std::uint64_t seed = 1;

    int repetitions = 1;  // R
    int spacing_slots = 4;  // T_R
    SuccessDetection feedback_mode = SuccessDetection::kGenie;
    bool stop_feedback = true;
    int feedback_delay_slots = 0;
    double residual_threshold = 0.5;
    ReuseMode reuse = ReuseMode::kNewData;

    int trials = 1000;      // target codeword count
    int max_errors = 200;   // stop after this many block errors; 0 disables
    int drop_slots = 0;     // slots per drop; 0 picks 1 for R = 1, 40 otherwise
    int workers = 1;

    // Set one key from its text form. Throws ConfigError on unknown keys or
    // malformed values.
    void set(const std::string& key, const std::string& value);

    double effective_snr_db() const;
    int effective_drop_slots() const;
};

// Flat `key = value` lines; '#' starts a comment; blank lines ignored.
SimConfig parse_config(std::istream& in);
SimConfig load_config(const std::string& path);

// Keys accepted by SimConfig::set that hold numbers (valid sweep axes).
bool is_numeric_key(const std::string& key);

std::string scheme_name(SchemeKind kind);

// Scheme for one codeword allocation of the configured band. Throws
// CapacityError for infeasible (P, L, K) and ConfigError for layouts that do
// not divide evenly.
std::unique_ptr<Scheme> make_scheme(const SimConfig& cfg);

// One CSV/JSON row.
struct ResultRow {
    std::string scheme;
    int n_prb = 0;
    int K = 0;
    int L = 0;
    double alpha = 0.0;
    int L_prime = 0;
    int R = 0;
    int T_R = 0;
    std::string feedback;
    double snr_db = 0.0;
    std::int64_t trials = 0;
    std::int64_t block_errors = 0;
    double bler = 0.0;
    double bler_ci95 = 0.0;
    double throughput_bits_per_slot = 0.0;
    double avg_tx_per_codeword = 0.0;
    std::uint64_t seed = 0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct SimResult {
    ResultRow row;
    std::int64_t window_slots = 0;
    std::int64_t res_consumed = 0;
    std::int64_t successful_bits = 0;
    double throughput_bits_per_re = 0.0;
    std::map<int, std::int64_t> tx_histogram;  // transmissions -> codewords
    double wall_time_s = 0.0;
};

SimResult run_campaign(const SimConfig& cfg);

// One campaign per value of a numeric key.
std::vector<SimResult> sweep(const SimConfig& base, const std::string& axis, const std::vector<std::string>& values);

enum class ResultFormat { kCsv, kJson };

extern const char* const kCsvHeader;

std::string format_results(const std::vector<SimResult>& results, ResultFormat format);

// Throws std::runtime_error when the path cannot be written.
void emit_results(const std::vector<SimResult>& results, ResultFormat format, const std::string& path);

std::vector<ResultRow> parse_results_json(const std::string& text);

}  // namespace zcssc
