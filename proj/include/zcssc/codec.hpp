#pragma once

// ZC-QO-SSC encoder/decoder: plain superposition, superposition with embedded
// data-root indication, rate matching to the RE count and frequency-first
// grid mapping.

#include <optional>
#include <span>
#include <vector>

#include "zcssc/dictionary.hpp"
#include "zcssc/zc_core.hpp"

namespace zcssc {

struct Codeword {
    ComplexSeq symbols;
    double alpha = 1.0;  // share of power on data sequences; 1 means no indicators
};

// c[k] = (1/sqrt(L)) * sum_l z_{r_l}((k + s_l) mod P)
Codeword encode(const DictionarySpec& spec, const Message& m);

// Adds one indicator per data sequence: the reserved-root sequence cyclically
// shifted by that sequence's root index. Requires 0 < alpha < 1.
Codeword encode_with_indication(const DictionarySpec& spec, const Message& m, double alpha);

struct RateMatchedWord {
    enum class Mode { kExtended, kPunctured };
    ComplexSeq symbols;
    int length = 0;  // underlying codeword length P
    Mode mode = Mode::kExtended;
};

// Cyclic extension (symbols[k] = c[k mod P]) when M >= P, tail puncturing otherwise.
RateMatchedWord rate_match(const Codeword& c, int num_res);

// Inverse of rate_match: extension copies are summed coherently, punctured
// positions are zero.
ComplexSeq derate_match(std::span<const cplx> received, int length);

// Frequency-first OFDM grid: symbol i sits on subcarrier i % n_sc of OFDM
// symbol i / n_sc.
class ResourceGrid {
public:
    ResourceGrid(int num_subcarriers, int num_symbols);

    int num_subcarriers() const { return num_subcarriers_; }
    int num_symbols() const { return num_symbols_; }
    int size() const { return num_subcarriers_ * num_symbols_; }

    cplx& at(int subcarrier, int symbol);
    const cplx& at(int subcarrier, int symbol) const;

    std::span<cplx> elements() { return res_; }
    std::span<const cplx> elements() const { return res_; }

private:
    int num_subcarriers_;
    int num_symbols_;
    std::vector<cplx> res_;  // symbol-major storage
};

ResourceGrid map_to_grid(std::span<const cplx> symbols, int num_subcarriers, int num_symbols);
ComplexSeq grid_to_vector(const ResourceGrid& grid);

struct DecoderConfig {
    int l_prime = 7;     // indicator-shift candidates kept
    double alpha = 0.5;  // power split the transmitter used

    // Test hook: skip indicator detection and run the data stage on exactly
    // these roots (one per section, processed in the given order). With
    // alpha == 1 no phase rotation or indicator cancellation is applied.
    std::optional<std::vector<int>> forced_roots;
};

struct IndicatorPeak {
    int shift = 0;
    cplx value;  // <y, z_rbar(. + shift)>
};

struct DecodeResult {
    std::optional<Message> message;  // empty on decode failure
    SparseSelection selection;
    cplx channel_estimate;           // unnormalized
    double residual_energy = 0.0;
    double total_energy = 0.0;
    int candidates_examined = 0;
    int correlation_calls = 0;       // all-shift correlations performed
};

// Per-stage correlation record, filled on request for oracle checks.
struct DecodeTrace {
    struct Stage {
        int root = 0;
        ComplexSeq correlation;  // correlation of the signal entering this stage
        int detected_shift = 0;
        cplx amplitude;          // LS amplitude subtracted after detection
    };
    std::vector<Stage> stages;   // for the selected candidate (or the full-correlation sections)
};

// Reference decoder: per-section argmax of |xi| over every valid column.
DecodeResult decode_full_correlation(const DictionarySpec& spec, std::span<const cplx> y,
                                     DecodeTrace* trace = nullptr);

// The l_prime reserved-root shifts with largest correlation magnitude,
// restricted to shifts that are data roots; sorted by descending magnitude.
std::vector<IndicatorPeak> detect_indicator_shifts(const DictionarySpec& spec,
                                                   std::span<const cplx> y, int l_prime);

// hhat = sum_l <y, z_rbar(. + shift_l)>; only its phase is meaningful.
cplx estimate_channel(std::span<const cplx> y, std::span<const int> indicator_shifts,
                      int indicator_root);

// Indicator detection, per-subset phase estimate, coherent SIC and
// minimum-residual candidate selection.
DecodeResult decode_with_indication(const DictionarySpec& spec, const DecoderConfig& cfg,
                                    std::span<const cplx> y, DecodeTrace* trace = nullptr);

}  // namespace zcssc
