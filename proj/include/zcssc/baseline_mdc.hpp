#pragma once

// MDC baseline: the message is split into `segments` independent L = 1
// codewords, segment j occupying the j-th block of subcarriers across all
// OFDM symbols of the allocation.

#include <span>
#include <vector>

#include "zcssc/scheme.hpp"

namespace zcssc {

struct MdcConfig {
    int num_subcarriers = 24;  // 12 * n_prb
    int num_symbols = 14;
    int segments = 2;
    int bits_per_segment = 14;

    int segment_subcarriers() const { return num_subcarriers / segments; }
    int segment_res() const { return segment_subcarriers() * num_symbols; }
    int info_bits() const { return segments * bits_per_segment; }
};

// L = 1 dictionary used by every segment. Throws CapacityError when
// bits_per_segment does not fit, ParameterError on an uneven split.
DictionarySpec mdc_segment_spec(const MdcConfig& cfg);

std::vector<Codeword> mdc_encode(const MdcConfig& cfg, const Message& m);

// Full allocation REs (frequency-first) for a message.
ComplexSeq mdc_modulate(const MdcConfig& cfg, const Message& m);

// Rate-matching undone per segment; segments concatenated.
ComplexSeq mdc_prepare(const MdcConfig& cfg, std::span<const cplx> res);

// Per-segment non-coherent argmax over all columns.
DecodeResult mdc_decode(const MdcConfig& cfg, std::span<const cplx> prepared);

class MdcScheme final : public Scheme {
public:
    explicit MdcScheme(MdcConfig cfg);

    int info_bits() const override { return cfg_.info_bits(); }
    int num_res() const override { return cfg_.num_subcarriers * cfg_.num_symbols; }
    const MdcConfig& config() const { return cfg_; }

    ComplexSeq modulate(const Message& m) const override { return mdc_modulate(cfg_, m); }
    ComplexSeq prepare(std::span<const cplx> res) const override { return mdc_prepare(cfg_, res); }
    DecodeResult decode(std::span<const cplx> prepared) const override { return mdc_decode(cfg_, prepared); }

private:
    MdcConfig cfg_;
};

}  // namespace zcssc
