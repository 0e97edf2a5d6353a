#include "zcssc/baseline_mdc.hpp"

#include <string>

#include "zcssc/errors.hpp"

namespace zcssc {

namespace {

void check_layout(const MdcConfig& cfg) {
    if (cfg.segments < 1) throw ParameterError("MDC needs at least one segment");
    if (cfg.num_subcarriers < 1 || cfg.num_symbols < 1) throw ParameterError("MDC allocation must be non-empty");
    if (cfg.num_subcarriers % cfg.segments != 0) {
        throw ParameterError(std::to_string(cfg.num_subcarriers) + " subcarriers do not split into " +
                             std::to_string(cfg.segments) + " segments");
    }
}

// RE index in the allocation's frequency-first order of symbol i of segment j.
int allocation_index(const MdcConfig& cfg, int segment, int i) {
    const int width = cfg.segment_subcarriers();
    const int sc = segment * width + i % width;
    const int os = i / width;
    return os * cfg.num_subcarriers + sc;
}

}  // namespace

DictionarySpec mdc_segment_spec(const MdcConfig& cfg) {
    check_layout(cfg);
    const int p = static_cast<int>(largest_prime_leq(cfg.segment_res()));
    return DictionarySpec::build(p, 1, cfg.bits_per_segment);
}

std::vector<Codeword> mdc_encode(const MdcConfig& cfg, const Message& m) {
    const DictionarySpec spec = mdc_segment_spec(cfg);
    if (static_cast<int>(m.bits.size()) != cfg.info_bits()) {
        throw ParameterError("MDC message has " + std::to_string(m.bits.size()) + " bits, expected " +
                             std::to_string(cfg.info_bits()));
    }
    std::vector<Codeword> out;
    for (int j = 0; j < cfg.segments; ++j) {
        Message part;
        const auto first = m.bits.begin() + static_cast<std::ptrdiff_t>(j) * cfg.bits_per_segment;
        part.bits.assign(first, first + cfg.bits_per_segment);
        out.push_back(encode(spec, part));
    }
    return out;
}

ComplexSeq mdc_modulate(const MdcConfig& cfg, const Message& m) {
    const std::vector<Codeword> words = mdc_encode(cfg, m);
    ComplexSeq res(static_cast<std::size_t>(cfg.num_subcarriers * cfg.num_symbols));
    for (int j = 0; j < cfg.segments; ++j) {
        const RateMatchedWord w = rate_match(words[j], cfg.segment_res());
        for (int i = 0; i < cfg.segment_res(); ++i) res[allocation_index(cfg, j, i)] = w.symbols[i];
    }
    return res;
}

ComplexSeq mdc_prepare(const MdcConfig& cfg, std::span<const cplx> res) {
    const DictionarySpec spec = mdc_segment_spec(cfg);
    if (static_cast<int>(res.size()) != cfg.num_subcarriers * cfg.num_symbols) {
        throw ParameterError("MDC received RE count mismatch");
    }
    ComplexSeq out;
    out.reserve(static_cast<std::size_t>(cfg.segments * spec.length()));
    ComplexSeq seg(static_cast<std::size_t>(cfg.segment_res()));
    for (int j = 0; j < cfg.segments; ++j) {
        for (int i = 0; i < cfg.segment_res(); ++i) seg[i] = res[allocation_index(cfg, j, i)];
        const ComplexSeq y = derate_match(seg, spec.length());
        out.insert(out.end(), y.begin(), y.end());
    }
    return out;
}

DecodeResult mdc_decode(const MdcConfig& cfg, std::span<const cplx> prepared) {
    const DictionarySpec spec = mdc_segment_spec(cfg);
    const auto p = static_cast<std::size_t>(spec.length());
    if (prepared.size() != p * static_cast<std::size_t>(cfg.segments)) {
        throw ParameterError("MDC decoder input length mismatch");
    }
    DecodeResult res;
    Message msg;
    bool ok = true;
    for (int j = 0; j < cfg.segments; ++j) {
        const DecodeResult part = decode_full_correlation(spec, prepared.subspan(j * p, p));
        res.selection.pairs.insert(res.selection.pairs.end(), part.selection.pairs.begin(),
                                   part.selection.pairs.end());
        res.channel_estimate += part.channel_estimate;
        res.residual_energy += part.residual_energy;
        res.total_energy += part.total_energy;
        res.candidates_examined += part.candidates_examined;
        res.correlation_calls += part.correlation_calls;
        if (part.message) {
            msg.bits.insert(msg.bits.end(), part.message->bits.begin(), part.message->bits.end());
        } else {
            ok = false;
        }
    }
    if (ok) res.message = std::move(msg);
    return res;
}

MdcScheme::MdcScheme(MdcConfig cfg) : cfg_(cfg) { mdc_segment_spec(cfg_); }

}  // namespace zcssc
