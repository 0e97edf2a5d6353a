#pragma once

// A transmission scheme maps a message onto the REs of one codeword
// allocation and back. The link layer drives schemes through this interface.

#include <memory>
#include <span>

#include "zcssc/codec.hpp"

namespace zcssc {

class Scheme {
public:
    virtual ~Scheme() = default;

    virtual int info_bits() const = 0;
    virtual int num_res() const = 0;

    // Message -> M REs in frequency-first order of the allocation.
    virtual ComplexSeq modulate(const Message& m) const = 0;

    // Received REs -> decoder-domain vector (rate matching undone). Copies of
    // one codeword are combined in this domain.
    virtual ComplexSeq prepare(std::span<const cplx> res) const = 0;

    virtual DecodeResult decode(std::span<const cplx> prepared) const = 0;
};

// ZC-QO-SSC over one allocation of num_subcarriers x num_symbols REs, with
// codeword length the largest prime not above the RE count.
class SscScheme final : public Scheme {
public:
    SscScheme(int num_subcarriers, int num_symbols, int sparsity, int info_bits, bool indicated,
              DecoderConfig decoder);

    int info_bits() const override { return spec_.info_bits(); }
    int num_res() const override { return num_res_; }
    const DictionarySpec& spec() const { return spec_; }
    bool indicated() const { return indicated_; }

    ComplexSeq modulate(const Message& m) const override;
    ComplexSeq prepare(std::span<const cplx> res) const override;
    DecodeResult decode(std::span<const cplx> prepared) const override;

private:
    int num_res_;
    DictionarySpec spec_;
    bool indicated_;
    DecoderConfig decoder_;
};

}  // namespace zcssc
