#include "zcssc/scheme.hpp"

#include "zcssc/errors.hpp"

namespace zcssc {

SscScheme::SscScheme(int num_subcarriers, int num_symbols, int sparsity, int info_bits, bool indicated,
                     DecoderConfig decoder)
    : num_res_(num_subcarriers * num_symbols),
      spec_(DictionarySpec::build(static_cast<int>(largest_prime_leq(num_subcarriers * num_symbols)), sparsity,
                                  info_bits)),
      indicated_(indicated),
      decoder_(std::move(decoder)) {
    if (num_subcarriers < 1 || num_symbols < 1) throw ParameterError("allocation must be non-empty");
    if (indicated_ && !(decoder_.alpha > 0.0 && decoder_.alpha < 1.0)) {
        throw ParameterError("indicated SSC needs 0 < alpha < 1");
    }
}

ComplexSeq SscScheme::modulate(const Message& m) const {
    const Codeword c = indicated_ ? encode_with_indication(spec_, m, decoder_.alpha) : encode(spec_, m);
    return rate_match(c, num_res_).symbols;
}

ComplexSeq SscScheme::prepare(std::span<const cplx> res) const {
    if (static_cast<int>(res.size()) != num_res_) throw ParameterError("received RE count mismatch");
    return derate_match(res, spec_.length());
}

DecodeResult SscScheme::decode(std::span<const cplx> prepared) const {
    return indicated_ ? decode_with_indication(spec_, decoder_, prepared) : decode_full_correlation(spec_, prepared);
}

}  // namespace zcssc
