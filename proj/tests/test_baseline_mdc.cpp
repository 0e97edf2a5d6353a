#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "zcssc/baseline_mdc.hpp"
#include "zcssc/errors.hpp"

using namespace zcssc;

namespace {

Message random_bits(std::mt19937_64& rng, int bits) {
    Message m;
    for (int i = 0; i < bits; ++i) m.bits.push_back(static_cast<std::uint8_t>(rng() & 1u));
    return m;
}

}  // namespace

TEST_CASE("single segment equals the L = 1 codec") {
    const MdcConfig cfg{12, 14, 1, 12};
    const DictionarySpec spec = mdc_segment_spec(cfg);
    CHECK(spec.length() == 167);
    CHECK(spec.sparsity() == 1);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 50; ++t) {
        const Message m = random_bits(rng, 12);
        const auto words = mdc_encode(cfg, m);
        REQUIRE(words.size() == 1);
        CHECK(words[0].symbols == encode(spec, m).symbols);
        CHECK(mdc_modulate(cfg, m) == rate_match(encode(spec, m), 168).symbols);

        const ComplexSeq prepared = mdc_prepare(cfg, mdc_modulate(cfg, m));
        const DecodeResult a = mdc_decode(cfg, prepared);
        const DecodeResult b = decode_full_correlation(spec, prepared);
        CHECK(a.selection == b.selection);
        CHECK(a.message == b.message);
        CHECK(a.message == m);
    }
}

TEST_CASE("segment placement follows the subcarrier split") {
    const MdcConfig cfg{24, 14, 2, 14};
    std::mt19937_64 rng(2);
    const Message m = random_bits(rng, 28);
    const ComplexSeq res = mdc_modulate(cfg, m);
    const auto words = mdc_encode(cfg, m);
    const auto seg0 = rate_match(words[0], 168).symbols;
    const auto seg1 = rate_match(words[1], 168).symbols;
    // frequency-first over the full band: RE (sc, os) sits at os * 24 + sc
    for (int os = 0; os < 14; ++os) {
        for (int sc = 0; sc < 12; ++sc) {
            CHECK(res[os * 24 + sc] == seg0[os * 12 + sc]);
            CHECK(res[os * 24 + 12 + sc] == seg1[os * 12 + sc]);
        }
    }
    // segment codewords are oracle L = 1 columns
    const DictionarySpec spec = mdc_segment_spec(cfg);
    const auto pairs = map_message(spec, Message{{m.bits.begin(), m.bits.begin() + 14}}).pairs;
    CHECK(oracle::relative_error(words[0].symbols, oracle::column(167, pairs[0].root, pairs[0].shift)) < 1e-12);
}

TEST_CASE("noiseless round trip and phase invariance") {
    const MdcConfig small{10, 1, 2, 3};  // P = 5, b = 3 needs 2 roots
    CHECK(mdc_segment_spec(small).length() == 5);
    for (std::uint64_t v = 0; v < 64; ++v) {
        Message m;
        for (int i = 5; i >= 0; --i) m.bits.push_back(static_cast<std::uint8_t>((v >> i) & 1u));
        const ComplexSeq res = mdc_modulate(small, m);
        CHECK(mdc_decode(small, mdc_prepare(small, res)).message == m);
    }

    const MdcConfig cfg{24, 14, 2, 14};
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const Message m = random_bits(rng, 28);
        ComplexSeq res = mdc_modulate(cfg, m);
        const DecodeResult plain = mdc_decode(cfg, mdc_prepare(cfg, res));
        CHECK(plain.message == m);
        for (auto& v : res) v *= std::polar(2.0, 0.7 * t);
        CHECK(mdc_decode(cfg, mdc_prepare(cfg, res)).selection == plain.selection);
    }
}

TEST_CASE("segments decode independently") {
    const MdcConfig cfg{24, 14, 2, 14};
    std::mt19937_64 rng(4);
    std::normal_distribution<double> n;
    for (int t = 0; t < 30; ++t) {
        const Message m = random_bits(rng, 28);
        ComplexSeq res = mdc_modulate(cfg, m);
        // replace segment 0 by strong noise
        for (int os = 0; os < 14; ++os) {
            for (int sc = 0; sc < 12; ++sc) res[os * 24 + sc] = cplx(n(rng), n(rng)) * 10.0;
        }
        const DecodeResult r = mdc_decode(cfg, mdc_prepare(cfg, res));
        REQUIRE(r.selection.pairs.size() == 2);
        const DictionarySpec spec = mdc_segment_spec(cfg);
        const auto truth1 = map_message(spec, Message{{m.bits.begin() + 14, m.bits.end()}}).pairs[0];
        CHECK(r.selection.pairs[1] == truth1);
    }
}

TEST_CASE("MDC capacity and layout errors") {
    // 16 bits per 168-RE segment need ceil(65536 / 167) = 393 roots
    CHECK_THROWS_AS(mdc_segment_spec(MdcConfig{24, 14, 2, 16}), CapacityError);
    CHECK_THROWS_AS(MdcScheme(MdcConfig{24, 14, 2, 16}), CapacityError);
    CHECK_THROWS_AS(mdc_segment_spec(MdcConfig{25, 14, 2, 8}), ParameterError);
    CHECK_NOTHROW(MdcScheme(MdcConfig{24, 14, 2, 14}));
    CHECK_THROWS_AS(mdc_encode(MdcConfig{24, 14, 2, 14}, Message::from_string("1")), ParameterError);
}
