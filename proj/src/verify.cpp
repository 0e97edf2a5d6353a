#include "zcssc/verify.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "zcssc/channel.hpp"
#include "zcssc/codec.hpp"
#include "zcssc/link.hpp"
#include "zcssc/seeding.hpp"

namespace zcssc {

namespace {

bool zc_identities() {
    for (int p : {11, 31, 127}) {
        for (int r = 1; r < p; ++r) {
            const ComplexSeq z = zc_sequence(ZcRoot(p, r));
            for (const auto& v : z) {
                if (std::abs(std::abs(v) - 1.0) > 1e-12) return false;
            }
            const ComplexSeq auto_corr = correlate_all_shifts(z, ZcRoot(p, r));
            for (int s = 1; s < p; ++s) {
                if (std::abs(auto_corr[s]) >= 1e-9 * p) return false;
            }
            const int other = r % (p - 1) + 1;
            const ComplexSeq cross = correlate_all_shifts(z, ZcRoot(p, other));
            for (const auto& v : cross) {
                if (std::abs(std::abs(v) - std::sqrt(static_cast<double>(p))) > 1e-9 * p) return false;
            }
        }
    }
    return true;
}

bool fft_matches_direct() {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    Correlator corr;
    for (int p : {127, 331}) {
        for (int trial = 0; trial < 10; ++trial) {
            ComplexSeq y(static_cast<std::size_t>(p));
            for (auto& v : y) v = {g(rng), g(rng)};
            const ZcRoot root(p, 1 + trial % (p - 1));
            const ComplexSeq a = corr.correlate(y, root, Correlator::Method::kFft);
            const ComplexSeq b = corr.correlate(y, root, Correlator::Method::kDirect);
            double num = 0, den = 0;
            for (int k = 0; k < p; ++k) {
                num += std::norm(a[k] - b[k]);
                den += std::norm(b[k]);
            }
            if (std::sqrt(num / den) > 1e-9) return false;
        }
    }
    return true;
}

bool noiseless_round_trip() {
    const DictionarySpec spec = DictionarySpec::build(31, 2, 16);
    DecoderConfig dec;
    dec.alpha = 0.5;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Message m = random_message(16, derive_seed(99, {i}));
        const cplx h = std::polar(1.0, 0.37 * static_cast<double>(i));
        ComplexSeq plain = encode(spec, m).symbols;
        ComplexSeq ind = encode_with_indication(spec, m, 0.5).symbols;
        for (auto& v : plain) v *= h;
        for (auto& v : ind) v *= h;
        const DecodeResult a = decode_full_correlation(spec, plain);
        const DecodeResult b = decode_with_indication(spec, dec, ind);
        if (!a.message || *a.message != m || !b.message || *b.message != m) return false;
    }
    return true;
}

bool budget() {
    return std::abs(snr_from_budget({-2.15, 80}) - (-2.15 - 10.0 * std::log10(80.0))) < 1e-12 &&
           std::abs(snr_from_budget({-2.15, 80}) - (-21.18)) < 0.005 &&
           std::abs(snr_from_budget({-2.15, 160}) - (-24.19)) < 0.005;
}

}  // namespace

bool run_verification(std::ostream& out) {
    const std::pair<const char*, std::function<bool()>> checks[] = {
        {"zc identities (unit modulus, ideal autocorrelation, sqrt(P) cross-correlation)", zc_identities},
        {"fft correlation matches direct sum", fft_matches_direct},
        {"noiseless round trip, both decoders, random phase", noiseless_round_trip},
        {"snr budget at 80/160 PRB", budget},
    };
    bool all = true;
    for (const auto& [name, fn] : checks) {
        const bool ok = fn();
        all = all && ok;
        out << (ok ? "PASS  " : "FAIL  ") << name << '\n';
    }
    return all;
}

}  // namespace zcssc
