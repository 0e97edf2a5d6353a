#pragma once

// Prime-length Zadoff-Chu sequences and all-shift circular correlation.

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace zcssc {

using cplx = std::complex<double>;
using ComplexSeq = std::vector<cplx>;

bool is_prime(std::uint64_t n);

// Largest prime <= m. Throws ParameterError for m < 2.
std::int64_t largest_prime_leq(std::int64_t m);

// Root index of a prime-length ZC sequence. Construction validates that the
// length is prime and 1 <= r <= P-1.
class ZcRoot {
public:
    ZcRoot(int length, int root);

    int length() const { return length_; }
    int root() const { return root_; }

    friend bool operator==(const ZcRoot&, const ZcRoot&) = default;

private:
    int length_;
    int root_;
};

// z_r(k) = exp(-j*pi*r*k*(k+1)/P), k = 0..P-1.
ComplexSeq zc_sequence(const ZcRoot& root);

// output[k] = seq[(k + shift) mod P]
ComplexSeq cyclic_shift(std::span<const cplx> seq, int shift);

// Reference point for the all-shift correlation: output[s] = sum_k
// received[k] * conj(z_r((k + s) mod P)).
ComplexSeq correlate_all_shifts_direct(std::span<const cplx> received, const ZcRoot& root);

// Per-worker correlation engine. Holds FFT plans and a cache of reference
// spectra, so an instance must not be shared between threads.
class Correlator {
public:
    enum class Method { kAuto, kFft, kDirect };

    // Lengths at or below this use the direct O(P^2) sum under kAuto.
    static constexpr int kDirectThreshold = 16;

    Correlator();
    ~Correlator();
    Correlator(const Correlator&) = delete;
    Correlator& operator=(const Correlator&) = delete;

    ComplexSeq correlate(std::span<const cplx> received, const ZcRoot& root,
                         Method method = Method::kAuto);

    // Unit-magnitude samples of z_r, cached per (P, r).
    const ComplexSeq& sequence(const ZcRoot& root);

private:
    struct Plan;
    Plan& plan_for(int length);
    static int transform_length(int p);
    const ComplexSeq& conj_spectrum(const ZcRoot& root);

    std::map<int, std::unique_ptr<Plan>> plans_;
    std::map<std::pair<int, int>, ComplexSeq> sequences_;
    std::map<std::pair<int, int>, ComplexSeq> spectra_;
};

// Thread-local Correlator instance.
Correlator& thread_correlator();

// Convenience wrapper over thread_correlator().correlate(...).
ComplexSeq correlate_all_shifts(std::span<const cplx> received, const ZcRoot& root);

}  // namespace zcssc
