#include "zcssc/zc_core.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "zcssc/errors.hpp"

namespace zcssc {

namespace {

// fftw planner calls are not thread-safe; execution on plan-owned buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

std::int64_t largest_prime_leq(std::int64_t m) {
    if (m < 2) throw ParameterError("largest_prime_leq: m must be >= 2, got " + std::to_string(m));
    for (std::int64_t n = m;; --n) {
        if (is_prime(static_cast<std::uint64_t>(n))) return n;
    }
}

ZcRoot::ZcRoot(int length, int root) : length_(length), root_(root) {
    if (length < 2 || !is_prime(static_cast<std::uint64_t>(length))) {
        throw ParameterError("ZC length must be prime, got " + std::to_string(length));
    }
    if (root < 1 || root > length - 1) {
        throw ParameterError("ZC root " + std::to_string(root) + " outside [1, " +
                             std::to_string(length - 1) + "]");
    }
}

ComplexSeq zc_sequence(const ZcRoot& root) {
    const std::int64_t p = root.length();
    const std::int64_t r = root.root();
    ComplexSeq out(static_cast<std::size_t>(p));
    for (std::int64_t k = 0; k < p; ++k) {
        // r*k*(k+1) reduced mod 2P keeps the phase argument small and exact.
        const std::int64_t e = (r * ((k * (k + 1)) % (2 * p))) % (2 * p);
        const double phase = -std::numbers::pi * static_cast<double>(e) / static_cast<double>(p);
        out[static_cast<std::size_t>(k)] = std::polar(1.0, phase);
    }
    return out;
}

ComplexSeq cyclic_shift(std::span<const cplx> seq, int shift) {
    const auto p = static_cast<int>(seq.size());
    if (shift < 0 || shift >= p) {
        throw ParameterError("cyclic shift " + std::to_string(shift) + " outside [0, " +
                             std::to_string(p) + ")");
    }
    ComplexSeq out(seq.size());
    for (int k = 0; k < p; ++k) out[k] = seq[(k + shift) % p];
    return out;
}

ComplexSeq correlate_all_shifts_direct(std::span<const cplx> received, const ZcRoot& root) {
    const int p = root.length();
    if (static_cast<int>(received.size()) != p) {
        throw ParameterError("correlate: received length " + std::to_string(received.size()) +
                             " != P = " + std::to_string(p));
    }
    const ComplexSeq z = zc_sequence(root);
    ComplexSeq out(static_cast<std::size_t>(p));
    for (int s = 0; s < p; ++s) {
        cplx acc{};
        for (int k = 0; k < p; ++k) acc += received[k] * std::conj(z[(k + s) % p]);
        out[s] = acc;
    }
    return out;
}

struct Correlator::Plan {
    explicit Plan(int n) : length(n) {
        buf = fftw_alloc_complex(static_cast<std::size_t>(n));
        std::lock_guard lock(planner_mutex());
        // FFTW_ESTIMATE keeps the chosen algorithm (and so the rounding) identical run to run.
        forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(forward);
        fftw_free(buf);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    cplx* data() { return reinterpret_cast<cplx*>(buf); }

    int length;
    fftw_complex* buf = nullptr;
    fftw_plan forward = nullptr;
};

Correlator::Correlator() = default;
Correlator::~Correlator() = default;

Correlator::Plan& Correlator::plan_for(int length) {
    auto it = plans_.find(length);
    if (it == plans_.end()) it = plans_.emplace(length, std::make_unique<Plan>(length)).first;
    return *it->second;
}

const ComplexSeq& Correlator::sequence(const ZcRoot& root) {
    const auto key = std::make_pair(root.length(), root.root());
    auto it = sequences_.find(key);
    if (it == sequences_.end()) it = sequences_.emplace(key, zc_sequence(root)).first;
    return it->second;
}

int Correlator::transform_length(int p) {
    int n = 1;
    while (n < 2 * p - 1) n <<= 1;
    return n;
}

const ComplexSeq& Correlator::conj_spectrum(const ZcRoot& root) {
    const auto key = std::make_pair(root.length(), root.root());
    auto it = spectra_.find(key);
    if (it != spectra_.end()) return it->second;
    // w[m] = conj(z[m mod P]) for m < 2P-1, zero-padded to a power of two
    const int p = root.length();
    const ComplexSeq& z = sequence(root);
    Plan& plan = plan_for(transform_length(p));
    cplx* buf = plan.data();
    std::fill(buf, buf + plan.length, cplx{});
    for (int m = 0; m < 2 * p - 1; ++m) buf[m] = std::conj(z[m % p]);
    fftw_execute(plan.forward);
    ComplexSeq spec(buf, buf + plan.length);
    for (auto& v : spec) v = std::conj(v);
    return spectra_.emplace(key, std::move(spec)).first->second;
}

ComplexSeq Correlator::correlate(std::span<const cplx> received, const ZcRoot& root, Method method) {
    const int p = root.length();
    if (static_cast<int>(received.size()) != p) {
        throw ParameterError("correlate: received length " + std::to_string(received.size()) +
                             " != P = " + std::to_string(p));
    }
    if (method == Method::kAuto) method = p <= kDirectThreshold ? Method::kDirect : Method::kFft;

    if (method == Method::kDirect) {
        // Spelled out in real arithmetic: std::complex operator* carries
        // inf/nan recovery that dominates the cost at these lengths.
        const ComplexSeq& z = sequence(root);
        ComplexSeq out(static_cast<std::size_t>(p));
        for (int s = 0; s < p; ++s) {
            double re = 0.0, im = 0.0;
            int idx = s;
            for (int k = 0; k < p; ++k) {
                const double yr = received[k].real(), yi = received[k].imag();
                const double zr = z[idx].real(), zi = z[idx].imag();
                re += yr * zr + yi * zi;
                im += yi * zr - yr * zi;
                if (++idx == p) idx = 0;
            }
            out[s] = {re, im};
        }
        return out;
    }

    // Cyclic correlation as a linear one against the periodically extended
    // conj(z): c[s] = sum_m w[m] y[m - s]. Power-of-two transforms are far
    // cheaper than prime-length ones. With one forward plan:
    // c = conj(FFT(FFT(conj(y)) . conj(W))) / N.
    const ComplexSeq& wspec = conj_spectrum(root);
    Plan& plan = plan_for(transform_length(p));
    const int n = plan.length;
    cplx* buf = plan.data();
    for (int k = 0; k < p; ++k) buf[k] = std::conj(received[k]);
    std::fill(buf + p, buf + n, cplx{});
    fftw_execute(plan.forward);
    for (int f = 0; f < n; ++f) {
        const double a = buf[f].real(), b = buf[f].imag();
        const double c = wspec[f].real(), d = wspec[f].imag();
        buf[f] = {a * c - b * d, a * d + b * c};
    }
    fftw_execute(plan.forward);
    const double scale = 1.0 / n;
    ComplexSeq out(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) out[k] = std::conj(buf[k]) * scale;
    return out;
}

Correlator& thread_correlator() {
    thread_local Correlator instance;
    return instance;
}

ComplexSeq correlate_all_shifts(std::span<const cplx> received, const ZcRoot& root) {
    return thread_correlator().correlate(received, root);
}

}  // namespace zcssc
