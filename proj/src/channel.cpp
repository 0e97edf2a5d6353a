#include "zcssc/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "zcssc/errors.hpp"

namespace zcssc {

double snr_from_budget(const LinkBudget& b) {
    if (b.n_prb < 1) throw ParameterError("n_prb must be >= 1");
    return b.cnr_db - 10.0 * std::log10(static_cast<double>(b.n_prb));
}

ComplexSeq sample_fading(const FadingProcess& fp, int n_slots, std::uint64_t seed) {
    if (n_slots < 1) throw ParameterError("sample_fading: n_slots must be >= 1");
    if (fp.doppler_hz < 0.0 || fp.slot_duration_s <= 0.0) throw ParameterError("invalid fading parameters");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);

    double los_amp = 1.0;
    double scatter_amp = 0.0;
    if (!std::isinf(fp.k_factor_db) || fp.k_factor_db < 0.0) {
        const double k = std::pow(10.0, fp.k_factor_db / 10.0);
        los_amp = std::sqrt(k / (k + 1.0));
        scatter_amp = std::sqrt(1.0 / (k + 1.0));
    }

    const double x = 2.0 * std::numbers::pi * fp.doppler_hz * fp.slot_duration_s;
    const double phase_step = x;
    const double rho = std::cyl_bessel_j(0.0, x);
    const double innovation = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    const double half = std::sqrt(0.5);

    double phi = uniform(rng);
    cplx g{gauss(rng) * half, gauss(rng) * half};
    ComplexSeq h(static_cast<std::size_t>(n_slots));
    for (int t = 0; t < n_slots; ++t) {
        if (t > 0) {
            phi += phase_step * gauss(rng);
            const cplx w{gauss(rng) * half, gauss(rng) * half};
            g = rho * g + innovation * w;
        }
        h[t] = los_amp * std::polar(1.0, phi) + scatter_amp * g;
    }
    return h;
}

double noise_variance(double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0.0) return 0.0;
    return std::pow(10.0, -snr_db / 10.0);
}

ComplexSeq transmit(std::span<const cplx> symbols, cplx h, double snr_db, std::uint64_t seed) {
    const double sigma = std::sqrt(noise_variance(snr_db) / 2.0);
    ComplexSeq y(symbols.size());
    if (sigma == 0.0) {
        for (std::size_t i = 0; i < symbols.size(); ++i) y[i] = h * symbols[i];
        return y;
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, sigma);
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        y[i] = h * symbols[i] + cplx{re, im};
    }
    return y;
}

}  // namespace zcssc
