#pragma once

// Link budget, flat Rician block fading with Doppler phase drift, and AWGN.

#include <cstdint>
#include <span>

#include "zcssc/zc_core.hpp"

namespace zcssc {

struct LinkBudget {
    double cnr_db = -2.15;  // at the 1-PRB reference bandwidth
    int n_prb = 1;
};

// Fixed transmit power spread over n_prb PRBs: cnr_db - 10*log10(n_prb).
double snr_from_budget(const LinkBudget& b);

struct FadingProcess {
    double k_factor_db = 10.0;       // +inf gives a pure line-of-sight path
    double doppler_hz = 5.6;         // 3 km/h at 2 GHz
    double slot_duration_s = 1e-3;
};

// Per-slot gains h_t = sqrt(K/(K+1)) e^{j phi_t} + sqrt(1/(K+1)) g_t.
// phi_t is a random walk with increment std 2*pi*doppler*slot (uniform
// start); g_t is AR(1) complex Gaussian with lag-one coefficient
// J0(2*pi*doppler*slot). Deterministic in seed.
ComplexSeq sample_fading(const FadingProcess& fp, int n_slots, std::uint64_t seed);

// Noise variance for a per-RE SNR (unit signal power). Zero for +inf.
double noise_variance(double snr_db);

// y[i] = h * x[i] + n[i], n ~ CN(0, 10^(-snr_db/10)).
ComplexSeq transmit(std::span<const cplx> symbols, cplx h, double snr_db, std::uint64_t seed);

}  // namespace zcssc
