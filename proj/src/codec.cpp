#include "zcssc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "zcssc/errors.hpp"

namespace zcssc {

namespace {

double energy(std::span<const cplx> v) {
    double e = 0.0;
    for (const auto& x : v) e += std::norm(x);
    return e;
}

// <y, z(. + shift)> = sum_k y[k] * conj(z[(k + shift) mod P])
cplx inner_shifted(std::span<const cplx> y, const ComplexSeq& z, int shift) {
    const int p = static_cast<int>(z.size());
    cplx acc{};
    int idx = shift;
    for (int k = 0; k < p; ++k) {
        acc += y[k] * std::conj(z[idx]);
        if (++idx == p) idx = 0;
    }
    return acc;
}

// y[k] -= a * z[(k + shift) mod P]
void subtract_shifted(std::span<cplx> y, const ComplexSeq& z, int shift, cplx a) {
    const int p = static_cast<int>(z.size());
    int idx = shift;
    for (int k = 0; k < p; ++k) {
        y[k] -= a * z[idx];
        if (++idx == p) idx = 0;
    }
}

void add_shifted(std::span<cplx> c, const ComplexSeq& z, int shift, double a) {
    const int p = static_cast<int>(z.size());
    int idx = shift;
    for (int k = 0; k < p; ++k) {
        c[k] += a * z[idx];
        if (++idx == p) idx = 0;
    }
}

void check_length(const DictionarySpec& spec, std::span<const cplx> y) {
    if (static_cast<int>(y.size()) != spec.length()) {
        throw ParameterError("received length " + std::to_string(y.size()) + " != P = " +
                             std::to_string(spec.length()));
    }
}

std::optional<Message> try_unmap(const DictionarySpec& spec, const SparseSelection& sel) {
    try {
        return unmap_selection(spec, sel);
    } catch (const DecodeInvalid&) {
        return std::nullopt;
    }
}

}  // namespace

Codeword encode(const DictionarySpec& spec, const Message& m) {
    const SparseSelection sel = map_message(spec, m);
    Correlator& corr = thread_correlator();
    Codeword c;
    c.symbols.assign(static_cast<std::size_t>(spec.length()), cplx{});
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.sparsity()));
    for (const auto& [root, shift] : sel.pairs) {
        add_shifted(c.symbols, corr.sequence(ZcRoot(spec.length(), root)), shift, scale);
    }
    c.alpha = 1.0;
    return c;
}

Codeword encode_with_indication(const DictionarySpec& spec, const Message& m, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ParameterError("power split alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    const SparseSelection sel = map_message(spec, m);
    Correlator& corr = thread_correlator();
    const ComplexSeq& indicator = corr.sequence(ZcRoot(spec.length(), spec.indicator_root()));
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.sparsity()));
    const double data_amp = scale * std::sqrt(alpha);
    const double ind_amp = scale * std::sqrt(1.0 - alpha);

    Codeword c;
    c.symbols.assign(static_cast<std::size_t>(spec.length()), cplx{});
    for (const auto& [root, shift] : sel.pairs) {
        add_shifted(c.symbols, corr.sequence(ZcRoot(spec.length(), root)), shift, data_amp);
        add_shifted(c.symbols, indicator, root, ind_amp);
    }
    c.alpha = alpha;
    return c;
}

RateMatchedWord rate_match(const Codeword& c, int num_res) {
    if (num_res < 1) throw ParameterError("rate_match: M must be >= 1");
    const int p = static_cast<int>(c.symbols.size());
    RateMatchedWord w;
    w.length = p;
    w.mode = num_res >= p ? RateMatchedWord::Mode::kExtended : RateMatchedWord::Mode::kPunctured;
    w.symbols.resize(static_cast<std::size_t>(num_res));
    for (int k = 0; k < num_res; ++k) w.symbols[k] = c.symbols[k % p];
    return w;
}

ComplexSeq derate_match(std::span<const cplx> received, int length) {
    if (length < 1) throw ParameterError("derate_match: P must be >= 1");
    ComplexSeq out(static_cast<std::size_t>(length), cplx{});
    for (std::size_t i = 0; i < received.size(); ++i) out[i % static_cast<std::size_t>(length)] += received[i];
    return out;
}

ResourceGrid::ResourceGrid(int num_subcarriers, int num_symbols)
    : num_subcarriers_(num_subcarriers), num_symbols_(num_symbols) {
    if (num_subcarriers < 1 || num_symbols < 1) throw ParameterError("grid dimensions must be positive");
    res_.assign(static_cast<std::size_t>(num_subcarriers) * static_cast<std::size_t>(num_symbols), cplx{});
}

namespace {

std::size_t grid_index(int subcarrier, int symbol, int n_sc, int n_os) {
    if (subcarrier < 0 || subcarrier >= n_sc || symbol < 0 || symbol >= n_os) {
        throw ParameterError("grid position (" + std::to_string(subcarrier) + ", " + std::to_string(symbol) +
                             ") out of range");
    }
    return static_cast<std::size_t>(symbol) * static_cast<std::size_t>(n_sc) + static_cast<std::size_t>(subcarrier);
}

}  // namespace

cplx& ResourceGrid::at(int subcarrier, int symbol) {
    return res_[grid_index(subcarrier, symbol, num_subcarriers_, num_symbols_)];
}

const cplx& ResourceGrid::at(int subcarrier, int symbol) const {
    return res_[grid_index(subcarrier, symbol, num_subcarriers_, num_symbols_)];
}

ResourceGrid map_to_grid(std::span<const cplx> symbols, int num_subcarriers, int num_symbols) {
    ResourceGrid grid(num_subcarriers, num_symbols);
    if (static_cast<int>(symbols.size()) != grid.size()) {
        throw ParameterError("map_to_grid: " + std::to_string(symbols.size()) + " symbols for a " +
                             std::to_string(num_subcarriers) + "x" + std::to_string(num_symbols) + " grid");
    }
    for (int i = 0; i < grid.size(); ++i) grid.at(i % num_subcarriers, i / num_subcarriers) = symbols[i];
    return grid;
}

ComplexSeq grid_to_vector(const ResourceGrid& grid) {
    ComplexSeq out(static_cast<std::size_t>(grid.size()));
    const int n_sc = grid.num_subcarriers();
    for (int i = 0; i < grid.size(); ++i) out[i] = grid.at(i % n_sc, i / n_sc);
    return out;
}

DecodeResult decode_full_correlation(const DictionarySpec& spec, std::span<const cplx> y, DecodeTrace* trace) {
    check_length(spec, y);
    Correlator& corr = thread_correlator();
    const int p = spec.length();
    DecodeResult res;
    res.total_energy = energy(y);
    res.candidates_examined = 1;
    ComplexSeq residual(y.begin(), y.end());

    for (int l = 0; l < spec.sparsity(); ++l) {
        double best = -1.0;
        RootShift pick{};
        cplx pick_value{};
        for (int root = spec.first_root(l); root <= spec.last_root(l); ++root) {
            const int shifts = spec.valid_shift_count(root);
            if (shifts == 0) continue;
            const ZcRoot zr(p, root);
            ComplexSeq xi = corr.correlate(y, zr);
            ++res.correlation_calls;
            for (int s = 0; s < shifts; ++s) {
                const double mag = std::abs(xi[s]);
                if (mag > best) {
                    best = mag;
                    pick = {root, s};
                    pick_value = xi[s];
                }
            }
            if (trace) trace->stages.push_back({root, std::move(xi), -1, cplx{}});
        }
        res.selection.pairs.push_back(pick);
        res.channel_estimate += pick_value;
        const cplx amp = pick_value / static_cast<double>(p);
        if (trace) {
            for (auto& st : trace->stages) {
                if (st.root == pick.root && st.detected_shift < 0) {
                    st.detected_shift = pick.shift;
                    st.amplitude = amp;
                }
            }
        }
        subtract_shifted(residual, corr.sequence(ZcRoot(p, pick.root)), pick.shift, amp);
    }
    res.residual_energy = energy(residual);
    res.message = try_unmap(spec, res.selection);
    return res;
}

std::vector<IndicatorPeak> detect_indicator_shifts(const DictionarySpec& spec, std::span<const cplx> y,
                                                   int l_prime) {
    check_length(spec, y);
    if (l_prime < 1 || l_prime > spec.length()) throw ParameterError("L' must lie in [1, P]");
    const ComplexSeq corr = thread_correlator().correlate(y, ZcRoot(spec.length(), spec.indicator_root()));

    std::vector<IndicatorPeak> peaks;
    for (int root : spec.data_roots()) peaks.push_back({root, corr[root]});
    const auto keep = std::min<std::size_t>(static_cast<std::size_t>(l_prime), peaks.size());
    std::partial_sort(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(keep), peaks.end(),
                      [](const IndicatorPeak& a, const IndicatorPeak& b) {
                          const double ma = std::abs(a.value);
                          const double mb = std::abs(b.value);
                          return ma != mb ? ma > mb : a.shift < b.shift;
                      });
    peaks.resize(keep);
    return peaks;
}

cplx estimate_channel(std::span<const cplx> y, std::span<const int> indicator_shifts, int indicator_root) {
    const ZcRoot zr(static_cast<int>(y.size()), indicator_root);
    const ComplexSeq& z = thread_correlator().sequence(zr);
    cplx h{};
    for (int shift : indicator_shifts) h += inner_shifted(y, z, shift);
    return h;
}

namespace {

struct Candidate {
    SparseSelection selection;  // section order
    double residual = 0.0;
    double indicator_metric = 0.0;
    cplx channel;
    std::vector<DecodeTrace::Stage> stages;
};

bool better(const Candidate& a, const Candidate& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    if (a.indicator_metric != b.indicator_metric) return a.indicator_metric > b.indicator_metric;
    return a.selection < b.selection;
}

// Coherent SIC over `roots` (in processing order) on an already
// phase-compensated signal. Returns the selection in section order.
Candidate detect_data(const DictionarySpec& spec, std::span<const int> roots, ComplexSeq residual,
                      int& correlation_calls, bool keep_stages) {
    Correlator& corr = thread_correlator();
    const int p = spec.length();
    Candidate cand;
    cand.selection.pairs.assign(static_cast<std::size_t>(spec.sparsity()), RootShift{});
    for (int root : roots) {
        const ZcRoot zr(p, root);
        ComplexSeq xi = corr.correlate(residual, zr);
        ++correlation_calls;
        const int shifts = spec.valid_shift_count(root);
        int best_shift = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (int s = 0; s < shifts; ++s) {
            if (xi[s].real() > best) {
                best = xi[s].real();
                best_shift = s;
            }
        }
        const cplx amp = xi[best_shift] / static_cast<double>(p);
        subtract_shifted(residual, corr.sequence(zr), best_shift, amp);
        cand.selection.pairs[static_cast<std::size_t>(spec.section_of_root(root))] = {root, best_shift};
        if (keep_stages) cand.stages.push_back({root, std::move(xi), best_shift, amp});
    }
    cand.residual = energy(residual);
    return cand;
}

}  // namespace

DecodeResult decode_with_indication(const DictionarySpec& spec, const DecoderConfig& cfg, std::span<const cplx> y,
                                    DecodeTrace* trace) {
    check_length(spec, y);
    const int p = spec.length();
    const int L = spec.sparsity();
    if (cfg.l_prime < L) throw ParameterError("L' must be >= L");
    if (cfg.l_prime > p - 1) throw ParameterError("L' must be <= P-1");

    DecodeResult res;
    res.total_energy = energy(y);
    const bool keep_stages = trace != nullptr;

    if (cfg.forced_roots) {
        const auto& roots = *cfg.forced_roots;
        if (static_cast<int>(roots.size()) != L) throw ParameterError("forced_roots must hold L roots");
        ComplexSeq work(y.begin(), y.end());
        cplx h{1.0, 0.0};
        if (cfg.alpha < 1.0) {
            h = estimate_channel(y, roots, spec.indicator_root());
            const cplx rot = std::polar(1.0, -std::arg(h));
            for (auto& v : work) v *= rot;
            const ComplexSeq& ind = thread_correlator().sequence(ZcRoot(p, spec.indicator_root()));
            for (int r : roots) subtract_shifted(work, ind, r, inner_shifted(work, ind, r) / static_cast<double>(p));
        }
        Candidate cand = detect_data(spec, roots, std::move(work), res.correlation_calls, keep_stages);
        res.candidates_examined = 1;
        res.selection = cand.selection;
        res.channel_estimate = h;
        res.residual_energy = cand.residual;
        res.message = try_unmap(spec, res.selection);
        if (trace) trace->stages = std::move(cand.stages);
        return res;
    }

    const std::vector<IndicatorPeak> peaks = detect_indicator_shifts(spec, y, cfg.l_prime);
    ++res.correlation_calls;
    const ComplexSeq& indicator = thread_correlator().sequence(ZcRoot(p, spec.indicator_root()));

    std::optional<Candidate> best;
    const int n = static_cast<int>(peaks.size());
    // Subsets of size L, enumerated in lexicographic index order; peaks are
    // sorted by descending magnitude so each subset lists roots in that order.
    std::vector<int> idx(static_cast<std::size_t>(L));
    std::iota(idx.begin(), idx.end(), 0);
    const bool any = n >= L;
    while (any) {
        std::vector<int> roots;
        std::vector<bool> used(static_cast<std::size_t>(L), false);
        bool compatible = true;
        for (int i : idx) {
            const int section = spec.section_of_root(peaks[i].shift);
            if (used[static_cast<std::size_t>(section)]) {
                compatible = false;
                break;
            }
            used[static_cast<std::size_t>(section)] = true;
            roots.push_back(peaks[i].shift);
        }

        if (compatible) {
            ++res.candidates_examined;
            cplx h{};
            double metric = 0.0;
            for (int i : idx) {
                h += peaks[i].value;
                metric += std::abs(peaks[i].value);
            }
            const cplx rot = std::polar(1.0, -std::arg(h));
            ComplexSeq work(y.begin(), y.end());
            for (auto& v : work) v *= rot;
            for (int i : idx) {
                // indicator correlations of the rotated signal are the stored values rotated
                const cplx amp = peaks[i].value * rot / static_cast<double>(p);
                subtract_shifted(work, indicator, peaks[i].shift, amp);
            }
            Candidate cand = detect_data(spec, roots, std::move(work), res.correlation_calls, keep_stages);
            cand.indicator_metric = metric;
            cand.channel = h;
            if (!best || better(cand, *best)) best = std::move(cand);
        }

        // next combination
        int pos = L - 1;
        while (pos >= 0 && idx[pos] == n - L + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int j = pos + 1; j < L; ++j) idx[j] = idx[j - 1] + 1;
    }

    if (!best) {
        res.residual_energy = res.total_energy;
        res.channel_estimate = peaks.empty() ? cplx{} : peaks.front().value;
        return res;
    }
    res.selection = best->selection;
    res.channel_estimate = best->channel;
    res.residual_energy = best->residual;
    res.message = try_unmap(spec, res.selection);
    if (trace) trace->stages = std::move(best->stages);
    return res;
}

}  // namespace zcssc
