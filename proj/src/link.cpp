#include "zcssc/link.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "zcssc/errors.hpp"
#include "zcssc/seeding.hpp"

namespace zcssc {

ComplexSeq mrc_combine(std::span<const ReceivedCopy> copies) {
    if (copies.empty()) throw ParameterError("mrc_combine: no copies");
    const std::size_t n = copies.front().y.size();
    double weight_sum = 0.0;
    for (const auto& c : copies) {
        if (c.y.size() != n) throw ParameterError("mrc_combine: copies differ in length");
        if (c.power < 0.0) throw ParameterError("mrc_combine: negative power");
        weight_sum += std::sqrt(c.power);
    }
    ComplexSeq out(n, cplx{});
    for (const auto& c : copies) {
        // all-zero powers degrade to an equal-weight average
        const double w = weight_sum > 0.0 ? std::sqrt(c.power) / weight_sum : 1.0 / static_cast<double>(copies.size());
        const cplx rot = w * std::polar(1.0, -c.phase);
        for (std::size_t k = 0; k < n; ++k) out[k] += rot * c.y[k];
    }
    return out;
}

bool transmission_allowed(const CodewordProcess& process, int slot) {
    return !(process.stop_effective_slot && slot > *process.stop_effective_slot);
}

TxAction step_protocol(CodewordProcess& process, const DecodeOutcome& outcome, const FeedbackChannel& feedback,
                       int slot, const RepetitionSchedule& schedule) {
    if (process.terminal()) throw ParameterError("step_protocol on a finished codeword");

    bool declared = false;
    switch (feedback.detection) {
        case SuccessDetection::kGenie:
            declared = outcome.message && *outcome.message == process.truth;
            break;
        case SuccessDetection::kResidualThreshold:
            declared = outcome.message && outcome.total_energy > 0.0 &&
                       outcome.residual_energy / outcome.total_energy < feedback.residual_threshold;
            break;
    }

    if (declared) {
        process.state = CodewordProcess::State::kDecoded;
        process.correct = *outcome.message == process.truth;
        if (feedback.stop_enabled) {
            process.stop_effective_slot = slot + feedback.delay_slots;
            return process.sent < schedule.transmissions ? TxAction::kStop : TxAction::kNone;
        }
        return process.sent < schedule.transmissions ? TxAction::kContinue : TxAction::kNone;
    }
    if (static_cast<int>(process.copies.size()) >= schedule.transmissions) {
        process.state = CodewordProcess::State::kFailed;
        return TxAction::kNone;
    }
    process.state = CodewordProcess::State::kInFlight;
    return TxAction::kContinue;
}

FrameScheduler::FrameScheduler(RepetitionSchedule schedule, ReuseMode reuse, int window_slots)
    : schedule_(schedule), reuse_(reuse), window_slots_(window_slots) {
    if (schedule.transmissions < 1) throw ParameterError("R must be >= 1");
    if (schedule.spacing_slots < 1) throw ParameterError("T_R must be >= 1");
    if (window_slots < 1) throw ParameterError("window must be >= 1 slot");
}

int FrameScheduler::start_codeword(int slot) {
    CodewordProcess p;
    p.id = static_cast<int>(processes_.size());
    p.first_slot = slot;
    p.next_slot = slot;
    p.state = CodewordProcess::State::kInFlight;
    processes_.push_back(std::move(p));
    return processes_.back().id;
}

MultiCodewordFrame FrameScheduler::build_frame(int slot, std::vector<int>& started) {
    const int capacity = schedule_.transmissions;
    MultiCodewordFrame frame;
    frame.slot = slot;
    started.clear();

    std::vector<int> due;
    for (const auto& p : processes_) {
        if (p.sent < capacity && p.next_slot <= slot && p.state != CodewordProcess::State::kFailed &&
            transmission_allowed(p, slot)) {
            due.push_back(p.id);
        }
    }
    std::stable_sort(due.begin(), due.end(),
                     [&](int a, int b) { return processes_[a].next_slot < processes_[b].next_slot; });

    std::vector<int> carried;
    const bool open = slot < window_slots_;
    // Fresh codeword first, unless repetitions already fill the frame.
    if (open && static_cast<int>(due.size()) < capacity) {
        const int id = start_codeword(slot);
        started.push_back(id);
        carried.push_back(id);
    }
    for (int id : due) {
        // overflow (only possible when reuse admitted extra codewords) waits a slot
        if (static_cast<int>(carried.size()) == capacity) break;
        carried.push_back(id);
    }
    while (static_cast<int>(carried.size()) < capacity) {
        if (reuse_ == ReuseMode::kNewData && open) {
            const int id = start_codeword(slot);
            started.push_back(id);
            carried.push_back(id);
            continue;
        }
        if (reuse_ == ReuseMode::kExtraRepetitions) {
            // pull forward the earliest pending repetition of an undecoded codeword
            int pick = -1;
            for (const auto& p : processes_) {
                if (p.terminal() || p.sent >= capacity || p.next_slot <= slot || p.sent == 0) continue;
                if (std::find(carried.begin(), carried.end(), p.id) != carried.end()) continue;
                if (pick < 0 || p.next_slot < processes_[pick].next_slot) pick = p.id;
            }
            if (pick >= 0) {
                carried.push_back(pick);
                continue;
            }
        }
        break;
    }

    frame.segments.assign(static_cast<std::size_t>(capacity), std::nullopt);
    for (std::size_t j = 0; j < carried.size(); ++j) {
        CodewordProcess& p = processes_[carried[j]];
        ++p.sent;
        p.next_slot = slot + schedule_.spacing_slots;
        frame.segments[j] = p.id;
    }
    return frame;
}

bool FrameScheduler::finished(int slot) const {
    if (slot < window_slots_) return false;
    for (const auto& p : processes_) {
        if (p.state == CodewordProcess::State::kFailed) continue;
        if (p.sent < schedule_.transmissions && transmission_allowed(p, p.next_slot)) return false;
    }
    return true;
}

int segment_res(const LinkParams& params) {
    const int r = params.schedule.transmissions;
    const int total = params.num_subcarriers * params.num_symbols;
    if (r < 1 || total % r != 0) {
        throw ParameterError(std::to_string(total) + " REs do not split into " + std::to_string(r) + " segments");
    }
    return total / r;
}

Message random_message(int bits, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Message m;
    m.bits.resize(static_cast<std::size_t>(bits));
    std::uint64_t word = 0;
    for (int i = 0; i < bits; ++i) {
        if (i % 64 == 0) word = rng();
        m.bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return m;
}

DropResult run_drop(const Scheme& scheme, const LinkParams& params, std::uint64_t seed) {
    const int seg = segment_res(params);
    if (scheme.num_res() != seg) {
        throw ParameterError("scheme expects " + std::to_string(scheme.num_res()) + " REs, segment has " +
                             std::to_string(seg));
    }
    const int r = params.schedule.transmissions;
    const int total_res = params.num_subcarriers * params.num_symbols;

    FrameScheduler scheduler(params.schedule, params.reuse, params.window_slots);
    const std::uint64_t fading_seed = derive_seed(seed, {0});
    int horizon = params.window_slots + (r + 1) * (params.schedule.spacing_slots + 1) + params.feedback.delay_slots;
    ComplexSeq gains = sample_fading(params.fading, horizon, fading_seed);

    std::map<int, ComplexSeq> tx_symbols;
    DropResult out;
    out.window_slots = params.window_slots;
    std::vector<int> started;
    ComplexSeq tx(static_cast<std::size_t>(total_res));

    int slot = 0;
    for (; !scheduler.finished(slot); ++slot) {
        if (slot >= horizon) {
            // the sampler is prefix-stable, so regrowing keeps earlier gains
            horizon *= 2;
            gains = sample_fading(params.fading, horizon, fading_seed);
        }
        MultiCodewordFrame frame = scheduler.build_frame(slot, started);
        auto& procs = scheduler.processes();
        for (int id : started) {
            procs[id].truth = random_message(scheme.info_bits(), derive_seed(seed, {1, static_cast<std::uint64_t>(id)}));
            tx_symbols.emplace(id, scheme.modulate(procs[id].truth));
        }

        std::fill(tx.begin(), tx.end(), cplx{});
        for (int j = 0; j < r; ++j) {
            if (!frame.segments[j]) continue;
            const ComplexSeq& sym = tx_symbols.at(*frame.segments[j]);
            std::copy(sym.begin(), sym.end(), tx.begin() + static_cast<std::ptrdiff_t>(j) * seg);
        }
        const ResourceGrid grid = map_to_grid(tx, params.num_subcarriers, params.num_symbols);
        const ComplexSeq y = transmit(grid.elements(), gains[slot], params.snr_db,
                                      derive_seed(seed, {2, static_cast<std::uint64_t>(slot)}));
        ResourceGrid rx_grid(params.num_subcarriers, params.num_symbols);
        std::copy(y.begin(), y.end(), rx_grid.elements().begin());
        const ComplexSeq rx = grid_to_vector(rx_grid);

        for (int j = 0; j < r; ++j) {
            if (!frame.segments[j]) continue;
            CodewordProcess& p = procs[*frame.segments[j]];
            if (p.terminal()) continue;  // late copy of a finished codeword
            const std::span<const cplx> res(rx.data() + static_cast<std::ptrdiff_t>(j) * seg, static_cast<std::size_t>(seg));
            double power = 0.0;
            for (const auto& v : res) power += std::norm(v);
            power /= seg;

            ComplexSeq prepared = scheme.prepare(res);
            const DecodeResult single = scheme.decode(prepared);
            p.copies.push_back({std::move(prepared), std::arg(single.channel_estimate), power});

            DecodeOutcome outcome;
            if (p.copies.size() == 1) {
                outcome = {single.message, single.residual_energy, single.total_energy};
            } else {
                const DecodeResult joint = scheme.decode(mrc_combine(p.copies));
                outcome = {joint.message, joint.residual_energy, joint.total_energy};
            }
            step_protocol(p, outcome, params.feedback, slot, params.schedule);
            if (p.terminal()) {
                p.copies.clear();
                p.copies.shrink_to_fit();
            }
        }
        for (const auto& id : frame.segments) {
            if (!id) continue;
            const CodewordProcess& p = procs[*id];
            if (p.terminal() && (p.sent >= r || !transmission_allowed(p, p.next_slot))) tx_symbols.erase(p.id);
        }
        out.frames.push_back(std::move(frame));
    }
    out.slots_simulated = slot;

    for (const auto& p : scheduler.processes()) {
        TrialRecord rec;
        rec.id = p.id;
        rec.success = p.state == CodewordProcess::State::kDecoded && p.correct;
        rec.transmissions = p.sent;
        rec.res_consumed = static_cast<std::int64_t>(p.sent) * seg;
        out.records.push_back(rec);
    }
    return out;
}

}  // namespace zcssc
