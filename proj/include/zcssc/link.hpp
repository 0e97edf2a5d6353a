#pragma once

// Wideband multi-codeword framing: scheduled blind repetitions, maximum-ratio
// combining of the received copies, and the stop-feedback protocol.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zcssc/channel.hpp"
#include "zcssc/scheme.hpp"

namespace zcssc {

struct RepetitionSchedule {
    int transmissions = 2;  // R: first transmission plus R-1 repetitions
    int spacing_slots = 4;  // T_R
};

enum class SuccessDetection { kGenie, kResidualThreshold };

struct FeedbackChannel {
    SuccessDetection detection = SuccessDetection::kGenie;
    int delay_slots = 0;
    double residual_threshold = 0.5;  // residual / total energy below this counts as success
    bool stop_enabled = true;         // false: receiver never sends stop
};

// What freed segments carry.
enum class ReuseMode { kNewData, kExtraRepetitions, kNone };

struct ReceivedCopy {
    ComplexSeq y;        // decoder-domain samples of one transmission
    double phase = 0.0;  // arg of that copy's channel estimate
    double power = 0.0;  // mean |y|^2 over the copy's REs
};

// sum_r w_r * y_r * exp(-j phase_r), w_r proportional to sqrt(power_r), sum w_r = 1.
ComplexSeq mrc_combine(std::span<const ReceivedCopy> copies);

struct CodewordProcess {
    enum class State { kPending, kInFlight, kDecoded, kFailed };

    int id = 0;
    Message truth;
    int first_slot = -1;
    int next_slot = -1;       // slot of the next scheduled transmission
    int sent = 0;             // transmissions put on air
    State state = State::kPending;
    bool correct = false;     // decoded message equals truth (valid once decoded)
    std::optional<int> stop_effective_slot;
    std::vector<ReceivedCopy> copies;

    bool terminal() const { return state == State::kDecoded || state == State::kFailed; }
};

struct DecodeOutcome {
    std::optional<Message> message;
    double residual_energy = 0.0;
    double total_energy = 0.0;
};

enum class TxAction { kContinue, kStop, kNone };

// Advance one codeword after the receiver processed a copy at slot t. A
// declared success moves to kDecoded and, with stop enabled, makes a stop
// effective at slot t + delay: transmissions scheduled after that slot are
// suppressed. Without success after R copies the process fails.
TxAction step_protocol(CodewordProcess& process, const DecodeOutcome& outcome, const FeedbackChannel& feedback,
                       int slot, const RepetitionSchedule& schedule);

// Whether a transmission scheduled at `slot` still goes on air.
bool transmission_allowed(const CodewordProcess& process, int slot);

// Frame contents for one slot: per segment, the id of the codeword carried
// (empty when the segment is unused).
struct MultiCodewordFrame {
    int slot = 0;
    std::vector<std::optional<int>> segments;
};

struct TrialRecord {
    int id = 0;
    bool success = false;
    int transmissions = 0;
    std::int64_t res_consumed = 0;
};

struct LinkParams {
    RepetitionSchedule schedule;
    FeedbackChannel feedback;
    ReuseMode reuse = ReuseMode::kNewData;
    FadingProcess fading;
    double snr_db = 0.0;
    int num_subcarriers = 24;   // whole band
    int num_symbols = 14;
    int window_slots = 1;       // slots in which new codewords may start
};

struct DropResult {
    std::vector<TrialRecord> records;  // codewords started inside the window, by id
    std::vector<MultiCodewordFrame> frames;
    int window_slots = 0;
    int slots_simulated = 0;
};

// Owns the per-drop codeword queue and produces one frame per slot.
class FrameScheduler {
public:
    FrameScheduler(RepetitionSchedule schedule, ReuseMode reuse, int window_slots);

    // Build the frame for slot t. New codewords are created (and returned via
    // `started`) only while t is inside the window.
    MultiCodewordFrame build_frame(int slot, std::vector<int>& started);

    std::vector<CodewordProcess>& processes() { return processes_; }
    const std::vector<CodewordProcess>& processes() const { return processes_; }

    // No codeword still waiting on a transmission and the window has passed.
    bool finished(int slot) const;

private:
    int start_codeword(int slot);

    RepetitionSchedule schedule_;
    ReuseMode reuse_;
    int window_slots_;
    std::vector<CodewordProcess> processes_;
};

// Uniform random message; run_drop draws codeword `id` of a drop with seed
// derive_seed(drop_seed, {1, id}), slot noise with {2, slot} and the fading
// trajectory with {0}.
Message random_message(int bits, std::uint64_t seed);

// Simulate one drop: `window_slots` slots of new traffic plus the drain
// needed to resolve every codeword started inside the window. The band is
// split into R equal segments (frequency-first); `scheme` must match one
// segment's RE count.
DropResult run_drop(const Scheme& scheme, const LinkParams& params, std::uint64_t seed);

// REs per segment when the band carries R segments; throws ParameterError
// when the RE count does not split evenly.
int segment_res(const LinkParams& params);

}  // namespace zcssc
