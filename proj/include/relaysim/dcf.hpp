#pragma once

#include <cstdint>

#include "relaysim/frame.hpp"
#include "relaysim/kernel.hpp"
#include "relaysim/timing.hpp"

namespace relaysim {

// Virtual carrier sense. `set_by` is kept so the defense can neutralize
// reservations claimed by a node that later lands on the blacklist;
// `set_exchange` lets a node that becomes a participant of an exchange drop
// the NAV it took from that same exchange's earlier frames.
struct NavTimer {
    SimTime quiet_until = 0;
    NodeId set_by = kNoNode;
    std::uint64_t set_exchange = 0;

    bool active(SimTime now) const { return now < quiet_until; }
};

// Overheard frame (decoded at a node that is neither src nor dst): extend the
// quiet period to cover the announced reservation.
NavTimer update_nav(NavTimer nav, const Frame& overheard, SimTime frame_end);

enum class DcfPhase : std::uint8_t {
    Idle,
    Difs,
    Backoff,
    AwaitCts,
    SendData,
    AwaitAck,
    Quiet,
};

struct DcfState {
    DcfPhase phase = DcfPhase::Idle;
    std::uint32_t contention_window = kCwMin;  // always 2^k - 1, k in 5..10
    std::uint32_t retry_count = 0;
};

enum class AttemptOutcome : std::uint8_t { Success, Failure };

// Binary exponential backoff bookkeeping. Returns true when a failure
// exhausted the retry budget and the pending payload must be dropped.
bool escalate_cw(DcfState& state, AttemptOutcome outcome);

}  // namespace relaysim
