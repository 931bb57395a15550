#include "relaysim/dcf.hpp"

#include <algorithm>

namespace relaysim {

NavTimer update_nav(NavTimer nav, const Frame& overheard, SimTime frame_end) {
    const SimTime until = frame_end + overheard.duration_us;
    if (until > nav.quiet_until) {
        nav.quiet_until = until;
        nav.set_by = overheard.src;
        nav.set_exchange = overheard.exchange;
    }
    return nav;
}

bool escalate_cw(DcfState& state, AttemptOutcome outcome) {
    if (outcome == AttemptOutcome::Success) {
        state.contention_window = kCwMin;
        state.retry_count = 0;
        return false;
    }
    state.contention_window = std::min(2 * (state.contention_window + 1) - 1, kCwMax);
    ++state.retry_count;
    if (state.retry_count >= kRetryLimit) {
        state.contention_window = kCwMin;
        state.retry_count = 0;
        return true;
    }
    return false;
}

}  // namespace relaysim
