#pragma once

#include <cstdint>
#include <map>

#include "relaysim/channel.hpp"
#include "relaysim/frame.hpp"
#include "relaysim/kernel.hpp"

namespace relaysim {

// Replicated set of flagged MAC addresses. Entries only grow within a run;
// stations learn them solely from the AP's broadcast.
class Blacklist {
public:
    // Returns true when the offender is new.
    bool add(NodeId offender, SimTime flagged_at);
    bool contains(NodeId node) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<NodeId, SimTime>& entries() const { return entries_; }

private:
    std::map<NodeId, SimTime> entries_;
};

struct Verdict {
    bool malicious = false;
    std::uint32_t claimed_us = 0;
    std::uint32_t ceiling_us = 0;
};

// Maximum reservation any legitimate sender could claim for the configured
// payload: the worse of a direct exchange at the slowest rate and a
// cooperative exchange with both hops at the slowest rate admissible for
// relaying (2 Mbps, since relay hops must beat a 1 Mbps direct link).
std::uint32_t legit_duration_ceiling(std::uint32_t nominal_payload_bytes);

// Flag threshold: ceil(ceiling * 1.05). The margin absorbs airtime rounding
// while a forged field-maximum claim still overshoots it by a wide margin.
std::uint32_t validation_threshold_us(std::uint32_t ceiling_us);

// Revalidation: recompute what the sender could legitimately need and flag
// over-claims. Under-claims pass; only over-reservation is the attack.
Verdict validate_rts(const Frame& rts, std::uint32_t ceiling_us);

}  // namespace relaysim
