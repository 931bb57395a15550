#include "relaysim/defense.hpp"

#include <algorithm>

#include "relaysim/timing.hpp"

namespace relaysim {

bool Blacklist::add(NodeId offender, SimTime flagged_at) {
    return entries_.emplace(offender, flagged_at).second;
}

bool Blacklist::contains(NodeId node) const {
    return entries_.count(node) != 0;
}

std::uint32_t legit_duration_ceiling(std::uint32_t nominal_payload_bytes) {
    const std::uint32_t direct_worst = duration_direct_us(nominal_payload_bytes, RateClass::Mbps1);
    const std::uint32_t coop_worst =
        duration_coop_us(nominal_payload_bytes, RateClass::Mbps2, RateClass::Mbps2);
    return std::max(direct_worst, coop_worst);
}

std::uint32_t validation_threshold_us(std::uint32_t ceiling_us) {
    return (ceiling_us * 105u + 99u) / 100u;  // ceil(ceiling * 1.05)
}

Verdict validate_rts(const Frame& rts, std::uint32_t ceiling_us) {
    Verdict v;
    v.claimed_us = rts.duration_us;
    v.ceiling_us = ceiling_us;
    v.malicious = rts.duration_us > validation_threshold_us(ceiling_us);
    return v;
}

}  // namespace relaysim
