#pragma once

#include <cstdint>

#include "relaysim/frame.hpp"
#include "relaysim/kernel.hpp"

namespace relaysim {

enum class AttackMode : std::uint8_t {
    // Forged RTS claiming the maximum reservation; obeys carrier sensing so
    // the frame is decodable, ignores any CTS and sends no data.
    DurationInflation,
    // Periodic RTS with a legitimate-looking duration, ignoring CTS, NAV and
    // backoff entirely.
    Flood,
};

const char* attack_mode_name(AttackMode m);

struct AttackerConfig {
    NodeId node = kNoNode;  // kNoNode: assigned by the harness (highest free id)
    AttackMode mode = AttackMode::DurationInflation;
    std::uint32_t claimed_us = kMaxDurationUs;  // DurationInflation
    std::uint32_t period_us = 5000;             // Flood
    SimTime start_at = 0;
};

// The forged frame an attacker emits once its transmit moment arrives.
// `legit_duration` is what an honest sender at the attacker's position would
// claim; flood mode uses it to stay under the revalidation threshold.
Frame next_attack_frame(const AttackerConfig& cfg, NodeId ap, std::uint32_t legit_duration,
                        std::uint64_t exchange);

// For inflation the next transmit moment is gated on the claimed reservation
// expiring; for flood it is a fixed period.
SimTime next_attack_delay(const AttackerConfig& cfg);

}  // namespace relaysim
