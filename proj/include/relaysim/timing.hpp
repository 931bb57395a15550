#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "relaysim/channel.hpp"
#include "relaysim/kernel.hpp"

namespace relaysim {

// 802.11b DSSS inter-frame spacings and contention parameters. The slot and
// SIFS values make every worked duration an exact integer of microseconds.
constexpr SimTime kDifsUs = 50;
constexpr SimTime kSifsUs = 10;
constexpr SimTime kSlotUs = 20;
constexpr std::uint32_t kCwMin = 31;
constexpr std::uint32_t kCwMax = 1023;
constexpr std::uint32_t kRetryLimit = 7;

// Control frames always go at the 1 Mbps base rate.
constexpr RateClass kControlRate = RateClass::Mbps1;

SimTime cts_airtime_us();  // == ack airtime: both are 14-byte control frames
SimTime ack_airtime_us();
SimTime rts_airtime_us();
SimTime blacklist_airtime_us();

// DATA frame airtime including the MAC header; zero for an empty payload
// (degenerate: no frame at all).
SimTime data_airtime_us(std::uint32_t payload_bytes, RateClass rate);

// Reservation remaining after the RTS ends, for a direct exchange:
// 3*SIFS + T_CTS + T_DATA(payload, rate) + T_ACK.
std::uint32_t duration_direct_us(std::uint32_t payload_bytes, RateClass direct_rate);

// Cooperative two-hop variant: 4*SIFS + T_CTS + T_DATA(payload, r1) +
// T_DATA(payload, r2) + T_ACK.
std::uint32_t duration_coop_us(std::uint32_t payload_bytes, RateClass src_to_relay,
                               RateClass relay_to_ap);

// Spec-shaped wrapper over the two forms above. A result that does not fit
// the 15-bit duration field means the scenario itself is misconfigured.
std::uint32_t compute_duration(std::uint32_t payload_bytes, std::optional<RateClass> direct_rate,
                               std::optional<std::pair<RateClass, RateClass>> relay_rates);

// Duration cascade for responder frames (floor at 0 on underflow).
std::uint32_t cts_duration_us(std::uint32_t rts_duration_us);
std::uint32_t data_direct_duration_us();  // SIFS + T_ACK
std::uint32_t data_relay_duration_us(std::uint32_t payload_bytes, RateClass relay_to_ap);

// Responder timeout: SIFS + response airtime + 2 slots after own frame end.
SimTime response_timeout_us(SimTime response_airtime);

}  // namespace relaysim
