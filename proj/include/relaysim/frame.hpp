#pragma once

#include <cstdint>

namespace relaysim {

using NodeId = std::uint32_t;

constexpr NodeId kNoNode = 0xFFFFFFFFu;
constexpr NodeId kBroadcast = 0xFFFFFFFEu;

enum class FrameKind : std::uint8_t { Rts, Cts, Data, Ack, Blacklist };

const char* frame_kind_name(FrameKind k);

// Fixed MAC frame sizes in bytes; DATA adds its payload on top of the header.
constexpr std::uint32_t kRtsBytes = 20;
constexpr std::uint32_t kCtsBytes = 14;
constexpr std::uint32_t kAckBytes = 14;
constexpr std::uint32_t kDataHeaderBytes = 28;
constexpr std::uint32_t kBlacklistBytes = 22;  // control header + 6 B MAC + 2 B sequence

// Largest value encodable in the 15 usable bits of the 2-byte duration field.
constexpr std::uint32_t kMaxDurationUs = 32767;

// MAC protocol data unit. `origin` tracks the original source across a relay
// hop (equal to src otherwise); `seq` numbers a source's payloads so the AP
// can count unique deliveries; `exchange` ties together the frames of one
// RTS-initiated reservation.
struct Frame {
    FrameKind kind = FrameKind::Rts;
    NodeId src = kNoNode;
    NodeId dst = kNoNode;
    NodeId origin = kNoNode;
    std::uint32_t duration_us = 0;  // reservation remaining after this frame ends
    std::uint32_t payload_bytes = 0;
    bool relay_flag = false;  // DATA addressed to a relay for forwarding
    NodeId offender = kNoNode;  // BLACKLIST only
    std::uint64_t seq = 0;
    std::uint64_t exchange = 0;
};

std::uint32_t frame_size_bytes(const Frame& f);

}  // namespace relaysim
