#pragma once

#include <cstdint>
#include <vector>

#include "relaysim/frame.hpp"
#include "relaysim/kernel.hpp"

namespace relaysim {

enum class TraceKind : std::uint8_t {
    TxStart,       // any transmission entering the medium
    Decode,        // frame decoded at its addressed receiver
    Detection,     // AP revalidation flagged an RTS
    BlacklistAdd,  // a node learned an offender (locally at the AP, by broadcast elsewhere)
    RelaySelect,   // source picked a relay for the upcoming exchange
    Deliver,       // AP counted a unique payload as delivered
    PayloadDrop,   // retry budget exhausted
};

// One flat record type keeps hashing and sweeps simple. Field meaning varies
// by kind; unused fields stay at their defaults and are excluded from the
// digest via the per-kind serializer.
struct TraceRecord {
    TraceKind kind = TraceKind::TxStart;
    SimTime t = 0;
    NodeId node = kNoNode;  // acting node (transmitter, decoder, selector...)
    FrameKind frame_kind = FrameKind::Rts;
    NodeId src = kNoNode;
    NodeId dst = kNoNode;
    std::uint32_t duration_us = 0;
    std::uint64_t exchange = 0;
    std::uint64_t seq = 0;
    bool contention = false;  // TxStart: contention access (vs SIFS response)
    SimTime nav_quiet_until = 0;  // TxStart: transmitter's NAV at start
    NodeId nav_set_by = kNoNode;
    bool nav_setter_blacklisted = false;
    NodeId other = kNoNode;  // offender / selected relay / delivery origin
    double sf = 0.0;         // RelaySelect
};

class TraceLog {
public:
    void enable(bool keep_records) { keep_ = keep_records; }
    void push(const TraceRecord& r);

    const std::vector<TraceRecord>& records() const { return records_; }
    std::uint64_t digest() const { return digest_; }
    std::uint64_t count() const { return count_; }

private:
    bool keep_ = true;
    std::vector<TraceRecord> records_;
    std::uint64_t digest_ = 0xcbf29ce484222325ull;  // FNV-1a offset basis
    std::uint64_t count_ = 0;
};

}  // namespace relaysim
