#include "relaysim/channel.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace relaysim {

const char* frame_kind_name(FrameKind k) {
    switch (k) {
        case FrameKind::Rts: return "RTS";
        case FrameKind::Cts: return "CTS";
        case FrameKind::Data: return "DATA";
        case FrameKind::Ack: return "ACK";
        case FrameKind::Blacklist: return "BLACKLIST";
    }
    return "?";
}

std::uint32_t frame_size_bytes(const Frame& f) {
    switch (f.kind) {
        case FrameKind::Rts: return kRtsBytes;
        case FrameKind::Cts: return kCtsBytes;
        case FrameKind::Data: return kDataHeaderBytes + f.payload_bytes;
        case FrameKind::Ack: return kAckBytes;
        case FrameKind::Blacklist: return kBlacklistBytes;
    }
    return 0;
}

double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

RateClass rate_for_distance(double d) {
    if (d <= 125.0) return RateClass::Mbps11;
    if (d <= 250.0) return RateClass::Mbps5_5;
    if (d <= 375.0) return RateClass::Mbps2;
    if (d <= 500.0) return RateClass::Mbps1;
    return RateClass::Unreachable;
}

namespace {

// Rate as bits-per-microsecond ratio num/den, exact for 5.5 Mbps.
struct RateRatio {
    std::uint64_t num;
    std::uint64_t den;
};

RateRatio rate_ratio(RateClass r) {
    switch (r) {
        case RateClass::Mbps11: return {11, 1};
        case RateClass::Mbps5_5: return {11, 2};
        case RateClass::Mbps2: return {2, 1};
        case RateClass::Mbps1: return {1, 1};
        case RateClass::Unreachable: break;
    }
    throw std::logic_error("airtime over an unreachable link");
}

int rate_rank(RateClass r) {
    switch (r) {
        case RateClass::Unreachable: return 0;
        case RateClass::Mbps1: return 1;
        case RateClass::Mbps2: return 2;
        case RateClass::Mbps5_5: return 3;
        case RateClass::Mbps11: return 4;
    }
    return 0;
}

}  // namespace

bool rate_faster(RateClass a, RateClass b) {
    return rate_rank(a) > rate_rank(b);
}

const char* rate_name(RateClass r) {
    switch (r) {
        case RateClass::Mbps11: return "11";
        case RateClass::Mbps5_5: return "5.5";
        case RateClass::Mbps2: return "2";
        case RateClass::Mbps1: return "1";
        case RateClass::Unreachable: return "unreachable";
    }
    return "?";
}

SimTime airtime_us(std::uint32_t size_bytes, RateClass rate) {
    if (size_bytes == 0) {
        throw std::logic_error("airtime of an empty frame");
    }
    const RateRatio r = rate_ratio(rate);
    const std::uint64_t bits = 8ull * size_bytes;
    return (bits * r.den + r.num - 1) / r.num;
}

Medium::Medium(EventQueue& queue, std::vector<Position> positions)
    : queue_(queue), positions_(std::move(positions)), listeners_(positions_.size(), nullptr) {
    const std::size_t n = positions_.size();
    range_.assign(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            range_[a][b] =
                (a == b || distance(positions_[a], positions_[b]) <= kCommRangeMeters) ? 1 : 0;
        }
    }
}

void Medium::set_listener(NodeId node, MediumListener* listener) {
    listeners_[node] = listener;
}

RateClass Medium::rate_between(NodeId a, NodeId b) const {
    return rate_for_distance(distance(positions_[a], positions_[b]));
}

SimTime Medium::transmit(NodeId sender, const Frame& frame, RateClass rate) {
    const SimTime now = queue_.now();
    for (const auto& tx : window_) {
        if (tx.sender == sender && tx.end > now) {
            throw std::logic_error("node " + std::to_string(sender) +
                                   " already transmitting at t=" + std::to_string(now) +
                                   " (" + frame_kind_name(frame.kind) + " vs in-flight " +
                                   frame_kind_name(tx.frame.kind) + " ending " +
                                   std::to_string(tx.end) + ")");
        }
    }
    Transmission tx;
    tx.frame = frame;
    tx.sender = sender;
    tx.rate = rate;
    tx.start = now;
    tx.end = now + airtime_us(frame_size_bytes(frame), rate);
    prune();
    window_.push_back(tx);

    // A sender has at most one transmission per start instant, so
    // (sender, start) identifies the record across prune() shifts.
    queue_.schedule_at(tx.end, [this, start = tx.start, sender]() {
        for (std::size_t i = 0; i < window_.size(); ++i) {
            if (window_[i].sender == sender && window_[i].start == start) {
                finish(i);
                return;
            }
        }
        assert(false && "transmission record pruned before delivery");
    });

    // The sender is notified too: its own airtime freezes its DIFS/backoff
    // like any other carrier activity.
    for (NodeId rx = 0; rx < positions_.size(); ++rx) {
        if (range_[sender][rx] && listeners_[rx]) {
            listeners_[rx]->on_channel_update(now);
        }
    }
    return tx.end;
}

bool Medium::corrupted_at(const Transmission& tx, NodeId rx) const {
    for (const auto& other : window_) {
        if (other.sender == tx.sender && other.start == tx.start) continue;  // tx itself
        if (!range_[other.sender][rx]) continue;
        if (other.start < tx.end && tx.start < other.end) {
            return true;
        }
    }
    return false;
}

void Medium::finish(std::size_t tx_index) {
    const Transmission tx = window_[tx_index];
    const SimTime now = queue_.now();

    bool dst_failed = false;
    bool dst_seen = false;
    for (NodeId rx = 0; rx < positions_.size(); ++rx) {
        if (rx == tx.sender || !range_[tx.sender][rx]) continue;
        const bool ok = !corrupted_at(tx, rx);
        const bool addressed = tx.frame.dst == rx || tx.frame.dst == kBroadcast;
        if (addressed) {
            dst_seen = true;
            if (!ok) dst_failed = true;
        }
        if (ok && listeners_[rx]) {
            listeners_[rx]->on_decode(tx, now);
        }
    }
    if (dst_seen && dst_failed) {
        ++collisions_;
    } else if (dst_seen && tx.frame.dst != kBroadcast) {
        ++delivered_;
    }

    for (NodeId rx = 0; rx < positions_.size(); ++rx) {
        if (range_[tx.sender][rx] && listeners_[rx]) {
            listeners_[rx]->on_channel_update(now);
        }
    }
}

bool Medium::carrier_busy(NodeId node) const {
    const SimTime now = queue_.now();
    for (const auto& tx : window_) {
        if (tx.end > now && tx.start <= now && range_[tx.sender][node]) {
            return true;
        }
    }
    return false;
}

std::uint32_t Medium::concurrent_tx_heard(NodeId node) const {
    const SimTime now = queue_.now();
    std::uint32_t count = 0;
    for (const auto& tx : window_) {
        if (tx.end > now && tx.start <= now && tx.sender != node && range_[tx.sender][node]) {
            ++count;
        }
    }
    return count;
}

void Medium::prune() {
    // A frame's airtime never exceeds the max-size DATA frame at 1 Mbps
    // (~33 ms), so anything that ended further back cannot overlap a frame
    // still in the air.
    constexpr SimTime kOverlapWindowUs = 40000;
    const SimTime now = queue_.now();
    if (now < kOverlapWindowUs) return;
    const SimTime floor = now - kOverlapWindowUs;
    std::erase_if(window_, [floor](const Transmission& tx) { return tx.end <= floor; });
}

}  // namespace relaysim
