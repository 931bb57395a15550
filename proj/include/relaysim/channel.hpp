#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "relaysim/frame.hpp"
#include "relaysim/kernel.hpp"

namespace relaysim {

constexpr double kPlaygroundMeters = 500.0;
constexpr double kCommRangeMeters = 500.0;

struct Position {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Position& a, const Position& b);

// Distance-based rate adaptation. Unreachable beyond the communication range.
enum class RateClass : std::uint8_t { Mbps1, Mbps2, Mbps5_5, Mbps11, Unreachable };

RateClass rate_for_distance(double d);

// Strict "faster than" on rate classes; Unreachable compares below everything.
bool rate_faster(RateClass a, RateClass b);

const char* rate_name(RateClass r);

// ceil(8 * size_bytes / rate_in_Mbps) microseconds, exact in integer
// arithmetic (5.5 Mbps is carried as the ratio 11/2).
SimTime airtime_us(std::uint32_t size_bytes, RateClass rate);

struct Transmission {
    Frame frame;
    NodeId sender = kNoNode;
    RateClass rate = RateClass::Mbps1;
    SimTime start = 0;
    SimTime end = 0;
};

// Receiver-side hooks a node registers with the medium.
class MediumListener {
public:
    virtual ~MediumListener() = default;
    // A transmission within carrier-sense range started or ended; the node
    // re-queries Medium::carrier_busy to react.
    virtual void on_channel_update(SimTime now) = 0;
    // Frame decoded at this node (in range, no overlapping in-range
    // transmission for the frame's whole airtime).
    virtual void on_decode(const Transmission& tx, SimTime now) = 0;
};

// Unit-disk broadcast medium over a static topology. A receiver decodes a
// frame iff exactly one in-range transmission overlaps the frame's [start,
// end) interval; any temporal overlap of two in-range transmissions corrupts
// both at that receiver. A node's own transmission counts as in-range, which
// makes nodes half-duplex without a special case.
class Medium {
public:
    Medium(EventQueue& queue, std::vector<Position> positions);

    void set_listener(NodeId node, MediumListener* listener);

    std::size_t node_count() const { return positions_.size(); }
    const Position& position(NodeId node) const { return positions_[node]; }
    bool in_range(NodeId a, NodeId b) const { return range_[a][b] != 0; }
    RateClass rate_between(NodeId a, NodeId b) const;

    // Starts a transmission now; returns its end time. The sender must not
    // already be transmitting.
    SimTime transmit(NodeId sender, const Frame& frame, RateClass rate);

    bool carrier_busy(NodeId node) const;

    // Distinct ongoing transmissions decodable at `node` right now; the
    // interference snapshot used at relay-selection time.
    std::uint32_t concurrent_tx_heard(NodeId node) const;

    // Transmissions whose addressed receiver failed to decode them.
    std::uint64_t collision_count() const { return collisions_; }

    // Unicast deliveries that reached their destination intact.
    std::uint64_t delivered_count() const { return delivered_; }

private:
    void finish(std::size_t tx_index);
    bool corrupted_at(const Transmission& tx, NodeId rx) const;
    void prune();

    EventQueue& queue_;
    std::vector<Position> positions_;
    std::vector<std::vector<std::uint8_t>> range_;
    std::vector<MediumListener*> listeners_;
    // Window of recent + active transmissions, pruned once they can no
    // longer overlap anything still in the air.
    std::vector<Transmission> window_;
    std::uint64_t collisions_ = 0;
    std::uint64_t delivered_ = 0;
};

}  // namespace relaysim
