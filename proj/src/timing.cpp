#include "relaysim/timing.hpp"

#include <stdexcept>

namespace relaysim {

SimTime cts_airtime_us() { return airtime_us(kCtsBytes, kControlRate); }
SimTime ack_airtime_us() { return airtime_us(kAckBytes, kControlRate); }
SimTime rts_airtime_us() { return airtime_us(kRtsBytes, kControlRate); }
SimTime blacklist_airtime_us() { return airtime_us(kBlacklistBytes, kControlRate); }

SimTime data_airtime_us(std::uint32_t payload_bytes, RateClass rate) {
    if (payload_bytes == 0) return 0;
    return airtime_us(kDataHeaderBytes + payload_bytes, rate);
}

std::uint32_t duration_direct_us(std::uint32_t payload_bytes, RateClass direct_rate) {
    const SimTime d = 3 * kSifsUs + cts_airtime_us() + data_airtime_us(payload_bytes, direct_rate) +
                      ack_airtime_us();
    return static_cast<std::uint32_t>(d);
}

std::uint32_t duration_coop_us(std::uint32_t payload_bytes, RateClass src_to_relay,
                               RateClass relay_to_ap) {
    const SimTime d = 4 * kSifsUs + cts_airtime_us() +
                      data_airtime_us(payload_bytes, src_to_relay) +
                      data_airtime_us(payload_bytes, relay_to_ap) + ack_airtime_us();
    return static_cast<std::uint32_t>(d);
}

std::uint32_t compute_duration(std::uint32_t payload_bytes, std::optional<RateClass> direct_rate,
                               std::optional<std::pair<RateClass, RateClass>> relay_rates) {
    std::uint32_t d;
    if (relay_rates) {
        if (direct_rate) {
            if (!rate_faster(relay_rates->first, *direct_rate) ||
                !rate_faster(relay_rates->second, *direct_rate)) {
                throw std::logic_error("relay rates must both exceed the direct rate");
            }
        }
        d = duration_coop_us(payload_bytes, relay_rates->first, relay_rates->second);
    } else if (direct_rate) {
        d = duration_direct_us(payload_bytes, *direct_rate);
    } else {
        throw std::logic_error("compute_duration needs a direct rate or relay rates");
    }
    if (d > kMaxDurationUs) {
        throw std::invalid_argument("legitimate reservation does not fit the duration field");
    }
    return d;
}

std::uint32_t cts_duration_us(std::uint32_t rts_duration_us) {
    const std::uint32_t spent = static_cast<std::uint32_t>(kSifsUs + cts_airtime_us());
    return rts_duration_us > spent ? rts_duration_us - spent : 0;
}

std::uint32_t data_direct_duration_us() {
    return static_cast<std::uint32_t>(kSifsUs + ack_airtime_us());
}

std::uint32_t data_relay_duration_us(std::uint32_t payload_bytes, RateClass relay_to_ap) {
    return static_cast<std::uint32_t>(2 * kSifsUs + data_airtime_us(payload_bytes, relay_to_ap) +
                                      ack_airtime_us());
}

SimTime response_timeout_us(SimTime response_airtime) {
    return kSifsUs + response_airtime + 2 * kSlotUs;
}

}  // namespace relaysim
