#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relaysim/kernel.hpp"

namespace relaysim {

struct RunMetrics {
    std::uint64_t delivered_payload_bits = 0;  // unique payloads ACKed at the AP
    SimTime sim_duration_us = 0;
    std::uint64_t detections = 0;
    std::uint64_t false_positives = 0;
    std::uint64_t rts_sent = 0;
    std::uint64_t collisions = 0;
    std::vector<std::uint64_t> per_node_delivered_bits;  // indexed by node id
    std::uint64_t log_digest = 0;
};

double mac_throughput_bps(const RunMetrics& m);

struct Ci95 {
    double mean = 0.0;
    std::optional<double> half_width;  // absent for a single sample
};

// Student-t 95% confidence interval: half = t(0.975, n-1) * s / sqrt(n).
Ci95 aggregate_ci95(const std::vector<double>& values);

}  // namespace relaysim
