#pragma once

#include <cstdint>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/metrics.hpp"
#include "relaysim/random.hpp"
#include "relaysim/scenario.hpp"
#include "relaysim/trace.hpp"

namespace relaysim {

// The AP is node 0; stations are 1..n_nodes.
constexpr NodeId kApId = 0;

struct RunResult {
    RunMetrics metrics;
    std::vector<TraceRecord> log;  // populated only when keep_log was requested
};

// AP pinned at the playground center, stations i.i.d. uniform over the
// playground, each from its own topology substream. With the AP centered,
// every station is within 354 m and reaches it at 2 Mbps or better.
std::vector<Position> generate_topology(const ScenarioConfig& cfg, RandomStreams& rng);

// One complete run: a pure function of (config, seed).
RunResult run_scenario(const ScenarioConfig& cfg, std::uint64_t seed, bool keep_log = false);

}  // namespace relaysim
