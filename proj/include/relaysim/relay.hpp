#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "relaysim/channel.hpp"
#include "relaysim/defense.hpp"
#include "relaysim/frame.hpp"

namespace relaysim {

// Per-(source, candidate) relaying history and interference inputs.
struct RelayStats {
    std::uint64_t successes = 0;  // exchanges via this candidate that ended in an AP ACK
    std::uint64_t attempts = 0;   // times this candidate was selected
    std::uint32_t neighbors = 0;  // static count of nodes within range of the candidate
    std::uint32_t concurrent_tx = 0;  // ongoing transmissions heard there, sampled at selection
};

// HF = (successes + 1) / (attempts + 1). Smoothing keeps HF in ]0, 1] and
// starts unknown candidates at the optimistic upper bound.
double history_factor(std::uint64_t successes, std::uint64_t attempts);

// IF = neighbors / max_neighbors + concurrent_tx (0 for a single-node network).
double interference_factor(std::uint32_t neighbors, std::uint32_t max_neighbors,
                           std::uint32_t concurrent_tx);

// SF = HF / (1 + IF), valued in ]0, 1].
double selection_factor(double hf, double if_);

struct RelayCandidate {
    NodeId id = kNoNode;
    RateClass src_to_cand = RateClass::Unreachable;
    RateClass cand_to_ap = RateClass::Unreachable;
    RelayStats stats;
};

// Highest-SF candidate whose hop rates both strictly beat the direct rate and
// who is not blacklisted; ties go to the lowest node id. nullopt means the
// source transmits direct.
std::optional<NodeId> select_relay(const std::vector<RelayCandidate>& candidates,
                                   RateClass direct_rate, const Blacklist& blacklist,
                                   std::uint32_t max_neighbors);

void record_outcome(RelayStats& stats, bool success);

}  // namespace relaysim
