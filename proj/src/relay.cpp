#include "relaysim/relay.hpp"

#include <stdexcept>

namespace relaysim {

double history_factor(std::uint64_t successes, std::uint64_t attempts) {
    if (successes > attempts) {
        throw std::logic_error("history_factor: successes exceed attempts");
    }
    return static_cast<double>(successes + 1) / static_cast<double>(attempts + 1);
}

double interference_factor(std::uint32_t neighbors, std::uint32_t max_neighbors,
                           std::uint32_t concurrent_tx) {
    if (max_neighbors == 0) {
        return 0.0;  // degenerate single-node network
    }
    return static_cast<double>(neighbors) / static_cast<double>(max_neighbors) +
           static_cast<double>(concurrent_tx);
}

double selection_factor(double hf, double if_) {
    return hf / (1.0 + if_);
}

std::optional<NodeId> select_relay(const std::vector<RelayCandidate>& candidates,
                                   RateClass direct_rate, const Blacklist& blacklist,
                                   std::uint32_t max_neighbors) {
    std::optional<NodeId> best;
    double best_sf = 0.0;
    for (const auto& cand : candidates) {
        if (blacklist.contains(cand.id)) continue;
        if (!rate_faster(cand.src_to_cand, direct_rate) ||
            !rate_faster(cand.cand_to_ap, direct_rate)) {
            continue;
        }
        const double hf = history_factor(cand.stats.successes, cand.stats.attempts);
        const double ifs =
            interference_factor(cand.stats.neighbors, max_neighbors, cand.stats.concurrent_tx);
        const double sf = selection_factor(hf, ifs);
        if (!best || sf > best_sf || (sf == best_sf && cand.id < *best)) {
            best = cand.id;
            best_sf = sf;
        }
    }
    return best;
}

void record_outcome(RelayStats& stats, bool success) {
    ++stats.attempts;
    if (success) ++stats.successes;
}

}  // namespace relaysim
