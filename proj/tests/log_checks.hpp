#pragma once

// Whole-log invariant sweeps shared by the integration tests and the
// acceptance suite.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "relaysim/scenario.hpp"
#include "relaysim/timing.hpp"
#include "relaysim/trace.hpp"

namespace relaysim::checks {

inline std::set<NodeId> flood_ids(const ScenarioConfig& cfg) {
    std::set<NodeId> out;
    for (const auto& a : cfg.attackers) {
        if (a.mode == AttackMode::Flood) out.insert(a.node);
    }
    return out;
}

inline std::set<NodeId> attacker_ids(const ScenarioConfig& cfg) {
    std::set<NodeId> out;
    for (const auto& a : cfg.attackers) out.insert(a.node);
    return out;
}

// No transmission may start during an active NAV whose setter is not
// blacklisted. Flood attackers break NAV by definition and are exempt.
inline std::uint64_t nav_safety_violations(const std::vector<TraceRecord>& log,
                                           const std::set<NodeId>& flood) {
    std::uint64_t bad = 0;
    for (const auto& r : log) {
        if (r.kind != TraceKind::TxStart) continue;
        if (flood.count(r.node)) continue;
        if (r.nav_quiet_until > r.t && !r.nav_setter_blacklisted) ++bad;
    }
    return bad;
}

// CTS duration + SIFS + T_CTS must equal the RTS duration, exactly, for
// every granted exchange.
inline std::uint64_t cascade_violations(const std::vector<TraceRecord>& log) {
    std::map<std::uint64_t, std::uint32_t> rts_duration;
    std::uint64_t bad = 0;
    for (const auto& r : log) {
        if (r.kind != TraceKind::TxStart) continue;
        if (r.frame_kind == FrameKind::Rts) {
            rts_duration[r.exchange] = r.duration_us;
        } else if (r.frame_kind == FrameKind::Cts) {
            auto it = rts_duration.find(r.exchange);
            if (it == rts_duration.end() ||
                r.duration_us + kSifsUs + cts_airtime_us() != it->second) {
                ++bad;
            }
        }
    }
    return bad;
}

// A blacklisted id must never be picked as relay once the selecting node has
// decoded the broadcast (records arrive in time order).
inline std::uint64_t blacklist_relay_violations(const std::vector<TraceRecord>& log) {
    std::map<NodeId, std::set<NodeId>> known;  // node -> offenders it holds
    std::uint64_t bad = 0;
    for (const auto& r : log) {
        if (r.kind == TraceKind::BlacklistAdd) {
            known[r.node].insert(r.other);
        } else if (r.kind == TraceKind::RelaySelect) {
            auto it = known.find(r.node);
            if (it != known.end() && it->second.count(r.other)) ++bad;
        }
    }
    return bad;
}

// Blacklists may only grow: one BlacklistAdd per (node, offender).
inline std::uint64_t blacklist_regrow_violations(const std::vector<TraceRecord>& log) {
    std::set<std::pair<NodeId, NodeId>> seen;
    std::uint64_t bad = 0;
    for (const auto& r : log) {
        if (r.kind != TraceKind::BlacklistAdd) continue;
        if (!seen.emplace(r.node, r.other).second) ++bad;
    }
    return bad;
}

struct DetectionTiming {
    SimTime first_forged_decode = 0;
    SimTime first_detection = 0;
    bool any_forged_decode = false;
    bool any_detection = false;
};

// Detection soundness: the first detection coincides with the AP's first
// decode of an attacker RTS.
inline DetectionTiming detection_timing(const std::vector<TraceRecord>& log,
                                        const std::set<NodeId>& attackers) {
    DetectionTiming out;
    for (const auto& r : log) {
        if (r.kind == TraceKind::Decode && r.node == 0 && r.frame_kind == FrameKind::Rts &&
            attackers.count(r.src) && !out.any_forged_decode) {
            out.first_forged_decode = r.t;
            out.any_forged_decode = true;
        }
        if (r.kind == TraceKind::Detection && !out.any_detection) {
            out.first_detection = r.t;
            out.any_detection = true;
        }
    }
    return out;
}

inline std::uint64_t count_kind(const std::vector<TraceRecord>& log, TraceKind kind) {
    std::uint64_t n = 0;
    for (const auto& r : log) {
        if (r.kind == kind) ++n;
    }
    return n;
}

}  // namespace relaysim::checks
