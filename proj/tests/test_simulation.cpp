#include <doctest.h>

#include <algorithm>
#include <set>

#include "log_checks.hpp"
#include "relaysim/metrics.hpp"
#include "relaysim/simulation.hpp"

using namespace relaysim;

namespace {

ScenarioConfig base_config(std::uint32_t n_nodes, std::uint32_t duration_s) {
    ScenarioConfig cfg;
    cfg.n_nodes = n_nodes;
    cfg.sim_duration_s = duration_s;
    cfg.repetitions = 1;
    return cfg;
}

ScenarioConfig with_inflation_attacker(std::uint32_t n_nodes, std::uint32_t duration_s) {
    ScenarioConfig cfg = base_config(n_nodes, duration_s);
    AttackerConfig att;
    att.mode = AttackMode::DurationInflation;
    cfg.attackers.push_back(att);
    cfg.validate_and_finalize();  // pins the attacker's node id for the sweeps
    return cfg;
}

}  // namespace

TEST_CASE("topology: AP centered, stations reproducible and always reachable") {
    ScenarioConfig cfg = base_config(30, 1);
    cfg.validate_and_finalize();
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomStreams rng_a(seed), rng_b(seed);
        const auto pos_a = generate_topology(cfg, rng_a);
        const auto pos_b = generate_topology(cfg, rng_b);
        REQUIRE(pos_a.size() == 31);
        CHECK(pos_a[kApId].x == doctest::Approx(250.0));
        CHECK(pos_a[kApId].y == doctest::Approx(250.0));
        for (NodeId id = 1; id <= cfg.n_nodes; ++id) {
            CHECK(pos_a[id].x == pos_b[id].x);
            CHECK(pos_a[id].y == pos_b[id].y);
            CHECK(pos_a[id].x >= 0.0);
            CHECK(pos_a[id].x <= 500.0);
            const RateClass r = rate_for_distance(distance(pos_a[id], pos_a[kApId]));
            CHECK(r != RateClass::Unreachable);
            CHECK(r != RateClass::Mbps1);  // max distance ~353.6 m -> at least 2 Mbps
        }
    }
}

TEST_CASE("runs are bit-reproducible for the same config and seed") {
    const ScenarioConfig cfg = with_inflation_attacker(8, 3);
    const RunResult a = run_scenario(cfg, 5, true);
    const RunResult b = run_scenario(cfg, 5, true);
    CHECK(a.metrics.log_digest == b.metrics.log_digest);
    CHECK(a.metrics.delivered_payload_bits == b.metrics.delivered_payload_bits);
    CHECK(a.metrics.detections == b.metrics.detections);
    CHECK(a.metrics.rts_sent == b.metrics.rts_sent);
    CHECK(a.metrics.collisions == b.metrics.collisions);
    CHECK(a.log.size() == b.log.size());
}

TEST_CASE("saturated stations deliver traffic and all of it is counted at the AP") {
    const ScenarioConfig cfg = base_config(6, 3);
    const RunResult r = run_scenario(cfg, 11, true);
    CHECK(r.metrics.delivered_payload_bits > 0);
    std::uint64_t per_node_total = 0;
    for (auto bits : r.metrics.per_node_delivered_bits) per_node_total += bits;
    CHECK(per_node_total == r.metrics.delivered_payload_bits);
    CHECK(r.metrics.delivered_payload_bits ==
          8ull * cfg.payload_bytes * checks::count_kind(r.log, TraceKind::Deliver));
    CHECK(r.metrics.rts_sent > 0);
    CHECK(r.metrics.false_positives == 0);
}

TEST_CASE("NAV safety and cascade consistency hold over full logs") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const ScenarioConfig cfg = with_inflation_attacker(10, 3);
        const RunResult r = run_scenario(cfg, seed, true);
        CHECK(checks::nav_safety_violations(r.log, checks::flood_ids(cfg)) == 0);
        CHECK(checks::cascade_violations(r.log) == 0);
        CHECK(checks::blacklist_relay_violations(r.log) == 0);
        CHECK(checks::blacklist_regrow_violations(r.log) == 0);
    }
}

TEST_CASE("defense toggle changes nothing when no attacker is configured") {
    ScenarioConfig on = base_config(7, 3);
    ScenarioConfig off = on;
    off.defense_enabled = false;
    const RunResult a = run_scenario(on, 42, false);
    const RunResult b = run_scenario(off, 42, false);
    CHECK(a.metrics.log_digest == b.metrics.log_digest);
    CHECK(a.metrics.delivered_payload_bits == b.metrics.delivered_payload_bits);
    CHECK(a.metrics.detections == 0);
    CHECK(b.metrics.detections == 0);
}

TEST_CASE("a never-activated attacker perturbs nothing") {
    // Same honest population; the attacker node exists but stays silent.
    ScenarioConfig with_silent = base_config(10, 3);
    AttackerConfig att;
    att.mode = AttackMode::DurationInflation;
    att.start_at = with_silent.sim_duration_us() + 1;
    with_silent.attackers.push_back(att);

    const ScenarioConfig without = base_config(9, 3);

    const RunResult a = run_scenario(with_silent, 9, true);
    const RunResult b = run_scenario(without, 9, true);
    CHECK(a.metrics.log_digest == b.metrics.log_digest);
    CHECK(a.log.size() == b.log.size());
    CHECK(a.metrics.delivered_payload_bits == b.metrics.delivered_payload_bits);
}

TEST_CASE("inflation attack: detection, blacklist replication, throughput recovery") {
    const std::uint64_t seed = 3;
    ScenarioConfig on = with_inflation_attacker(12, 5);
    ScenarioConfig off = on;
    off.defense_enabled = false;

    const RunResult r_on = run_scenario(on, seed, true);
    const RunResult r_off = run_scenario(off, seed, true);

    CHECK(r_on.metrics.detections >= 1);
    CHECK(r_on.metrics.false_positives == 0);
    CHECK(r_off.metrics.detections == 0);

    const auto timing = checks::detection_timing(r_on.log, checks::attacker_ids(on));
    REQUIRE(timing.any_detection);
    CHECK(timing.first_detection == timing.first_forged_decode);

    // the AP flags locally, then stations learn via the broadcast
    std::set<NodeId> holders;
    for (const auto& rec : r_on.log) {
        if (rec.kind == TraceKind::BlacklistAdd) holders.insert(rec.node);
    }
    CHECK(holders.count(kApId) == 1);
    CHECK(holders.size() > 1);

    CHECK(mac_throughput_bps(r_on.metrics) > mac_throughput_bps(r_off.metrics));

    // the attack visibly denies service compared to a clean cell
    const ScenarioConfig clean = base_config(12, 5);
    const RunResult r_clean = run_scenario(clean, seed, false);
    CHECK(mac_throughput_bps(r_off.metrics) < 0.8 * mac_throughput_bps(r_clean.metrics));
}

TEST_CASE("attackers are never relay candidates") {
    const ScenarioConfig cfg = with_inflation_attacker(12, 3);
    const RunResult r = run_scenario(cfg, 4, true);
    const auto attackers = checks::attacker_ids(cfg);
    for (const auto& rec : r.log) {
        if (rec.kind == TraceKind::RelaySelect) {
            CHECK(attackers.count(rec.other) == 0);
        }
    }
}

TEST_CASE("relaying engages when the geometry offers faster two-hop paths") {
    // Scan a few seeds; with 15 stations some source ends up beyond 250 m
    // with a mid station covering it, so cooperative exchanges must appear.
    std::uint64_t selects = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ScenarioConfig cfg = base_config(15, 2);
        const RunResult r = run_scenario(cfg, seed, true);
        selects += checks::count_kind(r.log, TraceKind::RelaySelect);
    }
    CHECK(selects > 0);
}

TEST_CASE("flood attacker floods regardless of carrier state") {
    ScenarioConfig cfg = base_config(6, 2);
    AttackerConfig att;
    att.mode = AttackMode::Flood;
    att.period_us = 5000;
    cfg.attackers.push_back(att);
    const RunResult r = run_scenario(cfg, 8, true);

    std::uint64_t flood_rts = 0;
    for (const auto& rec : r.log) {
        if (rec.kind == TraceKind::TxStart && rec.frame_kind == FrameKind::Rts &&
            rec.node == cfg.n_nodes) {
            ++flood_rts;
        }
    }
    // 2 s at one frame per 5 ms, minus any self-overlap skips
    CHECK(flood_rts >= 350);
    CHECK(r.metrics.detections == 0);  // legitimate-looking claims pass revalidation
}

TEST_CASE("attack start_at gates the first forged frame") {
    ScenarioConfig cfg = base_config(5, 2);
    AttackerConfig att;
    att.mode = AttackMode::DurationInflation;
    att.start_at = 1000000;  // 1 s
    cfg.attackers.push_back(att);
    const RunResult r = run_scenario(cfg, 6, true);
    for (const auto& rec : r.log) {
        if (rec.kind == TraceKind::TxStart && rec.node == cfg.n_nodes) {
            CHECK(rec.t >= att.start_at);
        }
    }
}

TEST_CASE("invalid configs are rejected before simulation") {
    ScenarioConfig cfg = base_config(0, 1);
    CHECK_THROWS_AS(run_scenario(cfg, 1), ConfigError);
    ScenarioConfig bad_payload = base_config(5, 1);
    bad_payload.payload_bytes = 5000;
    CHECK_THROWS_AS(run_scenario(bad_payload, 1), ConfigError);
}

TEST_CASE("single saturated station tracks the analytic DCF cycle") {
    // Find a seed placing the lone station within 125 m of the AP, then the
    // mean cycle is DIFS + mean backoff + RTS + reservation = 2284 us.
    ScenarioConfig cfg = base_config(1, 5);
    cfg.validate_and_finalize();
    std::uint64_t seed = 0;
    for (std::uint64_t s = 1; s < 200 && seed == 0; ++s) {
        RandomStreams rng(s);
        const auto pos = generate_topology(cfg, rng);
        if (distance(pos[1], pos[kApId]) <= 125.0) seed = s;
    }
    REQUIRE(seed != 0);
    const RunResult r = run_scenario(cfg, seed, false);
    const double expected = 16384.0 / 2284.0 * 1e6;
    const double measured = mac_throughput_bps(r.metrics);
    CHECK(measured > 0.95 * expected);
    CHECK(measured < 1.05 * expected);
}

TEST_CASE("a granted forged reservation silences informed nodes for its whole span") {
    // Defense off: each attacker cycle that wins a CTS should hold the cell
    // quiet; only stations that decoded neither the RTS nor the CTS may
    // slip a transmission into the reserved window.
    ScenarioConfig cfg = with_inflation_attacker(12, 5);
    cfg.defense_enabled = false;
    const RunResult r = run_scenario(cfg, 3, true);
    const NodeId attacker = cfg.attackers[0].node;

    std::set<std::uint64_t> attack_exchanges;
    std::map<std::uint64_t, std::pair<SimTime, SimTime>> windows;  // exch -> [start, end)
    for (const auto& rec : r.log) {
        if (rec.kind != TraceKind::TxStart) continue;
        if (rec.frame_kind == FrameKind::Rts && rec.node == attacker) {
            attack_exchanges.insert(rec.exchange);
        } else if (rec.frame_kind == FrameKind::Cts && attack_exchanges.count(rec.exchange)) {
            const SimTime cts_end = rec.t + cts_airtime_us();
            windows[rec.exchange] = {cts_end, cts_end + rec.duration_us};
        }
    }
    REQUIRE(windows.size() >= 3);  // the attacker won the medium repeatedly

    std::size_t fully_quiet = 0;
    for (const auto& [exch, win] : windows) {
        bool quiet = true;
        for (const auto& rec : r.log) {
            if (rec.kind != TraceKind::TxStart || !rec.contention) continue;
            if (rec.node == attacker || rec.node == kApId) continue;
            if (rec.t > win.first && rec.t < win.second) {
                // whoever transmitted must not have known the reservation
                CHECK(rec.nav_quiet_until < win.second);
                quiet = false;
            }
        }
        if (quiet) ++fully_quiet;
    }
    // the dominant outcome is a fully wasted reservation
    CHECK(fully_quiet * 2 >= windows.size());
}
