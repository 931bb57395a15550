#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "relaysim/metrics.hpp"
#include "relaysim/scenario.hpp"

namespace relaysim {

// One completed (config point, seed) run.
struct RunRow {
    std::string scenario_id;
    std::uint32_t n_nodes = 0;
    std::uint32_t n_attackers = 0;
    std::string attack_mode;
    bool defense = false;
    std::uint64_t seed = 0;
    double throughput_bps = 0.0;
    std::uint64_t detections = 0;
    std::uint64_t false_positives = 0;
    std::uint64_t rts_sent = 0;
    std::uint64_t collisions = 0;
};

std::string format_run_row(const RunRow& row);

RunRow make_run_row(const ScenarioConfig& cfg, std::uint64_t seed, const RunMetrics& metrics);

// Fixed column order, RFC-4180-style quoting, LF line endings. Zero rows
// produce a header-only file.
void emit_csv(std::ostream& out, const std::vector<RunRow>& rows);

struct SummaryRow {
    std::string scenario_id;
    std::uint32_t n_nodes = 0;
    std::uint32_t n_attackers = 0;
    std::string attack_mode;
    bool defense = false;
    std::uint32_t runs = 0;
    double throughput_mean_bps = 0.0;
    std::optional<double> throughput_ci95_half_bps;
};

void emit_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// Mean and 95% CI per (scenario_id, defense) group, preserving first-seen order.
std::vector<SummaryRow> summarize(const std::vector<RunRow>& rows);

// Throws std::ios_base::failure on an unwritable path (CLI exit code 3).
void write_csv_file(const std::string& path, const std::vector<RunRow>& rows);
void write_summary_file(const std::string& path, const std::vector<SummaryRow>& rows);

}  // namespace relaysim
