#include "relaysim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace relaysim {

namespace {

// Fixed-point formatting keeps rows byte-identical across runs.
std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

constexpr const char* kRunHeader =
    "scenario_id,n_nodes,n_attackers,attack_mode,defense,seed,throughput_bps,detections,"
    "false_positives,rts_sent,collisions";

constexpr const char* kSummaryHeader =
    "scenario_id,n_nodes,n_attackers,attack_mode,defense,runs,throughput_mean_bps,"
    "throughput_ci95_half_bps";

}  // namespace

RunRow make_run_row(const ScenarioConfig& cfg, std::uint64_t seed, const RunMetrics& m) {
    RunRow row;
    row.scenario_id = cfg.scenario_id();
    row.n_nodes = cfg.n_nodes;
    row.n_attackers = static_cast<std::uint32_t>(cfg.attackers.size());
    row.attack_mode = cfg.attack_mode_label();
    row.defense = cfg.defense_enabled;
    row.seed = seed;
    row.throughput_bps = mac_throughput_bps(m);
    row.detections = m.detections;
    row.false_positives = m.false_positives;
    row.rts_sent = m.rts_sent;
    row.collisions = m.collisions;
    return row;
}

std::string format_run_row(const RunRow& r) {
    std::ostringstream os;
    os << quote_if_needed(r.scenario_id) << ',' << r.n_nodes << ',' << r.n_attackers << ','
       << quote_if_needed(r.attack_mode) << ',' << (r.defense ? "on" : "off") << ',' << r.seed
       << ',' << fixed3(r.throughput_bps) << ',' << r.detections << ',' << r.false_positives
       << ',' << r.rts_sent << ',' << r.collisions;
    return os.str();
}

void emit_csv(std::ostream& out, const std::vector<RunRow>& rows) {
    out << kRunHeader << '\n';
    for (const auto& r : rows) {
        out << format_run_row(r) << '\n';
    }
}

void emit_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << kSummaryHeader << '\n';
    for (const auto& r : rows) {
        out << quote_if_needed(r.scenario_id) << ',' << r.n_nodes << ',' << r.n_attackers << ','
            << quote_if_needed(r.attack_mode) << ',' << (r.defense ? "on" : "off") << ','
            << r.runs << ',' << fixed3(r.throughput_mean_bps) << ',';
        if (r.throughput_ci95_half_bps) {
            out << fixed3(*r.throughput_ci95_half_bps);
        }
        out << '\n';
    }
}

std::vector<SummaryRow> summarize(const std::vector<RunRow>& rows) {
    std::vector<SummaryRow> out;
    std::map<std::pair<std::string, bool>, std::size_t> index;
    std::vector<std::vector<double>> samples;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.scenario_id, r.defense);
        auto it = index.find(key);
        if (it == index.end()) {
            SummaryRow s;
            s.scenario_id = r.scenario_id;
            s.n_nodes = r.n_nodes;
            s.n_attackers = r.n_attackers;
            s.attack_mode = r.attack_mode;
            s.defense = r.defense;
            out.push_back(s);
            samples.emplace_back();
            it = index.emplace(key, out.size() - 1).first;
        }
        samples[it->second].push_back(r.throughput_bps);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const Ci95 ci = aggregate_ci95(samples[i]);
        out[i].runs = static_cast<std::uint32_t>(samples[i].size());
        out[i].throughput_mean_bps = ci.mean;
        out[i].throughput_ci95_half_bps = ci.half_width;
    }
    return out;
}

void write_csv_file(const std::string& path, const std::vector<RunRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    emit_csv(out, rows);
    out.flush();
    if (!out) throw std::ios_base::failure("write failed for " + path);
}

void write_summary_file(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    emit_summary_csv(out, rows);
    out.flush();
    if (!out) throw std::ios_base::failure("write failed for " + path);
}

}  // namespace relaysim
