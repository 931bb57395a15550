#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "relaysim/csv.hpp"
#include "relaysim/scenario.hpp"
#include "relaysim/simulation.hpp"

namespace {

using namespace relaysim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::vector<RunRow> run_repetitions(const ScenarioConfig& cfg, std::uint32_t seeds) {
    std::vector<RunRow> rows;
    rows.reserve(seeds);
    for (std::uint32_t i = 0; i < seeds; ++i) {
        const std::uint64_t seed = cfg.seed + i;
        const RunResult result = run_scenario(cfg, seed);
        rows.push_back(make_run_row(cfg, seed, result.metrics));
    }
    return rows;
}

void print_summaries(const std::vector<SummaryRow>& summaries) {
    for (const auto& s : summaries) {
        std::printf("%-24s defense=%-3s runs=%-3u mean=%12.1f bps", s.scenario_id.c_str(),
                    s.defense ? "on" : "off", s.runs, s.throughput_mean_bps);
        if (s.throughput_ci95_half_bps) {
            std::printf("  ci95=+/-%10.1f", *s.throughput_ci95_half_bps);
        }
        std::printf("\n");
    }
    // Headline defense gain per scenario point when both toggles are present.
    for (const auto& on : summaries) {
        if (!on.defense) continue;
        for (const auto& off : summaries) {
            if (off.defense || off.scenario_id != on.scenario_id) continue;
            if (off.throughput_mean_bps > 0.0) {
                std::printf("%-24s defense gain: %.3fx\n", on.scenario_id.c_str(),
                            on.throughput_mean_bps / off.throughput_mean_bps);
            }
        }
    }
}

std::string summary_path_for(const std::string& out_path) {
    const std::string suffix = ".csv";
    if (out_path.size() > suffix.size() &&
        out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return out_path.substr(0, out_path.size() - suffix.size()) + "_summary.csv";
    }
    return out_path + "_summary";
}

struct SweepRange {
    std::uint32_t start = 5, stop = 50, step = 5;
};

SweepRange parse_range(const std::string& text) {
    SweepRange r;
    if (std::sscanf(text.c_str(), "%u:%u:%u", &r.start, &r.stop, &r.step) != 3 || r.step == 0 ||
        r.start == 0 || r.stop < r.start) {
        throw ConfigError("--nodes", "expected start:stop:step with start >= 1, got '" + text +
                                         "'");
    }
    return r;
}

int cmd_run(const std::string& config_path, std::uint32_t seeds_override, bool paper_scale,
            const std::string& out_path) {
    ScenarioConfig cfg = parse_config_file(config_path);
    if (paper_scale) {
        cfg.sim_duration_s = 500;
        cfg.repetitions = 50;
    }
    const std::uint32_t seeds = seeds_override ? seeds_override : cfg.repetitions;

    const std::vector<RunRow> rows = run_repetitions(cfg, seeds);
    const std::vector<SummaryRow> summaries = summarize(rows);
    write_csv_file(out_path, rows);
    write_summary_file(summary_path_for(out_path), summaries);
    print_summaries(summaries);
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& nodes_range,
              std::uint32_t attackers, const std::string& mode, const std::string& defense,
              std::uint32_t seeds_override, bool paper_scale, const std::string& out_dir) {
    ScenarioConfig base = parse_config_file(config_path);
    if (paper_scale) {
        base.sim_duration_s = 500;
        base.repetitions = 50;
    }
    const SweepRange range = parse_range(nodes_range);

    std::vector<bool> defense_values;
    if (defense == "both") {
        defense_values = {false, true};
    } else if (defense == "on") {
        defense_values = {true};
    } else if (defense == "off") {
        defense_values = {false};
    } else {
        throw ConfigError("--defense", "expected on, off or both, got '" + defense + "'");
    }

    AttackMode attack_mode;
    if (mode == "inflation" || mode == "inflate") {
        attack_mode = AttackMode::DurationInflation;
    } else if (mode == "flood") {
        attack_mode = AttackMode::Flood;
    } else {
        throw ConfigError("--mode", "expected inflation or flood, got '" + mode + "'");
    }

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::ios_base::failure("cannot create " + out_dir);

    std::vector<RunRow> rows;
    for (std::uint32_t n = range.start; n <= range.stop; n += range.step) {
        for (bool defense_on : defense_values) {
            ScenarioConfig cfg = base;
            cfg.n_nodes = n;
            cfg.defense_enabled = defense_on;
            cfg.attackers.clear();
            for (std::uint32_t a = 0; a < attackers; ++a) {
                AttackerConfig att;
                att.mode = attack_mode;
                cfg.attackers.push_back(att);
            }
            cfg.validate_and_finalize();
            const std::uint32_t seeds = seeds_override ? seeds_override : cfg.repetitions;
            for (const auto& row : run_repetitions(cfg, seeds)) {
                rows.push_back(row);
            }
        }
    }

    const std::vector<SummaryRow> summaries = summarize(rows);
    write_csv_file(out_dir + "/results.csv", rows);
    write_summary_file(out_dir + "/summary.csv", summaries);
    print_summaries(summaries);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"WLAN cell simulator: cooperative relaying under RTS-based DoS, with the "
                 "revalidation defense"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path = "results.csv";
    std::string out_dir = "sweep_out";
    std::string nodes_range = "5:50:5";
    std::string mode = "inflation";
    std::string defense = "both";
    std::uint32_t seeds_override = 0;
    std::uint32_t attackers = 1;
    bool paper_scale = false;

    auto* run = app.add_subcommand("run", "Run one scenario file across seeds");
    run->add_option("--config", config_path, "Scenario file")->required();
    run->add_option("--seeds", seeds_override, "Override the number of repetitions");
    run->add_option("--out", out_path, "Per-run CSV output path");
    run->add_flag("--paper-scale", paper_scale, "500 s runs, 50 seeds");

    auto* sweep = app.add_subcommand("sweep", "Sweep node counts with defense on/off");
    sweep->add_option("--config", config_path, "Base scenario file")->required();
    sweep->add_option("--nodes", nodes_range, "Node counts as start:stop:step");
    sweep->add_option("--attackers", attackers, "Attacker count per point");
    sweep->add_option("--mode", mode, "Attack mode: inflation or flood");
    sweep->add_option("--defense", defense, "on, off or both");
    sweep->add_option("--seeds", seeds_override, "Override the number of repetitions");
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_flag("--paper-scale", paper_scale, "500 s runs, 50 seeds");

    try {
        app.parse(argc, argv);
        if (run->parsed()) {
            return cmd_run(config_path, seeds_override, paper_scale, out_path);
        }
        return cmd_sweep(config_path, nodes_range, attackers, mode, defense, seeds_override,
                         paper_scale, out_dir);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const relaysim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
