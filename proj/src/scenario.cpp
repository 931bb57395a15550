#include "relaysim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "relaysim/timing.hpp"

namespace relaysim {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "off" || value == "0" || value == "no") return false;
    throw ConfigError(key, "expected on/off, got '" + value + "'");
}

AttackMode parse_mode(const std::string& key, const std::string& value) {
    if (value == "inflation" || value == "inflate") return AttackMode::DurationInflation;
    if (value == "flood") return AttackMode::Flood;
    throw ConfigError(key, "expected inflation or flood, got '" + value + "'");
}

}  // namespace

void ScenarioConfig::validate_and_finalize() {
    if (n_nodes < 1 || n_nodes > 200) {
        throw ConfigError("n_nodes", "must be in 1..200");
    }
    if (sim_duration_s == 0) {
        throw ConfigError("sim_duration_s", "must be positive");
    }
    if (repetitions == 0) {
        throw ConfigError("repetitions", "must be at least 1");
    }
    if (payload_bytes == 0) {
        throw ConfigError("payload_bytes", "must be positive");
    }
    // The slowest legitimate reservation must still fit the duration field.
    const std::uint32_t worst = duration_direct_us(payload_bytes, RateClass::Mbps1);
    if (worst > kMaxDurationUs) {
        throw ConfigError("payload_bytes",
                          "reservation of " + std::to_string(worst) +
                              " us at 1 Mbps exceeds the encodable maximum " +
                              std::to_string(kMaxDurationUs));
    }
    if (attackers.size() >= n_nodes) {
        throw ConfigError("attackers", "attacker count must be less than n_nodes");
    }

    // Default placement: highest station ids, assigned in list order.
    std::set<NodeId> taken;
    for (const auto& a : attackers) {
        if (a.node != kNoNode) taken.insert(a.node);
    }
    NodeId next_top = n_nodes;
    for (std::size_t i = 0; i < attackers.size(); ++i) {
        auto& a = attackers[i];
        const std::string key = "attackers[" + std::to_string(i) + "]";
        if (a.node == kNoNode) {
            while (taken.count(next_top)) --next_top;
            a.node = next_top;
            taken.insert(next_top);
        }
        if (a.node < 1 || a.node > n_nodes) {
            throw ConfigError(key + ".node", "must be a station id in 1.." +
                                                 std::to_string(n_nodes));
        }
        if (a.claimed_us > kMaxDurationUs) {
            throw ConfigError(key + ".claimed_us",
                              "exceeds the duration field maximum " +
                                  std::to_string(kMaxDurationUs));
        }
        if (a.period_us == 0) {
            throw ConfigError(key + ".period_us", "must be at least 1");
        }
    }
    std::set<NodeId> unique;
    for (const auto& a : attackers) {
        if (!unique.insert(a.node).second) {
            throw ConfigError("attackers", "duplicate attacker node id " +
                                               std::to_string(a.node));
        }
    }
}

std::string ScenarioConfig::attack_mode_label() const {
    if (attackers.empty()) return "none";
    const AttackMode first = attackers.front().mode;
    for (const auto& a : attackers) {
        if (a.mode != first) return "mixed";
    }
    return attack_mode_name(first);
}

std::string ScenarioConfig::scenario_id() const {
    std::ostringstream os;
    os << "n" << n_nodes << "_a" << attackers.size() << "_" << attack_mode_label();
    return os.str();
}

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig cfg;
    cfg.repetitions = 50;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;

        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        }

        if (key == "n_nodes") {
            cfg.n_nodes = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "sim_duration_s") {
            cfg.sim_duration_s = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "payload_bytes") {
            cfg.payload_bytes = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key == "defense_enabled") {
            cfg.defense_enabled = parse_bool(key, value);
        } else if (key == "seed") {
            cfg.seed = parse_u64(key, value);
        } else if (key == "repetitions") {
            cfg.repetitions = static_cast<std::uint32_t>(parse_u64(key, value));
        } else if (key.rfind("attackers[", 0) == 0) {
            const auto close = key.find(']');
            const auto dot = key.find('.', close);
            if (close == std::string::npos || dot == std::string::npos) {
                throw ConfigError(key, "expected attackers[<i>].<field>");
            }
            const std::uint64_t idx = parse_u64(key, key.substr(10, close - 10));
            if (idx > 199) {
                throw ConfigError(key, "attacker index out of range");
            }
            if (cfg.attackers.size() <= idx) cfg.attackers.resize(idx + 1);
            auto& att = cfg.attackers[idx];
            const std::string field = key.substr(dot + 1);
            if (field == "mode") {
                att.mode = parse_mode(key, value);
            } else if (field == "node") {
                att.node = static_cast<NodeId>(parse_u64(key, value));
            } else if (field == "claimed_us") {
                att.claimed_us = static_cast<std::uint32_t>(parse_u64(key, value));
            } else if (field == "period_us") {
                att.period_us = static_cast<std::uint32_t>(parse_u64(key, value));
            } else if (field == "start_at_us") {
                att.start_at = parse_u64(key, value);
            } else {
                throw ConfigError(key, "unknown attacker field '" + field + "'");
            }
        } else {
            throw ConfigError(key, "unknown key");
        }
    }

    cfg.validate_and_finalize();
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path, "cannot open scenario file");
    }
    return parse_config(in);
}

}  // namespace relaysim
