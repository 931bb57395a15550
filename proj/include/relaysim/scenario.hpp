#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaysim/threat.hpp"

namespace relaysim {

// Configuration problem tied to a named field/key; the CLI maps it to exit 2.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// One experiment point. Node ids: AP is always 0, stations are 1..n_nodes;
// attackers default to the highest station ids so that dropping them leaves
// every honest station's id, position and random substream untouched.
struct ScenarioConfig {
    std::uint32_t n_nodes = 20;  // stations including attackers, excluding the AP
    std::uint32_t sim_duration_s = 500;
    std::uint32_t payload_bytes = 2048;
    std::vector<AttackerConfig> attackers;
    bool defense_enabled = true;
    std::uint64_t seed = 1;
    std::uint32_t repetitions = 50;

    // Throws ConfigError naming the offending field. Also assigns default
    // attacker node ids.
    void validate_and_finalize();

    SimTime sim_duration_us() const { return static_cast<SimTime>(sim_duration_s) * 1000000ull; }
    std::string scenario_id() const;     // stable label, independent of the defense flag
    std::string attack_mode_label() const;  // none / inflation / flood / mixed
};

// Flat `key = value` text, '#' comments, unknown keys rejected, missing keys
// take the defaults above. Attackers use indexed keys: attackers[0].mode etc.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_file(const std::string& path);

}  // namespace relaysim
