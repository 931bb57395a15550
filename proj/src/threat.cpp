#include "relaysim/threat.hpp"

namespace relaysim {

const char* attack_mode_name(AttackMode m) {
    switch (m) {
        case AttackMode::DurationInflation: return "inflation";
        case AttackMode::Flood: return "flood";
    }
    return "?";
}

Frame next_attack_frame(const AttackerConfig& cfg, NodeId ap, std::uint32_t legit_duration,
                        std::uint64_t exchange) {
    Frame f;
    f.kind = FrameKind::Rts;
    f.src = cfg.node;
    f.origin = cfg.node;
    f.dst = ap;
    f.duration_us = cfg.mode == AttackMode::DurationInflation ? cfg.claimed_us : legit_duration;
    f.exchange = exchange;
    return f;
}

SimTime next_attack_delay(const AttackerConfig& cfg) {
    return cfg.mode == AttackMode::DurationInflation ? cfg.claimed_us : cfg.period_us;
}

}  // namespace relaysim
