#include "relaysim/simulation.hpp"

#include <cassert>
#include <memory>
#include <optional>

#include "relaysim/dcf.hpp"
#include "relaysim/defense.hpp"
#include "relaysim/relay.hpp"
#include "relaysim/threat.hpp"
#include "relaysim/timing.hpp"

namespace relaysim {

std::vector<Position> generate_topology(const ScenarioConfig& cfg, RandomStreams& rng) {
    std::vector<Position> pos(cfg.n_nodes + 1);
    pos[kApId] = Position{kPlaygroundMeters / 2.0, kPlaygroundMeters / 2.0};
    for (NodeId id = 1; id <= cfg.n_nodes; ++id) {
        // Millimetre grid keeps placement exactly reproducible across hosts.
        const auto mm_x = rng.draw_uniform_int(Stream::Topology, id, 0, 500000);
        const auto mm_y = rng.draw_uniform_int(Stream::Topology, id, 0, 500000);
        pos[id] = Position{static_cast<double>(mm_x) / 1000.0,
                           static_cast<double>(mm_y) / 1000.0};
    }
    return pos;
}

namespace {

class Sim;

// Contention-based channel access for one node: DIFS sensing plus binary
// exponential backoff, frozen while the medium is busy or the NAV (virtual
// carrier sense) is active. A backoff interrupted by a busy medium resumes
// with its remaining slots; a fresh attempt draws anew from [0, cw].
class ChannelAccess {
public:
    // nav_gate: nullopt when clear to contend, else earliest recheck time.
    using NavGate = std::function<std::optional<SimTime>()>;

    ChannelAccess(EventQueue& queue, Medium& medium, RandomStreams& rng, NodeId id,
                  NavGate nav_gate, std::function<void()> on_win)
        : queue_(queue),
          medium_(medium),
          rng_(rng),
          id_(id),
          nav_gate_(std::move(nav_gate)),
          on_win_(std::move(on_win)) {}

    DcfState& dcf() { return dcf_; }

    void request() {
        if (state_ == State::Off) state_ = State::WaitIdle;
        evaluate();
    }

    void on_channel_update() {
        if (medium_.carrier_busy(id_)) {
            freeze();
        } else if (state_ == State::WaitIdle) {
            evaluate();
        }
    }

    void nav_changed() {
        if (nav_gate_()) {
            freeze();
            if (state_ == State::WaitIdle) evaluate();  // reschedules the recheck
        } else if (state_ == State::WaitIdle) {
            evaluate();
        }
    }

    DcfPhase phase() const {
        switch (state_) {
            case State::Off: return DcfPhase::Idle;
            case State::WaitIdle: return DcfPhase::Quiet;
            case State::Difs: return DcfPhase::Difs;
            case State::Counting: return DcfPhase::Backoff;
        }
        return DcfPhase::Idle;
    }

private:
    enum class State { Off, WaitIdle, Difs, Counting };
    static constexpr std::int32_t kNoSlots = -1;

    void evaluate() {
        if (state_ != State::WaitIdle) return;
        if (medium_.carrier_busy(id_)) return;  // a channel update will re-trigger
        if (auto until = nav_gate_()) {
            recheck_event_.cancel();
            recheck_event_ = queue_.schedule_at(*until, [this] {
                if (state_ == State::WaitIdle) evaluate();
            });
            return;
        }
        state_ = State::Difs;
        difs_event_ = queue_.schedule_in(kDifsUs, [this] { difs_elapsed(); });
    }

    void freeze() {
        if (state_ == State::Difs) {
            difs_event_.cancel();
            state_ = State::WaitIdle;
        } else if (state_ == State::Counting) {
            // A tick due exactly now still fires: the slot it finishes was
            // sensed idle, so same-slot winners collide as they should.
            if (tick_event_.valid() && tick_at_ > queue_.now()) {
                tick_event_.cancel();
                state_ = State::WaitIdle;
            }
        }
    }

    void difs_elapsed() {
        assert(state_ == State::Difs);
        if (slots_ == kNoSlots) {
            slots_ = static_cast<std::int32_t>(
                rng_.draw_uniform_int(Stream::Backoff, id_, 0, dcf_.contention_window));
        }
        state_ = State::Counting;
        if (slots_ == 0) {
            win();
        } else {
            schedule_tick();
        }
    }

    void schedule_tick() {
        tick_at_ = queue_.now() + kSlotUs;
        tick_event_ = queue_.schedule_at(tick_at_, [this] { tick(); });
    }

    void tick() {
        assert(state_ == State::Counting);
        --slots_;
        if (slots_ == 0) {
            win();
            return;
        }
        if (medium_.carrier_busy(id_) || nav_gate_()) {
            state_ = State::WaitIdle;  // channel update / recheck resumes us
            if (auto until = nav_gate_()) {
                recheck_event_.cancel();
                recheck_event_ = queue_.schedule_at(*until, [this] {
                    if (state_ == State::WaitIdle) evaluate();
                });
            }
            return;
        }
        schedule_tick();
    }

    void win() {
        state_ = State::Off;
        slots_ = kNoSlots;
        on_win_();
    }

    EventQueue& queue_;
    Medium& medium_;
    RandomStreams& rng_;
    NodeId id_;
    NavGate nav_gate_;
    std::function<void()> on_win_;
    State state_ = State::Off;
    DcfState dcf_;
    std::int32_t slots_ = kNoSlots;
    SimTime tick_at_ = 0;
    EventHandle difs_event_, tick_event_, recheck_event_;
};

class NodeBase : public MediumListener {
public:
    NodeBase(Sim& sim, NodeId id);
    ~NodeBase() override = default;

    void on_decode(const Transmission& tx, SimTime now) final;
    void on_channel_update(SimTime) override {}
    virtual void start() {}

    const Blacklist& blacklist() const { return blacklist_; }
    const NavTimer& nav() const { return nav_; }

protected:
    // NAV binds only while its setter is not blacklisted.
    bool nav_blocks(SimTime now) const {
        return nav_.active(now) && !blacklist_.contains(nav_.set_by);
    }

    SimTime send(const Frame& frame, RateClass rate, bool contention);

    virtual void handle_addressed(const Transmission& tx, SimTime now) = 0;
    virtual void on_nav_changed() {}

    Sim& sim_;
    NodeId id_;
    NavTimer nav_;
    Blacklist blacklist_;
    std::uint64_t participant_exchange_ = 0;

private:
    void observe_overheard(const Frame& f, SimTime frame_end);
    void become_participant(const Frame& f, SimTime now);
    void apply_blacklist_frame(const Frame& f, SimTime now);

    bool decoded_before_ = false;
    SimTime last_decode_at_ = 0;
};

// Honest saturated station: always has the next payload queued for the AP,
// relays on request, and runs the full RTS/CTS/DATA/ACK exchange.
class StationNode : public NodeBase {
public:
    StationNode(Sim& sim, NodeId id);

    void start() override;
    void on_channel_update(SimTime) override { access_.on_channel_update(); }

protected:
    void handle_addressed(const Transmission& tx, SimTime now) override;
    void on_nav_changed() override { access_.nav_changed(); }

private:
    enum class XPhase { None, AwaitCts, SendData, AwaitAck };

    void transmit_rts();
    void send_data(SimTime at);
    void forward_as_relay(const Transmission& tx, SimTime now);
    void conclude(bool success);
    RelayStats* stats_for(NodeId candidate);

    ChannelAccess access_;
    RateClass direct_rate_;
    RateClass rate_to_ap_;
    std::vector<RelayCandidate> candidates_;

    XPhase xphase_ = XPhase::None;
    std::uint64_t seq_ = 1;
    std::uint64_t exchange_ = 0;
    bool coop_ = false;
    NodeId relay_ = kNoNode;
    RateClass hop1_ = RateClass::Unreachable;
    RateClass hop2_ = RateClass::Unreachable;
    EventHandle timeout_event_;
};

// Access point: grants CTS, acknowledges data, and (with the defense on)
// revalidates every decoded RTS against the recomputed reservation ceiling.
class ApNode : public NodeBase {
public:
    ApNode(Sim& sim) : NodeBase(sim, kApId) {}

protected:
    void handle_addressed(const Transmission& tx, SimTime now) override;

private:
    void handle_rts(const Frame& f, SimTime now);
    void handle_data(const Frame& f, SimTime now);

    SimTime engaged_until_ = 0;  // end of the reservation granted by our CTS
};

// Duration-inflation attacker: behaves like a well-formed contender (DIFS,
// backoff, NAV) so its forged RTS is decodable, then ignores the CTS, sends
// nothing, and stays silent until its claimed reservation has expired.
class InflationAttacker : public NodeBase {
public:
    InflationAttacker(Sim& sim, const AttackerConfig& cfg);

    void start() override;
    void on_channel_update(SimTime) override { access_.on_channel_update(); }

protected:
    void handle_addressed(const Transmission&, SimTime) override {}  // ignores CTS
    void on_nav_changed() override { access_.nav_changed(); }

private:
    void fire();

    AttackerConfig cfg_;
    ChannelAccess access_;
};

// Flood attacker: fixed-period RTS with a legitimate-looking duration,
// ignoring CTS, NAV and backoff entirely.
class FloodAttacker : public NodeBase {
public:
    FloodAttacker(Sim& sim, const AttackerConfig& cfg);

    void start() override;

protected:
    void handle_addressed(const Transmission&, SimTime) override {}

private:
    void fire();

    AttackerConfig cfg_;
    std::uint32_t legit_duration_ = 0;
    SimTime own_tx_end_ = 0;
};

class Sim {
public:
    Sim(const ScenarioConfig& config, std::uint64_t seed, bool keep_log);

    RunResult run();

    std::uint64_t next_exchange_id() { return ++exchange_counter_; }
    bool is_attacker(NodeId id) const { return attacker_flags_[id] != 0; }
    bool defense_enabled() const { return cfg.defense_enabled; }

    // True when (origin, seq) is a payload the AP has not counted before.
    bool mark_delivered(NodeId origin, std::uint64_t seq);

    void count_rts() { ++metrics.rts_sent; }
    void count_detection(bool false_positive) {
        ++metrics.detections;
        if (false_positive) ++metrics.false_positives;
    }

    const ScenarioConfig& cfg;
    EventQueue queue;
    RandomStreams rng;
    std::vector<Position> positions;
    Medium medium;
    TraceLog log;
    RunMetrics metrics;

    std::uint32_t max_neighbors = 0;
    std::uint32_t duration_ceiling = 0;
    std::vector<std::uint32_t> neighbor_count;  // protocol participants in range

    std::vector<RelayCandidate> build_candidates(NodeId source) const;

private:
    std::vector<std::unique_ptr<NodeBase>> nodes_;
    std::vector<std::uint8_t> attacker_flags_;
    std::vector<std::uint64_t> last_delivered_seq_;
    std::uint64_t exchange_counter_ = 0;
    bool keep_log_;
};

// ---------------------------------------------------------------------------
// NodeBase

NodeBase::NodeBase(Sim& sim, NodeId id) : sim_(sim), id_(id) {
    sim_.medium.set_listener(id, this);
}

SimTime NodeBase::send(const Frame& frame, RateClass rate, bool contention) {
    const SimTime now = sim_.queue.now();
    TraceRecord rec;
    rec.kind = TraceKind::TxStart;
    rec.t = now;
    rec.node = id_;
    rec.frame_kind = frame.kind;
    rec.src = frame.src;
    rec.dst = frame.dst;
    rec.duration_us = frame.duration_us;
    rec.exchange = frame.exchange;
    rec.seq = frame.seq;
    rec.contention = contention;
    rec.nav_quiet_until = nav_.quiet_until;
    rec.nav_set_by = nav_.set_by;
    rec.nav_setter_blacklisted = blacklist_.contains(nav_.set_by);
    sim_.log.push(rec);
    if (frame.kind == FrameKind::Rts) sim_.count_rts();
    return sim_.medium.transmit(id_, frame, rate);
}

void NodeBase::on_decode(const Transmission& tx, SimTime now) {
    // The collision model admits at most one decodable frame per receiver
    // per instant; two frames ending together always corrupt each other.
    if (decoded_before_ && now == last_decode_at_) {
        throw std::logic_error("two frames decoded at one receiver at the same instant");
    }
    decoded_before_ = true;
    last_decode_at_ = now;

    const Frame& f = tx.frame;
    if (f.dst == kBroadcast) {
        TraceRecord rec;
        rec.kind = TraceKind::Decode;
        rec.t = now;
        rec.node = id_;
        rec.frame_kind = f.kind;
        rec.src = f.src;
        rec.dst = f.dst;
        rec.exchange = f.exchange;
        sim_.log.push(rec);
        if (f.kind == FrameKind::Blacklist) apply_blacklist_frame(f, now);
        return;
    }
    if (f.dst == id_) {
        TraceRecord rec;
        rec.kind = TraceKind::Decode;
        rec.t = now;
        rec.node = id_;
        rec.frame_kind = f.kind;
        rec.src = f.src;
        rec.dst = f.dst;
        rec.exchange = f.exchange;
        sim_.log.push(rec);
        become_participant(f, now);
        handle_addressed(tx, now);
        return;
    }
    observe_overheard(f, tx.end);
}

void NodeBase::observe_overheard(const Frame& f, SimTime frame_end) {
    if (f.src == id_) return;
    if (blacklist_.contains(f.src)) return;  // flagged senders cannot reserve the medium
    if (f.exchange != 0 && f.exchange == participant_exchange_) return;  // my own exchange
    const NavTimer updated = update_nav(nav_, f, frame_end);
    if (updated.quiet_until != nav_.quiet_until) {
        nav_ = updated;
        on_nav_changed();
    }
}

void NodeBase::become_participant(const Frame& f, SimTime now) {
    if (f.exchange == 0) return;
    participant_exchange_ = f.exchange;
    // Being addressed inside a granted reservation transfers it to us, and
    // since the AP serializes grants, any NAV still held here belongs to a
    // reservation that died (its setter never got a grant). Drop it.
    if (nav_.quiet_until > now) {
        nav_.quiet_until = now;
        nav_.set_by = kNoNode;
        nav_.set_exchange = 0;
        on_nav_changed();
    }
}

void NodeBase::apply_blacklist_frame(const Frame& f, SimTime now) {
    if (f.offender == kNoNode) return;
    if (!blacklist_.add(f.offender, now)) return;
    TraceRecord rec;
    rec.kind = TraceKind::BlacklistAdd;
    rec.t = now;
    rec.node = id_;
    rec.other = f.offender;
    sim_.log.push(rec);
    if (nav_.set_by == f.offender) {
        on_nav_changed();  // the forged reservation no longer binds us
    }
}

// ---------------------------------------------------------------------------
// StationNode

StationNode::StationNode(Sim& sim, NodeId id)
    : NodeBase(sim, id),
      access_(
          sim.queue, sim.medium, sim.rng, id,
          [this]() -> std::optional<SimTime> {
              return nav_blocks(sim_.queue.now()) ? std::optional<SimTime>(nav_.quiet_until)
                                                  : std::nullopt;
          },
          [this] { transmit_rts(); }),
      direct_rate_(sim.medium.rate_between(id, kApId)),
      rate_to_ap_(direct_rate_),
      candidates_(sim.build_candidates(id)) {}

void StationNode::start() {
    access_.request();
}

RelayStats* StationNode::stats_for(NodeId candidate) {
    for (auto& c : candidates_) {
        if (c.id == candidate) return &c.stats;
    }
    return nullptr;
}

void StationNode::transmit_rts() {
    // Interference snapshot, then rank candidates by Eq.-style selection factor.
    for (auto& c : candidates_) {
        c.stats.concurrent_tx = sim_.medium.concurrent_tx_heard(c.id);
    }
    const auto choice = select_relay(candidates_, direct_rate_, blacklist_, sim_.max_neighbors);

    exchange_ = sim_.next_exchange_id();
    coop_ = choice.has_value();
    std::uint32_t duration;
    if (coop_) {
        relay_ = *choice;
        const RelayCandidate* cand = nullptr;
        for (const auto& c : candidates_) {
            if (c.id == relay_) cand = &c;
        }
        assert(cand);
        hop1_ = cand->src_to_cand;
        hop2_ = cand->cand_to_ap;
        duration = duration_coop_us(sim_.cfg.payload_bytes, hop1_, hop2_);

        TraceRecord rec;
        rec.kind = TraceKind::RelaySelect;
        rec.t = sim_.queue.now();
        rec.node = id_;
        rec.other = relay_;
        rec.sf = selection_factor(
            history_factor(cand->stats.successes, cand->stats.attempts),
            interference_factor(cand->stats.neighbors, sim_.max_neighbors,
                                cand->stats.concurrent_tx));
        sim_.log.push(rec);
    } else {
        relay_ = kNoNode;
        duration = duration_direct_us(sim_.cfg.payload_bytes, direct_rate_);
    }

    Frame rts;
    rts.kind = FrameKind::Rts;
    rts.src = id_;
    rts.dst = kApId;
    rts.origin = id_;
    rts.duration_us = duration;
    rts.seq = seq_;
    rts.exchange = exchange_;
    participant_exchange_ = exchange_;  // our own reservation never NAVs us

    const SimTime end = send(rts, kControlRate, /*contention=*/true);
    xphase_ = XPhase::AwaitCts;
    timeout_event_ = sim_.queue.schedule_at(end + response_timeout_us(cts_airtime_us()),
                                            [this] { conclude(false); });
}

void StationNode::handle_addressed(const Transmission& tx, SimTime now) {
    const Frame& f = tx.frame;
    switch (f.kind) {
        case FrameKind::Cts:
            if (xphase_ == XPhase::AwaitCts && f.exchange == exchange_) {
                timeout_event_.cancel();
                xphase_ = XPhase::SendData;
                send_data(now + kSifsUs);
            }
            break;
        case FrameKind::Data:
            if (f.relay_flag) forward_as_relay(tx, now);
            break;
        case FrameKind::Ack:
            if (xphase_ == XPhase::AwaitAck && f.exchange == exchange_) {
                timeout_event_.cancel();
                conclude(true);
            }
            break;
        default:
            break;
    }
}

void StationNode::send_data(SimTime at) {
    sim_.queue.schedule_at(at, [this] {
        Frame data;
        data.kind = FrameKind::Data;
        data.src = id_;
        data.dst = coop_ ? relay_ : kApId;
        data.origin = id_;
        data.payload_bytes = sim_.cfg.payload_bytes;
        data.relay_flag = coop_;
        data.seq = seq_;
        data.exchange = exchange_;
        data.duration_us = coop_ ? data_relay_duration_us(sim_.cfg.payload_bytes, hop2_)
                                 : data_direct_duration_us();
        const SimTime end = send(data, coop_ ? hop1_ : direct_rate_, /*contention=*/false);
        xphase_ = XPhase::AwaitAck;
        // The duration field spans the rest of the chain, so the ACK must be
        // in by then plus a two-slot margin.
        timeout_event_ = sim_.queue.schedule_at(end + data.duration_us + 2 * kSlotUs,
                                                [this] { conclude(false); });
    });
}

void StationNode::forward_as_relay(const Transmission& tx, SimTime now) {
    Frame fwd;
    fwd.kind = FrameKind::Data;
    fwd.src = id_;
    fwd.dst = kApId;
    fwd.origin = tx.frame.origin;
    fwd.payload_bytes = tx.frame.payload_bytes;
    fwd.seq = tx.frame.seq;
    fwd.exchange = tx.frame.exchange;
    fwd.duration_us = data_direct_duration_us();
    sim_.queue.schedule_at(now + kSifsUs,
                           [this, fwd] { send(fwd, rate_to_ap_, /*contention=*/false); });
}

void StationNode::conclude(bool success) {
    if (coop_) {
        if (RelayStats* stats = stats_for(relay_)) {
            record_outcome(*stats, success);
        }
    }
    const bool dropped =
        escalate_cw(access_.dcf(), success ? AttemptOutcome::Success : AttemptOutcome::Failure);
    if (success || dropped) {
        if (dropped) {
            TraceRecord rec;
            rec.kind = TraceKind::PayloadDrop;
            rec.t = sim_.queue.now();
            rec.node = id_;
            rec.seq = seq_;
            sim_.log.push(rec);
        }
        ++seq_;  // saturated uplink: the next payload is already waiting
    }
    xphase_ = XPhase::None;
    exchange_ = 0;
    coop_ = false;
    relay_ = kNoNode;
    access_.request();
}

// ---------------------------------------------------------------------------
// ApNode

void ApNode::handle_addressed(const Transmission& tx, SimTime now) {
    switch (tx.frame.kind) {
        case FrameKind::Rts:
            handle_rts(tx.frame, now);
            break;
        case FrameKind::Data:
            handle_data(tx.frame, now);
            break;
        default:
            break;
    }
}

void ApNode::handle_rts(const Frame& f, SimTime now) {
    if (sim_.defense_enabled()) {
        const Verdict verdict = validate_rts(f, sim_.duration_ceiling);
        if (verdict.malicious) {
            sim_.count_detection(/*false_positive=*/!sim_.is_attacker(f.src));
            TraceRecord rec;
            rec.kind = TraceKind::Detection;
            rec.t = now;
            rec.node = id_;
            rec.other = f.src;
            sim_.log.push(rec);

            if (!blacklist_.contains(f.src)) {
                blacklist_.add(f.src, now);
                TraceRecord add;
                add.kind = TraceKind::BlacklistAdd;
                add.t = now;
                add.node = id_;
                add.other = f.src;
                sim_.log.push(add);

                Frame bcast;
                bcast.kind = FrameKind::Blacklist;
                bcast.src = id_;
                bcast.dst = kBroadcast;
                bcast.origin = id_;
                bcast.duration_us = 0;
                bcast.offender = f.src;
                sim_.queue.schedule_at(now + kSifsUs, [this, bcast] {
                    send(bcast, kControlRate, /*contention=*/false);
                });
            }
            return;  // no CTS for a flagged claim
        }
    }
    if (blacklist_.contains(f.src)) return;  // flagged nodes get no grants
    if (now < engaged_until_) return;        // already inside a granted reservation
    if (nav_blocks(now)) return;

    Frame cts;
    cts.kind = FrameKind::Cts;
    cts.src = id_;
    cts.dst = f.src;
    cts.origin = f.src;
    cts.duration_us = cts_duration_us(f.duration_us);
    cts.exchange = f.exchange;
    engaged_until_ = now + kSifsUs + cts_airtime_us() + cts.duration_us;
    sim_.queue.schedule_at(now + kSifsUs,
                           [this, cts] { send(cts, kControlRate, /*contention=*/false); });
}

void ApNode::handle_data(const Frame& f, SimTime now) {
    if (blacklist_.contains(f.src)) return;  // data forwarded by an offender

    Frame ack;
    ack.kind = FrameKind::Ack;
    ack.src = id_;
    ack.dst = f.origin;
    ack.origin = f.origin;
    ack.duration_us = 0;
    ack.seq = f.seq;
    ack.exchange = f.exchange;
    sim_.queue.schedule_at(now + kSifsUs,
                           [this, ack] { send(ack, kControlRate, /*contention=*/false); });

    if (sim_.mark_delivered(f.origin, f.seq)) {
        TraceRecord rec;
        rec.kind = TraceKind::Deliver;
        rec.t = now;
        rec.node = id_;
        rec.other = f.origin;
        rec.seq = f.seq;
        sim_.log.push(rec);
    }
}

// ---------------------------------------------------------------------------
// Attackers

InflationAttacker::InflationAttacker(Sim& sim, const AttackerConfig& cfg)
    : NodeBase(sim, cfg.node),
      cfg_(cfg),
      access_(
          sim.queue, sim.medium, sim.rng, cfg.node,
          [this]() -> std::optional<SimTime> {
              return nav_blocks(sim_.queue.now()) ? std::optional<SimTime>(nav_.quiet_until)
                                                  : std::nullopt;
          },
          [this] { fire(); }) {}

void InflationAttacker::start() {
    sim_.queue.schedule_at(cfg_.start_at, [this] { access_.request(); });
}

void InflationAttacker::fire() {
    Frame rts = next_attack_frame(cfg_, kApId, 0, sim_.next_exchange_id());
    const SimTime end = send(rts, kControlRate, /*contention=*/true);
    // Sit out the reservation just claimed, then contend for the next one.
    sim_.queue.schedule_at(end + next_attack_delay(cfg_), [this] { access_.request(); });
}

FloodAttacker::FloodAttacker(Sim& sim, const AttackerConfig& cfg)
    : NodeBase(sim, cfg.node),
      cfg_(cfg),
      legit_duration_(duration_direct_us(sim.cfg.payload_bytes,
                                         sim.medium.rate_between(cfg.node, kApId))) {}

void FloodAttacker::start() {
    sim_.queue.schedule_at(cfg_.start_at, [this] { fire(); });
}

void FloodAttacker::fire() {
    if (sim_.queue.now() >= own_tx_end_) {  // skip a beat rather than overlap ourselves
        Frame rts = next_attack_frame(cfg_, kApId, legit_duration_, sim_.next_exchange_id());
        own_tx_end_ = send(rts, kControlRate, /*contention=*/true);
    }
    sim_.queue.schedule_in(cfg_.period_us, [this] { fire(); });
}

// ---------------------------------------------------------------------------
// Sim

Sim::Sim(const ScenarioConfig& config, std::uint64_t seed, bool keep_log)
    : cfg(config),
      rng(seed),
      positions(generate_topology(config, rng)),
      medium(queue, positions),
      keep_log_(keep_log) {
    log.enable(keep_log);
    metrics.sim_duration_us = cfg.sim_duration_us();
    metrics.per_node_delivered_bits.assign(cfg.n_nodes + 1, 0);
    last_delivered_seq_.assign(cfg.n_nodes + 1, 0);
    duration_ceiling = legit_duration_ceiling(cfg.payload_bytes);

    attacker_flags_.assign(cfg.n_nodes + 1, 0);
    for (const auto& a : cfg.attackers) attacker_flags_[a.node] = 1;

    // Attackers do not take part in the relaying protocol, so neighbor
    // accounting covers only protocol participants (AP + honest stations):
    // an attacker that never transmits must perturb nothing.
    neighbor_count.assign(cfg.n_nodes + 1, 0);
    std::uint32_t participants = 0;
    for (NodeId id = 0; id <= cfg.n_nodes; ++id) {
        if (id != kApId && attacker_flags_[id]) continue;
        ++participants;
    }
    max_neighbors = participants > 0 ? participants - 1 : 0;
    for (NodeId a = 0; a <= cfg.n_nodes; ++a) {
        if (a != kApId && attacker_flags_[a]) continue;
        std::uint32_t count = 0;
        for (NodeId b = 0; b <= cfg.n_nodes; ++b) {
            if (b == a || (b != kApId && attacker_flags_[b])) continue;
            if (medium.in_range(a, b)) ++count;
        }
        neighbor_count[a] = count;
    }

    nodes_.resize(cfg.n_nodes + 1);
    nodes_[kApId] = std::make_unique<ApNode>(*this);
    for (const auto& a : cfg.attackers) {
        if (a.mode == AttackMode::DurationInflation) {
            nodes_[a.node] = std::make_unique<InflationAttacker>(*this, a);
        } else {
            nodes_[a.node] = std::make_unique<FloodAttacker>(*this, a);
        }
    }
    for (NodeId id = 1; id <= cfg.n_nodes; ++id) {
        if (!nodes_[id]) nodes_[id] = std::make_unique<StationNode>(*this, id);
    }
}

std::vector<RelayCandidate> Sim::build_candidates(NodeId source) const {
    std::vector<RelayCandidate> out;
    const RateClass direct = medium.rate_between(source, kApId);
    for (NodeId c = 1; c <= cfg.n_nodes; ++c) {
        if (c == source || attacker_flags_[c]) continue;
        RelayCandidate cand;
        cand.id = c;
        cand.src_to_cand = medium.rate_between(source, c);
        cand.cand_to_ap = medium.rate_between(c, kApId);
        if (!rate_faster(cand.src_to_cand, direct) || !rate_faster(cand.cand_to_ap, direct)) {
            continue;
        }
        // Adjacent-step hop pairs (e.g. 2/2 over a 1 Mbps link) exactly halve
        // the airtime, so the extra SIFS makes them a net loss; only pairs
        // that actually release the medium earlier are worth relaying over.
        if (duration_coop_us(cfg.payload_bytes, cand.src_to_cand, cand.cand_to_ap) >=
            duration_direct_us(cfg.payload_bytes, direct)) {
            continue;
        }
        cand.stats.neighbors = neighbor_count[c];
        out.push_back(cand);
    }
    return out;
}

bool Sim::mark_delivered(NodeId origin, std::uint64_t seq) {
    if (origin > cfg.n_nodes) return false;
    if (seq <= last_delivered_seq_[origin]) return false;  // retransmission
    last_delivered_seq_[origin] = seq;
    const std::uint64_t bits = 8ull * cfg.payload_bytes;
    metrics.delivered_payload_bits += bits;
    metrics.per_node_delivered_bits[origin] += bits;
    return true;
}

RunResult Sim::run() {
    for (NodeId id = 1; id <= cfg.n_nodes; ++id) {
        nodes_[id]->start();
    }
    queue.run_until(cfg.sim_duration_us());

    metrics.collisions = medium.collision_count();
    metrics.log_digest = log.digest();

    RunResult result;
    result.metrics = metrics;
    if (keep_log_) result.log = log.records();
    return result;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg, std::uint64_t seed, bool keep_log) {
    ScenarioConfig checked = cfg;
    checked.validate_and_finalize();
    Sim sim(checked, seed, keep_log);
    return sim.run();
}

}  // namespace relaysim
