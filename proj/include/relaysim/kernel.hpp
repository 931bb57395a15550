#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <vector>

namespace relaysim {

// All protocol timings are integer microseconds since simulation start.
using SimTime = std::uint64_t;

// Cancellation token for a scheduled event. Copyable; cancelling marks the
// queued entry dead, it is skipped when popped.
class EventHandle {
public:
    EventHandle() = default;
    void cancel();
    bool valid() const;

private:
    friend class EventQueue;
    explicit EventHandle(std::shared_ptr<bool> alive) : alive_(std::move(alive)) {}
    std::shared_ptr<bool> alive_;
};

// Time-ordered event queue with a monotone clock. Events firing at the same
// instant run in insertion order (seq), which makes runs reproducible.
class EventQueue {
public:
    SimTime now() const { return clock_; }

    // Scheduling into the past is a programming error and aborts the run.
    EventHandle schedule_at(SimTime at, std::function<void()> action);
    EventHandle schedule_in(SimTime delay, std::function<void()> action);

    // Processes every event with fire_at <= t_end in (fire_at, seq) order,
    // then advances the clock to t_end. Returns the final clock value.
    SimTime run_until(SimTime t_end);

    bool empty() const { return heap_.empty(); }
    std::uint64_t processed() const { return processed_; }

private:
    struct Entry {
        SimTime at;
        std::uint64_t seq;
        std::function<void()> action;
        std::shared_ptr<bool> alive;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            return a.at != b.at ? a.at > b.at : a.seq > b.seq;
        }
    };

    SimTime clock_ = 0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t processed_ = 0;
    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
};

}  // namespace relaysim
