#include "relaysim/kernel.hpp"

#include <stdexcept>
#include <utility>

namespace relaysim {

void EventHandle::cancel() {
    if (alive_) *alive_ = false;
}

bool EventHandle::valid() const {
    return alive_ && *alive_;
}

EventHandle EventQueue::schedule_at(SimTime at, std::function<void()> action) {
    if (at < clock_) {
        throw std::logic_error("EventQueue: scheduling into the past");
    }
    auto alive = std::make_shared<bool>(true);
    heap_.push(Entry{at, next_seq_++, std::move(action), alive});
    return EventHandle{std::move(alive)};
}

EventHandle EventQueue::schedule_in(SimTime delay, std::function<void()> action) {
    return schedule_at(clock_ + delay, std::move(action));
}

SimTime EventQueue::run_until(SimTime t_end) {
    if (t_end < clock_) {
        throw std::logic_error("EventQueue: run_until into the past");
    }
    while (!heap_.empty() && heap_.top().at <= t_end) {
        Entry entry = heap_.top();
        heap_.pop();
        if (!*entry.alive) continue;
        clock_ = entry.at;
        ++processed_;
        entry.action();
    }
    clock_ = t_end;
    return clock_;
}

}  // namespace relaysim
