#include "ciaodv/event_queue.hpp"

#include <string>

namespace ciaodv {

PastEvent::PastEvent(SimTime at, SimTime clock)
    : std::logic_error("event scheduled at " + std::to_string(at) + "us, before clock " + std::to_string(clock) +
                       "us") {}

void EventQueue::schedule(SimTime at, EventKind kind) {
  if (at < clock_) throw PastEvent(at, clock_);
  heap_.push(Event{at, next_seq_++, std::move(kind)});
}

Event EventQueue::pop() {
  Event e = std::move(const_cast<Event&>(heap_.top()));
  heap_.pop();
  clock_ = e.at;
  return e;
}

void EventQueue::advance_to(SimTime t) {
  if (t > clock_ && (heap_.empty() || heap_.top().at >= t)) clock_ = t;
}

}  // namespace ciaodv
