#include "ciaodv/node_queue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ciaodv {

NodeQueue::NodeQueue(double capacity_pps, std::uint32_t queue_len_max)
    : service_time_(0), max_len_(queue_len_max) {
  if (!(capacity_pps > 0)) throw std::invalid_argument("capacity_pps must be positive");
  if (queue_len_max == 0) throw std::invalid_argument("queue_len_max must be positive");
  service_time_ = std::max<SimTime>(1, std::llround(kMicrosPerSecond / capacity_pps));
}

bool NodeQueue::enqueue(QueuedPacket p) {
  if (queue_.size() >= max_len_) return false;
  queue_.push_back(std::move(p));
  return true;
}

QueuedPacket NodeQueue::pop() {
  QueuedPacket p = std::move(queue_.front());
  queue_.pop_front();
  return p;
}

}  // namespace ciaodv
