#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "ciaodv/ids.hpp"
#include "ciaodv/messages.hpp"
#include "ciaodv/time.hpp"

namespace ciaodv {

struct QueuedPacket {
  DataPacket packet;
  NodeId next_hop;

  bool operator==(const QueuedPacket&) const = default;
};

/// FIFO forwarding queue served at a fixed packet rate. The packet being
/// transmitted counts against the length limit until its service completes.
class NodeQueue {
 public:
  NodeQueue(double capacity_pps, std::uint32_t queue_len_max);

  SimTime service_time() const { return service_time_; }
  std::uint32_t capacity() const { return max_len_; }
  std::size_t size() const { return queue_.size(); }
  bool empty() const { return queue_.empty(); }

  /// False (and nothing stored) if the queue is full.
  bool enqueue(QueuedPacket p);
  const QueuedPacket& front() const { return queue_.front(); }
  QueuedPacket pop();

 private:
  SimTime service_time_;
  std::uint32_t max_len_;
  std::deque<QueuedPacket> queue_;
};

}  // namespace ciaodv
