#include "ciaodv/messages.hpp"

#include <array>

namespace ciaodv {

namespace {
constexpr std::array<std::string_view, kMessageKindCount> kKindNames = {
    "RREQ", "RREP", "RERR", "HELLO", "ACTIVATE", "TEARDOWN"};
constexpr std::array<std::string_view, 3> kReasonNames = {"stop", "break", "refused"};
}  // namespace

MessageKind kind_of(const ControlMessage& msg) {
  return static_cast<MessageKind>(msg.index());
}

std::string_view to_string(MessageKind kind) {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<MessageKind> parse_message_kind(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == s) return static_cast<MessageKind>(i);
  }
  return std::nullopt;
}

std::string_view to_string(TeardownReason reason) {
  return kReasonNames[static_cast<std::size_t>(reason)];
}

std::optional<TeardownReason> parse_teardown_reason(std::string_view s) {
  for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
    if (kReasonNames[i] == s) return static_cast<TeardownReason>(i);
  }
  return std::nullopt;
}

}  // namespace ciaodv
