#include "ciaodv/seqno.hpp"

namespace ciaodv {

bool seqno_newer(SeqNo a, SeqNo b) {
  return static_cast<std::int32_t>(a.value - b.value) > 0;
}

}  // namespace ciaodv
