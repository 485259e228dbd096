#pragma once

#include <cstddef>
#include <cstdint>

#include "crystal/bytes.hpp"
#include "crystal/digest.hpp"

namespace crystal {

// Plain SHA-256. Self-contained so simulation results are reproducible
// across platforms without linking a crypto library.
class Sha256 {
  public:
    Sha256() { reset(); }

    void reset();
    Sha256& update(ByteView data);
    Sha256& update(const uint8_t* data, size_t len) { return update(ByteView(data, len)); }
    Digest256 finish();

  private:
    void process_block(const uint8_t* block);

    uint32_t state_[8];
    uint64_t total_len_;
    uint8_t buffer_[64];
    size_t buffer_len_;
};

Digest256 sha256(ByteView data);

}  // namespace crystal
