#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace vaxtag {

/// SHA-256 (FIPS 180-4). Streaming interface plus a one-shot helper.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const void* data, size_t len);
    void update(std::string_view s) { update(s.data(), s.size()); }

    /// Finalizes and returns the lowercase hex digest. The object must be
    /// reset() before reuse.
    std::string hex_digest();

    static std::string hex(std::string_view data);

private:
    void process_block(const uint8_t* block);

    uint32_t state_[8];
    uint64_t total_len_ = 0;
    uint8_t buffer_[64];
    size_t buffer_len_ = 0;
};

} // namespace vaxtag
