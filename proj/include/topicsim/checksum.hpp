#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace topicsim {

// Incremental FNV-1a (64-bit). Used to stamp every output file so that
// re-running a command with the same config can be verified byte-for-byte.
class Fnv1a64 {
public:
    void update(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state_ ^= p[i];
            state_ *= 0x100000001b3ull;
        }
    }
    void update(std::string_view s) { update(s.data(), s.size()); }

    std::uint64_t value() const { return state_; }

    // Fixed-width lowercase hex, suitable for in-place patching.
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ull;
};

std::uint64_t fnv1a64(std::string_view s);

} // namespace topicsim
