#include "topicsim/checksum.hpp"

#include <array>

namespace topicsim {

std::string Fnv1a64::hex() const {
    static const char digits[] = "0123456789abcdef";
    std::array<char, 16> buf{};
    std::uint64_t v = state_;
    for (int i = 15; i >= 0; --i) {
        buf[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return std::string(buf.data(), buf.size());
}

std::uint64_t fnv1a64(std::string_view s) {
    Fnv1a64 h;
    h.update(s);
    return h.value();
}

} // namespace topicsim
