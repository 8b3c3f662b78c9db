#include "topicsim/kernels.hpp"

#include "topicsim/errors.hpp"

namespace topicsim::kernels {

namespace {

const Table kScalar{&scalar::decay_weights, "scalar"};

#if defined(__x86_64__) || defined(_M_X64)
const Table kAvx2{&avx2::decay_weights, "avx2"};

bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}
#endif

#if defined(__aarch64__)
const Table kNeon{&neon::decay_weights, "neon"};
#endif

} // namespace

bool lane_available(std::string_view name) {
    if (name == "scalar")
        return true;
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2")
        return cpu_has_avx2();
#endif
#if defined(__aarch64__)
    if (name == "neon")
        return true;
#endif
    return false;
}

std::vector<std::string> available_lanes() {
    std::vector<std::string> lanes{"scalar"};
#if defined(__x86_64__) || defined(_M_X64)
    if (cpu_has_avx2())
        lanes.emplace_back("avx2");
#endif
#if defined(__aarch64__)
    lanes.emplace_back("neon");
#endif
    return lanes;
}

const Table& resolve(std::string_view name) {
#if defined(__x86_64__) || defined(_M_X64)
    if ((name == "auto" && cpu_has_avx2()) || name == "avx2") {
        if (!cpu_has_avx2())
            throw validation_error("kernel lane avx2 not supported by this CPU");
        return kAvx2;
    }
#endif
#if defined(__aarch64__)
    if (name == "auto" || name == "neon")
        return kNeon;
#endif
    if (name == "auto" || name == "scalar")
        return kScalar;
    throw validation_error("unknown kernel lane: " + std::string(name));
}

} // namespace topicsim::kernels
