#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace topicsim::kernels {

// Elementwise decayed-weight kernel:
//
//   out[i] = scale * exp(-rate * ages[i])        ages[i] >= 0, rate > 0
//
// Arguments beyond exp(-708) underflow to exactly 0, which is far below any
// usable prune threshold. Aliasing ages == out is allowed.
//
// Every lane evaluates the same polynomial with the same operation order and
// no FMA contraction, so scalar, AVX2 and NEON results are bit-identical.
// Simulation traces therefore do not depend on the lane the dispatcher picks.
using DecayFn = void (*)(const double* ages, std::size_t n, double rate,
                         double scale, double* out);

struct Table {
    DecayFn decay_weights;
    const char* name;
};

namespace scalar {
void decay_weights(const double* ages, std::size_t n, double rate,
                   double scale, double* out);
}

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void decay_weights(const double* ages, std::size_t n, double rate,
                   double scale, double* out);
}
#endif

#if defined(__aarch64__)
namespace neon {
void decay_weights(const double* ages, std::size_t n, double rate,
                   double scale, double* out);
}
#endif

// Lane names: "scalar" always; "avx2" / "neon" when compiled in and the CPU
// supports them.
bool lane_available(std::string_view name);
std::vector<std::string> available_lanes();

// Resolve "auto" (widest available lane) or an explicit lane name.
// Throws validation_error for unknown or unavailable lanes.
const Table& resolve(std::string_view name);

} // namespace topicsim::kernels
