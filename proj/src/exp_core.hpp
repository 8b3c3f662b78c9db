#pragma once

// Shared definition of the decay kernel's exp(-x) algorithm. The SIMD lanes
// transcribe exactly this operation sequence; any change here must be mirrored
// there or the bit-equality contract in kernels.hpp breaks.
//
// Range reduction (Cody-Waite, two constants):
//   n = nearbyint(x / ln2),  r = (x - n*ln2_hi) - n*ln2_lo,  |r| <= ln2/2
// then exp(-x) = 2^-n * P(-r) with P a degree-13 Taylor polynomial of e^s
// evaluated by Horner with plain mul/add (no fused ops). n*ln2_hi and the
// first subtraction are exact, so the only rounding lives in the polynomial.
// Translation units including this header must be compiled with
// -ffp-contract=off.

#include <cmath>
#include <cstdint>
#include <cstring>

namespace topicsim::kernels::detail {

inline constexpr double kInvLn2 = 0x1.71547652b82fep+0;
inline constexpr double kLn2Hi = 0x1.62e42fee00000p-1;
inline constexpr double kLn2Lo = 0x1.a39ef35793c76p-33;

// exp(-x) underflows the normal range near x = 708.4; weights that small are
// dead under any prune threshold, so cut to zero a little early.
inline constexpr double kExpNegCutoff = 708.0;

// 1/0! .. 1/13!, Horner order c13 first.
inline constexpr double kExpPoly[14] = {
    1.6059043836821613e-10, // 1/13!
    2.08767569878681e-9,    // 1/12!
    2.505210838544172e-8,   // 1/11!
    2.7557319223985893e-7,  // 1/10!
    2.755731922398589e-6,   // 1/9!
    2.48015873015873e-5,    // 1/8!
    1.984126984126984e-4,   // 1/7!
    1.388888888888889e-3,   // 1/6!
    8.333333333333333e-3,   // 1/5!
    4.1666666666666664e-2,  // 1/4!
    1.6666666666666666e-1,  // 1/3!
    5e-1,                   // 1/2!
    1.0,                    // 1/1!
    1.0,                    // 1/0!
};

// exp(-x) for x >= 0.
inline double exp_neg(double x) {
    if (x > kExpNegCutoff)
        return 0.0;
    const double nd = std::nearbyint(x * kInvLn2);
    const double r = (x - nd * kLn2Hi) - nd * kLn2Lo;
    const double s = -r;
    double q = kExpPoly[0];
    for (int i = 1; i < 14; ++i)
        q = q * s + kExpPoly[i];
    // 2^-n is exact, built straight from the exponent field.
    const auto n = static_cast<std::int64_t>(nd);
    const std::uint64_t bits = static_cast<std::uint64_t>(1023 - n) << 52;
    double pow2;
    std::memcpy(&pow2, &bits, sizeof pow2);
    return q * pow2;
}

inline void decay_weights_scalar(const double* ages, std::size_t n,
                                 double rate, double scale, double* out) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = scale * exp_neg(rate * ages[i]);
}

} // namespace topicsim::kernels::detail
