// NEON lane of the decay kernel (aarch64). Same operation sequence as
// exp_core.hpp; vmulq/vaddq round identically to the scalar mul/add chain.

#include "topicsim/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include "exp_core.hpp"

namespace topicsim::kernels::neon {

namespace {

inline float64x2_t exp_neg2(float64x2_t x) {
    using namespace detail;
    const float64x2_t nd = vrndnq_f64(vmulq_f64(x, vdupq_n_f64(kInvLn2)));
    const float64x2_t r =
        vsubq_f64(vsubq_f64(x, vmulq_f64(nd, vdupq_n_f64(kLn2Hi))),
                  vmulq_f64(nd, vdupq_n_f64(kLn2Lo)));
    const float64x2_t s = vnegq_f64(r);
    float64x2_t q = vdupq_n_f64(kExpPoly[0]);
    for (int i = 1; i < 14; ++i)
        q = vaddq_f64(vmulq_f64(q, s), vdupq_n_f64(kExpPoly[i]));
    const int64x2_t n = vcvtq_s64_f64(nd); // nd is integral, rounding exact
    const int64x2_t j = vsubq_s64(vdupq_n_s64(1023), n);
    const float64x2_t pow2 = vreinterpretq_f64_s64(vshlq_n_s64(j, 52));
    const float64x2_t res = vmulq_f64(q, pow2);
    const uint64x2_t live = vcleq_f64(x, vdupq_n_f64(kExpNegCutoff));
    return vreinterpretq_f64_u64(
        vandq_u64(vreinterpretq_u64_f64(res), live));
}

} // namespace

void decay_weights(const double* ages, std::size_t n, double rate,
                   double scale, double* out) {
    const float64x2_t vrate = vdupq_n_f64(rate);
    const float64x2_t vscale = vdupq_n_f64(scale);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t a = vld1q_f64(ages + i);
        const float64x2_t w = exp_neg2(vmulq_f64(vrate, a));
        vst1q_f64(out + i, vmulq_f64(vscale, w));
    }
    detail::decay_weights_scalar(ages + i, n - i, rate, scale, out + i);
}

} // namespace topicsim::kernels::neon

#endif // aarch64
