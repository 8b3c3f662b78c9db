// AVX2 lane of the decay kernel. Compiled with -mavx2; only reached after the
// dispatcher has checked CPU support. Same operation sequence as exp_core.hpp.

#include "topicsim/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "exp_core.hpp"

namespace topicsim::kernels::avx2 {

namespace {

// Integer-valued doubles in [0, 2^51) convert exactly via the 2^52 trick.
inline __m256i to_int_bits(__m256d v) {
    const __m256d magic = _mm256_set1_pd(0x1.0p52);
    return _mm256_castpd_si256(_mm256_add_pd(v, magic));
}

inline __m256d exp_neg4(__m256d x) {
    using namespace detail;
    const __m256d nd =
        _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kInvLn2)),
                        _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d r = _mm256_sub_pd(
        _mm256_sub_pd(x, _mm256_mul_pd(nd, _mm256_set1_pd(kLn2Hi))),
        _mm256_mul_pd(nd, _mm256_set1_pd(kLn2Lo)));
    const __m256d s = _mm256_sub_pd(_mm256_setzero_pd(), r);
    __m256d q = _mm256_set1_pd(kExpPoly[0]);
    for (int i = 1; i < 14; ++i)
        q = _mm256_add_pd(_mm256_mul_pd(q, s), _mm256_set1_pd(kExpPoly[i]));
    // 2^-n: (1023 - n) << 52. The 2^52 trick's exponent bits shift out.
    const __m256d jd = _mm256_sub_pd(_mm256_set1_pd(1023.0), nd);
    const __m256i pow2_bits = _mm256_slli_epi64(to_int_bits(jd), 52);
    const __m256d pow2 = _mm256_castsi256_pd(pow2_bits);
    const __m256d res = _mm256_mul_pd(q, pow2);
    // x beyond the cutoff underflows to zero.
    const __m256d live =
        _mm256_cmp_pd(x, _mm256_set1_pd(kExpNegCutoff), _CMP_LE_OQ);
    return _mm256_and_pd(res, live);
}

} // namespace

void decay_weights(const double* ages, std::size_t n, double rate,
                   double scale, double* out) {
    const __m256d vrate = _mm256_set1_pd(rate);
    const __m256d vscale = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(ages + i);
        const __m256d w = exp_neg4(_mm256_mul_pd(vrate, a));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vscale, w));
    }
    // Tail goes through the scalar core, which is bit-identical per element.
    detail::decay_weights_scalar(ages + i, n - i, rate, scale, out + i);
}

} // namespace topicsim::kernels::avx2

#endif // x86-64
