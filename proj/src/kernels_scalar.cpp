#include "topicsim/kernels.hpp"

#include "exp_core.hpp"

namespace topicsim::kernels::scalar {

void decay_weights(const double* ages, std::size_t n, double rate,
                   double scale, double* out) {
    detail::decay_weights_scalar(ages, n, rate, scale, out);
}

} // namespace topicsim::kernels::scalar
