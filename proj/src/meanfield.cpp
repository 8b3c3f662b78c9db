#include "topicsim/meanfield.hpp"

#include <cmath>
#include <cstdlib>

#include "topicsim/engine.hpp"
#include "topicsim/errors.hpp"

namespace topicsim {

double MeanFieldParams::c() const {
    return steady_state_c(*this);
}

double MeanFieldParams::d1() const {
    return beta - k * lambda2 * B / c();
}

double MeanFieldParams::d2() const {
    return A * (beta - alpha) / c();
}

MeanFieldParams MeanFieldParams::from(const SimConfig& cfg, double mean_degree) {
    return MeanFieldParams{cfg.lambda1, cfg.lambda2, cfg.A,
                           cfg.alpha, cfg.B, cfg.beta, mean_degree};
}

double steady_state_c(const MeanFieldParams& p) {
    if (!(p.alpha > 0.0) || !(p.beta > 0.0))
        throw validation_error("meanfield: decay rates must be positive");
    return p.lambda1 * p.A / p.alpha + p.k * p.lambda2 * p.B / p.beta;
}

double p_closed_form(double t, const MeanFieldParams& p) {
    const double c = steady_state_c(p);
    const double d1 = p.beta - p.k * p.lambda2 * p.B / c;
    const double d2 = p.A * (p.beta - p.alpha) / c;
    const double head = (p.A / c) * std::exp(-d1 * t);

    const double denom = d1 - p.alpha;
    const double mag = std::max({std::abs(d1), std::abs(p.alpha), 1e-300});
    double value;
    if (std::abs(denom) < 1e-9 * mag) {
        value = head + d2 * t * std::exp(-p.alpha * t);
    } else {
        value = head + d2 / denom * (std::exp(-p.alpha * t) - std::exp(-d1 * t));
    }
    if (value < 0.0 && value > -1e-12)
        value = 0.0;
    else if (value > 1.0 && value < 1.0 + 1e-12)
        value = 1.0;
    return value;
}

std::vector<double> p_numeric(std::span<const double> grid, const MeanFieldParams& p) {
    if (grid.empty())
        throw validation_error("p_numeric: empty grid");
    if (grid[0] != 0.0)
        throw validation_error("p_numeric: grid must start at 0");
    const std::size_t m = grid.size();
    std::vector<double> out(m);
    const double c = steady_state_c(p);
    out[0] = p.A / c;
    if (m == 1)
        return out;

    const double h = grid[1] - grid[0];
    if (!(h > 0.0))
        throw validation_error("p_numeric: grid step must be positive");
    for (std::size_t i = 1; i < m; ++i)
        if (std::abs((grid[i] - grid[i - 1]) - h) > 1e-9 * h)
            throw validation_error("p_numeric: grid must be uniform");

    const double kappa = p.k * p.lambda2 * p.B / c; // kernel amplitude
    const double denom = 1.0 - 0.5 * h * kappa;
    if (!(denom > 0.0))
        throw validation_error("p_numeric: step too large for this kernel");
    const double decay = std::exp(-p.beta * h);

    // interior = sum_{j=1}^{i-1} e^{-beta (t_i - t_j)} P_j
    double interior = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        if (i > 1)
            interior = decay * (interior + out[i - 1]);
        const double t = grid[i];
        const double forcing = (p.A / c) * std::exp(-p.alpha * t);
        const double half_ends = 0.5 * std::exp(-p.beta * t) * out[0];
        out[i] = (forcing + h * kappa * (half_ends + interior)) / denom;
    }
    return out;
}

std::vector<double> uniform_grid(std::size_t count, double h) {
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i)
        g[i] = static_cast<double>(i) * h;
    return g;
}

} // namespace topicsim
