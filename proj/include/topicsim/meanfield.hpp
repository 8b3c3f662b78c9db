#pragma once

#include <span>
#include <vector>

namespace topicsim {

struct SimConfig;

// Parameters of the mean-field description of the diffusion dynamics.
// c is the stationary normalizer; D1 and D2 the derived decay constants of
// the closed-form speaking probability. Both are always recomputed from the
// base fields, never cached.
struct MeanFieldParams {
    double lambda1 = 1.0; // topic arrival rate
    double lambda2 = 1.0; // per-node activity rate
    double A = 1.0;
    double alpha = 0.5;
    double B = 1.0;
    double beta = 1.0;
    double k = 10.0; // mean degree

    double c() const;  // lambda1*A/alpha + k*lambda2*B/beta
    double d1() const; // beta - k*lambda2*B/c
    double d2() const; // A*(beta - alpha)/c

    static MeanFieldParams from(const SimConfig& cfg, double mean_degree);
};

// Stationary normalizer. Throws validation_error for nonpositive decay rates.
double steady_state_c(const MeanFieldParams& p);

// Closed-form speaking probability
//   P(t) = (A/c) e^{-D1 t} + D2/(D1-alpha) (e^{-alpha t} - e^{-D1 t})
// with the analytic limit (A/c) e^{-D1 t} + D2 t e^{-alpha t} substituted when
// D1 and alpha coincide to within 1e-9 relative. Values outside [0,1] by less
// than 1e-12 are clamped.
double p_closed_form(double t, const MeanFieldParams& p);

// Independent numerical evaluation: solves the renewal integral equation
//   P(t) = (A/c) e^{-alpha t} + (k lambda2 B / c) \int_0^t e^{-beta (t-s)} P(s) ds
// by trapezoidal product integration on a uniform grid starting at 0. The
// exponential kernel lets the interior sum update in O(1) per step; the
// discretization is exactly the trapezoid rule, so convergence is second
// order in the step. Throws validation_error for an empty or non-uniform grid.
std::vector<double> p_numeric(std::span<const double> grid, const MeanFieldParams& p);

// Uniform grid helper: count points, spacing h, starting at 0.
std::vector<double> uniform_grid(std::size_t count, double h);

} // namespace topicsim
