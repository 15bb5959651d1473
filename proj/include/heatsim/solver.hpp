#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "heatsim/types.hpp"

namespace heatsim {

enum class Stability { Stable, Marginal, Unstable };

const char* to_string(Stability verdict);

/// lambda = alpha * dt / dx^2
double mesh_fourier_number(double alpha, double dt, double dx);

/// Von Neumann verdict for the explicit scheme: Stable below 1/2,
/// Marginal at exactly 1/2, Unstable above.
Stability check_stability(double lambda);

struct SolverConfig {
    Grid1D grid;
    Material material;
    BoundaryCondition bc;
    InitialCondition ic;
    double dt;
    double t_end;
    std::size_t sample_every = 1;
    double steady_eps = 1e-4;

    double lambda() const;

    /// Throws ConfigError / DomainError if any invariant is violated.
    void validate() const;
};

struct SimulationResult {
    std::vector<TemperatureField> frames;
    double lambda = 0.0;
    Stability stable = Stability::Stable;
    std::optional<double> steady_time;
    std::optional<double> diverged_at;
};

/// One explicit update: interior nodes get
///   T_i += lambda * (T_{i+1} - 2 T_i + T_{i-1}),
/// Dirichlet ends are overwritten with the fixed value, Neumann ends use a
/// mirror ghost node (left ghost T_{-1} = T_1 - 2 dx g) and the interior
/// formula. Non-finite input propagates a diverged flag instead of throwing.
TemperatureField ftcs_step(const TemperatureField& field, double lambda,
                           const BoundaryCondition& bc, double dx, double dt);

/// max_i |next_i - prev_i| / dt < eps
bool detect_steady_state(const TemperatureField& prev, const TemperatureField& next,
                         double dt, double eps);

/// Exact steady solution between two Dirichlet ends: the straight line
/// through the end values. Throws UnsupportedQueryError for a Neumann end.
TemperatureField linear_steady_profile(const BoundaryCondition& bc, const Grid1D& grid);

/// Step the configuration to t_end, storing every sample_every-th frame plus
/// the final one. Steadiness is checked at stored samples; divergence is
/// recorded (first non-finite node or 10x excursion past the data range),
/// never fatal.
SimulationResult simulate(const SolverConfig& config);

}  // namespace heatsim
