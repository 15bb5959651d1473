#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "heatsim/solver.hpp"
#include "heatsim/types.hpp"

namespace heatsim {

/// Eigen-decomposition of the interior second-difference operator on a grid
/// with both ends pinned: v_k(i) = sin(k pi i / (M+1)) for interior nodes
/// i = 1..M, eigenvalue mu_k = -(4/dx^2) sin^2(k pi / (2(M+1))).
class DiscreteModeBasis {
public:
    DiscreteModeBasis(std::size_t node_count, double dx);

    std::size_t interior_count() const { return interior_;  }

    /// v_k(i) with mode k in [1, M] and interior index i in [1, M].
    double eigenvector(std::size_t mode, std::size_t interior_index) const;
    double eigenvalue(std::size_t mode) const;

    /// Per-step multiplier of mode k under the explicit update:
    /// g_k = 1 - 4 lambda sin^2(k pi / (2(M+1))).
    double amplification(std::size_t mode, double lambda) const;

    /// Mode coefficients of an interior-sized vector (direct inner products).
    std::vector<double> analyze(const std::vector<double>& interior) const;
    std::vector<double> synthesize(const std::vector<double>& coefficients) const;

private:
    std::size_t interior_;
    double dx_;
};

struct ErrorReport {
    double max_abs = 0.0;
    double l2 = 0.0;
    std::optional<double> observed_order;
};

/// Closed form of `steps` explicit updates under two Dirichlet ends:
/// subtract the linear steady profile, expand the interior residual in the
/// mode basis, scale mode k by g_k^steps, reconstruct. Matches repeated
/// ftcs_step in exact arithmetic, including initial fields whose end values
/// disagree with the boundary condition.
TemperatureField exact_ftcs_solution(const TemperatureField& ic, double lambda,
                                     const BoundaryCondition& bc, std::size_t steps);

/// Separated solution of the continuum equation with pinned zero ends:
/// A sin(m pi x / L) exp(-alpha (m pi / L)^2 t).
double continuum_solution(double x, double t, double alpha, double length,
                          int mode, double amplitude);

/// max_abs and grid-weighted RMS difference of two equal-length fields.
ErrorReport error_metrics(const TemperatureField& a, const TemperatureField& b, double dx);

struct ConvergencePoint {
    std::size_t nodes;
    double dx;
    double l2_error;
};

struct ConvergenceResult {
    std::vector<ConvergencePoint> points;
    double observed_order;
};

/// Grid-refinement study at fixed lambda: run the stepping engine with a
/// single sine mode and pinned zero ends on each grid, measure the L2 error
/// against the continuum solution, and fit the log-log slope of error vs dx.
/// Rejects lambda_fixed > 0.5 (that would measure instability, not
/// truncation).
ConvergenceResult convergence_study(double alpha, double length, int mode,
                                    double lambda_fixed,
                                    const std::vector<std::size_t>& grids,
                                    double t_target);

}  // namespace heatsim
