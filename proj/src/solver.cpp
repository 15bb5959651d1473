#include "heatsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heatsim/errors.hpp"

namespace heatsim {

namespace {

void require_positive_finite(double v, const char* field) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(field) + " must be positive and finite, got " +
                          std::to_string(v));
    }
}

bool all_finite(const std::vector<double>& values) {
    return std::all_of(values.begin(), values.end(),
                       [](double v) { return std::isfinite(v); });
}

double end_value(const EndCondition& end) {
    return std::get<Dirichlet>(end).value;
}

}  // namespace

const char* to_string(Stability verdict) {
    switch (verdict) {
        case Stability::Stable: return "Stable";
        case Stability::Marginal: return "Marginal";
        case Stability::Unstable: return "Unstable";
    }
    return "?";
}

double mesh_fourier_number(double alpha, double dt, double dx) {
    require_positive_finite(alpha, "diffusivity");
    require_positive_finite(dt, "dt");
    require_positive_finite(dx, "dx");
    return alpha * dt / (dx * dx);
}

Stability check_stability(double lambda) {
    require_positive_finite(lambda, "lambda");
    if (lambda < 0.5) return Stability::Stable;
    if (lambda == 0.5) return Stability::Marginal;
    return Stability::Unstable;
}

double SolverConfig::lambda() const {
    return mesh_fourier_number(material.diffusivity(), dt, grid.dx);
}

void SolverConfig::validate() const {
    require_positive_finite(dt, "time.dt");
    if (!std::isfinite(t_end) || t_end <= dt) {
        throw ConfigError("time.end must exceed time.dt");
    }
    if (sample_every < 1) {
        throw ConfigError("time.sample_every must be >= 1");
    }
    require_positive_finite(steady_eps, "steady.eps");
    lambda();  // derived mesh Fourier number must exist

    auto check_end = [](const EndCondition& end, const char* side) {
        const double v = std::holds_alternative<Dirichlet>(end)
                             ? std::get<Dirichlet>(end).value
                             : std::get<Neumann>(end).gradient;
        if (!std::isfinite(v)) {
            throw ConfigError(std::string("non-finite boundary value at ") + side + " end");
        }
    };
    check_end(bc.left, "left");
    check_end(bc.right, "right");

    apply_initial_condition(ic, grid);  // validates index / length constraints
}

TemperatureField ftcs_step(const TemperatureField& field, double lambda,
                           const BoundaryCondition& bc, double dx, double dt) {
    const std::size_t n = field.values.size();
    if (n < 3) {
        throw ConfigError("ftcs_step needs at least 3 nodes, got " + std::to_string(n));
    }
    require_positive_finite(lambda, "lambda");

    const std::vector<double>& u = field.values;
    TemperatureField next;
    next.time = field.time + dt;
    next.values.resize(n);
    std::vector<double>& v = next.values;

    // Neighbor sum first: the commutative grouping keeps mirror-symmetric
    // fields bit-exactly symmetric.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        v[i] = u[i] + lambda * ((u[i + 1] + u[i - 1]) - 2.0 * u[i]);
    }

    if (const auto* dir = std::get_if<Dirichlet>(&bc.left)) {
        v[0] = dir->value;
    } else {
        const double ghost = u[1] - 2.0 * dx * std::get<Neumann>(bc.left).gradient;
        v[0] = u[0] + lambda * ((u[1] + ghost) - 2.0 * u[0]);
    }
    if (const auto* dir = std::get_if<Dirichlet>(&bc.right)) {
        v[n - 1] = dir->value;
    } else {
        const double ghost = u[n - 2] + 2.0 * dx * std::get<Neumann>(bc.right).gradient;
        v[n - 1] = u[n - 1] + lambda * ((ghost + u[n - 2]) - 2.0 * u[n - 1]);
    }

    next.diverged = field.diverged || !all_finite(v);
    return next;
}

bool detect_steady_state(const TemperatureField& prev, const TemperatureField& next,
                         double dt, double eps) {
    if (prev.values.size() != next.values.size()) {
        throw ConfigError("steady-state check on fields of different lengths");
    }
    require_positive_finite(dt, "dt");
    double max_rate = 0.0;
    for (std::size_t i = 0; i < prev.values.size(); ++i) {
        max_rate = std::max(max_rate, std::abs(next.values[i] - prev.values[i]) / dt);
    }
    return max_rate < eps;
}

TemperatureField linear_steady_profile(const BoundaryCondition& bc, const Grid1D& grid) {
    if (!bc.both_dirichlet()) {
        throw UnsupportedQueryError(
            "steady profile is only defined for two Dirichlet ends");
    }
    const double left = end_value(bc.left);
    const double right = end_value(bc.right);
    TemperatureField field;
    field.values.resize(grid.node_count);
    for (std::size_t i = 0; i < grid.node_count; ++i) {
        field.values[i] = left + (right - left) * grid.node_position(i) / grid.length;
    }
    return field;
}

namespace {

// Bound for the 10x blow-up check: magnitude of the initial + boundary data.
double data_magnitude(const TemperatureField& ic, const BoundaryCondition& bc) {
    double mag = 0.0;
    for (double v : ic.values) mag = std::max(mag, std::abs(v));
    if (const auto* d = std::get_if<Dirichlet>(&bc.left)) mag = std::max(mag, std::abs(d->value));
    if (const auto* d = std::get_if<Dirichlet>(&bc.right)) mag = std::max(mag, std::abs(d->value));
    return mag;
}

bool exceeds_blowup_bound(const TemperatureField& field, double bound) {
    for (double v : field.values) {
        if (!std::isfinite(v) || std::abs(v) > bound) return true;
    }
    return false;
}

}  // namespace

SimulationResult simulate(const SolverConfig& config) {
    config.validate();

    SimulationResult result;
    result.lambda = config.lambda();
    result.stable = check_stability(result.lambda);

    const std::size_t steps =
        static_cast<std::size_t>(std::ceil(config.t_end / config.dt));
    const double blowup_bound =
        10.0 * std::max(data_magnitude(apply_initial_condition(config.ic, config.grid), config.bc),
                        std::numeric_limits<double>::min());

    TemperatureField current = apply_initial_condition(config.ic, config.grid);
    result.frames.push_back(current);

    for (std::size_t step = 1; step <= steps; ++step) {
        TemperatureField next =
            ftcs_step(current, result.lambda, config.bc, config.grid.dx, config.dt);

        if (!result.diverged_at && exceeds_blowup_bound(next, blowup_bound)) {
            next.diverged = true;
            result.diverged_at = next.time;
        }

        const bool sampled = (step % config.sample_every == 0) || step == steps;
        if (sampled) {
            if (!result.steady_time && !next.diverged &&
                detect_steady_state(current, next, config.dt, config.steady_eps)) {
                result.steady_time = next.time;
            }
            result.frames.push_back(next);
        }
        current = std::move(next);
    }
    return result;
}

}  // namespace heatsim
