#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace heatsim {

/// Uniform 1-D grid over [0, L] with N nodes, x_i = i * dx.
struct Grid1D {
    Grid1D(double length, std::size_t node_count);

    double length;
    std::size_t node_count;
    double dx;

    double node_position(std::size_t i) const { return static_cast<double>(i) * dx; }
};

/// Thermal properties of a rod material. Units are the caller's, only
/// self-consistency is required.
struct Material {
    std::string name;
    double conductivity;   // k
    double density;        // rho
    double specific_heat;  // c

    /// alpha = k / (rho * c)
    double diffusivity() const;
};

/// alpha = k / (rho * c). Throws DomainError naming the offending field
/// for non-positive or non-finite input.
double thermal_diffusivity(double conductivity, double density, double specific_heat);

/// Case-insensitive lookup in the built-in rod catalog
/// (aluminium, copper, mild-steel).
Material builtin_material(const std::string& name);

/// Names of all catalog entries, in listing order.
const std::vector<std::string>& builtin_material_names();

struct Dirichlet {
    double value;
};

/// Fixed temperature gradient at an end; 0 means insulated.
struct Neumann {
    double gradient;
};

using EndCondition = std::variant<Dirichlet, Neumann>;

struct BoundaryCondition {
    EndCondition left;
    EndCondition right;

    bool both_dirichlet() const;
};

struct UniformIC {
    double value;
};

struct SpikeIC {
    std::size_t node_index;
    double spike_value;
    double background_value;
};

/// T_i = amplitude * sin(mode * pi * x_i / L)
struct SineModeIC {
    int mode;
    double amplitude;
};

struct ExplicitIC {
    std::vector<double> values;
};

using InitialCondition = std::variant<UniformIC, SpikeIC, SineModeIC, ExplicitIC>;

/// Node temperatures at one time instant.
struct TemperatureField {
    std::vector<double> values;
    double time = 0.0;
    bool diverged = false;
};

/// Realize an initial condition on a grid as the t = 0 field.
TemperatureField apply_initial_condition(const InitialCondition& ic, const Grid1D& grid);

}  // namespace heatsim
