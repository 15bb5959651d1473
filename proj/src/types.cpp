#include "heatsim/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "heatsim/errors.hpp"

namespace heatsim {

namespace {

void require_positive_finite(double v, const char* field) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError(std::string(field) + " must be positive and finite, got " +
                          std::to_string(v));
    }
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

Grid1D::Grid1D(double length_, std::size_t node_count_)
    : length(length_), node_count(node_count_) {
    require_positive_finite(length, "rod length");
    if (node_count < 3) {
        throw DomainError("grid needs at least 3 nodes, got " + std::to_string(node_count));
    }
    dx = length / static_cast<double>(node_count - 1);
}

double Material::diffusivity() const {
    return thermal_diffusivity(conductivity, density, specific_heat);
}

double thermal_diffusivity(double conductivity, double density, double specific_heat) {
    require_positive_finite(conductivity, "conductivity");
    require_positive_finite(density, "density");
    require_positive_finite(specific_heat, "specific heat");
    return conductivity / (density * specific_heat);
}

namespace {

// Table values are paper-verbatim catalog data, not handbook SI numbers; the
// solver only requires self-consistent units.
const std::vector<Material> kCatalog = {
    {"aluminium", 2.38, 2.7, 0.92},
    {"copper", 4.1, 8.96, 0.376},
    {"mild-steel", 0.064, 7.85, 0.51},
};

}  // namespace

Material builtin_material(const std::string& name) {
    const std::string key = to_lower(name);
    for (const Material& m : kCatalog) {
        if (m.name == key) return m;
    }
    std::string valid;
    for (const Material& m : kCatalog) {
        if (!valid.empty()) valid += ", ";
        valid += m.name;
    }
    throw LookupError("unknown material '" + name + "' (valid: " + valid + ")");
}

const std::vector<std::string>& builtin_material_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const Material& m : kCatalog) out.push_back(m.name);
        return out;
    }();
    return names;
}

bool BoundaryCondition::both_dirichlet() const {
    return std::holds_alternative<Dirichlet>(left) && std::holds_alternative<Dirichlet>(right);
}

TemperatureField apply_initial_condition(const InitialCondition& ic, const Grid1D& grid) {
    const std::size_t n = grid.node_count;
    TemperatureField field;
    field.time = 0.0;
    field.values.assign(n, 0.0);

    if (const auto* uniform = std::get_if<UniformIC>(&ic)) {
        std::fill(field.values.begin(), field.values.end(), uniform->value);
    } else if (const auto* spike = std::get_if<SpikeIC>(&ic)) {
        if (spike->node_index >= n) {
            throw ConfigError("spike node index " + std::to_string(spike->node_index) +
                              " outside grid of " + std::to_string(n) + " nodes");
        }
        std::fill(field.values.begin(), field.values.end(), spike->background_value);
        field.values[spike->node_index] = spike->spike_value;
    } else if (const auto* sine = std::get_if<SineModeIC>(&ic)) {
        if (sine->mode < 1) {
            throw ConfigError("sine mode number must be >= 1, got " + std::to_string(sine->mode));
        }
        const double factor = sine->mode * std::numbers::pi / grid.length;
        for (std::size_t i = 0; i < n; ++i) {
            field.values[i] = sine->amplitude * std::sin(factor * grid.node_position(i));
        }
    } else {
        const auto& explicit_ic = std::get<ExplicitIC>(ic);
        if (explicit_ic.values.size() != n) {
            throw ConfigError("explicit initial condition has " +
                              std::to_string(explicit_ic.values.size()) + " values, grid has " +
                              std::to_string(n) + " nodes");
        }
        field.values = explicit_ic.values;
    }
    return field;
}

}  // namespace heatsim
