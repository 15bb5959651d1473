#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "heatsim/errors.hpp"
#include "heatsim/solver.hpp"
#include "heatsim/types.hpp"

using namespace heatsim;

namespace {

double uniform(std::mt19937& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng()) / 4294967296.0);
}

TemperatureField random_field(std::mt19937& rng, std::size_t n, double lo, double hi) {
    TemperatureField f;
    f.values.resize(n);
    for (double& v : f.values) v = uniform(rng, lo, hi);
    return f;
}

// Heat content under the mirror ghost construction: trapezoid-weighted node
// sum (half weight at the ends). This is the exactly conserved functional
// for insulated ends.
double heat_content(const TemperatureField& f) {
    double sum = 0.5 * f.values.front() + 0.5 * f.values.back();
    for (std::size_t i = 1; i + 1 < f.values.size(); ++i) sum += f.values[i];
    return sum;
}

}  // namespace

TEST_CASE("thermal diffusivity is k/(rho c)") {
    CHECK(thermal_diffusivity(2.38, 2.7, 0.92) == doctest::Approx(2.38 / 2.484).epsilon(1e-12));
    CHECK(thermal_diffusivity(2.38, 2.7, 0.92) == doctest::Approx(0.958132).epsilon(1e-5));
    CHECK(thermal_diffusivity(4.1, 8.96, 0.376) == doctest::Approx(4.1 / 3.36896).epsilon(1e-12));
    CHECK(thermal_diffusivity(4.1, 8.96, 0.376) == doctest::Approx(1.217000).epsilon(1e-5));
    CHECK(thermal_diffusivity(1, 1, 1) == 1.0);
}

TEST_CASE("thermal diffusivity rejects bad inputs by name") {
    CHECK_THROWS_WITH_AS(thermal_diffusivity(-1, 1, 1),
                         doctest::Contains("conductivity"), DomainError);
    CHECK_THROWS_WITH_AS(thermal_diffusivity(1, 0, 1),
                         doctest::Contains("density"), DomainError);
    CHECK_THROWS_WITH_AS(thermal_diffusivity(1, 1, std::nan("")),
                         doctest::Contains("specific heat"), DomainError);
}

TEST_CASE("material catalog") {
    const Material al = builtin_material("aluminium");
    CHECK(al.conductivity == 2.38);
    CHECK(al.density == 2.7);
    CHECK(al.specific_heat == 0.92);

    const Material cu = builtin_material("Copper");  // case-insensitive
    CHECK(cu.conductivity == 4.1);
    CHECK(cu.density == 8.96);
    CHECK(cu.specific_heat == 0.376);

    const Material ms = builtin_material("MILD-STEEL");
    CHECK(ms.conductivity == 0.064);
    CHECK(ms.density == 7.85);
    CHECK(ms.specific_heat == 0.51);

    CHECK_THROWS_WITH_AS(builtin_material("unknownium"),
                         doctest::Contains("aluminium, copper, mild-steel"), LookupError);
}

TEST_CASE("mesh Fourier number") {
    CHECK(mesh_fourier_number(1.0, 0.125, 0.5) == 0.5);
    CHECK(mesh_fourier_number(1.0, 1.0, 1.0) == 1.0);
    const double alpha = thermal_diffusivity(2.38, 2.7, 0.92);
    const Grid1D grid(100.0, 100);
    CHECK(mesh_fourier_number(alpha, 0.1, grid.dx) == doctest::Approx(0.09391).epsilon(1e-3));
    CHECK_THROWS_AS(mesh_fourier_number(-1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("stability verdict") {
    CHECK(check_stability(0.25) == Stability::Stable);
    CHECK(check_stability(0.5) == Stability::Marginal);
    CHECK(check_stability(0.55) == Stability::Unstable);
    CHECK_THROWS_AS(check_stability(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("grid invariants") {
    const Grid1D grid(100.0, 101);
    CHECK(grid.dx * 100.0 == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(grid.node_position(0) == 0.0);
    CHECK(grid.node_position(100) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK_THROWS_AS(Grid1D(100.0, 2), DomainError);
    CHECK_THROWS_AS(Grid1D(-1.0, 10), DomainError);
}

TEST_CASE("initial conditions") {
    SUBCASE("mid spike") {
        const Grid1D grid(100.0, 101);
        const TemperatureField f = apply_initial_condition(SpikeIC{50, 50.0, 0.0}, grid);
        for (std::size_t i = 0; i < 101; ++i) {
            CHECK(f.values[i] == (i == 50 ? 50.0 : 0.0));
        }
        CHECK(f.time == 0.0);
    }
    SUBCASE("uniform zero") {
        const TemperatureField f = apply_initial_condition(UniformIC{0.0}, Grid1D(1.0, 5));
        CHECK(std::all_of(f.values.begin(), f.values.end(), [](double v) { return v == 0.0; }));
    }
    SUBCASE("sine mode on a 5-node grid") {
        const TemperatureField f = apply_initial_condition(SineModeIC{1, 1.0}, Grid1D(1.0, 5));
        const double pi = std::acos(-1.0);
        CHECK(f.values[0] == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(f.values[1] == doctest::Approx(std::sin(pi / 4)).epsilon(1e-15));
        CHECK(f.values[2] == doctest::Approx(std::sin(pi / 2)).epsilon(1e-15));
        CHECK(f.values[3] == doctest::Approx(std::sin(3 * pi / 4)).epsilon(1e-15));
        CHECK(f.values[4] == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("bad spike index") {
        CHECK_THROWS_AS(apply_initial_condition(SpikeIC{9, 1.0, 0.0}, Grid1D(1.0, 5)),
                        ConfigError);
    }
    SUBCASE("explicit length mismatch") {
        CHECK_THROWS_AS(apply_initial_condition(ExplicitIC{{1.0, 2.0}}, Grid1D(1.0, 5)),
                        ConfigError);
    }
}

TEST_CASE("ftcs step hand examples") {
    const BoundaryCondition pinned{Dirichlet{0.0}, Dirichlet{0.0}};
    TemperatureField spike;
    spike.values = {0, 0, 50, 0, 0};

    SUBCASE("Dirichlet spike") {
        const TemperatureField next = ftcs_step(spike, 0.25, pinned, 1.0, 1.0);
        CHECK(next.values == std::vector<double>{0, 12.5, 25, 12.5, 0});
        CHECK(next.time == 1.0);
    }
    SUBCASE("uniform field is a fixed point of matching Dirichlet values") {
        TemperatureField flat;
        flat.values = {7, 7, 7, 7, 7};
        const BoundaryCondition bc{Dirichlet{7.0}, Dirichlet{7.0}};
        const TemperatureField next = ftcs_step(flat, 0.4, bc, 1.0, 1.0);
        CHECK(next.values == flat.values);
    }
    SUBCASE("insulated spike conserves the node sum for this symmetric case") {
        const BoundaryCondition insulated{Neumann{0.0}, Neumann{0.0}};
        const TemperatureField next = ftcs_step(spike, 0.25, insulated, 1.0, 1.0);
        CHECK(next.values == std::vector<double>{0, 12.5, 25, 12.5, 0});
        const double before = std::accumulate(spike.values.begin(), spike.values.end(), 0.0);
        const double after = std::accumulate(next.values.begin(), next.values.end(), 0.0);
        CHECK(before == after);
        CHECK(before == 50.0);
    }
    SUBCASE("too few nodes") {
        TemperatureField tiny;
        tiny.values = {1.0, 2.0};
        CHECK_THROWS_AS(ftcs_step(tiny, 0.25, pinned, 1.0, 1.0), ConfigError);
    }
    SUBCASE("non-finite input propagates the diverged flag") {
        TemperatureField bad;
        bad.values = {0.0, std::nan(""), 0.0};
        const TemperatureField next = ftcs_step(bad, 0.25, pinned, 1.0, 1.0);
        CHECK(next.diverged);
    }
}

TEST_CASE("nonzero Neumann gradient enters through the ghost node") {
    // Left gradient g: ghost = T1 - 2 dx g, so node 0 gains -2 lambda dx g
    // relative to the insulated update.
    TemperatureField flat;
    flat.values = {1, 1, 1, 1};
    const BoundaryCondition bc{Neumann{3.0}, Neumann{0.0}};
    const double dx = 0.5, lambda = 0.25;
    const TemperatureField next = ftcs_step(flat, lambda, bc, dx, 1.0);
    CHECK(next.values[0] == doctest::Approx(1.0 - 2.0 * lambda * dx * 3.0).epsilon(1e-15));
    CHECK(next.values[3] == 1.0);
}

TEST_CASE("steady-state detector") {
    TemperatureField a, b;
    a.values = {1, 2, 3};
    b.values = {1, 2, 3};
    CHECK(detect_steady_state(a, b, 1.0, 1e-12));

    b.values = {1, 3, 3};
    CHECK_FALSE(detect_steady_state(a, b, 1.0, 1e-4));

    b.values = {1, 2 + 5e-5, 3};
    CHECK(detect_steady_state(a, b, 1.0, 1e-4));

    TemperatureField short_field;
    short_field.values = {1, 2};
    CHECK_THROWS_AS(detect_steady_state(a, short_field, 1.0, 1e-4), ConfigError);
}

TEST_CASE("linear steady profile") {
    const Grid1D grid(1.0, 3);
    SUBCASE("0 to 50") {
        const auto f = linear_steady_profile({Dirichlet{0.0}, Dirichlet{50.0}}, grid);
        CHECK(f.values == std::vector<double>{0, 25, 50});
    }
    SUBCASE("both zero") {
        const auto f = linear_steady_profile({Dirichlet{0.0}, Dirichlet{0.0}}, grid);
        CHECK(f.values == std::vector<double>{0, 0, 0});
    }
    SUBCASE("constant line") {
        const auto f = linear_steady_profile({Dirichlet{10.0}, Dirichlet{10.0}}, grid);
        CHECK(f.values == std::vector<double>{10, 10, 10});
    }
    SUBCASE("Neumann end is unsupported") {
        CHECK_THROWS_AS(linear_steady_profile({Dirichlet{0.0}, Neumann{0.0}}, grid),
                        UnsupportedQueryError);
    }
}

TEST_CASE("property: maximum principle for stable Dirichlet runs") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng() % 30;
        const double lambda = uniform(rng, 0.01, 0.5);
        const double left = uniform(rng, -40, 40), right = uniform(rng, -40, 40);
        const BoundaryCondition bc{Dirichlet{left}, Dirichlet{right}};
        TemperatureField f = random_field(rng, n, -40, 40);
        double lo = std::min({left, right, *std::min_element(f.values.begin(), f.values.end())});
        double hi = std::max({left, right, *std::max_element(f.values.begin(), f.values.end())});
        for (int s = 0; s < 50; ++s) {
            f = ftcs_step(f, lambda, bc, 1.0, 1.0);
            for (double v : f.values) {
                CHECK(v >= lo - 1e-12);
                CHECK(v <= hi + 1e-12);
            }
        }
    }
}

TEST_CASE("property: insulated ends conserve the heat content") {
    std::mt19937 rng(11);
    const BoundaryCondition insulated{Neumann{0.0}, Neumann{0.0}};
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 5 + rng() % 40;
        TemperatureField f = random_field(rng, n, 0, 100);
        const double before = heat_content(f);
        for (int s = 0; s < 200; ++s) f = ftcs_step(f, 0.3, insulated, 1.0, 1.0);
        CHECK(heat_content(f) == doctest::Approx(before).epsilon(1e-12));
    }
}

TEST_CASE("property: the update is linear under homogeneous Dirichlet ends") {
    std::mt19937 rng(13);
    const BoundaryCondition bc{Dirichlet{0.0}, Dirichlet{0.0}};
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + rng() % 20;
        const double lambda = uniform(rng, 0.05, 0.5);
        const double a = uniform(rng, -3, 3), b = uniform(rng, -3, 3);
        const TemperatureField u = random_field(rng, n, -10, 10);
        const TemperatureField v = random_field(rng, n, -10, 10);
        TemperatureField combo;
        combo.values.resize(n);
        for (std::size_t i = 0; i < n; ++i) combo.values[i] = a * u.values[i] + b * v.values[i];

        const TemperatureField su = ftcs_step(u, lambda, bc, 1.0, 1.0);
        const TemperatureField sv = ftcs_step(v, lambda, bc, 1.0, 1.0);
        const TemperatureField sc = ftcs_step(combo, lambda, bc, 1.0, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(sc.values[i] ==
                  doctest::Approx(a * su.values[i] + b * sv.values[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("property: symmetry about the mid node is preserved exactly") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 2 * (3 + rng() % 10) + 1;  // odd
        TemperatureField f = random_field(rng, n, -20, 20);
        for (std::size_t i = 0; i < n / 2; ++i) f.values[n - 1 - i] = f.values[i];
        const double end = uniform(rng, -20, 20);
        const BoundaryCondition bc{Dirichlet{end}, Dirichlet{end}};
        for (int s = 0; s < 30; ++s) {
            f = ftcs_step(f, 0.4, bc, 1.0, 1.0);
            for (std::size_t i = 0; i < n / 2; ++i) {
                CHECK(f.values[i] == f.values[n - 1 - i]);
            }
        }
    }
}

TEST_CASE("property: the linear profile is a fixed point of its own BC") {
    const Grid1D grid(10.0, 21);
    const BoundaryCondition bc{Dirichlet{-5.0}, Dirichlet{35.0}};
    const TemperatureField profile = linear_steady_profile(bc, grid);
    const TemperatureField next = ftcs_step(profile, 0.45, bc, grid.dx, 1.0);
    for (std::size_t i = 0; i < profile.values.size(); ++i) {
        CHECK(next.values[i] == doctest::Approx(profile.values[i]).epsilon(1e-14));
    }
}

namespace {

SolverConfig paper_config() {
    const Material al = builtin_material("aluminium");
    const Grid1D grid(100.0, 101);
    const double dt = 0.4 * grid.dx * grid.dx / al.diffusivity();
    return SolverConfig{
        .grid = grid,
        .material = al,
        .bc = {Dirichlet{0.0}, Dirichlet{0.0}},
        .ic = SpikeIC{50, 50.0, 0.0},
        .dt = dt,
        .t_end = 6000.0,
        .sample_every = 100,
        .steady_eps = 1e-4,
    };
}

}  // namespace

TEST_CASE("simulate: mid spike with pinned zero ends decays away") {
    const SimulationResult result = simulate(paper_config());
    CHECK(result.lambda == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(result.stable == Stability::Stable);
    CHECK_FALSE(result.diverged_at.has_value());
    for (double v : result.frames.back().values) {
        CHECK(std::abs(v) < 0.1);
    }
    CHECK(result.frames.front().time == 0.0);
    for (std::size_t i = 1; i < result.frames.size(); ++i) {
        CHECK(result.frames[i].time > result.frames[i - 1].time);
    }
}

TEST_CASE("simulate: 0/50 ends approach the linear profile") {
    SolverConfig config = paper_config();
    config.bc.right = Dirichlet{50.0};
    config.t_end = 12000.0;  // the slowest residual mode needs ~6200 s to fall under 0.1
    const SimulationResult result = simulate(config);
    const TemperatureField line = linear_steady_profile(config.bc, config.grid);
    for (std::size_t i = 0; i < line.values.size(); ++i) {
        CHECK(std::abs(result.frames.back().values[i] - line.values[i]) < 0.1);
    }
}

TEST_CASE("simulate: equilibrium start is steady at the first sample") {
    SolverConfig config = paper_config();
    config.bc = {Neumann{0.0}, Neumann{0.0}};
    config.ic = UniformIC{0.0};
    const SimulationResult result = simulate(config);
    REQUIRE(result.steady_time.has_value());
    CHECK(*result.steady_time ==
          doctest::Approx(static_cast<double>(config.sample_every) * config.dt).epsilon(1e-12));
    for (const TemperatureField& frame : result.frames) {
        for (double v : frame.values) CHECK(v == 0.0);
    }
}

TEST_CASE("simulate: an unstable step is recorded, not fatal") {
    SolverConfig config = paper_config();
    config.dt = 0.55 * config.grid.dx * config.grid.dx / config.material.diffusivity();
    config.t_end = 2000.0;
    const SimulationResult result = simulate(config);
    CHECK(result.stable == Stability::Unstable);
    REQUIRE(result.diverged_at.has_value());
    CHECK(*result.diverged_at > 0.0);
    CHECK(*result.diverged_at <= config.t_end + config.dt);
    CHECK(result.frames.back().diverged);
}

TEST_CASE("simulate: steady times order by diffusivity") {
    // Identical desk-scale setup across the catalog; larger alpha settles sooner.
    std::map<std::string, double> steady;
    for (const std::string& name : builtin_material_names()) {
        const Material m = builtin_material(name);
        const Grid1D grid(10.0, 51);
        const double dt = 0.4 * grid.dx * grid.dx / m.diffusivity();
        SolverConfig config{
            .grid = grid,
            .material = m,
            .bc = {Dirichlet{0.0}, Dirichlet{50.0}},
            .ic = SpikeIC{25, 50.0, 0.0},
            .dt = dt,
            .t_end = 20000.0,
            .sample_every = 20,
            .steady_eps = 1e-4,
        };
        const SimulationResult result = simulate(config);
        REQUIRE(result.steady_time.has_value());
        steady[name] = *result.steady_time;
    }
    CHECK(steady["copper"] < steady["aluminium"]);
    CHECK(steady["aluminium"] < steady["mild-steel"]);
}
