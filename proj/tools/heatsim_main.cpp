#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heatsim/errors.hpp"
#include "heatsim/io.hpp"
#include "heatsim/oracle.hpp"
#include "heatsim/solver.hpp"
#include "heatsim/types.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitDiverged = 3;

struct SharedFlags {
    std::string config_path;
    std::map<std::string, std::string> overrides;

    void attach(CLI::App& cmd) {
        cmd.add_option("--config", config_path, "config file (key = value lines)");
        auto key_opt = [&](const char* flag, const char* key, const char* help) {
            cmd.add_option_function<std::string>(
                flag, [this, key](const std::string& v) { overrides[key] = v; }, help);
        };
        key_opt("--material", "material", "catalog material (aluminium, copper, mild-steel)");
        key_opt("--length", "rod.length", "rod length");
        key_opt("--nodes", "grid.nodes", "node count (>= 3)");
        key_opt("--dt", "time.dt", "time step (default: lambda = 0.4)");
        key_opt("--t-end", "time.end", "end time");
        key_opt("--sample-every", "time.sample_every", "steps between stored frames");
        key_opt("--bc-left", "bc.left", "dirichlet:<value> or neumann:<gradient>");
        key_opt("--bc-right", "bc.right", "dirichlet:<value> or neumann:<gradient>");
        key_opt("--ic", "ic", "spike:<v>@<i|mid>, uniform:<v>, or sine:<m>,<a>");
        key_opt("--steady-eps", "steady.eps", "steady-state rate threshold");
    }

    heatsim::SolverConfig resolve() const {
        std::string text;
        if (!config_path.empty()) {
            std::ifstream file(config_path, std::ios::binary);
            if (!file) throw heatsim::IoError("cannot read config file " + config_path);
            std::ostringstream buf;
            buf << file.rdbuf();
            text = buf.str();
        }
        return heatsim::parse_config(text, overrides);
    }
};

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw heatsim::IoError("cannot open " + path + " for writing");
    file << content;
    if (!file) throw heatsim::IoError("write failed for " + path);
}

std::string steady_text(const heatsim::SimulationResult& result) {
    return result.steady_time ? heatsim::format_double(*result.steady_time) : "none";
}

int run_simulate(const SharedFlags& shared, const std::string& csv_path,
                 const std::string& frames_dir, const std::string& svg_path) {
    const heatsim::SolverConfig config = shared.resolve();
    const heatsim::SimulationResult result = heatsim::simulate(config);

    std::cout << "lambda=" << heatsim::format_double(result.lambda)
              << " stability=" << heatsim::to_string(result.stable)
              << " steady_time=" << steady_text(result) << "\n";

    if (!csv_path.empty()) {
        write_text_file(csv_path, heatsim::write_timeseries_csv(result, config.grid));
    }
    if (!frames_dir.empty()) {
        heatsim::write_frames(result, config.grid, frames_dir);
    }
    if (!svg_path.empty()) {
        // Plot up to 8 evenly spaced stored frames, labelled by time.
        std::vector<heatsim::TemperatureField> fields;
        std::vector<std::string> labels;
        const std::size_t count = std::min<std::size_t>(8, result.frames.size());
        for (std::size_t j = 0; j < count; ++j) {
            const std::size_t idx = j * (result.frames.size() - 1) / std::max<std::size_t>(count - 1, 1);
            fields.push_back(result.frames[idx]);
            labels.push_back("t=" + heatsim::format_double(result.frames[idx].time));
        }
        write_text_file(svg_path, heatsim::render_svg_profile(fields, labels, config.grid));
    }

    if (result.diverged_at) {
        std::cerr << "divergence detected at t=" << heatsim::format_double(*result.diverged_at)
                  << "\n";
        return kExitDiverged;
    }
    return kExitOk;
}

int run_compare(const SharedFlags& shared, const std::string& materials_arg,
                const std::string& csv_path) {
    std::vector<std::string> names;
    std::stringstream ss(materials_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) names.push_back(item);
    }
    if (names.empty()) {
        std::cerr << "error: --materials needs at least one catalog name\n";
        return kExitConfigError;
    }

    struct Row {
        std::string material;
        double alpha;
        double lambda;
        std::string steady;
    };
    std::vector<Row> rows;
    for (const std::string& name : names) {
        SharedFlags per = shared;
        per.overrides["material"] = name;
        const heatsim::SolverConfig config = per.resolve();
        const heatsim::SimulationResult result = heatsim::simulate(config);
        rows.push_back({config.material.name, config.material.diffusivity(), result.lambda,
                        result.steady_time ? heatsim::format_double(*result.steady_time)
                                           : ">" + heatsim::format_double(config.t_end)});
    }

    auto short_num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6g", v);
        return std::string(buf);
    };
    std::size_t name_w = 8;
    for (const Row& r : rows) name_w = std::max(name_w, r.material.size());
    std::printf("%-*s  %-10s  %-8s  %s\n", static_cast<int>(name_w), "material", "alpha",
                "lambda", "steady_time");
    for (const Row& r : rows) {
        std::printf("%-*s  %-10s  %-8s  %s\n", static_cast<int>(name_w), r.material.c_str(),
                    short_num(r.alpha).c_str(), short_num(r.lambda).c_str(), r.steady.c_str());
    }

    if (!csv_path.empty()) {
        std::string csv = "material,alpha,lambda,steady_time\n";
        for (const Row& r : rows) {
            csv += r.material + "," + heatsim::format_double(r.alpha) + "," +
                   heatsim::format_double(r.lambda) + "," + r.steady + "\n";
        }
        write_text_file(csv_path, csv);
    }
    return kExitOk;
}

double uniform(std::mt19937& rng, double lo, double hi) {
    // Fixed-width mapping so output is reproducible independent of the
    // standard library's distribution implementation.
    const double u = static_cast<double>(rng()) / 4294967296.0;
    return lo + (hi - lo) * u;
}

int run_verify(unsigned seed, const std::vector<std::size_t>& grids) {
    bool ok = true;

    std::mt19937 rng(seed);
    double worst = 0.0;
    std::string worst_desc;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 5 + static_cast<std::size_t>(uniform(rng, 0.0, 61.0));
        const double lambda = uniform(rng, 1e-3, 0.5);
        const heatsim::BoundaryCondition bc{heatsim::Dirichlet{uniform(rng, -50.0, 50.0)},
                                            heatsim::Dirichlet{uniform(rng, -50.0, 50.0)}};
        const std::size_t steps = 1 + static_cast<std::size_t>(uniform(rng, 0.0, 999.0));

        heatsim::TemperatureField ic;
        ic.values.resize(n);
        for (double& v : ic.values) v = uniform(rng, -50.0, 50.0);

        heatsim::TemperatureField stepped = ic;
        for (std::size_t s = 0; s < steps; ++s) {
            stepped = heatsim::ftcs_step(stepped, lambda, bc, 1.0, 1.0);
        }
        const heatsim::TemperatureField closed =
            heatsim::exact_ftcs_solution(ic, lambda, bc, steps);
        const double dev = heatsim::error_metrics(stepped, closed, 1.0).max_abs;
        if (dev > worst) {
            worst = dev;
            worst_desc = "trial " + std::to_string(trial) + " (N=" + std::to_string(n) +
                         ", lambda=" + heatsim::format_double(lambda) +
                         ", steps=" + std::to_string(steps) + ")";
        }
    }
    char worst_buf[32];
    std::snprintf(worst_buf, sizeof(worst_buf), "%.1e", worst);
    if (worst < 1e-9) {
        std::cout << "equivalence: PASS (max " << worst_buf << ")\n";
    } else {
        std::cout << "equivalence: FAIL (max " << worst_buf << ")\n";
        std::cerr << "worst deviation at " << worst_desc << " with seed " << seed << "\n";
        ok = false;
    }

    const heatsim::Material al = heatsim::builtin_material("aluminium");
    if (grids.size() == 2) {
        std::cerr << "warning: only two grids given; the order estimate is a two-point slope\n";
    }
    const double alpha = al.diffusivity();
    const double t_target = 0.1 * 100.0 * 100.0 / alpha;
    const heatsim::ConvergenceResult study =
        heatsim::convergence_study(alpha, 100.0, 1, 0.25, grids, t_target);
    char order_buf[32];
    std::snprintf(order_buf, sizeof(order_buf), "%.3f", study.observed_order);
    if (study.observed_order >= 1.8 && study.observed_order <= 2.2) {
        std::cout << "convergence: PASS (order " << order_buf << ")\n";
    } else {
        std::cout << "convergence: FAIL (order " << order_buf << ")\n";
        for (const heatsim::ConvergencePoint& p : study.points) {
            std::cerr << "  N=" << p.nodes << " dx=" << heatsim::format_double(p.dx)
                      << " l2=" << heatsim::format_double(p.l2_error) << "\n";
        }
        ok = false;
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

int run_stability(const std::string& material_name, double alpha_flag, double length,
                  std::size_t nodes, double dt) {
    double alpha = alpha_flag;
    if (!material_name.empty()) {
        alpha = heatsim::builtin_material(material_name).diffusivity();
    }
    if (alpha <= 0.0) {
        std::cerr << "error: give --material or a positive --alpha\n";
        return kExitConfigError;
    }
    const heatsim::Grid1D grid(length, nodes);
    const double lambda = heatsim::mesh_fourier_number(alpha, dt, grid.dx);
    const heatsim::Stability verdict = heatsim::check_stability(lambda);
    std::cout << "lambda=" << heatsim::format_double(lambda)
              << " verdict=" << heatsim::to_string(verdict) << "\n";
    if (verdict == heatsim::Stability::Unstable) {
        std::cout << "largest stable dt=" << heatsim::format_double(0.5 * grid.dx * grid.dx / alpha)
                  << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1-D transient heat conduction (explicit finite differences)"};
    app.require_subcommand(1);

    SharedFlags sim_flags;
    std::string sim_csv, sim_frames, sim_svg;
    CLI::App* sim = app.add_subcommand("simulate", "run one rod simulation");
    sim_flags.attach(*sim);
    sim->add_option("--csv", sim_csv, "write t,x,temperature time series");
    sim->add_option("--frames", sim_frames, "write per-frame CSVs into this directory");
    sim->add_option("--svg", sim_svg, "write a temperature-profile chart");

    SharedFlags cmp_flags;
    std::string cmp_materials, cmp_csv;
    CLI::App* cmp = app.add_subcommand("compare", "same setup across materials");
    cmp_flags.attach(*cmp);
    cmp->add_option("--materials", cmp_materials, "comma-separated catalog names")->required();
    cmp->add_option("--csv", cmp_csv, "write the comparison table as CSV");

    unsigned verify_seed = 12345;
    std::vector<std::size_t> verify_grids = {17, 33, 65};
    CLI::App* ver = app.add_subcommand("verify", "check stepping against exact solutions");
    ver->add_option("--seed", verify_seed, "seed for the randomized equivalence suite");
    ver->add_option("--grids", verify_grids, "node counts for the refinement study")
        ->delimiter(',');

    std::string stab_material;
    double stab_alpha = 0.0, stab_length = 100.0, stab_dt = 0.0;
    std::size_t stab_nodes = 101;
    CLI::App* stab = app.add_subcommand("stability", "report the mesh Fourier number");
    stab->add_option("--material", stab_material, "catalog material");
    stab->add_option("--alpha", stab_alpha, "thermal diffusivity (alternative to --material)");
    stab->add_option("--length", stab_length, "rod length");
    stab->add_option("--nodes", stab_nodes, "node count");
    stab->add_option("--dt", stab_dt, "time step")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return run_simulate(sim_flags, sim_csv, sim_frames, sim_svg);
        if (cmp->parsed()) return run_compare(cmp_flags, cmp_materials, cmp_csv);
        if (ver->parsed()) return run_verify(verify_seed, verify_grids);
        return run_stability(stab_material, stab_alpha, stab_length, stab_nodes, stab_dt);
    } catch (const heatsim::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}
