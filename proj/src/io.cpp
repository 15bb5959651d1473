#include "heatsim/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "heatsim/errors.hpp"

namespace heatsim {

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& text, int line) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError(line, "expected a number, got '" + t + "'");
    }
    return value;
}

long parse_integer(const std::string& text, int line) {
    const std::string t = trim(text);
    long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError(line, "expected an integer, got '" + t + "'");
    }
    return value;
}

EndCondition parse_end_condition(const std::string& text, int line) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError(line, "boundary syntax is dirichlet:<value> or neumann:<gradient>");
    }
    const std::string kind = trim(text.substr(0, colon));
    const double value = parse_number(text.substr(colon + 1), line);
    if (kind == "dirichlet") return Dirichlet{value};
    if (kind == "neumann") return Neumann{value};
    throw ConfigError(line, "unknown boundary kind '" + kind + "'");
}

InitialCondition parse_ic(const std::string& text, std::size_t nodes, int line) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw ConfigError(line, "ic syntax is spike:<v>@<index|mid>, uniform:<v>, or sine:<m>,<amplitude>");
    }
    const std::string kind = trim(text.substr(0, colon));
    const std::string rest = trim(text.substr(colon + 1));
    if (kind == "uniform") {
        return UniformIC{parse_number(rest, line)};
    }
    if (kind == "spike") {
        const auto at = rest.find('@');
        if (at == std::string::npos) {
            throw ConfigError(line, "spike syntax is spike:<value>@<index|mid>");
        }
        const double value = parse_number(rest.substr(0, at), line);
        const std::string where = trim(rest.substr(at + 1));
        std::size_t index;
        if (where == "mid") {
            index = nodes / 2;
        } else {
            const long raw = parse_integer(where, line);
            if (raw < 0) throw ConfigError(line, "spike index must be >= 0");
            index = static_cast<std::size_t>(raw);
        }
        return SpikeIC{index, value, 0.0};
    }
    if (kind == "sine") {
        const auto comma = rest.find(',');
        if (comma == std::string::npos) {
            throw ConfigError(line, "sine syntax is sine:<mode>,<amplitude>");
        }
        const long mode = parse_integer(rest.substr(0, comma), line);
        if (mode < 1) throw ConfigError(line, "sine mode must be >= 1");
        return SineModeIC{static_cast<int>(mode), parse_number(rest.substr(comma + 1), line)};
    }
    throw ConfigError(line, "unknown ic kind '" + kind + "'");
}

const char* const kKnownKeys[] = {
    "material",   "material.k", "material.rho",      "material.c",
    "rod.length", "grid.nodes", "time.dt",           "time.end",
    "time.sample_every",        "bc.left",           "bc.right",
    "ic",         "steady.eps",
};

struct RawEntry {
    std::string value;
    int line;
};

}  // namespace

SolverConfig parse_config(const std::string& text,
                          const std::map<std::string, std::string>& overrides) {
    std::map<std::string, RawEntry> entries;
    std::istringstream stream(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line_no, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (std::find_if(std::begin(kKnownKeys), std::end(kKnownKeys),
                         [&](const char* k) { return key == k; }) == std::end(kKnownKeys)) {
            throw ConfigError(line_no, "unknown key '" + key + "'");
        }
        if (entries.count(key)) {
            throw ConfigError(line_no, "duplicate key '" + key + "'");
        }
        entries[key] = {value, line_no};
    }

    for (const auto& [key, value] : overrides) {
        if (std::find_if(std::begin(kKnownKeys), std::end(kKnownKeys),
                         [&](const char* k) { return key == k; }) == std::end(kKnownKeys)) {
            throw ConfigError("unknown key '" + key + "'");
        }
        entries[key] = {value, 0};
        // A named material replaces any file-side custom triple, and vice versa.
        if (key == "material") {
            entries.erase("material.k");
            entries.erase("material.rho");
            entries.erase("material.c");
        }
    }

    auto take = [&](const char* key) -> std::optional<RawEntry> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        RawEntry e = it->second;
        entries.erase(it);
        return e;
    };

    Material material{"custom", 0, 0, 0};
    if (auto name = take("material")) {
        if (entries.count("material.k") || entries.count("material.rho") ||
            entries.count("material.c")) {
            throw ConfigError(name->line, "material name and material.k/rho/c are exclusive");
        }
        try {
            material = builtin_material(name->value);
        } catch (const LookupError& e) {
            throw ConfigError(name->line, e.what());
        }
    } else {
        auto k = take("material.k");
        auto rho = take("material.rho");
        auto c = take("material.c");
        if (!k || !rho || !c) {
            throw ConfigError("material is required: either 'material = <name>' or all of "
                              "material.k, material.rho, material.c");
        }
        material.conductivity = parse_number(k->value, k->line);
        material.density = parse_number(rho->value, rho->line);
        material.specific_heat = parse_number(c->value, c->line);
    }

    double length = 100.0;
    if (auto e = take("rod.length")) {
        length = parse_number(e->value, e->line);
        if (!(length > 0.0) || !std::isfinite(length)) {
            throw ConfigError(e->line, "rod.length must be positive, got " + e->value);
        }
    }

    std::size_t nodes = 101;
    if (auto e = take("grid.nodes")) {
        const long raw_nodes = parse_integer(e->value, e->line);
        if (raw_nodes < 3) {
            throw ConfigError(e->line, "grid.nodes must be >= 3, got " + e->value);
        }
        nodes = static_cast<std::size_t>(raw_nodes);
    }

    Grid1D grid(length, nodes);

    BoundaryCondition bc{Dirichlet{0.0}, Dirichlet{0.0}};
    if (auto e = take("bc.left")) bc.left = parse_end_condition(e->value, e->line);
    if (auto e = take("bc.right")) bc.right = parse_end_condition(e->value, e->line);

    InitialCondition ic = SpikeIC{nodes / 2, 50.0, 0.0};
    if (auto e = take("ic")) ic = parse_ic(e->value, nodes, e->line);

    SolverConfig config{
        .grid = grid,
        .material = material,
        .bc = bc,
        .ic = ic,
        .dt = 0.0,
        .t_end = 6000.0,
        .sample_every = 60,
        .steady_eps = 1e-4,
    };
    if (auto e = take("time.end")) config.t_end = parse_number(e->value, e->line);
    if (auto e = take("time.sample_every")) {
        const long raw_se = parse_integer(e->value, e->line);
        if (raw_se < 1) throw ConfigError(e->line, "time.sample_every must be >= 1");
        config.sample_every = static_cast<std::size_t>(raw_se);
    }
    if (auto e = take("steady.eps")) config.steady_eps = parse_number(e->value, e->line);

    if (auto e = take("time.dt")) {
        config.dt = parse_number(e->value, e->line);
    } else {
        // Default to a comfortably stable step: target lambda = 0.4.
        config.dt = 0.4 * grid.dx * grid.dx / material.diffusivity();
    }

    try {
        config.validate();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return config;
}

std::string write_timeseries_csv(const SimulationResult& result, const Grid1D& grid) {
    if (result.frames.empty()) {
        throw ConfigError("cannot export a result with no frames");
    }
    std::string out = "t,x,temperature\n";
    for (const TemperatureField& frame : result.frames) {
        const std::string t = format_double(frame.time);
        for (std::size_t i = 0; i < frame.values.size(); ++i) {
            out += t;
            out += ',';
            out += format_double(grid.node_position(i));
            out += ',';
            out += format_double(frame.values[i]);
            out += '\n';
        }
    }
    return out;
}

std::vector<std::filesystem::path> write_frames(const SimulationResult& result,
                                                const Grid1D& grid,
                                                const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);

    auto write_file = [](const std::filesystem::path& path, const std::string& content) {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw IoError("cannot open " + path.string() + " for writing");
        file << content;
        if (!file) throw IoError("write failed for " + path.string());
    };

    std::vector<std::filesystem::path> created;
    std::string manifest = "index,t\n";
    for (std::size_t f = 0; f < result.frames.size(); ++f) {
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%05zu.csv", f);
        const std::filesystem::path path = dir / name;

        std::string content = "x,temperature\n";
        const TemperatureField& frame = result.frames[f];
        for (std::size_t i = 0; i < frame.values.size(); ++i) {
            content += format_double(grid.node_position(i));
            content += ',';
            content += format_double(frame.values[i]);
            content += '\n';
        }
        write_file(path, content);
        created.push_back(path);

        manifest += std::to_string(f);
        manifest += ',';
        manifest += format_double(frame.time);
        manifest += '\n';
    }
    const std::filesystem::path manifest_path = dir / "manifest.csv";
    write_file(manifest_path, manifest);
    created.push_back(manifest_path);
    return created;
}

namespace {

const char* const kStrokeCycle[8] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
};

}  // namespace

std::string render_svg_profile(const std::vector<TemperatureField>& fields,
                               const std::vector<std::string>& labels,
                               const Grid1D& grid) {
    if (fields.empty()) {
        throw ConfigError("svg rendering needs at least one field");
    }
    if (fields.size() != labels.size()) {
        throw ConfigError("svg rendering needs one label per field");
    }

    double y_min = fields[0].values[0];
    double y_max = y_min;
    for (const TemperatureField& f : fields) {
        for (double v : f.values) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (y_max == y_min) {
        y_min = -1.0;
        y_max = 1.0;
    } else {
        const double pad = 0.05 * (y_max - y_min);
        y_min -= pad;
        y_max += pad;
    }

    const double width = 640.0, height = 420.0;
    const double ml = 60.0, mr = 150.0, mt = 20.0, mb = 45.0;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    auto px = [&](double x) { return ml + plot_w * x / grid.length; };
    auto py = [&](double y) { return mt + plot_h * (y_max - y) / (y_max - y_min); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(width) +
           "\" height=\"" + format_double(height) + "\" viewBox=\"0 0 " +
           format_double(width) + " " + format_double(height) + "\">\n";
    svg += "<rect x=\"" + format_double(ml) + "\" y=\"" + format_double(mt) + "\" width=\"" +
           format_double(plot_w) + "\" height=\"" + format_double(plot_h) +
           "\" fill=\"none\" stroke=\"#333333\"/>\n";

    // 5 evenly spaced ticks on each axis
    for (int t = 0; t < 5; ++t) {
        const double frac = t / 4.0;
        const double x = frac * grid.length;
        const double y = y_min + frac * (y_max - y_min);
        svg += "<text x=\"" + format_double(px(x)) + "\" y=\"" + format_double(height - mb + 18.0) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + format_double(x) + "</text>\n";
        svg += "<text x=\"" + format_double(ml - 6.0) + "\" y=\"" + format_double(py(y) + 4.0) +
               "\" font-size=\"11\" text-anchor=\"end\">" + format_double(y) + "</text>\n";
    }
    svg += "<text x=\"" + format_double(ml + plot_w / 2.0) + "\" y=\"" +
           format_double(height - 8.0) + "\" font-size=\"12\" text-anchor=\"middle\">position</text>\n";

    for (std::size_t f = 0; f < fields.size(); ++f) {
        const char* stroke = kStrokeCycle[f % 8];
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += stroke;
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < fields[f].values.size(); ++i) {
            if (i) svg += ' ';
            svg += format_double(px(grid.node_position(i)));
            svg += ',';
            svg += format_double(py(fields[f].values[i]));
        }
        svg += "\"/>\n";

        const double ly = mt + 14.0 + 16.0 * static_cast<double>(f);
        svg += "<line x1=\"" + format_double(width - mr + 10.0) + "\" y1=\"" + format_double(ly - 4.0) +
               "\" x2=\"" + format_double(width - mr + 30.0) + "\" y2=\"" + format_double(ly - 4.0) +
               "\" stroke=\"";
        svg += stroke;
        svg += "\" stroke-width=\"1.5\"/>\n";
        svg += "<text x=\"" + format_double(width - mr + 36.0) + "\" y=\"" + format_double(ly) +
               "\" font-size=\"11\">" + labels[f] + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace heatsim
