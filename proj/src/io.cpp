#include "lightcav/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "lightcav/metric.hpp"

namespace lightcav
{

using nlohmann::json;

namespace
{

void check_keys(const json& object, const std::set<std::string>& allowed, const std::string& where)
{
    if (!object.is_object())
        throw ConfigError(where + ": expected an object");
    for (const auto& item : object.items())
        if (!allowed.count(item.key()))
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
}

double number(const json& value, const std::string& where)
{
    if (!value.is_number())
        throw ConfigError(where + ": expected a number");
    const double x = value.get<double>();
    if (!std::isfinite(x))
        throw ConfigError(where + ": not finite");
    return x;
}

std::optional<double> optional_number(const json& object, const std::string& key, const std::string& where)
{
    if (!object.contains(key) || object.at(key).is_null())
        return std::nullopt;
    return number(object.at(key), where + "." + key);
}

std::int64_t integer(const json& value, const std::string& where)
{
    if (!value.is_number_integer())
        throw ConfigError(where + ": expected an integer");
    return value.get<std::int64_t>();
}

std::uint64_t unsigned_integer(const json& value, const std::string& where)
{
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0))
        throw ConfigError(where + ": expected a non-negative integer");
    return value.get<std::uint64_t>();
}

ModeIndices parse_mode(const json& object)
{
    check_keys(object, {"lx", "ly", "lz", "polarization"}, "mode");
    for (const char* key : {"lx", "ly", "lz"})
        if (!object.contains(key))
            throw ConfigError(std::string("mode: missing '") + key + "'");
    ModeIndices mode;
    try
    {
        mode = ModeIndices::make(integer(object.at("lx"), "mode.lx"), integer(object.at("ly"), "mode.ly"),
                                 integer(object.at("lz"), "mode.lz"));
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(std::string("mode: ") + e.what());
    }
    if (object.contains("polarization"))
    {
        const json& p = object.at("polarization");
        if (!p.is_array() || p.size() != 3)
            throw ConfigError("mode.polarization: expected three numbers");
        for (int i = 0; i < 3; ++i)
            mode.polarization[i] = number(p[i], "mode.polarization");
    }
    return mode;
}

AxisRange parse_axis(const json& object, const std::string& where)
{
    check_keys(object, {"lo", "hi", "count"}, where);
    for (const char* key : {"lo", "hi", "count"})
        if (!object.contains(key))
            throw ConfigError(where + ": missing '" + key + "'");
    return {number(object.at("lo"), where + ".lo"), number(object.at("hi"), where + ".hi"),
            static_cast<std::size_t>(unsigned_integer(object.at("count"), where + ".count"))};
}

const char* axis_names[3] = {"xi", "eta", "zeta"};

json axis_json(const AxisRange& a)
{
    return {{"lo", a.lo}, {"hi", a.hi}, {"count", a.count}};
}

json grid_json(const GridSpec& grid)
{
    json g;
    for (int i = 0; i < 3; ++i)
        g[axis_names[i]] = axis_json(grid.axes[i]);
    return g;
}

template <typename T>
json optional_json(const std::optional<T>& value)
{
    return value ? json(*value) : json(nullptr);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json entry_json(const TableEntry& entry)
{
    json e{{"delta_c", round_significant(entry.delta_c)}};
    if (entry.n_opt)
        e["n_opt"] = round_significant(*entry.n_opt);
    return e;
}

json optional_entry_json(const std::optional<TableEntry>& entry)
{
    return entry ? entry_json(*entry) : json(nullptr);
}

} // namespace

RunConfig parse_run_config(const json& document)
{
    check_keys(document,
               {"cavity_length", "wavelength", "finesse", "measurement_time", "mode",
                "lossy_time_convention", "photon_number", "l_qg", "quadrature", "grid", "seed"},
               "config");
    RunConfig run;
    ExperimentConfig& e = run.experiment;
    if (auto v = optional_number(document, "cavity_length", "config"))
        e.cavity_length = *v;
    if (auto v = optional_number(document, "wavelength", "config"))
        e.wavelength = *v;
    if (document.contains("finesse"))
        e.finesse = optional_number(document, "finesse", "config");
    e.measurement_time_override = optional_number(document, "measurement_time", "config");
    if (document.contains("mode") && !document.at("mode").is_null())
        e.mode = parse_mode(document.at("mode"));
    if (document.contains("lossy_time_convention"))
    {
        const json& c = document.at("lossy_time_convention");
        if (!c.is_string())
            throw ConfigError("config.lossy_time_convention: expected a string");
        try
        {
            e.lossy_time_convention = lossy_time_convention_from_string(c.get<std::string>());
        }
        catch (const std::invalid_argument& err)
        {
            throw ConfigError(err.what());
        }
    }
    run.photon_number = optional_number(document, "photon_number", "config");
    if (run.photon_number && !(*run.photon_number >= 0.0))
        throw ConfigError("config.photon_number: must be non-negative");
    run.l_qg = optional_number(document, "l_qg", "config");
    if (run.l_qg && !(*run.l_qg > 0.0))
        throw ConfigError("config.l_qg: must be positive");

    if (document.contains("quadrature") && !document.at("quadrature").is_null())
    {
        const json& q = document.at("quadrature");
        check_keys(q, {"tolerance", "max_depth", "points_per_panel", "split_singularity", "max_panels"},
                   "quadrature");
        if (auto v = optional_number(q, "tolerance", "quadrature"))
            run.quadrature.tolerance = *v;
        if (q.contains("max_depth"))
            run.quadrature.max_depth = static_cast<int>(integer(q.at("max_depth"), "quadrature.max_depth"));
        if (q.contains("points_per_panel"))
            run.quadrature.points_per_panel =
                static_cast<int>(integer(q.at("points_per_panel"), "quadrature.points_per_panel"));
        if (q.contains("split_singularity"))
        {
            if (!q.at("split_singularity").is_boolean())
                throw ConfigError("quadrature.split_singularity: expected a boolean");
            run.quadrature.split_singularity = q.at("split_singularity").get<bool>();
        }
        if (q.contains("max_panels"))
            run.quadrature.max_panels =
                static_cast<std::size_t>(unsigned_integer(q.at("max_panels"), "quadrature.max_panels"));
    }
    if (document.contains("grid") && !document.at("grid").is_null())
    {
        const json& g = document.at("grid");
        check_keys(g, {"xi", "eta", "zeta"}, "grid");
        GridSpec grid;
        for (int i = 0; i < 3; ++i)
        {
            if (!g.contains(axis_names[i]))
                throw ConfigError(std::string("grid: missing '") + axis_names[i] + "'");
            grid.axes[i] = parse_axis(g.at(axis_names[i]), std::string("grid.") + axis_names[i]);
        }
        run.grid = grid;
    }
    if (document.contains("seed"))
        run.seed = unsigned_integer(document.at("seed"), "config.seed");

    try
    {
        validate(run.experiment);
        run.quadrature.validate();
        if (run.grid)
            run.grid->validate();
    }
    catch (const std::invalid_argument& err)
    {
        throw ConfigError(err.what());
    }
    return run;
}

RunConfig load_run_config(const std::string& path)
{
    const std::string text = read_file(path);
    json document;
    try
    {
        document = json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError("'" + path + "': " + e.what());
    }
    return parse_run_config(document);
}

json to_json(const RunConfig& config)
{
    const ExperimentConfig& e = config.experiment;
    json mode = nullptr;
    if (e.mode)
        mode = {{"lx", e.mode->lx},
                {"ly", e.mode->ly},
                {"lz", e.mode->lz},
                {"polarization", {e.mode->polarization[0], e.mode->polarization[1], e.mode->polarization[2]}}};
    const QuadratureSpec& q = config.quadrature;
    return {{"cavity_length", e.cavity_length},
            {"wavelength", e.wavelength},
            {"finesse", optional_json(e.finesse)},
            {"measurement_time", optional_json(e.measurement_time_override)},
            {"mode", mode},
            {"lossy_time_convention", to_string(e.lossy_time_convention)},
            {"photon_number", optional_json(config.photon_number)},
            {"l_qg", optional_json(config.l_qg)},
            {"quadrature",
             {{"tolerance", q.tolerance},
              {"max_depth", q.max_depth},
              {"points_per_panel", q.points_per_panel},
              {"split_singularity", q.split_singularity},
              {"max_panels", q.max_panels}}},
            {"grid", config.grid ? grid_json(*config.grid) : json(nullptr)},
            {"seed", config.seed}};
}

std::string config_hash(const RunConfig& config)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : to_json(config).dump())
    {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

Provenance make_provenance(const RunConfig& config, const std::string& command)
{
    Provenance p;
    p.version = kToolVersion;
    p.config_hash = config_hash(config);
    p.command = command;
    p.seed = config.seed;
    p.tolerance = config.quadrature.tolerance;
    return p;
}

OutputFormat output_format_from_string(const std::string& name)
{
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    if (name == "text")
        return OutputFormat::Text;
    throw std::invalid_argument("unknown format '" + name + "' (expected csv, json or text)");
}

std::string format_number(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.9g", value);
    return buffer;
}

double round_significant(double value)
{
    if (!std::isfinite(value))
        return value;
    return std::strtod(format_number(value).c_str(), nullptr);
}

json to_json(const Provenance& p)
{
    return {{"tool", p.tool},
            {"version", p.version},
            {"config_hash", p.config_hash},
            {"command", p.command},
            {"seed", p.seed},
            {"tolerance", p.tolerance}};
}

std::string provenance_comment(const Provenance& p)
{
    std::ostringstream out;
    out << "# tool=" << p.tool << "\n"
        << "# version=" << p.version << "\n"
        << "# config_hash=" << p.config_hash << "\n"
        << "# command=" << p.command << "\n"
        << "# seed=" << p.seed << "\n"
        << "# tolerance=" << format_number(p.tolerance) << "\n";
    return out.str();
}

const std::vector<std::string>& fieldmap_columns()
{
    static const std::vector<std::string> columns{"xi",  "eta", "zeta", "h00", "h11", "h22",
                                                  "h33", "h23", "dcx",  "dcy", "dcz", "err"};
    return columns;
}

void write_fieldmap_csv(const FieldMap& map, std::ostream& out)
{
    for (const std::string& name : metric_component_names())
        if (!map.components.count(name))
            throw std::invalid_argument("field map lacks component '" + name + "'");
    out << provenance_comment(map.provenance);
    out << "# units=" << map.units << "\n"
        << "# mode=" << map.mode_kind << "\n"
        << "# converged=" << (map.converged ? "true" : "false") << "\n";
    const auto& columns = fieldmap_columns();
    for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c];
    out << "\n";
    const auto& names = metric_component_names();
    for (std::size_t i = 0; i < map.grid.size(); ++i)
    {
        const Eigen::Vector3d x = map.grid.point(i);
        out << format_number(x[0]) << ',' << format_number(x[1]) << ',' << format_number(x[2]);
        for (const std::string& name : names)
            out << ',' << format_number(map.components.at(name)[static_cast<Eigen::Index>(i)]);
        out << ',' << format_number(map.error[static_cast<Eigen::Index>(i)]) << "\n";
    }
}

json fieldmap_to_json(const FieldMap& map)
{
    for (const std::string& name : metric_component_names())
        if (!map.components.count(name))
            throw std::invalid_argument("field map lacks component '" + name + "'");
    const std::size_t n = map.grid.size();
    std::vector<std::vector<double>> columns(fieldmap_columns().size(), std::vector<double>(n));
    const auto& names = metric_component_names();
    for (std::size_t i = 0; i < n; ++i)
    {
        const Eigen::Vector3d x = map.grid.point(i);
        for (int a = 0; a < 3; ++a)
            columns[a][i] = round_significant(x[a]);
        for (std::size_t c = 0; c < names.size(); ++c)
            columns[3 + c][i] = round_significant(map.components.at(names[c])[static_cast<Eigen::Index>(i)]);
        columns.back()[i] = round_significant(map.error[static_cast<Eigen::Index>(i)]);
    }
    json document;
    for (std::size_t c = 0; c < columns.size(); ++c)
        document[fieldmap_columns()[c]] = columns[c];
    document["metadata"] = {{"provenance", to_json(map.provenance)},
                            {"units", map.units},
                            {"mode", map.mode_kind},
                            {"converged", map.converged},
                            {"unconverged_points", map.unconverged_points},
                            {"grid", grid_json(map.grid)}};
    return document;
}

FieldMap fieldmap_from_json(const json& document)
{
    const json& meta = document.at("metadata");
    GridSpec grid;
    for (int i = 0; i < 3; ++i)
    {
        const json& a = meta.at("grid").at(axis_names[i]);
        grid.axes[i] = {a.at("lo").get<double>(), a.at("hi").get<double>(), a.at("count").get<std::size_t>()};
    }
    FieldMap map(grid, metric_component_names());
    const std::size_t n = grid.size();
    for (const std::string& name : metric_component_names())
    {
        const auto values = document.at(name).get<std::vector<double>>();
        if (values.size() != n)
            throw std::invalid_argument("column '" + name + "' has the wrong length");
        map[name] = Eigen::Map<const Eigen::ArrayXd>(values.data(), static_cast<Eigen::Index>(n));
    }
    const auto err = document.at("err").get<std::vector<double>>();
    if (err.size() != n)
        throw std::invalid_argument("column 'err' has the wrong length");
    map.error = Eigen::Map<const Eigen::ArrayXd>(err.data(), static_cast<Eigen::Index>(n));
    map.units = meta.at("units").get<std::string>();
    map.mode_kind = meta.at("mode").get<std::string>();
    map.converged = meta.at("converged").get<bool>();
    map.unconverged_points = meta.at("unconverged_points").get<std::size_t>();
    const json& p = meta.at("provenance");
    map.provenance.tool = p.at("tool").get<std::string>();
    map.provenance.version = p.at("version").get<std::string>();
    map.provenance.config_hash = p.at("config_hash").get<std::string>();
    map.provenance.command = p.at("command").get<std::string>();
    map.provenance.seed = p.at("seed").get<std::uint64_t>();
    map.provenance.tolerance = p.at("tolerance").get<double>();
    return map;
}

json table_to_json(const ScalingTable& table, const Provenance& provenance)
{
    const ExperimentConfig& c = table.config;
    json config{{"cavity_length", c.cavity_length},
                {"wavelength", c.wavelength},
                {"finesse", optional_json(c.finesse)},
                {"lossy_time_convention", to_string(c.lossy_time_convention)},
                {"time_lossless", round_significant(storage_time(lossless_variant(c)))},
                {"time_lossy", c.finesse ? json(round_significant(storage_time(c))) : json(nullptr)}};
    return {{"optimal_lossless", entry_json(table.optimal_lossless)},
            {"optimal_lossy", optional_entry_json(table.optimal_lossy)},
            {"coherent_lossless", entry_json(table.coherent_lossless)},
            {"coherent_lossy", optional_entry_json(table.coherent_lossy)},
            {"ng00", entry_json(table.ng00)},
            {"ac_eq3", entry_json(table.ac_eq3)},
            {"ac_eq5", entry_json(table.ac_eq5)},
            {"config", config},
            {"provenance", to_json(provenance)}};
}

std::string table_to_text(const ScalingTable& table, const Provenance& provenance)
{
    auto cell = [](const std::optional<TableEntry>& e, bool n_opt) {
        if (!e)
            return std::string("-");
        if (n_opt)
            return e->n_opt ? format_number(round_significant(*e->n_opt)) : std::string("-");
        return format_number(e->delta_c);
    };
    char line[256];
    std::ostringstream out;
    out << provenance_comment(provenance);
    std::snprintf(line, sizeof line, "%-12s %-16s %-16s %-16s %-16s\n", "", "optimal dc/c", "optimal n",
                  "coherent dc/c", "coherent n");
    out << line;
    std::snprintf(line, sizeof line, "%-12s %-16s %-16s %-16s %-16s\n", "lossless",
                  cell(table.optimal_lossless, false).c_str(), cell(table.optimal_lossless, true).c_str(),
                  cell(table.coherent_lossless, false).c_str(), cell(table.coherent_lossless, true).c_str());
    out << line;
    std::snprintf(line, sizeof line, "%-12s %-16s %-16s %-16s %-16s\n", "lossy",
                  cell(table.optimal_lossy, false).c_str(), cell(table.optimal_lossy, true).c_str(),
                  cell(table.coherent_lossy, false).c_str(), cell(table.coherent_lossy, true).c_str());
    out << line;
    out << "\n";
    std::snprintf(line, sizeof line, "%-12s %-16s %-16s %-16s\n", "dL/L", "ng00", "ac_eq3", "ac_eq5");
    out << line;
    std::snprintf(line, sizeof line, "%-12s %-16s %-16s %-16s\n", "", format_number(table.ng00.delta_c).c_str(),
                  format_number(table.ac_eq3.delta_c).c_str(), format_number(table.ac_eq5.delta_c).c_str());
    out << line;
    return out.str();
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

void emit_fieldmap(const FieldMap& map, OutputFormat format, const std::string& path)
{
    if (format == OutputFormat::Json)
    {
        write_output(path, fieldmap_to_json(map).dump(1) + "\n");
        return;
    }
    std::ostringstream out;
    write_fieldmap_csv(map, out);
    write_output(path, out.str());
}

void emit_table(const ScalingTable& table, const Provenance& provenance, OutputFormat format,
                const std::string& path)
{
    if (format == OutputFormat::Text)
        write_output(path, table_to_text(table, provenance));
    else
        write_output(path, table_to_json(table, provenance).dump(2) + "\n");
}

} // namespace lightcav
