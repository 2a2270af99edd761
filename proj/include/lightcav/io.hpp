#ifndef LIGHTCAV_IO_HPP
#define LIGHTCAV_IO_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lightcav/bounds.hpp"
#include "lightcav/field_map.hpp"
#include "lightcav/quadrature.hpp"
#include "lightcav/setup.hpp"

namespace lightcav
{

inline constexpr const char* kToolVersion = "1.0.0";

// Schema violation in a run configuration.
struct ConfigError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

// Everything a run reads from its JSON configuration file.
struct RunConfig
{
    ExperimentConfig experiment = standard_config();
    std::optional<double> photon_number;
    std::optional<double> l_qg;
    QuadratureSpec quadrature;
    std::optional<GridSpec> grid;
    std::uint64_t seed = 42;
};

// Parses and checks a configuration; unknown keys, wrong types and
// unphysical values throw ConfigError. Missing keys keep their defaults.
RunConfig parse_run_config(const nlohmann::json& document);
RunConfig load_run_config(const std::string& path);

// Canonical form: every field present, keys sorted.
nlohmann::json to_json(const RunConfig& config);

// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string config_hash(const RunConfig& config);

Provenance make_provenance(const RunConfig& config, const std::string& command);

enum class OutputFormat
{
    Csv,
    Json,
    Text
};

OutputFormat output_format_from_string(const std::string& name);

// Value rounded to 9 significant digits, the precision of every output file.
double round_significant(double value);
// printf %.9g.
std::string format_number(double value);

nlohmann::json to_json(const Provenance& provenance);
// "# key=value" lines, one per provenance field.
std::string provenance_comment(const Provenance& provenance);

// Column order of field-map output.
const std::vector<std::string>& fieldmap_columns();

// CSV: provenance comment lines, the header row, then one row per node in
// grid order. The map must hold the metric components.
void write_fieldmap_csv(const FieldMap& map, std::ostream& out);
nlohmann::json fieldmap_to_json(const FieldMap& map);
// Inverse of fieldmap_to_json (values at output precision).
FieldMap fieldmap_from_json(const nlohmann::json& document);

nlohmann::json table_to_json(const ScalingTable& table, const Provenance& provenance);
std::string table_to_text(const ScalingTable& table, const Provenance& provenance);

// Writes text to path, or to stdout for "" or "-". Throws std::runtime_error
// naming the path on failure.
void write_output(const std::string& path, const std::string& text);

void emit_fieldmap(const FieldMap& map, OutputFormat format, const std::string& path);
void emit_table(const ScalingTable& table, const Provenance& provenance, OutputFormat format,
                const std::string& path);

} // namespace lightcav

#endif // LIGHTCAV_IO_HPP
