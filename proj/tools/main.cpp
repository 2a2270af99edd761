#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lightcav/bounds.hpp"
#include "lightcav/io.hpp"
#include "lightcav/kernel.hpp"
#include "lightcav/metric.hpp"
#include "lightcav/quadrature.hpp"
#include "lightcav/resonance.hpp"
#include "lightcav/setup.hpp"

using namespace lightcav;
using nlohmann::json;

namespace
{

enum ExitCode
{
    kOk = 0,
    kConfigError = 2,
    kRegimeViolation = 3,
    kQuadratureFailure = 4
};

struct Options
{
    std::string config_path;
    std::string out;
    std::string format;
    std::uint64_t seed = 42;
    bool seed_given = false;
    bool strict = false;
    std::string grid;
    std::string slice;
    std::string range = "-3.14159265358979,6.28318530717959";
    double tolerance = 0.0;
    unsigned threads = 0;
    std::string mode = "011";
    std::string source_01M = "sin2";
    std::string lightspeed = "coordinate";
    double photons = -1.0;
    std::string point;
    std::string convention = "light-signal";
    std::string average = "center-line";
    double n_min = 1.0;
    double n_max = 1e45;
    std::size_t count = 91;
    std::size_t oracle_samples = 0;
};

struct UsageError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct RegimeViolation : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct QuadratureFailure : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

RunConfig load(const Options& o)
{
    RunConfig run = o.config_path.empty() ? parse_run_config(json::object()) : load_run_config(o.config_path);
    if (o.seed_given)
        run.seed = o.seed;
    if (o.tolerance > 0.0)
        run.quadrature.tolerance = o.tolerance;
    else if (o.tolerance < 0.0)
        throw ConfigError("--tolerance must be positive");
    if (o.photons >= 0.0)
        run.photon_number = o.photons;
    for (const std::string& w : validate(run.experiment))
        std::cerr << "warning: " << w << "\n";
    return run;
}

OutputFormat format_or(const Options& o, OutputFormat fallback)
{
    if (o.format.empty())
        return fallback;
    try
    {
        return output_format_from_string(o.format);
    }
    catch (const std::invalid_argument& e)
    {
        throw UsageError(e.what());
    }
}

std::vector<double> split_numbers(const std::string& text, char separator, const std::string& what)
{
    std::vector<double> values;
    if (text.empty() || text.back() == separator)
        throw UsageError("bad list '" + text + "' in " + what);
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, separator))
    {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(item, &used);
        }
        catch (const std::exception&)
        {
            throw UsageError("bad number '" + item + "' in " + what);
        }
        if (used != item.size() || !std::isfinite(v))
            throw UsageError("bad number '" + item + "' in " + what);
        values.push_back(v);
    }
    return values;
}

Eigen::Vector3d parse_point(const std::string& text)
{
    const std::vector<double> v = split_numbers(text, ',', "--point");
    if (v.size() != 3)
        throw UsageError("--point expects xi,eta,zeta");
    return {v[0], v[1], v[2]};
}

int axis_index(const std::string& name)
{
    if (name == "xi")
        return 0;
    if (name == "eta")
        return 1;
    if (name == "zeta")
        return 2;
    throw UsageError("unknown axis '" + name + "' (expected xi, eta or zeta)");
}

// --grid N, NxN (with --slice) or NxNxN over --range, or the config grid.
GridSpec build_grid(const Options& o, const RunConfig& run)
{
    std::vector<double> counts;
    if (!o.grid.empty())
        counts = split_numbers(o.grid, 'x', "--grid");
    for (double c : counts)
        if (c < 0.0 || c != std::floor(c) || c > 4096.0)
            throw UsageError("--grid counts must be integers in [0, 4096]");
    const std::vector<double> range = split_numbers(o.range, ',', "--range");
    if (range.size() != 2)
        throw UsageError("--range expects lo,hi");

    GridSpec grid;
    if (counts.empty() && run.grid && o.slice.empty())
        return *run.grid;
    if (counts.empty())
        counts = {48};

    int slice_axis = -1;
    double slice_value = 0.0;
    if (!o.slice.empty())
    {
        const auto eq = o.slice.find('=');
        if (eq == std::string::npos)
            throw UsageError("--slice expects axis=value");
        slice_axis = axis_index(o.slice.substr(0, eq));
        const std::vector<double> v = split_numbers(o.slice.substr(eq + 1), ',', "--slice");
        if (v.size() != 1)
            throw UsageError("--slice expects axis=value");
        slice_value = v[0];
    }
    const std::size_t free_axes = slice_axis < 0 ? 3 : 2;
    if (counts.size() == 1)
        counts.assign(free_axes, counts[0]);
    if (counts.size() != free_axes)
        throw UsageError("--grid needs " + std::to_string(free_axes) + " counts");
    std::size_t next = 0;
    for (int a = 0; a < 3; ++a)
    {
        if (a == slice_axis)
            grid.axes[a] = {slice_value, slice_value, 1};
        else
            grid.axes[a] = {range[0], range[1], static_cast<std::size_t>(counts[next++])};
    }
    grid.validate();
    return grid;
}

void check_regime(const RunConfig& run, const Options& o)
{
    if (!run.photon_number)
        return;
    const ValidityReport report = validate_regime(run.experiment, *run.photon_number);
    if (report.all_ok())
        return;
    std::string text;
    for (const std::string& m : report.messages)
        text += m + "\n";
    if (o.strict)
        throw RegimeViolation(text);
    std::cerr << "warning: physical regime\n" << text;
}

double photons_required(const RunConfig& run)
{
    if (!run.photon_number)
        throw ConfigError("photon number required (config photon_number or --n)");
    return *run.photon_number;
}

int run_bounds(const Options& o)
{
    const RunConfig run = load(o);
    check_regime(run, o);
    const ScalingTable table = table1(run.experiment, run.l_qg);
    emit_table(table, make_provenance(run, "bounds"), format_or(o, OutputFormat::Json), o.out);
    return kOk;
}

int run_field_map(const Options& o)
{
    const RunConfig run = load(o);
    check_regime(run, o);
    GridSpec grid;
    try
    {
        grid = build_grid(o, run);
    }
    catch (const std::invalid_argument& e)
    {
        throw UsageError(e.what());
    }
    MetricMapOptions options;
    if (o.mode == "011")
        options.kind = ModeKind::Mode011;
    else if (o.mode == "01M")
        options.kind = ModeKind::Mode01M;
    else
        throw UsageError("--mode expects 011 or 01M");
    if (o.source_01M == "g")
        options.source_01M = Mode01MSource::FundamentalG;
    else if (o.source_01M != "sin2")
        throw UsageError("--source expects sin2 or g");
    if (o.lightspeed == "measured")
        options.definition = LightSpeedDefinition::Measured;
    else if (o.lightspeed != "coordinate")
        throw UsageError("--lightspeed expects coordinate or measured");
    options.threads = o.threads;

    FieldMap map = metric_field_map(grid, run.quadrature, options);
    std::ostringstream command;
    command << "field-map --mode " << o.mode << " --source " << o.source_01M << " --lightspeed "
            << o.lightspeed;
    for (int a = 0; a < 3; ++a)
        command << " --" << (a == 0 ? "xi" : a == 1 ? "eta" : "zeta") << " " << format_number(grid.axes[a].lo)
                << ":" << format_number(grid.axes[a].hi) << ":" << grid.axes[a].count;
    map.provenance = make_provenance(run, command.str());
    emit_fieldmap(map, format_or(o, OutputFormat::Csv), o.out);
    if (!map.converged)
    {
        std::cerr << "error: " << map.unconverged_points << " nodes missed the quadrature tolerance\n";
        return kQuadratureFailure;
    }
    return kOk;
}

int run_tradeoff(const Options& o)
{
    const RunConfig run = load(o);
    check_regime(run, o);
    const DimensionlessParams p = derive_params(run.experiment);
    const auto sweep = tradeoff_sweep(p, o.n_min, o.n_max, o.count);
    const TradeoffSolution opt = optimal_tradeoff(run.experiment, ProbeKind::OptimalSuperposition);
    const TradeoffSolution coh = optimal_tradeoff(run.experiment, ProbeKind::Coherent);
    const Provenance prov = make_provenance(
        run, "tradeoff --n-min " + format_number(o.n_min) + " --n-max " + format_number(o.n_max) + " --count "
                 + std::to_string(o.count));

    const OutputFormat format = format_or(o, OutputFormat::Csv);
    if (format == OutputFormat::Json)
    {
        json rows = json::array();
        for (const TradeoffPoint& t : sweep)
            rows.push_back({{"n", round_significant(t.n)},
                            {"optimal", round_significant(t.optimal)},
                            {"coherent", round_significant(t.coherent)},
                            {"backaction", round_significant(t.backaction)}});
        auto solution = [](const TradeoffSolution& s) {
            return json{{"n_opt", round_significant(s.n_opt)}, {"delta_c", round_significant(s.delta_c_min)}};
        };
        const json document{{"sweep", rows},
                            {"optimal", solution(opt)},
                            {"coherent", solution(coh)},
                            {"tau", round_significant(p.tau)},
                            {"kappa", round_significant(p.kappa)},
                            {"M", p.mode_index},
                            {"provenance", to_json(prov)}};
        write_output(o.out, document.dump(2) + "\n");
        return kOk;
    }
    std::ostringstream out;
    out << provenance_comment(prov);
    out << "# optimal n_opt=" << format_number(opt.n_opt) << " delta_c=" << format_number(opt.delta_c_min) << "\n";
    out << "# coherent n_opt=" << format_number(coh.n_opt) << " delta_c=" << format_number(coh.delta_c_min) << "\n";
    out << "n,optimal,coherent,backaction\n";
    for (const TradeoffPoint& t : sweep)
        out << format_number(t.n) << ',' << format_number(t.optimal) << ',' << format_number(t.coherent) << ','
            << format_number(t.backaction) << "\n";
    write_output(o.out, out.str());
    return kOk;
}

int run_frequency_shift(const Options& o)
{
    const RunConfig run = load(o);
    check_regime(run, o);
    const double n = photons_required(run);
    LengthConvention convention;
    if (o.convention == "light-signal")
        convention = LengthConvention::LightSignal;
    else if (o.convention == "rigid-rods")
        convention = LengthConvention::RigidRods;
    else
        throw UsageError("--convention expects light-signal or rigid-rods");
    ShiftAverage average;
    if (o.average == "center-line")
        average = ShiftAverage::CenterLine;
    else if (o.average == "cross-section")
        average = ShiftAverage::CrossSection;
    else
        throw UsageError("--average expects center-line or cross-section");

    const FrequencyShift shift = frequency_shift(run.experiment, n, run.quadrature, convention, average);
    const Provenance prov =
        make_provenance(run, "frequency-shift --convention " + o.convention + " --average " + o.average);
    if (format_or(o, OutputFormat::Json) == OutputFormat::Text)
    {
        std::ostringstream out;
        out << provenance_comment(prov);
        out << "photon_number " << format_number(n) << "\n"
            << "relative_shift " << format_number(shift.relative_shift) << "\n"
            << "mean_epsilon " << format_number(shift.mean_epsilon) << "\n"
            << "perturbation_scale " << format_number(shift.perturbation_scale) << "\n"
            << "error " << format_number(shift.error) << "\n";
        write_output(o.out, out.str());
    }
    else
    {
        const json document{{"photon_number", round_significant(n)},
                            {"convention", o.convention},
                            {"average", o.average},
                            {"relative_shift", round_significant(shift.relative_shift)},
                            {"mean_epsilon", round_significant(shift.mean_epsilon)},
                            {"perturbation_scale", round_significant(shift.perturbation_scale)},
                            {"error", round_significant(shift.error)},
                            {"converged", shift.converged},
                            {"provenance", to_json(prov)}};
        write_output(o.out, document.dump(2) + "\n");
    }
    if (!shift.converged)
        return kQuadratureFailure;
    return kOk;
}

int run_validate(const Options& o)
{
    const RunConfig run = load(o);
    const double n = photons_required(run);
    const ValidityReport r = validate_regime(run.experiment, n);
    const Provenance prov = make_provenance(run, "validate");
    if (format_or(o, OutputFormat::Text) == OutputFormat::Json)
    {
        const json document{{"photon_number", round_significant(n)},
                            {"weak_field", {{"ok", r.weak_field_ok}, {"n_kappa_M", round_significant(r.weak_field_margin)}}},
                            {"euler_heisenberg",
                             {{"ok", r.euler_heisenberg_ok}, {"minimum_length", round_significant(r.minimum_cavity_length)}}},
                            {"wavelength_vs_planck", {{"ok", r.wavelength_vs_planck_ok}}},
                            {"all_ok", r.all_ok()},
                            {"messages", r.messages},
                            {"provenance", to_json(prov)}};
        write_output(o.out, document.dump(2) + "\n");
    }
    else
    {
        std::ostringstream out;
        out << provenance_comment(prov);
        out << "photon number        " << format_number(n) << "\n";
        out << "weak field           " << (r.weak_field_ok ? "pass" : "FAIL") << "  n kappa M = "
            << format_number(r.weak_field_margin) << "\n";
        out << "Euler-Heisenberg     " << (r.euler_heisenberg_ok ? "pass" : "FAIL") << "  L_min = "
            << format_number(r.minimum_cavity_length) << " m\n";
        out << "wavelength vs l_Pl   " << (r.wavelength_vs_planck_ok ? "pass" : "FAIL") << "\n";
        for (const std::string& m : r.messages)
            out << "  " << m << "\n";
        write_output(o.out, out.str());
    }
    if (!r.all_ok())
    {
        if (o.strict)
            return kRegimeViolation;
        std::cerr << "warning: physical regime checks failed\n";
    }
    return kOk;
}

int run_kernel(const Options& o)
{
    const RunConfig run = load(o);
    if (o.point.empty())
        throw UsageError("kernel needs --point xi,eta,zeta");
    const Eigen::Vector3d x = parse_point(o.point);
    const QuadratureSpec& spec = run.quadrature;

    json document;
    const double I = line_kernel_unchecked(x[0], x[1], x[2]);
    document["kernel"] = std::isfinite(I) ? json(round_significant(I)) : json(nullptr);
    const GIntegrals g = g_integrals(x, spec);
    const PointValue ht = h_tilde(x, spec);
    const PointValue eps = epsilon_field(x, spec);
    const MetricPerturbation h = metric_011(g);
    document["g"] = {{"g1", round_significant(g.g1)},
                     {"g2", round_significant(g.g2)},
                     {"g3", round_significant(g.g3)},
                     {"g3_tilde", round_significant(g.g3_tilde)},
                     {"g4", round_significant(g.g4)},
                     {"error", round_significant(g.error)}};
    document["h_tilde"] = round_significant(ht.value);
    document["epsilon"] = round_significant(eps.value);
    document["metric_011"] = {{"h00", round_significant(h.h00)},
                              {"h11", round_significant(h.h11)},
                              {"h22", round_significant(h.h22)},
                              {"h33", round_significant(h.h33)},
                              {"h23", round_significant(h.h23)}};
    const bool converged = g.converged && ht.converged && eps.converged;
    document["converged"] = converged;
    std::string command = "kernel --point " + format_number(x[0]) + "," + format_number(x[1]) + ","
                          + format_number(x[2]);
    if (o.oracle_samples > 0)
    {
        command += " --oracle " + std::to_string(o.oracle_samples);
        auto sources = [](double eta, double zeta) {
            Eigen::Matrix<double, 6, 1> v;
            v.head<5>() = stress_011_sources(eta, zeta);
            v[5] = stress_01M_energy(eta);
            return v;
        };
        const auto mc = mc_oracle_sources<6>(sources, x, o.oracle_samples, run.seed);
        json oracle;
        const char* names[6] = {"g1", "g2", "g3", "g3_tilde", "g4", "h_tilde"};
        for (int i = 0; i < 6; ++i)
            oracle[names[i]] = {{"mean", round_significant(mc.mean[i])},
                                {"standard_error", round_significant(mc.standard_error[i])}};
        document["oracle"] = oracle;
    }
    document["provenance"] = to_json(make_provenance(run, command));
    write_output(o.out, document.dump(2) + "\n");
    return converged ? kOk : kQuadratureFailure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Metric back-action bounds on measuring the speed of light in a cavity"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--out", o.out, "output file (stdout if omitted)");
        sub->add_option("--format", o.format, "csv, json or text");
        sub->add_option("--seed", o.seed, "random seed for oracle sampling")
            ->each([&o](const std::string&) { o.seed_given = true; });
        sub->add_flag("--strict", o.strict, "fail on physical-regime violations");
        sub->add_option("--tolerance", o.tolerance, "quadrature tolerance");
        sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
        sub->add_option("--n", o.photons, "photon number");
    };

    CLI::App* bounds = app.add_subcommand("bounds", "scaling table of minimal uncertainties");
    common(bounds);
    CLI::App* field = app.add_subcommand("field-map", "metric perturbation and light-speed maps");
    common(field);
    field->add_option("--grid", o.grid, "N, NxN (with --slice) or NxNxN");
    field->add_option("--slice", o.slice, "axis=value, e.g. xi=1.5");
    field->add_option("--range", o.range, "lo,hi for the free axes");
    field->add_option("--mode", o.mode, "011 or 01M");
    field->add_option("--source", o.source_01M, "01M source: sin2 or g");
    field->add_option("--lightspeed", o.lightspeed, "coordinate or measured");
    CLI::App* tradeoff = app.add_subcommand("tradeoff", "quantum bound and back-action versus n");
    common(tradeoff);
    tradeoff->add_option("--n-min", o.n_min, "smallest photon number");
    tradeoff->add_option("--n-max", o.n_max, "largest photon number");
    tradeoff->add_option("--count", o.count, "number of sweep points");
    CLI::App* shift = app.add_subcommand("frequency-shift", "relative shift of the cavity resonance");
    common(shift);
    shift->add_option("--convention", o.convention, "light-signal or rigid-rods");
    shift->add_option("--average", o.average, "center-line or cross-section");
    CLI::App* check = app.add_subcommand("validate", "physical regime checks");
    common(check);
    CLI::App* kernel = app.add_subcommand("kernel", "single-point kernel and convolution values");
    common(kernel);
    kernel->add_option("--point", o.point, "xi,eta,zeta");
    kernel->add_option("--oracle", o.oracle_samples, "Monte-Carlo samples for comparison");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return kConfigError;
    }

    try
    {
        if (bounds->parsed())
            return run_bounds(o);
        if (field->parsed())
            return run_field_map(o);
        if (tradeoff->parsed())
            return run_tradeoff(o);
        if (shift->parsed())
            return run_frequency_shift(o);
        if (check->parsed())
            return run_validate(o);
        return run_kernel(o);
    }
    catch (const RegimeViolation& e)
    {
        std::cerr << "error: physical regime violated\n" << e.what();
        return kRegimeViolation;
    }
    catch (const QuadratureFailure& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kQuadratureFailure;
    }
    catch (const ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    catch (const UsageError& e)
    {
        std::cerr << "usage error: " << e.what() << "\n";
        return kConfigError;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kConfigError;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
