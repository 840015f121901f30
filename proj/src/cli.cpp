#include "qconfine/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qconfine/config.hpp"
#include "qconfine/dispersion.hpp"
#include "qconfine/error.hpp"
#include "qconfine/momentum.hpp"
#include "qconfine/output.hpp"
#include "qconfine/parallel.hpp"
#include "qconfine/quadrature.hpp"
#include "qconfine/realspace.hpp"
#include "qconfine/spectra.hpp"

namespace qconfine::cli {

namespace {

constexpr double pi = std::numbers::pi;
constexpr long max_samples = 10'000'000;

// Raised for bad flag values discovered after CLI11 parsing.
struct Usage {
    std::string flag;
    std::string message;
    std::string error = "UsageError";
};

struct Range {
    int from = 1;
    int to = 1;
};

struct CommonOptions {
    std::string config_path;
    std::string units = "natural";
    std::optional<double> mass;
    std::vector<double> lengths;
    std::string format = "csv";
    std::string out_path;
    std::optional<double> tol;
};

struct Options {
    CommonOptions common;
    std::string j_text;
    std::string model = "relativistic";
    bool numeric = false;
    double k_min = -20.0;
    double k_max = 20.0;
    std::optional<double> x_min;
    std::optional<double> x_max;
    long samples = 201;
    std::string dispersion;
    std::string transform;
    std::vector<std::string> params;
};

std::string json_error(std::string_view name, std::string_view message,
                       std::string_view flag = {})
{
    nlohmann::ordered_json e;
    e["error"] = std::string(name);
    if (!flag.empty()) e["flag"] = std::string(flag);
    e["message"] = std::string(message);
    return e.dump();
}

int parse_int(const std::string& text, const char* flag)
{
    int v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || end != text.data() + text.size()) {
        throw Usage{flag, "expected an integer, got '" + text + "'"};
    }
    return v;
}

Range parse_range(const std::string& text, const char* flag)
{
    Range r;
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        r.from = r.to = parse_int(text, flag);
    } else {
        r.from = parse_int(text.substr(0, dots), flag);
        r.to = parse_int(text.substr(dots + 2), flag);
    }
    if (r.from < 1 || r.to < r.from || r.to > max_quantum_index) {
        throw Usage{flag, "level range must satisfy 1 <= A <= B <= 10000, got '" + text + "'"};
    }
    return r;
}

QuantumIndex parse_single_j(const std::string& text)
{
    const Range r = parse_range(text, "--j");
    if (r.from != r.to) throw Usage{"--j", "this command takes a single level"};
    return QuantumIndex(r.from);
}

void require_finite_range(double lo, double hi, const char* flag)
{
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw Usage{flag, "range must be finite with min < max"};
    }
}

void require_samples(long samples)
{
    if (samples < 2 || samples > max_samples) {
        throw Usage{"--samples", "samples must lie in 2..10000000"};
    }
}

WellConfig load_config(const CommonOptions& c)
{
    if (!c.config_path.empty()) {
        std::ifstream in(c.config_path);
        if (!in) throw Usage{"--config", "cannot read '" + c.config_path + "'"};
        std::stringstream text;
        text << in.rdbuf();
        try {
            return parse_config(text.str());
        } catch (const Error& e) {
            throw Usage{"--config", e.what(), std::string(e.name())};
        }
    }
    UnitKind kind;
    try {
        kind = parse_unit_kind(c.units);
    } catch (const Error& e) {
        throw Usage{"--units", e.what(), std::string(e.name())};
    }
    if (!c.mass) throw Usage{"--mass", "--mass is required without --config"};
    if (c.lengths.empty()) throw Usage{"--length", "--length is required without --config"};
    try {
        return make_config(UnitSystem::of(kind), *c.mass, c.lengths);
    } catch (const Error& e) {
        const char* flag = e.code() == ErrorCode::NegativeMass ? "--mass" : "--length";
        throw Usage{flag, e.what(), std::string(e.name())};
    }
}

OutputDocument base_document(const char* command, const WellConfig& cfg, double tol)
{
    OutputDocument doc;
    doc.meta.emplace_back("tool", tool_name);
    doc.meta.emplace_back("version", tool_version);
    doc.meta.emplace_back("command", command);
    const nlohmann::ordered_json echo = to_json(cfg);
    for (const auto& [key, value] : echo.items()) doc.meta.emplace_back(key, value);
    doc.meta.emplace_back("tol", tol);
    return doc;
}

std::vector<double> linspace(double lo, double hi, long n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] =
            i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

OutputDocument cmd_spectrum(const Options& o, const WellConfig& cfg)
{
    const Range r = parse_range(o.j_text.empty() ? "1..10" : o.j_text, "--j");
    const auto kind = parse_builtin_name(o.model);
    if (!kind) throw Usage{"--model", "expected nonrel, massless or relativistic"};
    const double tol = o.common.tol.value_or(default_moment_tol);

    const auto rows =
        spectrum_table(cfg, DispersionModel::builtin(*kind), r.from, r.to, tol, o.numeric);
    OutputDocument doc = base_document("spectrum", cfg, tol);
    doc.meta.emplace_back("model", o.model);
    doc.columns = {"j", "energy_closed", "energy_numeric", "numeric_error", "correction"};
    for (const SpectrumRow& row : rows) {
        doc.rows.push_back({static_cast<double>(row.j), row.energy_closed, row.energy_numeric,
                            row.numeric_error, row.correction});
    }
    return doc;
}

OutputDocument cmd_density(const Options& o, const WellConfig& cfg)
{
    require_1d(cfg);
    const QuantumIndex j = parse_single_j(o.j_text.empty() ? "1" : o.j_text);
    require_finite_range(o.k_min, o.k_max, "--kmin/--kmax");
    require_samples(o.samples);

    OutputDocument doc = base_document("density", cfg, o.common.tol.value_or(0.0));
    doc.meta.emplace_back("j", j.value());
    doc.columns = {"k", "density"};
    for (double k : linspace(o.k_min, o.k_max, o.samples)) {
        doc.rows.push_back({k, density(cfg, j, k).value});
    }
    return doc;
}

struct VerifyOutcome {
    OutputDocument doc;
    bool passed;
};

VerifyOutcome cmd_verify(const Options& o, const WellConfig& cfg)
{
    require_1d(cfg);
    const Range r = parse_range(o.j_text.empty() ? "1..10" : o.j_text, "--j");
    const double tol = o.common.tol.value_or(default_identity_tol);
    const double len = cfg.length();

    struct Row {
        double norm, norm_error, k2, k2_expected, k2_rel;
    };
    std::vector<Row> rows(static_cast<std::size_t>(r.to - r.from + 1));
    parallel_for(rows.size(), [&](std::size_t i) {
        const QuantumIndex j(r.from + static_cast<int>(i));
        const QuadratureResult norm = integrate(density_integrand(cfg, j, tol), tol);
        const QuadratureResult k2 =
            moment(cfg, j, [](double k) { return k * k; }, tol, 1e-10);
        const double jd = j.value();
        const double expected = jd * jd * pi * pi / (len * len);
        rows[i] = {norm.value, norm.total_error(), k2.value, expected,
                   std::abs(k2.value - expected) / expected};
    });

    double max_norm = 0.0;
    double max_k2 = 0.0;
    OutputDocument doc = base_document("verify", cfg, tol);
    doc.columns = {"j", "norm", "norm_error", "k2_moment", "k2_expected", "k2_rel_error"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& row = rows[i];
        max_norm = std::max(max_norm, std::abs(row.norm - 1.0));
        max_k2 = std::max(max_k2, row.k2_rel);
        doc.rows.push_back({static_cast<double>(r.from + static_cast<int>(i)), row.norm,
                            row.norm_error, row.k2, row.k2_expected, row.k2_rel});
    }
    const bool passed = max_norm <= 1e-8 && max_k2 <= 1e-6;
    doc.meta.emplace_back("max_norm_deviation", max_norm);
    doc.meta.emplace_back("max_k2_rel_error", max_k2);
    doc.meta.emplace_back("passed", passed);
    return {std::move(doc), passed};
}

DispersionModel dispersion_from(const Options& o)
{
    if (o.dispersion.empty()) throw Usage{"--dispersion", "a builtin name or expression is required"};
    std::optional<EnergyTransform> transform;
    if (!o.transform.empty()) {
        try {
            transform = parse_transform(o.transform);
        } catch (const Error& e) {
            throw Usage{"--transform", e.what(), std::string(e.name())};
        }
    }
    if (const auto kind = parse_builtin_name(o.dispersion)) {
        const DispersionModel base = DispersionModel::builtin(*kind);
        if (!transform || *transform == base.transform()) return base;
        return DispersionModel::custom(expr::parse(builtin_text(*kind)), *transform);
    }
    std::optional<expr::Expr> e;
    try {
        e = expr::parse(o.dispersion);
    } catch (const Error& err) {
        throw Usage{"--dispersion", err.what(), std::string(err.name())};
    }
    expr::Bindings params;
    for (const std::string& p : o.params) {
        const auto eq = p.find('=');
        double v = 0.0;
        if (eq == std::string::npos || eq == 0) throw Usage{"--param", "expected name=value, got '" + p + "'"};
        const std::string value = p.substr(eq + 1);
        const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || end != value.data() + value.size()) {
            throw Usage{"--param", "bad number in '" + p + "'"};
        }
        params[p.substr(0, eq)] = v;
    }
    return DispersionModel::custom(std::move(*e), transform.value_or(EnergyTransform::Identity),
                                   params);
}

OutputDocument cmd_moment(const Options& o, const WellConfig& cfg)
{
    require_1d(cfg);
    const Range r = parse_range(o.j_text.empty() ? "1..10" : o.j_text, "--j");
    const double tol = o.common.tol.value_or(default_moment_tol);
    const DispersionModel model = dispersion_from(o);
    const auto f = bind(cfg, model);

    std::vector<std::vector<std::optional<double>>> rows(static_cast<std::size_t>(r.to - r.from + 1));
    parallel_for(rows.size(), [&](std::size_t i) {
        const QuantumIndex j(r.from + static_cast<int>(i));
        const QuadratureResult m = moment(cfg, j, f, tol, 1e-10);
        const auto e = apply_transform(model.transform(), m.value, m.total_error(), cfg.hbar());
        rows[i] = {static_cast<double>(j.value()), m.value, m.total_error(), e.value, e.error};
    });

    OutputDocument doc = base_document("moment", cfg, tol);
    doc.meta.emplace_back("dispersion", model.expression() ? expr::to_string(*model.expression())
                                                           : std::string(builtin_name(model.kind())));
    doc.meta.emplace_back("transform", std::string(transform_name(model.transform())));
    doc.columns = {"j", "moment", "moment_error", "energy", "energy_error"};
    doc.rows = std::move(rows);
    return doc;
}

OutputDocument cmd_reconstruct(const Options& o, const WellConfig& cfg)
{
    require_1d(cfg);
    const QuantumIndex j = parse_single_j(o.j_text.empty() ? "1" : o.j_text);
    const double len = cfg.length();
    const double lo = o.x_min.value_or(-len);
    const double hi = o.x_max.value_or(len);
    require_finite_range(lo, hi, "--xmin/--xmax");
    require_samples(o.samples);
    const double tol = o.common.tol.value_or(1e-9);

    const auto xs = linspace(lo, hi, o.samples);
    std::vector<std::vector<std::optional<double>>> rows(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
        const double closed = psi_closed(cfg, j, xs[i]).value;
        const double rebuilt = psi_reconstruct(cfg, j, xs[i], tol);
        rows[i] = {xs[i], closed, rebuilt, rebuilt - closed};
    });

    OutputDocument doc = base_document("reconstruct", cfg, tol);
    doc.meta.emplace_back("j", j.value());
    doc.columns = {"x", "psi_closed", "psi_reconstructed", "difference"};
    doc.rows = std::move(rows);
    return doc;
}

void add_common(CLI::App* sub, CommonOptions& c)
{
    auto* config = sub->add_option("--config", c.config_path, "JSON config file");
    sub->add_option("--units", c.units, "natural | si | ev_nm")->excludes(config);
    sub->add_option("--mass", c.mass, "rest mass (0 = massless)")->excludes(config);
    sub->add_option("--length", c.lengths, "well length per axis")->excludes(config);
    sub->add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out_path, "write output to this file instead of stdout");
    sub->add_option("--tol", c.tol, "absolute tolerance")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Energy spectra of particles confined in a box, from momentum-space "
                 "expectation values of dispersion relations",
                 tool_name};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_name) + " " + tool_version);
    Options o;

    auto* spectrum = app.add_subcommand("spectrum", "closed-form (and optional numeric) levels");
    add_common(spectrum, o.common);
    spectrum->add_option("--j", o.j_text, "levels A..B");
    spectrum->add_option("--model", o.model, "nonrel | massless | relativistic")
        ->check(CLI::IsMember({"nonrel", "massless", "relativistic"}));
    spectrum->add_flag("--numeric", o.numeric, "add the quadrature columns");

    auto* dens = app.add_subcommand("density", "momentum density |c_j(k)|^2 on a grid");
    add_common(dens, o.common);
    dens->add_option("--j", o.j_text, "level");
    dens->add_option("--kmin", o.k_min);
    dens->add_option("--kmax", o.k_max);
    dens->add_option("--samples", o.samples);

    auto* verify = app.add_subcommand("verify", "check normalization and <k^2> identities");
    add_common(verify, o.common);
    verify->add_option("--j", o.j_text, "levels A..B");

    auto* mom = app.add_subcommand("moment", "expectation value of a dispersion o(k)");
    add_common(mom, o.common);
    mom->add_option("--j", o.j_text, "levels A..B");
    mom->add_option("--dispersion", o.dispersion, "nonrel | massless | relativistic | <expr>");
    mom->add_option("--transform", o.transform, "identity | sqrt | hbar_sqrt");
    mom->add_option("--param", o.params, "extra expression parameter name=value");

    auto* rec = app.add_subcommand("reconstruct", "rebuild psi_j(x) from plane waves");
    add_common(rec, o.common);
    rec->add_option("--j", o.j_text, "level");
    rec->add_option("--xmin", o.x_min);
    rec->add_option("--xmax", o.x_max);
    rec->add_option("--samples", o.samples);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Success;
    } catch (const CLI::CallForVersion&) {
        out << tool_name << ' ' << tool_version << '\n';
        return Success;
    } catch (const CLI::ParseError& e) {
        err << json_error("UsageError", e.what()) << '\n';
        return UsageError;
    }

    const OutputFormat format = o.common.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    try {
        const WellConfig cfg = load_config(o.common);
        OutputDocument doc;
        bool passed = true;
        if (spectrum->parsed()) {
            doc = cmd_spectrum(o, cfg);
        } else if (dens->parsed()) {
            doc = cmd_density(o, cfg);
        } else if (verify->parsed()) {
            auto outcome = cmd_verify(o, cfg);
            doc = std::move(outcome.doc);
            passed = outcome.passed;
        } else if (mom->parsed()) {
            doc = cmd_moment(o, cfg);
        } else {
            doc = cmd_reconstruct(o, cfg);
        }

        if (o.common.out_path.empty()) {
            emit(doc, format, out);
        } else {
            std::ofstream file(o.common.out_path, std::ios::binary);
            if (!file) {
                throw Error(ErrorCode::SinkWriteFailure, "cannot open '" + o.common.out_path + "'");
            }
            emit(doc, format, file);
        }
        if (!passed) {
            err << json_error(name(ErrorCode::VerificationFailed),
                              "identities not reproduced within 1e-8 / 1e-6")
                << '\n';
            return ComputationError;
        }
        return Success;
    } catch (const Usage& u) {
        err << json_error(u.error, u.message, u.flag) << '\n';
        return UsageError;
    } catch (const Error& e) {
        err << json_error(e.name(), e.what()) << '\n';
        return ComputationError;
    } catch (const std::exception& e) {
        err << json_error("InternalError", e.what()) << '\n';
        return ComputationError;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace qconfine::cli
