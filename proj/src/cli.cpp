#include "anisolib/cli.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "anisolib/sampling.hpp"
#include "anisolib/serialize.hpp"
#include "anisolib/surrogate.hpp"

namespace anisolib {

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<double> eps;
    std::optional<std::uint32_t> m;
    std::optional<std::uint32_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_library;
    std::optional<std::string> out_report;
    std::optional<std::string> out_table;
};

RunConfig load_config(const CommonFlags& flags) {
    RunConfig config = run_config_from_json(load_json_file(flags.config_path, kConfigSchema));
    if (flags.eps) config.eps_list = {*flags.eps};
    if (flags.m) config.m_list = {*flags.m};
    if (flags.samples) config.samples_per_cell = *flags.samples;
    if (flags.seed) config.seed = *flags.seed;
    if (flags.out_library) config.out_library = *flags.out_library;
    if (flags.out_report) config.out_report = *flags.out_report;
    if (flags.out_table) config.out_table = *flags.out_table;
    if (config.eps_list.empty() || config.m_list.empty())
        throw std::invalid_argument("config must provide at least one eps and one m target");
    return config;
}

BuildOptions options_of(const RunConfig& config) {
    BuildOptions options;
    options.seed = config.seed;
    options.samples_per_cell = config.samples_per_cell;
    options.degree_cap = config.degree_cap;
    options.tail_mode = config.tail_mode;
    return options;
}

int cmd_build(const CommonFlags& flags, std::ostream& out) {
    const RunConfig config = load_config(flags);
    const TaylorModel model = make_model(config.model);
    const ExponentProfile profile = ExponentProfile::create(config.p, config.q);
    const SurrogateLibrary lib =
        build_library(model, profile, config.eps_list.front(), config.m_list.front(), options_of(config));

    write_text_file(config.out_library, library_to_json(lib).dump(2) + "\n");
    write_text_file(config.out_report, build_report_to_json(lib).dump(2) + "\n");

    if (lib.gate().single_cell) {
        out << "single-cell: whole-cube bound " << lib.gate().global_kappa_bound
            << " already meets eps=" << lib.provenance().eps << "\n";
    } else {
        const PartitionGrid& grid = lib.grid();
        out << "partitioned: J=" << grid.J << " sigma=" << grid.sigma << " eta=" << grid.eta
            << " N=" << grid.cell_count << " bound_on_N=" << grid.bound_on_n << "\n";
    }
    out << "library: " << config.out_library << "\nreport: " << config.out_report << "\n";
    return 0;
}

int cmd_certify(const std::string& library_path, const CommonFlags& flags, std::ostream& out) {
    const Json doc = load_json_file(library_path, kLibrarySchema);
    const SurrogateLibrary lib = library_from_json(doc);
    const TaylorModel model = make_model(lib.provenance().model);
    const std::uint32_t samples = flags.samples.value_or(lib.provenance().samples_per_cell);
    const std::uint64_t seed = flags.seed.value_or(lib.provenance().seed);

    const CertificationReport report = certify(lib, model, samples, seed);
    const std::string report_path = flags.out_report.value_or("certification.json");
    write_text_file(report_path, certification_to_json(report).dump(2) + "\n");

    out << (report.pass ? "PASS" : "FAIL") << ": max measured " << report.max_measured
        << (report.pass ? " <= " : " > ") << "eps " << report.epsilon << " over "
        << report.cells.size() << " cells\n";
    out << "report: " << report_path << "\n";
    return report.pass ? 0 : 1;
}

int cmd_sweep(const CommonFlags& flags, std::ostream& out) {
    const RunConfig config = load_config(flags);
    const TaylorModel model = make_model(config.model);
    const ExponentProfile profile = ExponentProfile::create(config.p, config.q);
    const ClassNorm declared = class_norm(model, model.rho(), profile.p());
    if (!declared.finite())
        throw std::invalid_argument("model not a member of the declared (rho, p) class: norm divergent");

    struct Row {
        std::uint32_t m;
        double eps, cell_count, bound_on_n, measured_max;
        double global_rho, global_kappa;
    };
    std::vector<Row> rows;
    for (const std::uint32_t m : config.m_list) {
        for (const double eps : config.eps_list) {
            const SurrogateLibrary lib = build_library(model, profile, eps, m, options_of(config));
            const CertificationReport report =
                certify(lib, model, config.samples_per_cell, config.seed);
            Row row;
            row.m = m;
            row.eps = eps;
            row.cell_count = lib.gate().single_cell ? 1.0 : lib.grid().cell_count;
            row.bound_on_n = lib.gate().single_cell ? 1.0 : lib.grid().bound_on_n;
            row.measured_max = report.max_measured;
            row.global_rho = global_bound(declared.value(), model.rho(), profile, m).bound_value;
            row.global_kappa = lib.gate().global_kappa_bound;
            rows.push_back(row);
        }
    }

    std::ostringstream csv;
    csv << "m,eps,cell_count,cell_count_bound,measured_max_error,global_rho_bound,global_kappa_bound\n";
    for (const Row& row : rows)
        csv << row.m << "," << row.eps << "," << row.cell_count << "," << row.bound_on_n << ","
            << row.measured_max << "," << row.global_rho << "," << row.global_kappa << "\n";
    write_text_file(config.out_table, csv.str());

    Json j;
    j["schema"] = kSweepSchema;
    j["config"] = run_config_to_json(config);
    Json jrows = Json::array();
    for (const Row& row : rows) {
        Json r;
        r["m"] = row.m;
        r["eps"] = row.eps;
        r["cell_count"] = row.cell_count;
        r["cell_count_bound"] = row.bound_on_n;
        r["measured_max_error"] = row.measured_max;
        r["global_rho_bound"] = row.global_rho;
        r["global_kappa_bound"] = row.global_kappa;
        jrows.push_back(r);
    }
    j["rows"] = jrows;

    // rate fits per fixed eps (vs m), growth monotonicity per fixed m (vs eps)
    Json fits = Json::array();
    for (const double eps : config.eps_list) {
        std::vector<double> log_m1, log_bound, log_measured;
        for (const Row& row : rows) {
            if (row.eps != eps) continue;
            log_m1.push_back(std::log(static_cast<double>(row.m) + 1.0));
            log_bound.push_back(std::log(row.global_rho));
            if (row.measured_max > 0.0) log_measured.push_back(std::log(row.measured_max));
        }
        if (log_m1.size() >= 2) {
            Json f;
            f["eps"] = eps;
            f["bound_slope"] = linear_fit_slope(log_m1, log_bound);
            if (log_measured.size() == log_m1.size())
                f["measured_slope"] = linear_fit_slope(log_m1, log_measured);
            f["rate"] = profile.rate();
            fits.push_back(f);
        }
    }
    j["rate_fits"] = fits;
    write_text_file(config.out_report, j.dump(2) + "\n");

    out << "sweep: " << rows.size() << " rows -> " << config.out_table << ", " << config.out_report
        << "\n";
    return 0;
}

int cmd_compare(const CommonFlags& flags, std::ostream& out) {
    const RunConfig config = load_config(flags);
    const TaylorModel model = make_model(config.model);
    const ExponentProfile profile = ExponentProfile::create(config.p, config.q);
    const ComparisonRecord record =
        compare_bounds(model, model.rho(), profile, config.m_list.front());
    write_text_file(config.out_report, comparison_to_json(record).dump(2) + "\n");
    out << "global bounds: rho-based " << record.global_rho_value << ", kappa-based "
        << record.global_kappa_value << " (theta=" << record.theta << ")\n";
    out << "report: " << config.out_report << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"piecewise Taylor surrogate libraries for anisotropic analytic functions"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string library_path;

    const auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", flags.config_path, "run configuration (JSON)");
        if (needs_config) opt->required()->check(CLI::ExistingFile);
        cmd->add_option("--eps", [&flags](const std::vector<std::string>& v) {
            flags.eps = std::stod(v.front());
            return true;
        }, "override: target accuracy");
        cmd->add_option("--m", [&flags](const std::vector<std::string>& v) {
            flags.m = static_cast<std::uint32_t>(std::stoul(v.front()));
            return true;
        }, "override: local space dimension");
        cmd->add_option("--samples", [&flags](const std::vector<std::string>& v) {
            flags.samples = static_cast<std::uint32_t>(std::stoul(v.front()));
            return true;
        }, "override: Monte Carlo samples per cell");
        cmd->add_option("--seed", [&flags](const std::vector<std::string>& v) {
            flags.seed = std::stoull(v.front());
            return true;
        }, "override: sampling seed");
        cmd->add_option("--out-library", [&flags](const std::vector<std::string>& v) {
            flags.out_library = v.front();
            return true;
        }, "override: library output path");
        cmd->add_option("--out-report", [&flags](const std::vector<std::string>& v) {
            flags.out_report = v.front();
            return true;
        }, "override: report output path");
        cmd->add_option("--out-table", [&flags](const std::vector<std::string>& v) {
            flags.out_table = v.front();
            return true;
        }, "override: sweep table output path");
    };

    CLI::App* build = app.add_subcommand("build", "build a surrogate library");
    add_common(build, true);
    CLI::App* certify_cmd = app.add_subcommand("certify", "certify a built library");
    certify_cmd->add_option("--library", library_path, "library document (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    add_common(certify_cmd, false);
    CLI::App* sweep = app.add_subcommand("sweep", "build/certify over eps and m ranges");
    add_common(sweep, true);
    CLI::App* compare = app.add_subcommand("compare", "compare rho- and kappa-based global bounds");
    add_common(compare, true);

    std::vector<const char*> argv;
    argv.push_back("anisolib");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (build->parsed()) return cmd_build(flags, out);
        if (certify_cmd->parsed()) return cmd_certify(library_path, flags, out);
        if (sweep->parsed()) return cmd_sweep(flags, out);
        if (compare->parsed()) return cmd_compare(flags, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

} // namespace anisolib
