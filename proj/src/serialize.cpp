#include "anisolib/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace anisolib {

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::separable_rational: return "separable_rational";
        case ModelKind::scaled_separable: return "scaled_separable";
        case ModelKind::finite_polynomial: return "finite_polynomial";
    }
    throw std::invalid_argument("unknown model kind");
}

std::string to_string(WeightFamily family) {
    switch (family) {
        case WeightFamily::explicit_list: return "list";
        case WeightFamily::power: return "power";
        case WeightFamily::geometric: return "geometric";
    }
    throw std::invalid_argument("unknown weight family");
}

std::string to_string(TailMode mode) {
    switch (mode) {
        case TailMode::family_default: return "default";
        case TailMode::truncated: return "truncated";
        case TailMode::analytic: return "analytic";
    }
    throw std::invalid_argument("unknown tail mode");
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "separable_rational") return ModelKind::separable_rational;
    if (s == "scaled_separable") return ModelKind::scaled_separable;
    if (s == "finite_polynomial") return ModelKind::finite_polynomial;
    throw std::invalid_argument("unknown model kind: " + s);
}

WeightFamily weight_family_from_string(const std::string& s) {
    if (s == "list") return WeightFamily::explicit_list;
    if (s == "power") return WeightFamily::power;
    if (s == "geometric") return WeightFamily::geometric;
    throw std::invalid_argument("unknown weight family: " + s);
}

TailMode tail_mode_from_string(const std::string& s) {
    if (s == "default") return TailMode::family_default;
    if (s == "truncated") return TailMode::truncated;
    if (s == "analytic") return TailMode::analytic;
    throw std::invalid_argument("unknown tail mode: " + s);
}

Json p_to_json(double p) {
    if (std::isinf(p)) return Json("inf");
    return Json(p);
}

double p_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("p must be a number or \"inf\"");
    }
    return j.get<double>();
}

Json model_spec_to_json(const ModelSpec& spec) {
    Json j;
    j["kind"] = to_string(spec.kind);
    Json rho;
    rho["family"] = to_string(spec.family);
    switch (spec.family) {
        case WeightFamily::explicit_list: rho["values"] = spec.rho_list; break;
        case WeightFamily::power:
            rho["M"] = spec.M;
            rho["s"] = spec.s;
            break;
        case WeightFamily::geometric:
            rho["M"] = spec.M;
            rho["g"] = spec.g;
            break;
    }
    j["rho"] = rho;
    j["dims"] = spec.dims;
    j["scaling"] = spec.scaling;
    j["direction"] = spec.direction;
    if (spec.kind == ModelKind::finite_polynomial) {
        Json coeffs = Json::array();
        for (const auto& [exps, value] : spec.poly_coeffs) {
            Json entry;
            entry["index"] = exps;
            entry["value"] = value;
            coeffs.push_back(entry);
        }
        j["coefficients"] = coeffs;
    }
    return j;
}

ModelSpec model_spec_from_json(const Json& j) {
    ModelSpec spec;
    spec.kind = model_kind_from_string(j.at("kind").get<std::string>());
    const Json& rho = j.at("rho");
    spec.family = weight_family_from_string(rho.at("family").get<std::string>());
    switch (spec.family) {
        case WeightFamily::explicit_list:
            spec.rho_list = rho.at("values").get<std::vector<double>>();
            break;
        case WeightFamily::power:
            spec.M = rho.at("M").get<double>();
            spec.s = rho.at("s").get<double>();
            break;
        case WeightFamily::geometric:
            spec.M = rho.at("M").get<double>();
            spec.g = rho.at("g").get<double>();
            break;
    }
    spec.dims = j.contains("dims") ? j.at("dims").get<std::uint32_t>()
                                   : static_cast<std::uint32_t>(spec.rho_list.size());
    if (spec.family == WeightFamily::explicit_list && spec.dims != spec.rho_list.size())
        throw std::invalid_argument("dims does not match the explicit rho list length");
    if (j.contains("scaling")) spec.scaling = j.at("scaling").get<double>();
    if (j.contains("direction")) spec.direction = j.at("direction").get<std::vector<double>>();
    if (j.contains("coefficients")) {
        for (const auto& entry : j.at("coefficients"))
            spec.poly_coeffs.emplace_back(entry.at("index").get<std::vector<std::uint32_t>>(),
                                          entry.at("value").get<std::vector<double>>());
    }
    return spec;
}

Json provenance_to_json(const Provenance& prov) {
    Json j;
    j["model"] = model_spec_to_json(prov.model);
    j["p"] = p_to_json(prov.p);
    j["q"] = prov.q;
    j["eps"] = prov.eps;
    j["m"] = prov.m;
    j["seed"] = prov.seed;
    j["samples_per_cell"] = prov.samples_per_cell;
    j["degree_cap"] = prov.degree_cap;
    j["tail_mode"] = to_string(prov.tail_mode);
    return j;
}

Provenance provenance_from_json(const Json& j) {
    Provenance prov;
    prov.model = model_spec_from_json(j.at("model"));
    prov.p = p_from_json(j.at("p"));
    prov.q = j.at("q").get<double>();
    prov.eps = j.at("eps").get<double>();
    prov.m = j.at("m").get<std::uint32_t>();
    prov.seed = j.at("seed").get<std::uint64_t>();
    prov.samples_per_cell = j.at("samples_per_cell").get<std::uint32_t>();
    prov.degree_cap = j.at("degree_cap").get<std::uint32_t>();
    prov.tail_mode = tail_mode_from_string(j.at("tail_mode").get<std::string>());
    return prov;
}

Json grid_to_json(const PartitionGrid& grid) {
    Json j;
    j["single_cell"] = grid.single_cell;
    if (grid.single_cell) {
        j["cell_count"] = 1;
        return j;
    }
    j["J"] = grid.J;
    j["sigma"] = grid.sigma;
    j["eta"] = grid.eta;
    j["tail_mode"] = to_string(grid.tail_mode);
    j["tail_value"] = grid.tail_value;
    j["cell_count"] = grid.cell_count;
    j["log_cell_count"] = grid.log_cell_count;
    j["cell_count_bound"] = grid.bound_on_n;
    j["log_cell_count_bound"] = grid.log_bound_on_n;
    Json k = Json::array();
    Json breakpoints = Json::array();
    for (const auto& lad : grid.ladders) {
        k.push_back(lad.k);
        breakpoints.push_back(lad.breakpoints);
    }
    j["k"] = k;
    j["breakpoints"] = breakpoints;
    return j;
}

Json bound_report_to_json(const BoundReport& report) {
    Json j;
    switch (report.which) {
        case BoundKind::global_rho: j["which"] = "global_rho"; break;
        case BoundKind::global_rho_sharper: j["which"] = "global_rho_sharper"; break;
        case BoundKind::local_v1: j["which"] = "local_v1"; break;
        case BoundKind::local_v2: j["which"] = "local_v2"; break;
        case BoundKind::global_kappa: j["which"] = "global_kappa"; break;
    }
    j["bound_value"] = report.bound_value;
    j["rate"] = report.rate;
    j["class_norm_factor"] = report.class_norm_factor;
    j["c_constant"] = report.c_constant;
    j["weight_norm"] = report.weight_norm;
    j["product_factor"] = report.product_factor;
    j["m_power"] = report.m_power;
    return j;
}

Json comparison_to_json(const ComparisonRecord& record) {
    Json j;
    j["schema"] = kComparisonSchema;
    j["rate"] = record.rate;
    j["theta"] = record.theta;
    j["rho_weight_norm"] = record.rho_weight_norm;
    j["kappa_weight_norm"] = record.kappa_weight_norm;
    j["kappa_norm_not_larger"] = record.kappa_norm_not_larger;
    j["c_rho"] = record.c_rho;
    j["c_kappa"] = record.c_kappa;
    j["class_norm_rho_p"] = record.class_norm_rho_p;
    j["class_norm_kappa_1"] = record.class_norm_kappa_1;
    j["embedding_k"] = record.embedding_k;
    j["global_rho_value"] = record.global_rho_value;
    j["global_kappa_value"] = record.global_kappa_value;
    return j;
}

Json library_to_json(const SurrogateLibrary& lib) {
    Json j;
    j["schema"] = kLibrarySchema;
    j["provenance"] = provenance_to_json(lib.provenance());
    j["grid"] = grid_to_json(lib.grid());
    j["model_kappa1_norm"] = lib.model_kappa1_norm();
    j["c_total"] = lib.c_total();
    Json gate;
    gate["single_cell"] = lib.gate().single_cell;
    gate["global_kappa_bound"] = lib.gate().global_kappa_bound;
    gate["eta"] = lib.gate().eta;
    j["gate"] = gate;
    Json cells = Json::array();
    const std::uint32_t d = lib.dims();
    for (const auto& local : lib.locals()) {
        Json cell;
        cell["center"] = local.cell.center;
        cell["halfwidth"] = local.cell.halfwidth;
        Json indices = Json::array();
        for (const auto& nu : local.index_set.members()) indices.push_back(nu.dense(d));
        cell["indices"] = indices;
        cell["coeffs"] = local.coeffs;
        cells.push_back(cell);
    }
    j["cells"] = cells;
    return j;
}

SurrogateLibrary library_from_json(const Json& j) {
    if (!j.contains("schema") || j.at("schema") != kLibrarySchema)
        throw std::invalid_argument(std::string("not a ") + kLibrarySchema + " document");
    const Provenance prov = provenance_from_json(j.at("provenance"));

    // Rebuild deterministically from provenance, then verify the stored cells
    // match; the document is authoritative only as a carrier.
    const TaylorModel model = make_model(prov.model);
    const ExponentProfile profile = ExponentProfile::create(prov.p, prov.q);
    BuildOptions options;
    options.seed = prov.seed;
    options.samples_per_cell = prov.samples_per_cell;
    options.degree_cap = prov.degree_cap;
    options.tail_mode = prov.tail_mode;
    SurrogateLibrary lib = build_library(model, profile, prov.eps, prov.m, options);

    const Json& cells = j.at("cells");
    if (cells.size() != lib.locals().size())
        throw std::invalid_argument("library document cell count does not match its provenance");
    const auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const auto center = cells[ci].at("center").get<std::vector<double>>();
        const auto stored = cells[ci].at("coeffs").get<std::vector<std::vector<double>>>();
        const LocalSurrogate& local = lib.locals()[ci];
        bool ok = center.size() == local.cell.center.size() && stored.size() == local.coeffs.size();
        for (std::size_t i = 0; ok && i < center.size(); ++i) ok = close(center[i], local.cell.center[i]);
        for (std::size_t i = 0; ok && i < stored.size(); ++i) {
            ok = stored[i].size() == local.coeffs[i].size();
            for (std::size_t c = 0; ok && c < stored[i].size(); ++c)
                ok = close(stored[i][c], local.coeffs[i][c]);
        }
        if (!ok)
            throw std::invalid_argument("library document cell " + std::to_string(ci) +
                                        " does not match its provenance");
    }
    return lib;
}

Json build_report_to_json(const SurrogateLibrary& lib) {
    Json j;
    j["schema"] = kBuildReportSchema;
    j["provenance"] = provenance_to_json(lib.provenance());
    Json gate;
    gate["single_cell"] = lib.gate().single_cell;
    gate["global_kappa_bound"] = lib.gate().global_kappa_bound;
    gate["eta"] = lib.gate().eta;
    j["gate"] = gate;
    j["model_kappa1_norm"] = lib.model_kappa1_norm();
    j["c_total"] = lib.c_total();
    j["grid"] = grid_to_json(lib.grid());
    j["cells"] = lib.locals().size();
    return j;
}

Json certification_to_json(const CertificationReport& report) {
    Json j;
    j["schema"] = kCertificationSchema;
    j["provenance"] = provenance_to_json(report.provenance);
    j["samples_per_cell"] = report.samples_per_cell;
    j["seed"] = report.seed;
    j["epsilon"] = report.epsilon;
    j["max_measured"] = report.max_measured;
    j["pass"] = report.pass;
    Json ratios;
    ratios["min"] = report.ratio_min;
    ratios["max"] = report.ratio_max;
    ratios["mean"] = report.ratio_mean;
    j["bound_ratio"] = ratios;
    Json cells = Json::array();
    for (const auto& cert : report.cells) {
        Json c;
        c["cell"] = cert.cell_index;
        c["measured_sup"] = cert.measured_sup;
        c["bound_v2"] = cert.bound_v2;
        c["ratio"] = cert.ratio;
        cells.push_back(c);
    }
    j["cells"] = cells;
    return j;
}

Json run_config_to_json(const RunConfig& config) {
    Json j;
    j["schema"] = kConfigSchema;
    j["model"] = model_spec_to_json(config.model);
    Json profile;
    profile["p"] = p_to_json(config.p);
    profile["q"] = config.q;
    j["profile"] = profile;
    Json targets;
    targets["eps"] = config.eps_list;
    targets["m"] = config.m_list;
    j["targets"] = targets;
    Json verification;
    verification["samples_per_cell"] = config.samples_per_cell;
    verification["seed"] = config.seed;
    verification["truncation_degree"] = config.truncation_degree;
    verification["degree_cap"] = config.degree_cap;
    verification["tail_mode"] = to_string(config.tail_mode);
    j["verification"] = verification;
    Json output;
    output["library"] = config.out_library;
    output["report"] = config.out_report;
    output["table"] = config.out_table;
    j["output"] = output;
    return j;
}

RunConfig run_config_from_json(const Json& j) {
    if (!j.contains("schema") || j.at("schema") != kConfigSchema)
        throw std::invalid_argument(std::string("not a ") + kConfigSchema + " document");
    RunConfig config;
    config.model = model_spec_from_json(j.at("model"));
    const Json& profile = j.at("profile");
    config.p = p_from_json(profile.at("p"));
    config.q = profile.at("q").get<double>();
    const Json& targets = j.at("targets");
    config.eps_list = targets.at("eps").get<std::vector<double>>();
    config.m_list = targets.at("m").get<std::vector<std::uint32_t>>();
    if (j.contains("verification")) {
        const Json& v = j.at("verification");
        if (v.contains("samples_per_cell")) config.samples_per_cell = v.at("samples_per_cell").get<std::uint32_t>();
        if (v.contains("seed")) config.seed = v.at("seed").get<std::uint64_t>();
        if (v.contains("truncation_degree")) config.truncation_degree = v.at("truncation_degree").get<std::uint32_t>();
        if (v.contains("degree_cap")) config.degree_cap = v.at("degree_cap").get<std::uint32_t>();
        if (v.contains("tail_mode")) config.tail_mode = tail_mode_from_string(v.at("tail_mode").get<std::string>());
    }
    if (j.contains("output")) {
        const Json& o = j.at("output");
        if (o.contains("library")) config.out_library = o.at("library").get<std::string>();
        if (o.contains("report")) config.out_report = o.at("report").get<std::string>();
        if (o.contains("table")) config.out_table = o.at("table").get<std::string>();
    }
    return config;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Json load_json_file(const std::string& path, const char* expected_schema) {
    Json j;
    try {
        j = Json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("corrupt JSON in " + path + ": " + e.what());
    }
    if (expected_schema != nullptr) {
        if (!j.contains("schema") || j.at("schema") != expected_schema)
            throw std::invalid_argument(path + " is not a " + expected_schema + " document");
    }
    return j;
}

} // namespace anisolib
