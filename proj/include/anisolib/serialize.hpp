#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "anisolib/bounds.hpp"
#include "anisolib/model.hpp"
#include "anisolib/surrogate.hpp"

namespace anisolib {

// Insertion-ordered documents keep report bytes reproducible.
using Json = nlohmann::ordered_json;

inline constexpr const char* kConfigSchema = "anisolib/config/v1";
inline constexpr const char* kLibrarySchema = "anisolib/library/v1";
inline constexpr const char* kBuildReportSchema = "anisolib/build-report/v1";
inline constexpr const char* kCertificationSchema = "anisolib/certification/v1";
inline constexpr const char* kComparisonSchema = "anisolib/comparison/v1";
inline constexpr const char* kSweepSchema = "anisolib/sweep/v1";

std::string to_string(ModelKind kind);
std::string to_string(WeightFamily family);
std::string to_string(TailMode mode);
ModelKind model_kind_from_string(const std::string& s);
WeightFamily weight_family_from_string(const std::string& s);
TailMode tail_mode_from_string(const std::string& s);

// p = inf is written as the string "inf"
Json p_to_json(double p);
double p_from_json(const Json& j);

Json model_spec_to_json(const ModelSpec& spec);
ModelSpec model_spec_from_json(const Json& j);

Json provenance_to_json(const Provenance& prov);
Provenance provenance_from_json(const Json& j);

Json grid_to_json(const PartitionGrid& grid);
Json bound_report_to_json(const BoundReport& report);
Json comparison_to_json(const ComparisonRecord& record);

Json library_to_json(const SurrogateLibrary& lib);
SurrogateLibrary library_from_json(const Json& j);

// Build report: gate outcome plus grid statistics, derived entirely from the
// library (regenerable from its provenance).
Json build_report_to_json(const SurrogateLibrary& lib);

Json certification_to_json(const CertificationReport& report);

// Batch-run configuration consumed by the CLI.
struct RunConfig {
    ModelSpec model;
    double p = 2.0;
    double q = 1.0;
    std::vector<double> eps_list;
    std::vector<std::uint32_t> m_list;
    std::uint32_t samples_per_cell = 10'000;
    std::uint64_t seed = 1;
    std::uint32_t truncation_degree = 12;
    std::uint32_t degree_cap = 30;
    TailMode tail_mode = TailMode::family_default;
    std::string out_library = "library.json";
    std::string out_report = "report.json";
    std::string out_table = "sweep.csv";
};

Json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const Json& j);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);
Json load_json_file(const std::string& path, const char* expected_schema);

} // namespace anisolib
