#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gptest/distributions.hpp"
#include "gptest/multiplicity.hpp"
#include "gptest/random_projection.hpp"
#include "gptest/series.hpp"
#include "gptest/stationarity.hpp"

namespace gptest {

enum class Verdict {
    NonGaussianMarginal,
    NonGaussianRP,
    NotRejected,
    ExcludedAllMissing,
    ExcludedNonStationary,
    Failed,
};

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;
[[nodiscard]] Verdict verdict_from_string(std::string_view s);

enum class ReportFormat { Csv, Json, Markdown };

[[nodiscard]] ReportFormat report_format_from_string(std::string_view s);

/// Per-station replacement for select_rp_config.
struct RpOverride {
    double lambda1 = 100.0;
    double lambda2 = 1.0;
    MarginalTest marginal_test = MarginalTest::LobatoVelasco;

    friend bool operator==(const RpOverride&, const RpOverride&) = default;
};

struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    std::size_t n_max = 30000;
    double alpha = 0.05;
    std::size_t ljung_box_h = 10;
    RpConfig rp;  // epsilon, k_max, num_projections; lambdas/test come from select_rp_config
    std::map<std::string, RpOverride> rp_overrides;
    std::uint64_t master_seed = 20210624;
    bool cap_fdr = false;
    bool dependent_fdr = true;
    std::optional<double> fill_value;
    ReportFormat format = ReportFormat::Csv;
    std::size_t jobs = 1;

    /// InvalidArgument unless alpha in (0, 1), n_max >= 2, ljung_box_h >= 1, num_projections >= 1.
    void validate() const;
};

struct StationReport {
    std::string station_id;
    std::size_t raw_length = 0;
    std::size_t studied_n = 0;
    double start_utc = 0.0;
    double end_utc = 0.0;
    std::optional<StationarityPanel> stationarity;
    std::optional<TestOutcome> epps;
    std::optional<TestOutcome> lobato_velasco;
    std::optional<FdrResult> fdr;
    std::optional<TestOutcome> rp;
    std::optional<RpConfig> rp_config;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::Failed;
    std::string error;

    /// Adjusted value of the smaller marginal p-value, when the marginal stage ran.
    [[nodiscard]] std::optional<double> fdr_scalar() const;

    friend bool operator==(const StationReport&, const StationReport&) = default;
};

/// Stationarity panel, then Epps + Lobato-Velasco combined by the dependent-case FDR,
/// then (only if the FDR does not reject) the random projection test. Errors in any
/// stage are recorded on the report with verdict Failed; nothing is thrown.
[[nodiscard]] StationReport analyze_station(const TimeSeries& series, const RunConfig& cfg, Rng& rng);

/// Same, with the station's stream seeded by derive_seed(master_seed, station_id).
[[nodiscard]] StationReport analyze_station(const TimeSeries& series, const RunConfig& cfg);

/// Ingests one CSV file and analyzes it. AllMissing gives Excluded_AllMissing; any
/// other ingest failure gives Failed.
[[nodiscard]] StationReport analyze_file(const std::filesystem::path& path, const RunConfig& cfg);

/// Expands directories to their *.csv files (sorted by name).
[[nodiscard]] std::vector<std::filesystem::path> expand_inputs(const std::vector<std::filesystem::path>& inputs);

/// Analyzes every input on cfg.jobs workers and returns reports in report order.
[[nodiscard]] std::vector<StationReport> analyze_batch(const RunConfig& cfg);

/// Descending station id (numeric when both ids are numeric), the order of every report.
void sort_reports(std::vector<StationReport>& reports);

}  // namespace gptest
