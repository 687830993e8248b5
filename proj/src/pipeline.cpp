#include "gptest/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "gptest/ingest.hpp"
#include "gptest/marginal.hpp"
#include "gptest/synth.hpp"

namespace gptest {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::NonGaussianMarginal: return "NonGaussian_Marginal";
        case Verdict::NonGaussianRP: return "NonGaussian_RP";
        case Verdict::NotRejected: return "NotRejected";
        case Verdict::ExcludedAllMissing: return "Excluded_AllMissing";
        case Verdict::ExcludedNonStationary: return "Excluded_NonStationary";
        case Verdict::Failed: return "Failed";
    }
    return "Failed";
}

Verdict verdict_from_string(std::string_view s) {
    for (auto v : {Verdict::NonGaussianMarginal, Verdict::NonGaussianRP, Verdict::NotRejected,
                   Verdict::ExcludedAllMissing, Verdict::ExcludedNonStationary, Verdict::Failed}) {
        if (to_string(v) == s) return v;
    }
    throw Error(ErrorCode::ParseError, "unknown verdict '" + std::string(s) + "'");
}

ReportFormat report_format_from_string(std::string_view s) {
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    if (s == "md" || s == "markdown") return ReportFormat::Markdown;
    throw Error(ErrorCode::InvalidArgument, "unknown report format '" + std::string(s) + "'");
}

void RunConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
    if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 2");
    if (ljung_box_h < 1) throw Error(ErrorCode::InvalidArgument, "Ljung-Box h must be >= 1");
    if (rp.num_projections < 1) throw Error(ErrorCode::InvalidArgument, "rp projections must be >= 1");
    if (!(rp.epsilon > 0.0 && rp.epsilon < 1.0)) throw Error(ErrorCode::InvalidArgument, "rp epsilon must lie in (0, 1)");
}

std::optional<double> StationReport::fdr_scalar() const {
    if (!fdr) return std::nullopt;
    return fdr->combined();
}

namespace {

void record_series(StationReport& report, const TimeSeries& series) {
    report.station_id = series.station_id();
    report.raw_length = series.raw_length();
    report.studied_n = series.size();
    if (!series.timestamps().empty()) {
        report.start_utc = series.timestamps().front();
        report.end_utc = series.timestamps().back();
    }
}

}  // namespace

StationReport analyze_station(const TimeSeries& series, const RunConfig& cfg, Rng& rng) {
    StationReport report;
    record_series(report, series);
    try {
        report.stationarity = stationarity_panel(series, cfg.ljung_box_h, cfg.alpha);
        if (!report.stationarity->stationary) {
            report.verdict = Verdict::ExcludedNonStationary;
            return report;
        }
        report.epps = epps(series);
        report.lobato_velasco = lobato_velasco(series);
        report.fdr = by_adjust(std::vector<double>{report.epps->p_value, report.lobato_velasco->p_value},
                               FdrOptions{cfg.dependent_fdr, cfg.cap_fdr});
        if (fdr_verdict(*report.fdr, cfg.alpha)) {
            report.verdict = Verdict::NonGaussianMarginal;
            return report;
        }

        RpConfig rp = cfg.rp;
        if (const auto it = cfg.rp_overrides.find(series.station_id()); it != cfg.rp_overrides.end()) {
            rp.lambda1 = it->second.lambda1;
            rp.lambda2 = it->second.lambda2;
            rp.marginal_test = it->second.marginal_test;
        } else {
            const RpConfig chosen = select_rp_config(report.epps->p_value, report.lobato_velasco->p_value, cfg.alpha);
            rp.lambda1 = chosen.lambda1;
            rp.lambda2 = chosen.lambda2;
            rp.marginal_test = chosen.marginal_test;
        }
        report.rp_config = rp;
        report.rp = rp_test(series, rp, rng);
        report.verdict = report.rp->rejects(cfg.alpha) ? Verdict::NonGaussianRP : Verdict::NotRejected;
    } catch (const Error& e) {
        report.verdict = Verdict::Failed;
        report.error = std::string(to_string(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        report.verdict = Verdict::Failed;
        report.error = e.what();
    }
    return report;
}

StationReport analyze_station(const TimeSeries& series, const RunConfig& cfg) {
    const std::uint64_t seed = derive_seed(cfg.master_seed, series.station_id());
    Rng rng(seed);
    StationReport report = analyze_station(series, cfg, rng);
    report.seed = seed;
    return report;
}

StationReport analyze_file(const std::filesystem::path& path, const RunConfig& cfg) {
    StationReport report;
    report.station_id = path.stem().string();
    report.seed = derive_seed(cfg.master_seed, report.station_id);
    try {
        const RawRecord raw = read_csv_file(path, cfg.fill_value);
        report.raw_length = raw.values.size();
        return analyze_station(ingest_record(raw, cfg.n_max), cfg);
    } catch (const Error& e) {
        report.verdict = e.code() == ErrorCode::AllMissing ? Verdict::ExcludedAllMissing : Verdict::Failed;
        report.error = std::string(to_string(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        report.verdict = Verdict::Failed;
        report.error = e.what();
    }
    return report;
}

std::vector<std::filesystem::path> expand_inputs(const std::vector<std::filesystem::path>& inputs) {
    std::vector<std::filesystem::path> files;
    for (const auto& in : inputs) {
        if (std::filesystem::is_directory(in)) {
            std::vector<std::filesystem::path> found;
            for (const auto& entry : std::filesystem::directory_iterator(in)) {
                if (entry.is_regular_file() && entry.path().extension() == ".csv") found.push_back(entry.path());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(in);
        }
    }
    return files;
}

std::vector<StationReport> analyze_batch(const RunConfig& cfg) {
    cfg.validate();
    const auto files = expand_inputs(cfg.inputs);
    std::vector<StationReport> reports(files.size());
    parallel_for(files.size(), cfg.jobs, [&](std::size_t i) { reports[i] = analyze_file(files[i], cfg); });
    sort_reports(reports);
    return reports;
}

namespace {

std::optional<long long> as_number(const std::string& s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

}  // namespace

void sort_reports(std::vector<StationReport>& reports) {
    // numeric ids first, by value; then the rest; descending within each group
    std::stable_sort(reports.begin(), reports.end(), [](const StationReport& a, const StationReport& b) {
        const auto na = as_number(a.station_id);
        const auto nb = as_number(b.station_id);
        if (na.has_value() != nb.has_value()) return na.has_value();
        if (na && *na != *nb) return *na > *nb;
        return a.station_id > b.station_id;
    });
}

}  // namespace gptest
