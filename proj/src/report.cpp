#include "gptest/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace gptest {

using nlohmann::json;

std::string format_p(double p) {
    if (std::isnan(p)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", p);
    std::string s(buf);
    if (s.rfind("0.", 0) == 0) s.erase(0, 1);
    return s;
}

// ---- JSON -----------------------------------------------------------------

void to_json(json& j, const TestOutcome& t) {
    j = json{{"test", to_string(t.test_name)},
             {"statistic", t.statistic},
             {"p_value", t.p_value},
             {"p_bound", to_string(t.p_bound)},
             {"null_hypothesis", t.null_hypothesis},
             {"dof", t.dof}};
}

void from_json(const json& j, TestOutcome& t) {
    t.test_name = test_name_from_string(j.at("test").get<std::string>());
    t.statistic = j.at("statistic").get<double>();
    t.p_value = j.at("p_value").get<double>();
    t.p_bound = p_bound_from_string(j.at("p_bound").get<std::string>());
    t.null_hypothesis = j.at("null_hypothesis").get<std::string>();
    t.dof = j.at("dof").get<double>();
}

void to_json(json& j, const StationarityPanel& p) {
    j = json{{"ljung_box", p.ljung_box},
             {"adf", p.adf},
             {"phillips_perron", p.phillips_perron},
             {"kpss", p.kpss},
             {"stationary", p.stationary}};
}

void from_json(const json& j, StationarityPanel& p) {
    j.at("ljung_box").get_to(p.ljung_box);
    j.at("adf").get_to(p.adf);
    j.at("phillips_perron").get_to(p.phillips_perron);
    j.at("kpss").get_to(p.kpss);
    p.stationary = j.at("stationary").get<bool>();
}

void to_json(json& j, const FdrResult& f) {
    j = json{{"raw", f.raw}, {"adjusted", f.adjusted}, {"m", f.m}, {"harmonic_factor", f.harmonic_factor},
             {"combined", f.combined()}};
}

void from_json(const json& j, FdrResult& f) {
    j.at("raw").get_to(f.raw);
    j.at("adjusted").get_to(f.adjusted);
    f.m = j.at("m").get<std::size_t>();
    f.harmonic_factor = j.at("harmonic_factor").get<double>();
}

void to_json(json& j, const RpConfig& c) {
    j = json{{"lambda1", c.lambda1},
             {"lambda2", c.lambda2},
             {"marginal_test", to_string(c.marginal_test)},
             {"epsilon", c.epsilon},
             {"num_projections", c.num_projections}};
    j["k_max"] = c.k_max ? json(*c.k_max) : json(nullptr);
}

void from_json(const json& j, RpConfig& c) {
    c.lambda1 = j.at("lambda1").get<double>();
    c.lambda2 = j.at("lambda2").get<double>();
    c.marginal_test = marginal_test_from_string(j.at("marginal_test").get<std::string>());
    c.epsilon = j.at("epsilon").get<double>();
    c.num_projections = j.at("num_projections").get<std::size_t>();
    if (j.contains("k_max") && !j.at("k_max").is_null()) {
        c.k_max = j.at("k_max").get<std::size_t>();
    } else {
        c.k_max.reset();
    }
}

namespace {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    j[key] = v ? json(*v) : json(nullptr);
}

template <typename T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key) && !j.at(key).is_null()) {
        v = j.at(key).get<T>();
    } else {
        v.reset();
    }
}

}  // namespace

void to_json(json& j, const StationReport& r) {
    j = json{{"station_id", r.station_id}, {"raw_length", r.raw_length}, {"studied_n", r.studied_n},
             {"start_utc", r.start_utc},   {"end_utc", r.end_utc},       {"seed", r.seed},
             {"verdict", to_string(r.verdict)}, {"error", r.error}};
    put_optional(j, "stationarity", r.stationarity);
    put_optional(j, "epps", r.epps);
    put_optional(j, "lobato_velasco", r.lobato_velasco);
    put_optional(j, "fdr", r.fdr);
    put_optional(j, "rp", r.rp);
    put_optional(j, "rp_config", r.rp_config);
}

void from_json(const json& j, StationReport& r) {
    r.station_id = j.at("station_id").get<std::string>();
    r.raw_length = j.at("raw_length").get<std::size_t>();
    r.studied_n = j.at("studied_n").get<std::size_t>();
    r.start_utc = j.at("start_utc").get<double>();
    r.end_utc = j.at("end_utc").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.error = j.at("error").get<std::string>();
    get_optional(j, "stationarity", r.stationarity);
    get_optional(j, "epps", r.epps);
    get_optional(j, "lobato_velasco", r.lobato_velasco);
    get_optional(j, "fdr", r.fdr);
    get_optional(j, "rp", r.rp);
    get_optional(j, "rp_config", r.rp_config);
}

namespace {

json config_json(const RunConfig& cfg) {
    return json{{"n_max", cfg.n_max},
                {"alpha", cfg.alpha},
                {"lb_h", cfg.ljung_box_h},
                {"seed", cfg.master_seed},
                {"rp_projections", cfg.rp.num_projections},
                {"rp_epsilon", cfg.rp.epsilon},
                {"cap_fdr", cfg.cap_fdr},
                {"dependent_fdr", cfg.dependent_fdr}};
}

std::string config_line(const RunConfig& cfg) {
    std::ostringstream os;
    os << "seed=" << cfg.master_seed << " n_max=" << cfg.n_max << " alpha=" << cfg.alpha
       << " lb_h=" << cfg.ljung_box_h << " rp_projections=" << cfg.rp.num_projections
       << " rp_epsilon=" << cfg.rp.epsilon << " cap_fdr=" << (cfg.cap_fdr ? "true" : "false")
       << " fdr=" << (cfg.dependent_fdr ? "BY" : "BH");
    return os.str();
}

std::string opt_p(const std::optional<TestOutcome>& t) { return t ? format_p(t->p_value) : ""; }

std::string bounded_p(const TestOutcome& t) {
    switch (t.p_bound) {
        case PBound::Below: return "<" + format_p(t.p_value);
        case PBound::Above: return ">" + format_p(t.p_value);
        case PBound::Exact: break;
    }
    return format_p(t.p_value);
}

std::string lambda_text(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string emit_csv(const std::vector<StationReport>& reports, const RunConfig& cfg) {
    std::ostringstream os;
    os << "# gptest report " << config_line(cfg) << '\n';
    os << "station,raw_length,studied_n,start_utc,end_utc,lb_p,adf_p,pp_p,kpss_p,stationary,epps_p,lv_p,fdr,"
          "rp_p,rp_lambda1,rp_lambda2,rp_test,seed,verdict,threshold\n";
    for (const auto& r : reports) {
        os << r.station_id << ',' << r.raw_length << ',' << r.studied_n << ',';
        os << std::fixed;
        os.precision(0);
        os << r.start_utc << ',' << r.end_utc << ',';
        os.unsetf(std::ios::floatfield);
        if (r.stationarity) {
            os << format_p(r.stationarity->ljung_box.p_value) << ',' << format_p(r.stationarity->adf.p_value) << ','
               << format_p(r.stationarity->phillips_perron.p_value) << ',' << format_p(r.stationarity->kpss.p_value)
               << ',' << (r.stationarity->stationary ? "true" : "false") << ',';
        } else {
            os << ",,,,,";
        }
        os << opt_p(r.epps) << ',' << opt_p(r.lobato_velasco) << ',';
        os << (r.fdr ? format_p(r.fdr->combined()) : "") << ',';
        os << opt_p(r.rp) << ',';
        if (r.rp_config) {
            os << lambda_text(r.rp_config->lambda1) << ',' << lambda_text(r.rp_config->lambda2) << ','
               << to_string(r.rp_config->marginal_test) << ',';
        } else {
            os << ",,,";
        }
        os << r.seed << ',' << to_string(r.verdict) << ',' << cfg.alpha << '\n';
    }
    return os.str();
}

std::string emit_markdown(const std::vector<StationReport>& reports, const RunConfig& cfg) {
    std::ostringstream os;
    os << "# Gaussianity report\n\n`" << config_line(cfg) << "`\n\n";

    os << "## Stationarity\n\n| station | n | ADF | PP | Ljung-Box | KPSS | stationary |\n|---:|---:|---:|---:|---:|---:|:---:|\n";
    for (const auto& r : reports) {
        if (!r.stationarity) continue;
        const auto& s = *r.stationarity;
        os << "| " << r.station_id << " | " << r.studied_n << " | " << bounded_p(s.adf) << " | "
           << bounded_p(s.phillips_perron) << " | " << bounded_p(s.ljung_box) << " | " << bounded_p(s.kpss) << " | "
           << (s.stationary ? "yes" : "no") << " |\n";
    }

    os << "\n## Marginal tests\n\n| buoy | Epps | L.-V. | FDR |\n|---:|---:|---:|---:|\n";
    for (const auto& r : reports) {
        if (!r.fdr) continue;
        const bool reject = r.verdict == Verdict::NonGaussianMarginal;
        const std::string fdr = format_p(r.fdr->combined());
        os << "| " << r.station_id << " | " << opt_p(r.epps) << " | " << opt_p(r.lobato_velasco) << " | "
           << (reject ? "**" + fdr + "**" : fdr) << " |\n";
    }

    os << "\n## Random projection\n\n| buoy | p-value | param1 | param2 | test | seed |\n|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& r : reports) {
        if (!r.rp || !r.rp_config) continue;
        const std::string p = format_p(r.rp->p_value);
        os << "| " << r.station_id << " | " << (r.verdict == Verdict::NonGaussianRP ? "**" + p + "**" : p) << " | "
           << lambda_text(r.rp_config->lambda1) << " | " << lambda_text(r.rp_config->lambda2) << " | "
           << (r.rp_config->marginal_test == MarginalTest::Epps ? "Epps" : "L.-V.") << " | " << r.seed << " |\n";
    }

    std::size_t marginal = 0, projected = 0, analyzed = 0;
    os << "\n## Verdicts\n\n| station | verdict | note |\n|---:|:---|:---|\n";
    for (const auto& r : reports) {
        std::string note = r.error;
        std::replace(note.begin(), note.end(), '|', '/');
        std::replace(note.begin(), note.end(), '\n', ' ');
        os << "| " << r.station_id << " | " << to_string(r.verdict) << " | " << note << " |\n";
        marginal += r.verdict == Verdict::NonGaussianMarginal;
        projected += r.verdict == Verdict::NonGaussianRP;
        analyzed += r.stationarity.has_value() && r.stationarity->stationary;
    }
    os << "\nRejections: " << marginal << " marginal + " << projected << " random projection = "
       << marginal + projected << " of " << analyzed << " stationary series.\n";
    return os.str();
}

}  // namespace

std::string emit_report(std::vector<StationReport> reports, ReportFormat format, const RunConfig& cfg) {
    sort_reports(reports);
    switch (format) {
        case ReportFormat::Csv: return emit_csv(reports, cfg);
        case ReportFormat::Markdown: return emit_markdown(reports, cfg);
        case ReportFormat::Json: {
            json j{{"config", config_json(cfg)}, {"reports", reports}};
            return j.dump(2) + "\n";
        }
    }
    return {};
}

std::vector<StationReport> parse_report_json(const std::string& text) {
    try {
        return json::parse(text).at("reports").get<std::vector<StationReport>>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("report JSON: ") + e.what());
    }
}

}  // namespace gptest
