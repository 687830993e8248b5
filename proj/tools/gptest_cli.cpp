// gptest: batch Gaussian-process testing of time series.
//
//   gptest analyze --input data/ --format md
//   gptest fetch --station 433 --base-url http://host/thredds/ncss/cdip/realtime > 433.csv
//   gptest synth --kind copula --n 2000 --theta 2 --seed 7 > copula.csv
//   gptest utc 1611245000

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gptest/fetch.hpp"
#include "gptest/ingest.hpp"
#include "gptest/pipeline.hpp"
#include "gptest/report.hpp"
#include "gptest/synth.hpp"
#include "gptest/utc.hpp"

namespace {

int write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return 1;
    }
    out << text;
    return 0;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Expands `--config FILE` into flags of the chosen subcommand. Keys are flag names
// (n_max or n-max), optionally under a [subcommand] section; command-line flags win.
std::vector<std::string> expand_config(std::vector<std::string> args, const std::vector<std::string>& subcommands) {
    std::string file;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            file = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            file = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (file.empty()) return args;
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot read config file '" + file + "'");

    const auto sub = std::find_first_of(args.begin(), args.end(), subcommands.begin(), subcommands.end());
    if (sub == args.end()) return args;
    const std::string name = *sub;
    std::vector<std::string> extra;
    for (const auto& item : CLI::ConfigINI().from_config(in)) {
        if (!item.parents.empty() && item.parents.front() != name) continue;
        std::string key = item.name;
        std::replace(key.begin(), key.end(), '_', '-');
        const std::string flag = "--" + key;
        if (has_flag(args, flag)) continue;
        if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
            if (item.inputs[0] == "true") extra.push_back(flag);
            continue;
        }
        for (const auto& v : item.inputs) {
            extra.push_back(flag);
            extra.push_back(v);
        }
    }
    args.insert(std::next(std::find(args.begin(), args.end(), name)), extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tests whether time series are plausibly drawn from a Gaussian stationary process"};
    app.require_subcommand(1);
    app.add_option("--config", "key=value file mirroring the subcommand's flags (flags override it)");

    // analyze
    gptest::RunConfig cfg;
    std::vector<std::string> inputs;
    std::string format = "csv";
    std::string output;
    std::vector<std::string> overrides;
    double fill_value = 0.0;
    auto* analyze = app.add_subcommand("analyze", "Run the full pipeline on CSV series");
    analyze->add_option("--input", inputs, "CSV files or directories of CSV files")->required();
    analyze->add_option("--n-max", cfg.n_max, "Keep the first n stored samples")->capture_default_str();
    analyze->add_option("--alpha", cfg.alpha, "Significance level")->capture_default_str();
    analyze->add_option("--lb-h", cfg.ljung_box_h, "Ljung-Box lag count")->capture_default_str();
    analyze->add_option("--seed", cfg.master_seed, "Master seed")->capture_default_str();
    analyze->add_option("--rp-projections", cfg.rp.num_projections, "Random projections per station")
        ->capture_default_str();
    analyze->add_option("--rp-epsilon", cfg.rp.epsilon, "Stick-breaking residual mass tolerance")
        ->capture_default_str();
    analyze->add_flag("--cap-fdr", cfg.cap_fdr, "Clamp FDR-adjusted values at 1");
    analyze->add_flag("!--independent-fdr", cfg.dependent_fdr, "Use c(m) = 1 (independent-case FDR)");
    auto* fill_opt = analyze->add_option("--fill-value", fill_value, "Extra missing-value marker");
    analyze->add_option("--rp-override", overrides, "station:lambda1:lambda2:test (test = epps|lv)");
    analyze->add_option("--format", format, "csv|json|md")->check(CLI::IsMember({"csv", "json", "md"}))
        ->capture_default_str();
    analyze->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
    analyze->add_option("-o,--output", output, "Output file (default stdout)");

    // fetch
    std::string station;
    std::string base_url;
    gptest::FetchOptions fetch_opts;
    double fetch_fill = 0.0;
    auto* fetch = app.add_subcommand("fetch", "Download a station's displacement record as CSV");
    fetch->add_option("--station", station, "Station id")->required();
    fetch->add_option("--base-url", base_url, "Archive base URL (plain http)")->required();
    fetch->add_option("--url-template", fetch_opts.url_template, "URL pattern")->capture_default_str();
    fetch->add_option("--variable", fetch_opts.variable, "Variable name")->capture_default_str();
    auto* fetch_fill_opt = fetch->add_option("--fill-value", fetch_fill, "Archive fill value");
    fetch->add_option("-o,--output", output, "Output file (default stdout)");

    // synth
    gptest::GeneratorSpec spec;
    std::string kind = "iid";
    std::string station_label;
    auto* synth = app.add_subcommand("synth", "Emit a synthetic series in the standard CSV format");
    synth->add_option("--kind", kind, "iid|arma|exp|copula")->check(CLI::IsMember({"iid", "arma", "exp", "copula"}))
        ->capture_default_str();
    synth->add_option("--n", spec.n, "Length")->required();
    synth->add_option("--seed", spec.seed, "Seed")->capture_default_str();
    synth->add_option("--ar", spec.ar, "AR coefficients");
    synth->add_option("--ma", spec.ma, "MA coefficients");
    synth->add_option("--theta", spec.theta, "Clayton dependence")->capture_default_str();
    synth->add_option("-o,--output", output, "Output file (default stdout)");

    // utc
    std::int64_t seconds = 0;
    auto* utc = app.add_subcommand("utc", "Print a UTC second count as GMT text");
    utc->add_option("seconds", seconds, "Seconds since the epoch")->required();

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_config(std::move(args), {"analyze", "fetch", "synth", "utc"});
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*analyze) {
            for (const auto& in : inputs) cfg.inputs.emplace_back(in);
            cfg.format = gptest::report_format_from_string(format);
            if (*fill_opt) cfg.fill_value = fill_value;
            for (const auto& o : overrides) {
                std::vector<std::string> parts;
                std::stringstream ss(o);
                for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
                if (parts.size() != 4) {
                    std::cerr << "error: --rp-override expects station:lambda1:lambda2:test\n";
                    return 1;
                }
                cfg.rp_overrides[parts[0]] = gptest::RpOverride{std::stod(parts[1]), std::stod(parts[2]),
                                                                gptest::marginal_test_from_string(parts[3])};
            }
            const auto reports = gptest::analyze_batch(cfg);
            if (reports.empty()) {
                std::cerr << "error: no input series found\n";
                return 1;
            }
            if (const int rc = write_output(gptest::emit_report(reports, cfg.format, cfg), output); rc != 0) return rc;
            for (const auto& r : reports) {
                if (r.verdict == gptest::Verdict::Failed) {
                    std::cerr << "warning: station " << r.station_id << " failed: " << r.error << '\n';
                }
            }
            const bool partial = std::any_of(reports.begin(), reports.end(),
                                             [](const auto& r) { return r.verdict == gptest::Verdict::Failed; });
            return partial ? 2 : 0;
        }
        if (*fetch) {
            if (*fetch_fill_opt) fetch_opts.fill_value = fetch_fill;
            gptest::HttplibClient client;
            const auto raw = gptest::fetch_station(station, base_url, client, fetch_opts);
            std::ostringstream os;
            gptest::write_csv(os, raw);
            return write_output(os.str(), output);
        }
        if (*synth) {
            spec.kind = gptest::generator_kind_from_string(kind);
            const auto series = gptest::generate(spec);
            std::ostringstream os;
            gptest::write_csv(os, series);
            return write_output(os.str(), output);
        }
        if (*utc) {
            if (seconds < 0) {
                std::cerr << "error: seconds must be nonnegative\n";
                return 1;
            }
            std::cout << gptest::format_utc(seconds) << '\n';
            return 0;
        }
    } catch (const gptest::Error& e) {
        std::cerr << "error: " << gptest::to_string(e.code()) << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
