#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entropia/ck_metrics.hpp"
#include "entropia/entropy.hpp"
#include "entropia/ingestion.hpp"
#include "entropia/reporting.hpp"
#include "entropia/weyuker.hpp"

namespace fs = std::filesystem;
using namespace entropia;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitGateBreach = 2;

struct Options {
    std::string input_kind = "source";
    std::string wmc_weight;  // empty = per-subcommand default
    std::string thresholds_path;
    std::string format = "text";
    std::optional<double> gate_score;
    std::optional<double> gate_entropy;
    bool strict = false;
    std::uint64_t seed = 42;
    long budget = 1000;
    std::string out_path;
    double entropy_step = std::numeric_limits<double>::infinity();
};

// ENTROPIA_CONFIG points at a JSON object mirroring the flags; explicit
// flags win over config values.
void apply_config_defaults(Options& o) {
    const char* path = std::getenv("ENTROPIA_CONFIG");
    if (!path || !*path) return;
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot open config file ") + path);
    nlohmann::json j;
    in >> j;
    if (j.contains("input_kind")) o.input_kind = j.at("input_kind").get<std::string>();
    if (j.contains("wmc_weight")) o.wmc_weight = j.at("wmc_weight").get<std::string>();
    if (j.contains("thresholds")) o.thresholds_path = j.at("thresholds").get<std::string>();
    if (j.contains("format")) o.format = j.at("format").get<std::string>();
    if (j.contains("gate_score")) o.gate_score = j.at("gate_score").get<double>();
    if (j.contains("gate_entropy")) o.gate_entropy = j.at("gate_entropy").get<double>();
    if (j.contains("strict")) o.strict = j.at("strict").get<bool>();
    if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("budget")) o.budget = j.at("budget").get<long>();
    if (j.contains("entropy_step")) o.entropy_step = j.at("entropy_step").get<double>();
}

WmcWeighting weighting_of(const Options& o, WmcWeighting fallback) {
    if (o.wmc_weight.empty()) return fallback;
    if (o.wmc_weight == "unit") return WmcWeighting::Unit;
    if (o.wmc_weight == "cyclomatic") return WmcWeighting::Cyclomatic;
    throw std::runtime_error("unknown --wmc-weight '" + o.wmc_weight + "'");
}

ReportFormat format_of(const Options& o) {
    if (o.format == "text") return ReportFormat::Text;
    if (o.format == "csv") return ReportFormat::Csv;
    if (o.format == "json") return ReportFormat::Json;
    throw std::runtime_error("unknown --format '" + o.format + "'");
}

ThresholdTable thresholds_of(const Options& o) {
    if (o.thresholds_path.empty()) return ThresholdTable::nasa_satc();
    return ThresholdTable::load(o.thresholds_path);
}

std::vector<std::string> collect_source_files(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const auto& input : inputs) {
        if (fs::is_directory(input)) {
            std::vector<std::string> found;
            for (const auto& e : fs::recursive_directory_iterator(input)) {
                if (e.is_regular_file() && e.path().extension() == ".moo") {
                    found.push_back(e.path().string());
                }
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(input);
        }
    }
    return files;
}

ClassModel load_model(const Options& o, const std::vector<std::string>& inputs) {
    if (o.input_kind == "interchange") {
        if (inputs.size() != 1) {
            throw std::runtime_error("interchange input expects exactly one file");
        }
        return load_interchange(inputs[0]);
    }
    if (o.input_kind != "source") {
        throw std::runtime_error("unknown --input-kind '" + o.input_kind + "'");
    }
    std::vector<std::pair<std::string, std::string>> sources;
    for (const auto& path : collect_source_files(inputs)) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open source file '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        sources.emplace_back(path, buf.str());
    }
    if (sources.empty()) throw std::runtime_error("no input files found");
    return parse_source(sources);
}

void write_output(const Options& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.out_path);
    if (!out) throw std::runtime_error("cannot write output file '" + o.out_path + "'");
    out << text;
}

int check_gates(const Options& o, const DegradationReport& r) {
    if (o.gate_score && r.score > *o.gate_score) {
        std::cerr << "gate breach: degradation score " << r.score << " exceeds limit "
                  << *o.gate_score << "\n";
        return kExitGateBreach;
    }
    if (o.gate_entropy && r.entropy_bits > *o.gate_entropy) {
        std::cerr << "gate breach: entropy " << r.entropy_bits << " exceeds limit "
                  << *o.gate_entropy << "\n";
        return kExitGateBreach;
    }
    return kExitOk;
}

int cmd_analyze(const Options& o, const std::vector<std::string>& inputs,
                const std::string& label) {
    ClassModel model = load_model(o, inputs);
    DegradationReport report = analyze_model(model, thresholds_of(o),
                                             weighting_of(o, WmcWeighting::Unit), label,
                                             o.strict);
    write_output(o, render(report, format_of(o)));
    return check_gates(o, report);
}

int cmd_entropy(const Options& o, const std::vector<long>& counts,
                std::optional<long> total) {
    CategoryDistribution dist{counts};
    std::vector<std::string> warnings;
    if (total && dist.total() != *total) {
        warnings.push_back("counts sum " + std::to_string(dist.total()) + " != N " +
                           std::to_string(*total));
    }
    const DegradationScore s = degradation_score(dist);

    if (format_of(o) == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["counts"] = counts;
        j["total_classes"] = dist.total();
        j["entropy_bits"] = s.entropy_bits;
        j["degradation_score"] = s.score;
        j["warnings"] = warnings;
        write_output(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << std::fixed << std::setprecision(6);
        os << "N:                  " << dist.total() << "\n"
           << "Entropy H (bits):   " << s.entropy_bits << "\n"
           << "Score N*H:          " << s.score << "\n";
        for (const auto& w : warnings) os << "warning: " << w << "\n";
        write_output(o, os.str());
    }
    return kExitOk;
}

int cmd_weyuker(const Options& o, const std::vector<std::string>& inputs) {
    WeyukerConfig config;
    config.seed = o.seed;
    config.budget = o.budget;
    // weighted WMC by default: unit weights cannot separate classes with
    // identical signatures, so property 3 would have no reachable witness
    config.weighting = weighting_of(o, WmcWeighting::Cyclomatic);

    std::vector<ClassDef> extra;
    if (!inputs.empty()) {
        ClassModel model = load_model(o, inputs);
        extra = model.classes();
    }
    ClassModel population = default_population(config.seed, extra);
    auto verdicts = run_weyuker_suite(population, config);

    if (format_of(o) == ReportFormat::Json) {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const auto& v : verdicts) {
            j.push_back({{"property", v.property},
                         {"metric", metric_name(v.metric)},
                         {"verdict", verdict_name(v.verdict)},
                         {"witness", v.witness},
                         {"budget_used", v.budget_used},
                         {"seed", v.seed}});
        }
        write_output(o, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "property  metric  verdict               witness\n";
        for (const auto& v : verdicts) {
            os << "P" << v.property << "        " << std::left << std::setw(8)
               << metric_name(v.metric) << std::setw(22) << verdict_name(v.verdict)
               << std::right << v.witness << "\n";
        }
        write_output(o, os.str());
    }
    return kExitOk;
}

int cmd_trend(const Options& o, const std::vector<std::string>& inputs) {
    std::vector<DegradationReport> reports;
    const ThresholdTable table = thresholds_of(o);
    for (const auto& input : inputs) {
        ClassModel model = load_model(o, {input});
        reports.push_back(analyze_model(model, table, weighting_of(o, WmcWeighting::Unit),
                                        input, o.strict));
    }
    TrendReport t = trend(reports, o.entropy_step);
    write_output(o, render_trend(t, format_of(o)));
    return reports.empty() ? kExitOk : check_gates(o, reports.back());
}

}  // namespace

int main(int argc, char** argv) {
    Options opts;
    try {
        apply_config_defaults(opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }

    CLI::App app{"CK metrics and entropy-based design degradation analyzer"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input-kind", opts.input_kind, "source|interchange");
        sub->add_option("--wmc-weight", opts.wmc_weight, "unit|cyclomatic");
        sub->add_option("--thresholds", opts.thresholds_path, "threshold table JSON file");
        sub->add_option("--format", opts.format, "text|csv|json");
        sub->add_option("--out", opts.out_path, "write output to file");
    };

    std::vector<std::string> analyze_inputs;
    std::string project_label = "project";
    auto* analyze = app.add_subcommand("analyze", "analyze sources or an interchange file");
    add_common(analyze);
    analyze->add_option("inputs", analyze_inputs, "source files/dirs or interchange file")
        ->required();
    analyze->add_option("--project", project_label, "project label in the report");
    double gate_score = -1.0, gate_entropy = -1.0;
    analyze->add_option("--gate-score", gate_score, "fail (exit 2) when N*H exceeds this");
    analyze->add_option("--gate-entropy", gate_entropy, "fail (exit 2) when H exceeds this");
    analyze->add_flag("--strict", opts.strict, "error on WMC below the threshold table");

    std::vector<long> counts;
    long total = -1;
    auto* entropy_cmd = app.add_subcommand("entropy", "entropy from category counts");
    entropy_cmd->add_option("counts", counts, "per-category class counts")->required();
    entropy_cmd->add_option("--total", total, "declared total N to validate against");
    entropy_cmd->add_option("--format", opts.format, "text|json");
    entropy_cmd->add_option("--out", opts.out_path, "write output to file");

    std::vector<std::string> weyuker_inputs;
    auto* weyuker_cmd = app.add_subcommand("weyuker", "check Weyuker properties 1-6");
    add_common(weyuker_cmd);
    weyuker_cmd->add_option("inputs", weyuker_inputs, "optional corpus for the population");
    weyuker_cmd->add_option("--seed", opts.seed, "search seed");
    weyuker_cmd->add_option("--budget", opts.budget, "search budget per check");

    std::vector<std::string> trend_inputs;
    auto* trend_cmd = app.add_subcommand("trend", "entropy trend across versions");
    add_common(trend_cmd);
    trend_cmd->add_option("inputs", trend_inputs, "one input per version, in order")
        ->required();
    trend_cmd->add_option("--gate-score", gate_score, "gate on the last version's N*H");
    trend_cmd->add_option("--gate-entropy", gate_entropy, "gate on the last version's H");
    trend_cmd->add_option("--entropy-step", opts.entropy_step,
                          "flag versions whose H rises beyond this step");
    trend_cmd->add_flag("--strict", opts.strict, "error on WMC below the threshold table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    }

    if (analyze->count("--gate-score") || trend_cmd->count("--gate-score")) {
        opts.gate_score = gate_score;
    }
    if (analyze->count("--gate-entropy") || trend_cmd->count("--gate-entropy")) {
        opts.gate_entropy = gate_entropy;
    }

    try {
        if (*analyze) return cmd_analyze(opts, analyze_inputs, project_label);
        if (*entropy_cmd) {
            return cmd_entropy(opts, counts,
                               entropy_cmd->count("--total")
                                   ? std::optional<long>(total)
                                   : std::nullopt);
        }
        if (*weyuker_cmd) return cmd_weyuker(opts, weyuker_inputs);
        if (*trend_cmd) return cmd_trend(opts, trend_inputs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}
