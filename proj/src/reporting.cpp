#include "entropia/reporting.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace entropia {
namespace {

using json = nlohmann::ordered_json;

std::string fixed6(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << v;
    return os.str();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

json report_to_json(const DegradationReport& r) {
    json j;
    j["project"] = r.project;
    if (r.stats) {
        const SourceStats& s = *r.stats;
        j["stats"] = {{"classes", static_cast<long>(r.rows.size())},
                      {"files", s.files},
                      {"total_lines", s.total_lines},
                      {"blank_lines", s.blank_lines},
                      {"comment_lines", s.comment_lines},
                      {"code_lines", s.code_lines},
                      {"executable_statements", s.executable_statements},
                      {"declarative_statements", s.declarative_statements},
                      {"ratio_comment_code", r.ratio_comment_code},
                      {"inactive_lines", r.inactive_lines}};
    }
    j["classes"] = json::array();
    for (const auto& row : r.rows) {
        j["classes"].push_back({{"class", row.class_name},
                                {"wmc", row.metrics.wmc},
                                {"dit", row.metrics.dit},
                                {"noc", row.metrics.noc},
                                {"cbo", row.metrics.cbo},
                                {"rfc", row.metrics.rfc},
                                {"lcom_components", row.metrics.lcom_components},
                                {"lcom_percent", row.metrics.lcom_percent},
                                {"category", row.category_label}});
    }
    j["categories"] = json::array();
    for (std::size_t i = 0; i < r.distribution.counts.size(); ++i) {
        j["categories"].push_back({{"label", r.category_labels[i]},
                                   {"count", r.distribution.counts[i]},
                                   {"risk", r.category_risks[i]}});
    }
    j["total_classes"] = r.distribution.total();
    j["entropy_bits"] = r.entropy_bits;
    j["degradation_score"] = r.score;
    j["warnings"] = r.warnings;
    return j;
}

}  // namespace

DegradationReport build_report(const ClassModel& model,
                               const std::vector<MetricVector>& metrics,
                               const Categorization& categorization,
                               const ThresholdTable& thresholds,
                               const std::string& project_label) {
    DegradationReport r;
    r.project = project_label;
    r.stats = model.stats();
    if (r.stats && r.stats->code_lines > 0) {
        r.ratio_comment_code = static_cast<double>(r.stats->comment_lines) /
                               static_cast<double>(r.stats->code_lines);
    }
    r.distribution = categorization.distribution;
    r.warnings = categorization.warnings;
    for (const auto& band : thresholds.bands()) {
        r.category_labels.push_back(band.label);
        r.category_risks.push_back(band.risk);
    }

    const auto& classes = model.classes();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        ClassMetricsRow row;
        row.class_name = classes[i].name;
        row.metrics = metrics.at(i);
        auto cat = thresholds.category_of(static_cast<double>(row.metrics.wmc));
        row.category_label = thresholds.bands()[cat.value_or(0)].label;
        r.rows.push_back(std::move(row));
    }

    const DegradationScore s = degradation_score(r.distribution);
    r.entropy_bits = s.entropy_bits;
    r.score = s.score;
    return r;
}

DegradationReport analyze_model(const ClassModel& model, const ThresholdTable& thresholds,
                                WmcWeighting weighting, const std::string& project_label,
                                bool strict) {
    std::vector<MetricVector> metrics;
    std::vector<double> wmc_values;
    for (const auto& c : model.classes()) {
        metrics.push_back(metric_vector(c, model, weighting));
        wmc_values.push_back(static_cast<double>(metrics.back().wmc));
    }
    Categorization cat = categorize(wmc_values, thresholds, strict);
    return build_report(model, metrics, cat, thresholds, project_label);
}

std::string render(const DegradationReport& r, ReportFormat format) {
    if (format == ReportFormat::Json) {
        return report_to_json(r).dump(2) + "\n";
    }

    if (format == ReportFormat::Csv) {
        std::ostringstream os;
        os << "class,wmc,dit,noc,cbo,rfc,lcom_components,lcom_percent,category\n";
        for (const auto& row : r.rows) {
            os << csv_escape(row.class_name) << ',' << row.metrics.wmc << ','
               << row.metrics.dit << ',' << row.metrics.noc << ',' << row.metrics.cbo << ','
               << row.metrics.rfc << ',' << row.metrics.lcom_components << ','
               << fixed6(row.metrics.lcom_percent) << ',' << csv_escape(row.category_label)
               << '\n';
        }
        // fixed summary block: one row per category, then totals, H and N*H
        for (std::size_t i = 0; i < r.distribution.counts.size(); ++i) {
            os << "category " << csv_escape(r.category_labels[i]) << ','
               << r.distribution.counts[i] << ",,,,,,," << csv_escape(r.category_risks[i])
               << '\n';
        }
        os << "total_classes," << r.distribution.total() << ",,,,,,,\n";
        os << "entropy_bits," << fixed6(r.entropy_bits) << ",,,,,,,\n";
        os << "degradation_score," << fixed6(r.score) << ",,,,,,,\n";
        return os.str();
    }

    std::ostringstream os;
    os << "Project: " << r.project << "\n";
    if (r.stats) {
        const SourceStats& s = *r.stats;
        os << "\nProject statistics\n"
           << "  Classes:                " << r.rows.size() << "\n"
           << "  Files:                  " << s.files << "\n"
           << "  Lines:                  " << s.total_lines << "\n"
           << "  Blank Lines:            " << s.blank_lines << "\n"
           << "  Comment Lines:          " << s.comment_lines << "\n"
           << "  Code Lines:             " << s.code_lines << "\n"
           << "  Inactive Lines:         " << r.inactive_lines << "\n"
           << "  Executable Statements:  " << s.executable_statements << "\n"
           << "  Declarative Statements: " << s.declarative_statements << "\n"
           << "  Ratio Comment/Code:     " << fixed6(r.ratio_comment_code) << "\n";
    }
    os << "\nPer-class metrics\n"
       << "  class                          wmc   dit   noc   cbo   rfc  lcom  lcom%      cat\n";
    for (const auto& row : r.rows) {
        os << "  " << std::left << std::setw(28) << row.class_name << std::right
           << std::setw(6) << row.metrics.wmc << std::setw(6) << row.metrics.dit
           << std::setw(6) << row.metrics.noc << std::setw(6) << row.metrics.cbo
           << std::setw(6) << row.metrics.rfc << std::setw(6) << row.metrics.lcom_components
           << std::setw(11) << fixed6(row.metrics.lcom_percent) << std::setw(5)
           << row.category_label << "\n";
    }
    os << "\nWMC category distribution\n";
    for (std::size_t i = 0; i < r.distribution.counts.size(); ++i) {
        os << "  [" << r.category_labels[i] << "] " << std::setw(6)
           << r.distribution.counts[i] << "  " << r.category_risks[i] << "\n";
    }
    os << "\nTotal classes (N):     " << r.distribution.total() << "\n"
       << "WMC entropy (bits):    " << fixed6(r.entropy_bits) << "\n"
       << "Degradation score N*H: " << fixed6(r.score) << "\n";
    if (!r.warnings.empty()) {
        os << "\nWarnings\n";
        for (const auto& w : r.warnings) os << "  - " << w << "\n";
    }
    return os.str();
}

TrendReport trend(const std::vector<DegradationReport>& reports, double entropy_step_gate) {
    TrendReport t;
    for (const auto& r : reports) {
        t.points.push_back({r.project, r.distribution.total(), r.entropy_bits, r.score});
    }
    for (std::size_t i = 1; i < t.points.size(); ++i) {
        const double dh = t.points[i].entropy_bits - t.points[i - 1].entropy_bits;
        t.entropy_deltas.push_back(dh);
        t.score_deltas.push_back(t.points[i].score - t.points[i - 1].score);
        if (dh > entropy_step_gate) t.flagged.push_back(i);
    }
    return t;
}

std::string render_trend(const TrendReport& r, ReportFormat format) {
    if (format == ReportFormat::Json) {
        json j;
        j["versions"] = json::array();
        for (const auto& p : r.points) {
            j["versions"].push_back({{"label", p.label},
                                     {"total_classes", p.total_classes},
                                     {"entropy_bits", p.entropy_bits},
                                     {"degradation_score", p.score}});
        }
        j["entropy_deltas"] = r.entropy_deltas;
        j["score_deltas"] = r.score_deltas;
        j["flagged_versions"] = r.flagged;
        return j.dump(2) + "\n";
    }
    if (format == ReportFormat::Csv) {
        std::ostringstream os;
        os << "version,total_classes,entropy_bits,degradation_score,delta_entropy,"
              "delta_score\n";
        for (std::size_t i = 0; i < r.points.size(); ++i) {
            const auto& p = r.points[i];
            os << csv_escape(p.label) << ',' << p.total_classes << ','
               << fixed6(p.entropy_bits) << ',' << fixed6(p.score) << ',';
            if (i == 0) {
                os << ",";
            } else {
                os << fixed6(r.entropy_deltas[i - 1]) << ',' << fixed6(r.score_deltas[i - 1]);
            }
            os << '\n';
        }
        return os.str();
    }
    std::ostringstream os;
    os << "Version trend\n"
       << "  version                  N     H(bits)        N*H    dH        dN*H\n";
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        const auto& p = r.points[i];
        os << "  " << std::left << std::setw(20) << p.label << std::right << std::setw(6)
           << p.total_classes << std::setw(12) << fixed6(p.entropy_bits) << std::setw(11)
           << fixed6(p.score);
        if (i > 0) {
            os << "  " << fixed6(r.entropy_deltas[i - 1]) << "  "
               << fixed6(r.score_deltas[i - 1]);
        }
        os << "\n";
    }
    for (std::size_t idx : r.flagged) {
        os << "  ! entropy rose beyond the configured step at version "
           << r.points[idx].label << "\n";
    }
    return os.str();
}

}  // namespace entropia
