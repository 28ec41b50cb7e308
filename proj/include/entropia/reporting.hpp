#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "entropia/ck_metrics.hpp"
#include "entropia/entropy.hpp"

namespace entropia {

struct ClassMetricsRow {
    std::string class_name;
    MetricVector metrics;
    std::string category_label;
};

struct DegradationReport {
    std::string project;
    std::optional<SourceStats> stats;
    double ratio_comment_code = 0.0;
    long inactive_lines = 0;  // always 0; inactive-line detection is not performed
    std::vector<ClassMetricsRow> rows;
    CategoryDistribution distribution;
    std::vector<std::string> category_labels;
    std::vector<std::string> category_risks;
    double entropy_bits = 0.0;
    double score = 0.0;  // N * H
    std::vector<std::string> warnings;
};

// Assembles the report from precomputed per-class metrics and the WMC
// categorization; row order follows the model's class order.
DegradationReport build_report(const ClassModel& model,
                               const std::vector<MetricVector>& metrics,
                               const Categorization& categorization,
                               const ThresholdTable& thresholds,
                               const std::string& project_label);

// Convenience wrapper: metrics + categorize + build_report in one step.
DegradationReport analyze_model(const ClassModel& model, const ThresholdTable& thresholds,
                                WmcWeighting weighting, const std::string& project_label,
                                bool strict = false);

enum class ReportFormat { Text, Csv, Json };

// TEXT and CSV render numbers with 6 decimal places; JSON keeps full
// precision. Rendering is pure: the same report yields identical bytes.
std::string render(const DegradationReport& report, ReportFormat format);

struct TrendPoint {
    std::string label;
    long total_classes = 0;
    double entropy_bits = 0.0;
    double score = 0.0;
};

struct TrendReport {
    std::vector<TrendPoint> points;
    std::vector<double> entropy_deltas;  // size = points - 1
    std::vector<double> score_deltas;
    std::vector<std::size_t> flagged;  // versions whose H rose beyond the step gate
};

TrendReport trend(const std::vector<DegradationReport>& reports,
                  double entropy_step_gate = std::numeric_limits<double>::infinity());

std::string render_trend(const TrendReport& report, ReportFormat format);

}  // namespace entropia
