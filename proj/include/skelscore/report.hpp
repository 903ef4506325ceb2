#pragma once

#include "skelscore/barcode.hpp"
#include "skelscore/boundedness.hpp"
#include "skelscore/centeredness.hpp"
#include "skelscore/config.hpp"
#include "skelscore/geometry.hpp"
#include "skelscore/scores.hpp"
#include "skelscore/topology.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace skelscore {

/// Per-element scores plus the aggregate for one metric on one skeleton kind.
struct MetricBlock {
    std::vector<ElementScore> elements;
    double overall = 0.0;
    bool overall_valid = false;
    std::size_t counted = 0;    // elements passing the threshold (ratio metrics)
    std::size_t accounted = 0;  // valid elements
    std::string error;          // non-empty when the whole metric could not run
};

struct PointSetReport {
    std::optional<TopologyResult> topology;
    std::string topology_error;
    MetricBlock boundedness;
    MetricBlock centeredness;
    MetricBlock smoothness;
};

struct CurveReport {
    std::vector<CurveSample> samples;
    MetricBlock boundedness;   // per curve sample
    MetricBlock centeredness;  // per curve sample
    MetricBlock smoothness;    // per vertex; overall is the edge-length weighted value
};

struct NormalizationInfo {
    double source_diagonal = 0.0;
    SimilarityTransform transform;
};

struct EvaluationReport {
    static constexpr int kSchema = 1;
    RunConfig config;
    NormalizationInfo normalization;
    std::optional<PointSetReport> point_set;
    std::optional<CurveReport> curve;
};

nlohmann::json report_to_json(const EvaluationReport& report);

/// Writes the JSON report (deterministic byte-for-byte for a fixed report).
void export_report(const EvaluationReport& report, const std::string& path);

/// Score color scale: 0 -> cold blue, 1 -> warm red; invalid -> magenta.
std::array<std::uint8_t, 3> score_color(double value);
std::array<std::uint8_t, 3> invalid_color();

/// Scored elements as a colored point cloud (positions parallel to scores).
void export_colored_ply(const std::vector<Vec3>& positions,
                        const std::vector<ElementScore>& scores, const std::string& path);

/// Barcode CSV with columns birth,death,essential.
void export_barcode_csv(const PersistenceBarcode& barcode, const std::string& path);

/// Barcode SVG, bars sorted by persistence (descending); extremes_only keeps
/// just the top and bottom 5% of bars.
void export_barcode_svg(const PersistenceBarcode& barcode, const std::string& path,
                        bool extremes_only = false);

/// Cross-section audit CSV: one row per associated point of each section
/// (section id, projected u/v, fitted center, semi-axes).
void export_cross_sections_csv(const std::vector<CrossSection>& sections,
                               const std::string& path);

/// Sphere-coverage audit PLY: unit directions as vertices, surviving
/// triangles as faces.
void export_coverage_ply(const std::vector<Vec3>& directions, const SphereCoverage& coverage,
                         const std::string& path);

}  // namespace skelscore
