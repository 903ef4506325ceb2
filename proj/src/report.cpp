#include "skelscore/report.hpp"

#include "skelscore/io_formats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace skelscore {

void RunConfig::validate() const {
    auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!in_unit(beta_star)) throw std::invalid_argument("config: beta* must be in (0, 1]");
    if (!in_unit(c_star)) throw std::invalid_argument("config: c* must be in (0, 1]");
    if (!in_unit(curve_c_star)) throw std::invalid_argument("config: curve c* must be in (0, 1]");
    if (!(d_star > 0.0) || d_star > target_diagonal)
        throw std::invalid_argument("config: d* must be in (0, target diagonal]");
    if (k < 2) throw std::invalid_argument("config: k must be >= 2");
    if (m < 1) throw std::invalid_argument("config: m must be >= 1");
    if (!(alpha > 0.0) || alpha >= 1.0)
        throw std::invalid_argument("config: alpha must be in (0, 1)");
    if (!(prune_factor > 0.0)) throw std::invalid_argument("config: prune factor must be positive");
    if (n_sp < 2) throw std::invalid_argument("config: n_sp must be >= 2");
    if (!(target_diagonal > 0.0))
        throw std::invalid_argument("config: target diagonal must be positive");
    if (wasserstein_p < 1) throw std::invalid_argument("config: p must be >= 1");
    if (threads < 0) throw std::invalid_argument("config: threads must be >= 0");
}

namespace {

nlohmann::json config_to_json(const RunConfig& config) {
    return {
        {"alpha", config.alpha},
        {"beta_star", config.beta_star},
        {"bounded_if_geq", config.bounded_if_geq},
        {"c_star", config.c_star},
        {"curve_c_star", config.curve_c_star},
        {"d_star", config.d_star},
        {"k", config.k},
        {"m", config.m},
        {"n_sp", config.n_sp},
        {"prune_factor", config.prune_factor},
        {"sectional_pointset_centeredness", config.sectional_pointset_centeredness},
        {"seed", config.seed},
        {"target_diagonal", config.target_diagonal},
        {"threads", config.threads},
        {"wasserstein_p", config.wasserstein_p},
    };
}

nlohmann::json elements_to_json(const std::vector<ElementScore>& elements) {
    nlohmann::json out = nlohmann::json::array();
    for (const ElementScore& score : elements) {
        nlohmann::json entry{{"id", score.element}, {"valid", score.valid}};
        if (score.valid) entry["value"] = score.value;
        if (!score.reason.empty()) entry[score.valid ? "note" : "reason"] = score.reason;
        out.push_back(std::move(entry));
    }
    return out;
}

nlohmann::json block_to_json(const MetricBlock& block, bool ratio_metric) {
    nlohmann::json out;
    if (!block.error.empty()) {
        out["error"] = block.error;
        return out;
    }
    out["accounted"] = block.accounted;
    if (ratio_metric) out["counted"] = block.counted;
    if (block.overall_valid)
        out["overall"] = block.overall;
    else
        out["overall"] = nullptr;
    out["elements"] = elements_to_json(block.elements);
    return out;
}

nlohmann::json topology_to_json(const TopologyResult& topology) {
    return {
        {"bars_original", topology.bars_original},
        {"bars_skeletal", topology.bars_skeletal},
        {"bottleneck", topology.bottleneck},
        {"classification", to_string(topology.classification)},
        {"epsilon_star", topology.epsilon_star},
        {"n_b", topology.n_b},
        {"wasserstein", topology.wasserstein},
        {"wasserstein_p", topology.wasserstein_p},
    };
}

void add_summary_pair(nlohmann::json& summary, const char* name, const MetricBlock* point_block,
                      const MetricBlock* curve_block) {
    nlohmann::json entry;
    auto value_or_null = [](const MetricBlock* block) -> nlohmann::json {
        if (!block || !block->error.empty() || !block->overall_valid) return nullptr;
        return block->overall;
    };
    entry["point_set"] = value_or_null(point_block);
    entry["curve"] = value_or_null(curve_block);
    summary[name] = std::move(entry);
}

}  // namespace

nlohmann::json report_to_json(const EvaluationReport& report) {
    nlohmann::json out;
    out["schema"] = EvaluationReport::kSchema;
    out["config"] = config_to_json(report.config);
    out["normalization"] = {
        {"source_diagonal", report.normalization.source_diagonal},
        {"scale", report.normalization.transform.scale},
        {"offset",
         {report.normalization.transform.offset.x(), report.normalization.transform.offset.y(),
          report.normalization.transform.offset.z()}},
    };

    if (report.point_set) {
        nlohmann::json block;
        if (report.point_set->topology)
            block["topology"] = topology_to_json(*report.point_set->topology);
        else
            block["topology"] = {{"error", report.point_set->topology_error}};
        block["boundedness"] = block_to_json(report.point_set->boundedness, true);
        block["centeredness"] = block_to_json(report.point_set->centeredness, true);
        block["smoothness"] = block_to_json(report.point_set->smoothness, false);
        out["point_set"] = std::move(block);
    }
    if (report.curve) {
        nlohmann::json block;
        nlohmann::json samples = nlohmann::json::array();
        for (const CurveSample& sample : report.curve->samples)
            samples.push_back({{"edge", sample.edge}, {"t", sample.t}});
        block["samples"] = std::move(samples);
        block["boundedness"] = block_to_json(report.curve->boundedness, true);
        block["centeredness"] = block_to_json(report.curve->centeredness, true);
        block["smoothness"] = block_to_json(report.curve->smoothness, false);
        out["curve"] = std::move(block);
    }

    nlohmann::json summary;
    add_summary_pair(summary, "boundedness",
                     report.point_set ? &report.point_set->boundedness : nullptr,
                     report.curve ? &report.curve->boundedness : nullptr);
    add_summary_pair(summary, "centeredness",
                     report.point_set ? &report.point_set->centeredness : nullptr,
                     report.curve ? &report.curve->centeredness : nullptr);
    add_summary_pair(summary, "smoothness",
                     report.point_set ? &report.point_set->smoothness : nullptr,
                     report.curve ? &report.curve->smoothness : nullptr);
    if (report.point_set && report.point_set->topology) {
        summary["bottleneck"] = report.point_set->topology->bottleneck;
        summary["wasserstein"] = report.point_set->topology->wasserstein;
        summary["classification"] = to_string(report.point_set->topology->classification);
    }
    out["summary"] = std::move(summary);
    return out;
}

void export_report(const EvaluationReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << report_to_json(report).dump(2) << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

namespace {

std::uint8_t lerp_channel(double a, double b, double t) {
    return static_cast<std::uint8_t>(std::lround(255.0 * (a + (b - a) * t)));
}

}  // namespace

std::array<std::uint8_t, 3> score_color(double value) {
    // two-segment cold/warm map through a pale midpoint
    const double t = std::clamp(value, 0.0, 1.0);
    const double cold[3] = {0.23, 0.30, 0.75};
    const double mid[3] = {0.86, 0.86, 0.86};
    const double warm[3] = {0.71, 0.02, 0.15};
    std::array<std::uint8_t, 3> color{};
    for (int c = 0; c < 3; ++c)
        color[c] = t < 0.5 ? lerp_channel(cold[c], mid[c], 2.0 * t)
                           : lerp_channel(mid[c], warm[c], 2.0 * t - 1.0);
    return color;
}

std::array<std::uint8_t, 3> invalid_color() { return {255, 0, 255}; }

void export_colored_ply(const std::vector<Vec3>& positions,
                        const std::vector<ElementScore>& scores, const std::string& path) {
    if (positions.size() != scores.size())
        throw std::invalid_argument("export_colored_ply: positions/scores size mismatch");
    std::vector<std::array<std::uint8_t, 3>> colors;
    colors.reserve(scores.size());
    for (const ElementScore& score : scores)
        colors.push_back(score.valid ? score_color(score.value) : invalid_color());
    save_ply_colored(positions, colors, path);
}

void export_barcode_csv(const PersistenceBarcode& barcode, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << "birth,death,essential\n";
    out.precision(17);
    for (const PersistenceBar& bar : barcode.bars)
        out << bar.birth << "," << bar.death << "," << (bar.essential ? 1 : 0) << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

void export_barcode_svg(const PersistenceBarcode& barcode, const std::string& path,
                        bool extremes_only) {
    std::vector<PersistenceBar> bars = barcode.bars;
    std::sort(bars.begin(), bars.end(), [](const PersistenceBar& a, const PersistenceBar& b) {
        return a.persistence() > b.persistence();
    });
    if (extremes_only && bars.size() > 2) {
        const std::size_t keep = std::max<std::size_t>(1, (bars.size() + 19) / 20);  // 5%
        if (2 * keep < bars.size()) {
            std::vector<PersistenceBar> trimmed(bars.begin(), bars.begin() + keep);
            trimmed.insert(trimmed.end(), bars.end() - keep, bars.end());
            bars = std::move(trimmed);
        }
    }

    double max_death = 0.0;
    for (const PersistenceBar& bar : bars) max_death = std::max(max_death, bar.death);
    if (max_death <= 0.0) max_death = 1.0;

    const double width = 640.0, left = 40.0, right = 10.0, row = 6.0, top = 12.0;
    const double height = top + row * static_cast<double>(bars.size()) + 12.0;
    const double scale = (width - left - right) / max_death;

    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out.precision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <line x1=\"" << left << "\" y1=\"" << top - 6 << "\" x2=\"" << left << "\" y2=\""
        << height - 6 << "\" stroke=\"#444\" stroke-width=\"1\"/>\n";
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double x = left + bars[i].birth * scale;
        const double w = std::max(0.5, bars[i].persistence() * scale);
        const double y = top + row * static_cast<double>(i);
        out << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
            << row - 1.5 << "\" fill=\"" << (bars[i].essential ? "#b2182b" : "#2166ac")
            << "\"/>\n";
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

void export_cross_sections_csv(const std::vector<CrossSection>& sections,
                               const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << "section,point_u,point_v,center_u,center_v,semi_major,semi_minor,fit_valid\n";
    out.precision(9);
    for (std::size_t s = 0; s < sections.size(); ++s) {
        const CrossSection& section = sections[s];
        for (const Vec2& q : section.projected)
            out << s << "," << q.x() << "," << q.y() << "," << section.fitted_center.x() << ","
                << section.fitted_center.y() << "," << section.semi_major << ","
                << section.semi_minor << "," << (section.fit_valid ? 1 : 0) << "\n";
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

void export_coverage_ply(const std::vector<Vec3>& directions, const SphereCoverage& coverage,
                         const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open file for writing");
    out << "ply\nformat ascii 1.0\n"
        << "element vertex " << directions.size() << "\n"
        << "property float x\nproperty float y\nproperty float z\n"
        << "element face " << coverage.triangles.size() << "\n"
        << "property list uchar int vertex_indices\n"
        << "end_header\n";
    out.precision(7);
    for (const Vec3& u : directions) out << u.x() << " " << u.y() << " " << u.z() << "\n";
    for (const auto& tri : coverage.triangles)
        out << "3 " << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace skelscore
