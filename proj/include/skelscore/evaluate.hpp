#pragma once

#include "skelscore/config.hpp"
#include "skelscore/geometry.hpp"
#include "skelscore/report.hpp"

#include <optional>

namespace skelscore {

struct EvaluationInput {
    PointCloud original;
    std::optional<SkeletalPointSet> skeletal;
    std::optional<CurveSkeleton> curve;
};

/// Full four-metric evaluation.
///
/// The original cloud is normalized to the configured diagonal and the same
/// transform is applied to the skeleton inputs. Topological similarity needs
/// a skeletal point set; boundedness, centeredness, and smoothness run for
/// both skeleton kinds. Per-element failures are recorded in the report and
/// never abort the run; metric-level failures land in the block's error
/// field. Throws only for unusable inputs or an invalid configuration.
EvaluationReport evaluate(const EvaluationInput& input, const RunConfig& config);

}  // namespace skelscore
