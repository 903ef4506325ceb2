#include "skelscore/evaluate.hpp"

#include "skelscore/smoothness.hpp"

#include <stdexcept>

namespace skelscore {

namespace {

MetricBlock boundedness_block(const OverallBoundedness& overall) {
    MetricBlock block;
    block.elements = overall.elements;
    block.overall = overall.ratio;
    block.overall_valid = overall.valid;
    block.counted = overall.bounded;
    block.accounted = overall.accounted;
    return block;
}

MetricBlock centeredness_block(std::vector<ElementScore> scores, double threshold) {
    MetricBlock block;
    const OverallCenteredness overall = overall_centeredness(scores, threshold);
    block.elements = std::move(scores);
    block.overall = overall.ratio;
    block.overall_valid = overall.valid;
    block.counted = overall.centered;
    block.accounted = overall.accounted;
    return block;
}

}  // namespace

EvaluationReport evaluate(const EvaluationInput& input, const RunConfig& config) {
    config.validate();
    set_requested_threads(config.threads);
    validate_cloud(input.original, "original cloud");
    if (!input.skeletal && !input.curve)
        throw std::invalid_argument("evaluate: need a skeletal point set or a curve skeleton");
    if (input.skeletal) input.skeletal->validate_against(input.original);
    if (input.curve) input.curve->validate();

    EvaluationReport report;
    report.config = config;

    // normalize the original; the identical transform goes to the skeletons
    report.normalization.source_diagonal = bounding_box_diagonal(input.original);
    auto [original, transform] =
        normalize_to_diagonal(input.original, config.target_diagonal);
    report.normalization.transform = transform;

    BoundednessOptions bounded_options;
    bounded_options.prune_factor = config.prune_factor;
    bounded_options.beta_star = config.beta_star;
    bounded_options.bounded_if_geq = config.bounded_if_geq;

    CenterednessOptions centered_options;
    centered_options.k = config.k;
    centered_options.alpha = config.alpha;
    centered_options.point_threshold = config.c_star;
    centered_options.curve_threshold = config.curve_c_star;

    SmoothnessOptions smooth_options;
    smooth_options.k = config.k;
    smooth_options.m = config.m;

    if (input.skeletal) {
        const SkeletalPointSet skeletal = transform.apply(*input.skeletal);
        PointSetReport block;

        try {
            TopologyOptions topo_options;
            topo_options.epsilon_max = config.target_diagonal;
            topo_options.d_star = config.d_star;
            topo_options.wasserstein_p = config.wasserstein_p;
            block.topology = topological_similarity(original, skeletal, topo_options);
        } catch (const std::exception& error) {
            block.topology_error = error.what();
        }

        try {
            block.boundedness =
                boundedness_block(overall_boundedness_points(skeletal, original, bounded_options));
        } catch (const std::exception& error) {
            block.boundedness.error = error.what();
        }

        try {
            auto scores = config.sectional_pointset_centeredness
                              ? score_skeletal_centeredness_sectional(skeletal, original,
                                                                      centered_options)
                              : score_skeletal_centeredness(skeletal, original, centered_options);
            block.centeredness = centeredness_block(std::move(scores), config.c_star);
        } catch (const std::exception& error) {
            block.centeredness.error = error.what();
        }

        try {
            auto scores = score_point_smoothness(skeletal, smooth_options);
            const OverallSmoothness overall = overall_point_smoothness(scores);
            block.smoothness.elements = std::move(scores);
            block.smoothness.overall = overall.value;
            block.smoothness.overall_valid = overall.valid;
            block.smoothness.accounted = overall.accounted;
        } catch (const std::exception& error) {
            block.smoothness.error = error.what();
        }

        report.point_set = std::move(block);
    }

    if (input.curve) {
        const CurveSkeleton curve = transform.apply(*input.curve);
        CurveReport block;

        try {
            block.samples = sample_curve_points(curve, config.n_sp);
        } catch (const std::exception& error) {
            block.boundedness.error = error.what();
            block.centeredness.error = error.what();
        }

        if (!block.samples.empty()) {
            try {
                std::vector<Vec3> positions;
                positions.reserve(block.samples.size());
                for (const CurveSample& sample : block.samples)
                    positions.push_back(sample.position);
                SkeletalPointSet queries;
                queries.points = std::move(positions);
                queries.correspondence.assign(queries.points.size(), 0);  // unused by boundedness
                block.boundedness =
                    boundedness_block(overall_boundedness_points(queries, original, bounded_options));
            } catch (const std::exception& error) {
                block.boundedness.error = error.what();
            }

            try {
                auto scores = score_curve_centeredness(curve, block.samples, original,
                                                       centered_options, config.target_diagonal);
                block.centeredness = centeredness_block(std::move(scores), config.curve_c_star);
            } catch (const std::exception& error) {
                block.centeredness.error = error.what();
            }
        }

        try {
            const CurveSmoothnessResult smooth = overall_curve_smoothness(curve);
            block.smoothness.elements = smooth.vertices;
            block.smoothness.overall = smooth.value;
            block.smoothness.overall_valid = true;
            block.smoothness.accounted = count_valid(smooth.vertices);
        } catch (const std::exception& error) {
            block.smoothness.error = error.what();
        }

        report.curve = std::move(block);
    }

    return report;
}

}  // namespace skelscore
