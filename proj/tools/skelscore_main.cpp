// skelscore: batch scoring of point-cloud skeletonization results
// (topological similarity, boundedness, centeredness, smoothness).

#include "skelscore/boundedness.hpp"
#include "skelscore/centeredness.hpp"
#include "skelscore/degrade.hpp"
#include "skelscore/evaluate.hpp"
#include "skelscore/io_formats.hpp"
#include "skelscore/report.hpp"
#include "skelscore/smoothness.hpp"
#include "skelscore/synthetic.hpp"
#include "skelscore/topology.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace skelscore;

struct ConfigFlags {
    RunConfig values;
    CLI::Option* beta_star = nullptr;
    CLI::Option* c_star = nullptr;
    CLI::Option* curve_c_star = nullptr;
    CLI::Option* d_star = nullptr;
    CLI::Option* k = nullptr;
    CLI::Option* m = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* prune = nullptr;
    CLI::Option* n_sp = nullptr;
    CLI::Option* diagonal = nullptr;
    CLI::Option* p = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* threads = nullptr;
    CLI::Option* bounded_lt = nullptr;
    CLI::Option* sectional = nullptr;
    bool bounded_lt_flag = false;
    bool sectional_flag = false;
    std::string config_path;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
    cmd->add_option("--config", flags.config_path,
                    "JSON config file; individual flags override its values");
    flags.beta_star = cmd->add_option("--beta-star", flags.values.beta_star,
                                      "boundedness threshold (default 0.75)");
    flags.c_star = cmd->add_option("--c-star", flags.values.c_star,
                                   "skeletal-point centeredness threshold (default 0.75)");
    flags.curve_c_star = cmd->add_option("--curve-c-star", flags.values.curve_c_star,
                                         "curve centeredness threshold (default 0.75)");
    flags.d_star = cmd->add_option("--d-star", flags.values.d_star,
                                   "topological similarity threshold (default 0.02)");
    flags.k = cmd->add_option("--k", flags.values.k, "KNN size (default 8)");
    flags.m = cmd->add_option("--m", flags.values.m, "smoothness neighbor count (default 5)");
    flags.alpha = cmd->add_option("--alpha", flags.values.alpha,
                                  "cutting-plane interval factor (default 0.5)");
    flags.prune = cmd->add_option("--prune-factor", flags.values.prune_factor,
                                  "coverage pruning factor (default 3)");
    flags.n_sp = cmd->add_option("--n-sp", flags.values.n_sp,
                                 "curve sample count (default 256)");
    flags.diagonal = cmd->add_option("--diagonal", flags.values.target_diagonal,
                                     "normalization target diagonal (default 1.6)");
    flags.p = cmd->add_option("--p", flags.values.wasserstein_p,
                              "Wasserstein order (default 1)");
    flags.seed = cmd->add_option("--seed", flags.values.seed, "random seed (default 0)");
    flags.threads = cmd->add_option("--threads", flags.values.threads,
                                    "worker threads, 0 = auto (SKELSCORE_THREADS caps)");
    flags.bounded_lt = cmd->add_flag("--bounded-lt", flags.bounded_lt_flag,
                                     "count beta < beta* as bounded (literal reading)");
    flags.sectional = cmd->add_flag("--sectional-centeredness", flags.sectional_flag,
                                    "cross-section centeredness for thin point sets");
}

void merge_json_config(const std::string& path, RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open config file");
    nlohmann::json json;
    in >> json;
    auto get = [&json](const char* key, auto& slot) {
        if (json.contains(key)) slot = json.at(key).get<std::decay_t<decltype(slot)>>();
    };
    get("alpha", config.alpha);
    get("beta_star", config.beta_star);
    get("bounded_if_geq", config.bounded_if_geq);
    get("c_star", config.c_star);
    get("curve_c_star", config.curve_c_star);
    get("d_star", config.d_star);
    get("k", config.k);
    get("m", config.m);
    get("n_sp", config.n_sp);
    get("prune_factor", config.prune_factor);
    get("sectional_pointset_centeredness", config.sectional_pointset_centeredness);
    get("seed", config.seed);
    get("target_diagonal", config.target_diagonal);
    get("threads", config.threads);
    get("wasserstein_p", config.wasserstein_p);
}

RunConfig resolve_config(const ConfigFlags& flags) {
    RunConfig config;
    if (!flags.config_path.empty()) merge_json_config(flags.config_path, config);
    auto apply = [](CLI::Option* option, auto& target, const auto& value) {
        if (option && option->count() > 0) target = value;
    };
    apply(flags.beta_star, config.beta_star, flags.values.beta_star);
    apply(flags.c_star, config.c_star, flags.values.c_star);
    apply(flags.curve_c_star, config.curve_c_star, flags.values.curve_c_star);
    apply(flags.d_star, config.d_star, flags.values.d_star);
    apply(flags.k, config.k, flags.values.k);
    apply(flags.m, config.m, flags.values.m);
    apply(flags.alpha, config.alpha, flags.values.alpha);
    apply(flags.prune, config.prune_factor, flags.values.prune_factor);
    apply(flags.n_sp, config.n_sp, flags.values.n_sp);
    apply(flags.diagonal, config.target_diagonal, flags.values.target_diagonal);
    apply(flags.p, config.wasserstein_p, flags.values.wasserstein_p);
    apply(flags.seed, config.seed, flags.values.seed);
    apply(flags.threads, config.threads, flags.values.threads);
    if (flags.bounded_lt && flags.bounded_lt->count() > 0) config.bounded_if_geq = false;
    if (flags.sectional && flags.sectional->count() > 0)
        config.sectional_pointset_centeredness = true;
    config.validate();
    return config;
}

struct SkeletonInputs {
    std::string cloud_path;
    std::string points_path;
    std::string curve_path;
    std::string correspondence;  // "", "identity", "nearest", or a file path
};

EvaluationInput load_inputs(const SkeletonInputs& paths, bool need_cloud = true) {
    EvaluationInput input;
    if (!paths.cloud_path.empty())
        input.original = load_point_cloud(paths.cloud_path);
    else if (need_cloud)
        throw std::runtime_error("--cloud is required");

    if (!paths.points_path.empty()) {
        const PointCloud raw = load_point_cloud(paths.points_path);
        if (paths.correspondence.empty() || paths.correspondence == "identity") {
            SkeletalPointSet skeletal;
            skeletal.points = raw.points;
            input.skeletal = std::move(skeletal);
        } else if (paths.correspondence == "nearest") {
            input.skeletal = with_nearest_correspondence(raw.points, input.original);
        } else {
            SkeletalPointSet skeletal;
            skeletal.points = raw.points;
            skeletal.correspondence = load_correspondence(paths.correspondence);
            input.skeletal = std::move(skeletal);
        }
    }
    if (!paths.curve_path.empty()) input.curve = load_curve_skeleton(paths.curve_path);
    return input;
}

void add_input_flags(CLI::App* cmd, SkeletonInputs& paths, bool need_cloud = true) {
    auto* cloud = cmd->add_option("--cloud", paths.cloud_path, "original point cloud (.xyz/.ply)");
    if (need_cloud) cloud->required();
    cmd->add_option("--skeleton-points", paths.points_path,
                    "skeletal point set (.xyz/.ply)");
    cmd->add_option("--skeleton-curve", paths.curve_path,
                    "curve skeleton (.obj or edge list)");
    cmd->add_option("--correspondence", paths.correspondence,
                    "skeletal correspondence: identity (default), nearest, or an index file");
}

std::string format_overall(const MetricBlock& block) {
    if (!block.error.empty()) return "error (" + block.error + ")";
    if (!block.overall_valid) return "invalid";
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", block.overall);
    return buffer;
}

void print_summary(const EvaluationReport& report) {
    if (report.point_set) {
        const auto& block = *report.point_set;
        std::cout << "point set:\n";
        if (block.topology)
            std::cout << "  topology     d_B=" << block.topology->bottleneck
                      << " d_W" << block.topology->wasserstein_p << "="
                      << block.topology->wasserstein << " eps*=" << block.topology->epsilon_star
                      << " -> " << to_string(block.topology->classification) << " similarity\n";
        else
            std::cout << "  topology     error (" << block.topology_error << ")\n";
        std::cout << "  boundedness  " << format_overall(block.boundedness) << "\n";
        std::cout << "  centeredness " << format_overall(block.centeredness) << "\n";
        std::cout << "  smoothness   " << format_overall(block.smoothness) << "\n";
    }
    if (report.curve) {
        const auto& block = *report.curve;
        std::cout << "curve skeleton:\n";
        std::cout << "  boundedness  " << format_overall(block.boundedness) << "\n";
        std::cout << "  centeredness " << format_overall(block.centeredness) << "\n";
        std::cout << "  smoothness   " << format_overall(block.smoothness) << "\n";
    }
}

std::vector<Vec3> element_positions(const EvaluationInput& input, const EvaluationReport& report,
                                    bool curve, const MetricBlock& block) {
    // positions in the normalized frame, matching the report's element ids
    std::vector<Vec3> positions;
    const auto& transform = report.normalization.transform;
    if (!curve) {
        for (const Vec3& p : input.skeletal->points) positions.push_back(transform.apply(p));
    } else if (&block == &report.curve->smoothness) {
        for (const Vec3& v : input.curve->vertices) positions.push_back(transform.apply(v));
    } else {
        for (const CurveSample& sample : report.curve->samples)
            positions.push_back(sample.position);
    }
    return positions;
}

int run_evaluate(const SkeletonInputs& paths, const ConfigFlags& flags,
                 const std::string& report_path, const std::string& colored_prefix,
                 const std::string& barcode_csv, const std::string& barcode_svg,
                 bool svg_extremes) {
    const RunConfig config = resolve_config(flags);
    const EvaluationInput input = load_inputs(paths);
    const EvaluationReport report = evaluate(input, config);
    print_summary(report);

    if (!report_path.empty()) export_report(report, report_path);

    if (!colored_prefix.empty()) {
        auto dump = [&](const MetricBlock& block, bool curve, const std::string& name) {
            if (!block.error.empty() || block.elements.empty()) return;
            export_colored_ply(element_positions(input, report, curve, block), block.elements,
                               colored_prefix + "_" + name + ".ply");
        };
        if (report.point_set) {
            dump(report.point_set->boundedness, false, "points_boundedness");
            dump(report.point_set->centeredness, false, "points_centeredness");
            dump(report.point_set->smoothness, false, "points_smoothness");
        }
        if (report.curve) {
            dump(report.curve->boundedness, true, "curve_boundedness");
            dump(report.curve->centeredness, true, "curve_centeredness");
            dump(report.curve->smoothness, true, "curve_smoothness");
        }
    }

    if ((!barcode_csv.empty() || !barcode_svg.empty()) && report.point_set &&
        report.point_set->topology) {
        auto [original, transform] = normalize_to_diagonal(input.original, config.target_diagonal);
        const SkeletalPointSet skeletal = transform.apply(*input.skeletal);
        const double eps_star = report.point_set->topology->epsilon_star;
        const auto original_bars =
            filter_barcode(h0_barcode(original, config.target_diagonal), eps_star);
        const auto skeletal_bars =
            filter_barcode(h0_barcode(skeletal.as_cloud(), config.target_diagonal), eps_star);
        if (!barcode_csv.empty()) {
            export_barcode_csv(original_bars, barcode_csv + "_original.csv");
            export_barcode_csv(skeletal_bars, barcode_csv + "_skeletal.csv");
        }
        if (!barcode_svg.empty()) {
            export_barcode_svg(original_bars, barcode_svg + "_original.svg", svg_extremes);
            export_barcode_svg(skeletal_bars, barcode_svg + "_skeletal.svg", svg_extremes);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skelscore: quantitative scoring of point-cloud skeletonization results"};
    app.require_subcommand(1);

    // evaluate
    SkeletonInputs eval_paths;
    ConfigFlags eval_flags;
    std::string report_path, colored_prefix, eval_barcode_csv, eval_barcode_svg;
    bool eval_svg_extremes = false;
    auto* cmd_evaluate =
        app.add_subcommand("evaluate", "run all applicable metrics and write a JSON report");
    add_input_flags(cmd_evaluate, eval_paths);
    add_config_flags(cmd_evaluate, eval_flags);
    cmd_evaluate->add_option("--report", report_path, "JSON report output path");
    cmd_evaluate->add_option("--colored-ply-prefix", colored_prefix,
                             "write per-element score clouds as <prefix>_<metric>.ply");
    cmd_evaluate->add_option("--barcode-csv", eval_barcode_csv,
                             "write filtered barcodes as <prefix>_{original,skeletal}.csv");
    cmd_evaluate->add_option("--barcode-svg", eval_barcode_svg,
                             "write filtered barcode plots as <prefix>_{original,skeletal}.svg");
    cmd_evaluate->add_flag("--svg-extremes", eval_svg_extremes,
                           "only the top and bottom 5% of bars in the SVG");

    // topo
    SkeletonInputs topo_paths;
    ConfigFlags topo_flags;
    std::string topo_barcode_csv, topo_barcode_svg;
    bool topo_svg_extremes = false;
    auto* cmd_topo = app.add_subcommand("topo", "topological similarity of a skeletal point set");
    add_input_flags(cmd_topo, topo_paths);
    add_config_flags(cmd_topo, topo_flags);
    cmd_topo->add_option("--barcode-csv", topo_barcode_csv, "barcode CSV prefix");
    cmd_topo->add_option("--barcode-svg", topo_barcode_svg, "barcode SVG prefix");
    cmd_topo->add_flag("--svg-extremes", topo_svg_extremes, "only extreme bars in the SVG");

    // bounded
    SkeletonInputs bounded_paths;
    ConfigFlags bounded_flags;
    std::string coverage_ply;
    long long coverage_element = -1;
    auto* cmd_bounded = app.add_subcommand("bounded", "boundedness of skeletal elements");
    add_input_flags(cmd_bounded, bounded_paths);
    add_config_flags(cmd_bounded, bounded_flags);
    cmd_bounded->add_option("--coverage-ply", coverage_ply,
                            "write one element's sphere coverage triangles as PLY");
    cmd_bounded->add_option("--coverage-element", coverage_element,
                            "element id for --coverage-ply (default 0)");

    // centered
    SkeletonInputs centered_paths;
    ConfigFlags centered_flags;
    std::string sections_csv;
    auto* cmd_centered = app.add_subcommand("centered", "centeredness of skeletal elements");
    add_input_flags(cmd_centered, centered_paths);
    add_config_flags(cmd_centered, centered_flags);
    cmd_centered->add_option("--sections-csv", sections_csv,
                             "write cross-section audit rows (curve skeletons)");

    // smooth
    SkeletonInputs smooth_paths;
    ConfigFlags smooth_flags;
    auto* cmd_smooth = app.add_subcommand("smooth", "smoothness of a skeleton");
    add_input_flags(cmd_smooth, smooth_paths, false);
    add_config_flags(cmd_smooth, smooth_flags);

    // degrade
    std::string degrade_in, degrade_out;
    double noise_fraction = -1.0;
    long long target_n = -1;
    std::uint64_t degrade_seed = 0;
    auto* cmd_degrade =
        app.add_subcommand("degrade", "noise or grid-averaged downsampling of a cloud");
    cmd_degrade->add_option("--in", degrade_in, "input cloud")->required();
    cmd_degrade->add_option("--out", degrade_out, "output cloud")->required();
    cmd_degrade->add_option("--noise", noise_fraction,
                            "gaussian sigma as a fraction of the bbox diagonal (e.g. 0.05)");
    cmd_degrade->add_option("--target-n", target_n, "downsample to about this many points");
    cmd_degrade->add_option("--seed", degrade_seed, "noise seed (default 0)");

    // synth
    std::string synth_kind = "cylinder", synth_out, synth_skeleton_out;
    std::size_t synth_n = 4096;
    std::uint64_t synth_seed = 0;
    ShapeParams shape_params;
    shape_params.radius = 0.1;
    double box_x = 1.0, box_y = 1.0, box_z = 1.0;
    auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic shape and ground truth");
    cmd_synth->add_option("--kind", synth_kind,
                          "sphere | cylinder | torus | box | dumbbell | l-polyline");
    cmd_synth->add_option("--n", synth_n, "sample count (default 4096)");
    cmd_synth->add_option("--seed", synth_seed, "sampling seed");
    cmd_synth->add_option("--radius", shape_params.radius, "radius (default 0.1)");
    cmd_synth->add_option("--length", shape_params.length, "length (default 1)");
    cmd_synth->add_option("--major-radius", shape_params.major_radius, "torus ring radius");
    cmd_synth->add_option("--minor-radius", shape_params.minor_radius, "torus tube radius");
    cmd_synth->add_option("--neck-radius", shape_params.neck_radius, "dumbbell neck radius");
    cmd_synth->add_option("--box-x", box_x, "box extent x");
    cmd_synth->add_option("--box-y", box_y, "box extent y");
    cmd_synth->add_option("--box-z", box_z, "box extent z");
    cmd_synth->add_option("--axis-segments", shape_params.axis_segments,
                          "ground-truth polyline segments");
    cmd_synth->add_option("--out", synth_out, "cloud output (.xyz/.ply)")->required();
    cmd_synth->add_option("--skeleton-out", synth_skeleton_out,
                          "ground-truth skeleton output (.obj or edge list)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_evaluate->parsed())
            return run_evaluate(eval_paths, eval_flags, report_path, colored_prefix,
                                eval_barcode_csv, eval_barcode_svg, eval_svg_extremes);

        if (cmd_topo->parsed()) {
            const RunConfig config = resolve_config(topo_flags);
            if (topo_paths.points_path.empty())
                throw std::runtime_error("topo needs --skeleton-points");
            const EvaluationInput input = load_inputs(topo_paths);
            auto [original, transform] =
                normalize_to_diagonal(input.original, config.target_diagonal);
            const SkeletalPointSet skeletal = transform.apply(*input.skeletal);
            TopologyOptions options;
            options.epsilon_max = config.target_diagonal;
            options.d_star = config.d_star;
            options.wasserstein_p = config.wasserstein_p;
            const TopologyResult result = topological_similarity(original, skeletal, options);
            std::cout << "eps*=" << result.epsilon_star << " d_B=" << result.bottleneck
                      << " d_W" << result.wasserstein_p << "=" << result.wasserstein
                      << " bars=" << result.bars_original << "/" << result.bars_skeletal
                      << " -> " << to_string(result.classification) << " similarity\n";
            if (!topo_barcode_csv.empty() || !topo_barcode_svg.empty()) {
                const auto original_bars =
                    filter_barcode(h0_barcode(original, config.target_diagonal),
                                   result.epsilon_star);
                const auto skeletal_bars =
                    filter_barcode(h0_barcode(skeletal.as_cloud(), config.target_diagonal),
                                   result.epsilon_star);
                if (!topo_barcode_csv.empty()) {
                    export_barcode_csv(original_bars, topo_barcode_csv + "_original.csv");
                    export_barcode_csv(skeletal_bars, topo_barcode_csv + "_skeletal.csv");
                }
                if (!topo_barcode_svg.empty()) {
                    export_barcode_svg(original_bars, topo_barcode_svg + "_original.svg",
                                       topo_svg_extremes);
                    export_barcode_svg(skeletal_bars, topo_barcode_svg + "_skeletal.svg",
                                       topo_svg_extremes);
                }
            }
            return 0;
        }

        if (cmd_bounded->parsed()) {
            const RunConfig config = resolve_config(bounded_flags);
            const EvaluationInput input = load_inputs(bounded_paths);
            if (!input.skeletal && !input.curve)
                throw std::runtime_error("bounded needs --skeleton-points or --skeleton-curve");
            auto [original, transform] =
                normalize_to_diagonal(input.original, config.target_diagonal);
            BoundednessOptions options;
            options.prune_factor = config.prune_factor;
            options.beta_star = config.beta_star;
            options.bounded_if_geq = config.bounded_if_geq;

            std::vector<Vec3> queries;
            if (input.skeletal) {
                const SkeletalPointSet skeletal = transform.apply(*input.skeletal);
                queries = skeletal.points;
                const auto overall = overall_boundedness_points(skeletal, original, options);
                std::cout << "point-set boundedness " << overall.ratio << " (" << overall.bounded
                          << "/" << overall.accounted << ")\n";
            }
            if (input.curve) {
                const CurveSkeleton curve = transform.apply(*input.curve);
                const auto overall =
                    overall_boundedness_curve(curve, original, config.n_sp, options);
                std::cout << "curve boundedness " << overall.ratio << " (" << overall.bounded
                          << "/" << overall.accounted << ")\n";
                if (queries.empty())
                    for (const auto& sample : sample_curve_points(curve, config.n_sp))
                        queries.push_back(sample.position);
            }
            if (!coverage_ply.empty() && !queries.empty()) {
                const std::size_t element =
                    coverage_element < 0 ? 0 : static_cast<std::size_t>(coverage_element);
                if (element >= queries.size())
                    throw std::runtime_error("--coverage-element out of range");
                const auto directions = project_to_unit_sphere(queries[element], original);
                const auto coverage = covered_area(directions, config.prune_factor, true);
                export_coverage_ply(directions, coverage, coverage_ply);
                std::cout << "coverage beta=" << coverage.beta() << " triangles="
                          << coverage.kept << " written to " << coverage_ply << "\n";
            }
            return 0;
        }

        if (cmd_centered->parsed()) {
            const RunConfig config = resolve_config(centered_flags);
            const EvaluationInput input = load_inputs(centered_paths);
            if (!input.skeletal && !input.curve)
                throw std::runtime_error("centered needs --skeleton-points or --skeleton-curve");
            auto [original, transform] =
                normalize_to_diagonal(input.original, config.target_diagonal);
            CenterednessOptions options;
            options.k = config.k;
            options.alpha = config.alpha;
            options.point_threshold = config.c_star;
            options.curve_threshold = config.curve_c_star;

            if (input.skeletal) {
                const SkeletalPointSet skeletal = transform.apply(*input.skeletal);
                auto scores = config.sectional_pointset_centeredness
                                  ? score_skeletal_centeredness_sectional(skeletal, original,
                                                                          options)
                                  : score_skeletal_centeredness(skeletal, original, options);
                const auto overall = overall_centeredness(scores, config.c_star);
                std::cout << "point-set centeredness " << overall.ratio << " ("
                          << overall.centered << "/" << overall.accounted << ")\n";
            }
            if (input.curve) {
                const CurveSkeleton curve = transform.apply(*input.curve);
                const auto samples = sample_curve_points(curve, config.n_sp);
                const auto scores = score_curve_centeredness(curve, samples, original, options,
                                                             config.target_diagonal);
                const auto overall = overall_centeredness(scores, config.curve_c_star);
                std::cout << "curve centeredness " << overall.ratio << " (" << overall.centered
                          << "/" << overall.accounted << ")\n";
                if (!sections_csv.empty()) {
                    const double eps_p = cutting_plane_interval(curve, config.alpha);
                    const auto adjacency = curve.adjacency();
                    std::vector<CrossSection> sections;
                    for (const auto& sample : samples) {
                        try {
                            const Vec3 direction =
                                curve_direction_at(curve, sample.edge, sample.t, adjacency);
                            sections.push_back(
                                build_cross_section(original, sample.position, direction, eps_p));
                        } catch (const std::exception&) {
                            sections.push_back({});
                        }
                    }
                    export_cross_sections_csv(sections, sections_csv);
                }
            }
            return 0;
        }

        if (cmd_smooth->parsed()) {
            const RunConfig config = resolve_config(smooth_flags);
            const EvaluationInput input = load_inputs(smooth_paths, false);
            if (!input.skeletal && !input.curve)
                throw std::runtime_error("smooth needs --skeleton-points or --skeleton-curve");
            SmoothnessOptions options;
            options.k = config.k;
            options.m = config.m;
            if (input.skeletal) {
                const auto scores = score_point_smoothness(*input.skeletal, options);
                const auto overall = overall_point_smoothness(scores);
                std::cout << "point-set smoothness "
                          << (overall.valid ? std::to_string(overall.value) : "invalid") << " ("
                          << overall.accounted << " points)\n";
            }
            if (input.curve) {
                const auto result = overall_curve_smoothness(*input.curve);
                std::cout << "curve smoothness " << result.value << "\n";
            }
            return 0;
        }

        if (cmd_degrade->parsed()) {
            const PointCloud cloud = load_point_cloud(degrade_in);
            PointCloud result;
            if (noise_fraction >= 0.0 && target_n >= 0)
                throw std::runtime_error("degrade takes either --noise or --target-n");
            if (noise_fraction >= 0.0) {
                result = degrade_noise(cloud, noise_fraction, degrade_seed);
            } else if (target_n >= 1) {
                const auto downsampled =
                    degrade_downsample(cloud, static_cast<std::size_t>(target_n));
                result = downsampled.cloud;
                if (!downsampled.reached_target)
                    std::cerr << "warning: target count unreachable, wrote "
                              << result.size() << " points\n";
            } else {
                throw std::runtime_error("degrade needs --noise or --target-n");
            }
            if (degrade_out.size() > 4 && degrade_out.substr(degrade_out.size() - 4) == ".ply")
                save_ply(result, degrade_out);
            else
                save_xyz(result, degrade_out);
            std::cout << "wrote " << result.size() << " points to " << degrade_out << "\n";
            return 0;
        }

        if (cmd_synth->parsed()) {
            const auto kind = shape_kind_from_string(synth_kind);
            if (!kind) throw std::runtime_error("unknown shape kind '" + synth_kind + "'");
            shape_params.box_extent = Vec3(box_x, box_y, box_z);
            const SyntheticShape shape = generate(*kind, shape_params, synth_n, synth_seed);
            if (synth_out.size() > 4 && synth_out.substr(synth_out.size() - 4) == ".ply")
                save_ply(shape.cloud, synth_out);
            else
                save_xyz(shape.cloud, synth_out);
            std::cout << "wrote " << shape.cloud.size() << " points to " << synth_out << "\n";
            if (!synth_skeleton_out.empty()) {
                if (!shape.ground_truth)
                    throw std::runtime_error(std::string(to_string(*kind)) +
                                             " has no curve ground truth");
                if (synth_skeleton_out.size() > 4 &&
                    synth_skeleton_out.substr(synth_skeleton_out.size() - 4) == ".obj")
                    save_obj_lines(*shape.ground_truth, synth_skeleton_out);
                else
                    save_edge_list(*shape.ground_truth, synth_skeleton_out);
                std::cout << "wrote ground-truth skeleton to " << synth_skeleton_out << "\n";
            }
            return 0;
        }
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
    return 0;
}
