#pragma once

#include <cstdint>
#include <cstddef>

namespace skelscore {

/// Evaluation configuration, echoed verbatim into every report.
struct RunConfig {
    double beta_star = 0.75;     // boundedness threshold
    double c_star = 0.75;        // skeletal-point centeredness threshold (strict >)
    double curve_c_star = 0.75;  // curve-sample centeredness threshold (strict >)
    double d_star = 0.02;        // topological-similarity classification threshold
    int k = 8;                   // KNN size (tangents, skeletal centeredness)
    int m = 5;                   // smoothness neighbor count
    double alpha = 0.5;          // cutting-plane interval factor
    double prune_factor = 3.0;   // sphere-coverage triangle pruning factor
    std::size_t n_sp = 256;      // curve sample count
    double target_diagonal = 1.6;
    int wasserstein_p = 1;
    std::uint64_t seed = 0;
    bool bounded_if_geq = true;  // false applies the literal beta < beta* reading
    int threads = 0;             // 0 = library default, capped by SKELSCORE_THREADS
    bool sectional_pointset_centeredness = false;  // PCA-tangent mode for thin point sets

    /// Throws std::invalid_argument on out-of-range values.
    void validate() const;
};

/// Process-wide thread request honored by effective_threads(); 0 restores
/// the default.
void set_requested_threads(int threads);

}  // namespace skelscore
