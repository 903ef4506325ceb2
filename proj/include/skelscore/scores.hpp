#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace skelscore {

/// Per-element metric record. Invalid elements carry a reason and are
/// excluded from overall ratios; a valid element may still carry a note
/// (e.g. the fold-back warning for curve smoothness).
struct ElementScore {
    std::size_t element = 0;
    double value = 0.0;
    bool valid = true;
    std::string reason;
};

namespace invalid_reason {
inline constexpr const char* degenerate_query = "degenerate query";
inline constexpr const char* degenerate_neighborhood = "degenerate neighborhood";
inline constexpr const char* degenerate_tangent = "degenerate tangent";
inline constexpr const char* joint_vertex = "coincides with joint vertex";
inline constexpr const char* few_associated = "fewer than three associated points";
inline constexpr const char* unfittable = "unfittable cross-section";
inline constexpr const char* zero_length_edge = "zero-length incident edge";
inline constexpr const char* too_few_neighbors = "too few neighbors";
}  // namespace invalid_reason

namespace score_note {
inline constexpr const char* fold_back = "fold-back turn angle above 135 degrees";
}

inline std::size_t count_valid(const std::vector<ElementScore>& scores) {
    std::size_t n = 0;
    for (const ElementScore& s : scores) n += s.valid ? 1 : 0;
    return n;
}

}  // namespace skelscore
