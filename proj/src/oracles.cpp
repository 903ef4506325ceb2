#include "skelscore/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace skelscore::oracle {

namespace {

double point_distance(const Vec3& a, const Vec3& b) {
    const double dx = a.x() - b.x();
    const double dy = a.y() - b.y();
    const double dz = a.z() - b.z();
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct OracleEdge {
    double length;
    std::size_t i, j;
};

}  // namespace

PersistenceBarcode oracle_h0_persistence(const PointCloud& cloud, double eps_max) {
    const std::size_t n = cloud.size();
    if (n == 0) throw std::invalid_argument("oracle_h0_persistence: empty cloud");
    if (n > 30) throw std::invalid_argument("oracle_h0_persistence: size guard n <= 30");
    if (!(eps_max > 0.0)) throw std::invalid_argument("oracle_h0_persistence: eps_max > 0");

    std::vector<OracleEdge> edges;
    edges.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double length = point_distance(cloud[i], cloud[j]);
            if (length < eps_max) edges.push_back({length, i, j});
        }
    std::sort(edges.begin(), edges.end(), [](const OracleEdge& a, const OracleEdge& b) {
        if (a.length != b.length) return a.length < b.length;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    // Z2 boundary-matrix reduction. Vertex columns are empty; each edge
    // column starts as its two vertices. low(column) = largest vertex index;
    // while another processed column shares the same low, add it (xor).
    std::vector<long long> killer_of_vertex(n, -1);            // vertex -> edge column
    std::vector<std::vector<std::size_t>> reduced(edges.size());
    PersistenceBarcode barcode;
    barcode.bars.reserve(n);

    for (std::size_t col = 0; col < edges.size(); ++col) {
        std::vector<std::size_t> chain{edges[col].i, edges[col].j};
        std::sort(chain.begin(), chain.end());
        while (!chain.empty()) {
            const std::size_t low = chain.back();
            const long long other = killer_of_vertex[low];
            if (other < 0) break;
            // symmetric difference with the already-reduced column
            std::vector<std::size_t> merged;
            std::set_symmetric_difference(chain.begin(), chain.end(),
                                          reduced[static_cast<std::size_t>(other)].begin(),
                                          reduced[static_cast<std::size_t>(other)].end(),
                                          std::back_inserter(merged));
            chain = std::move(merged);
        }
        if (!chain.empty()) {
            const std::size_t killed = chain.back();
            killer_of_vertex[killed] = static_cast<long long>(col);
            reduced[col] = std::move(chain);
            barcode.bars.push_back({0.0, edges[col].length, false});
        }
        // empty column: the edge creates a cycle (H1), irrelevant for H0
    }
    for (std::size_t v = 0; v < n; ++v)
        if (killer_of_vertex[v] < 0) barcode.bars.push_back({0.0, eps_max, true});
    return barcode;
}

namespace {

struct MatchState {
    const std::vector<PersistenceBar>* a = nullptr;
    const std::vector<PersistenceBar>* b = nullptr;
    int p = 0;  // 0 = bottleneck (max), otherwise sum of powers
    std::vector<char> used_b;
    double best = std::numeric_limits<double>::infinity();
};

double pair_cost(const PersistenceBar& x, const PersistenceBar& y) {
    return std::max(std::abs(x.birth - y.birth), std::abs(x.death - y.death));
}

double diag(const PersistenceBar& x) { return 0.5 * (x.death - x.birth); }

double power(double x, int p) {
    double r = 1.0;
    for (int i = 0; i < p; ++i) r *= x;
    return r;
}

void enumerate(MatchState& state, std::size_t ai, double accumulated) {
    const auto& a = *state.a;
    const auto& b = *state.b;
    if (accumulated >= state.best) return;
    if (ai == a.size()) {
        double total = accumulated;
        for (std::size_t bj = 0; bj < b.size(); ++bj) {
            if (state.used_b[bj]) continue;
            const double c = diag(b[bj]);
            total = state.p == 0 ? std::max(total, c) : total + power(c, state.p);
            if (total >= state.best) return;
        }
        state.best = std::min(state.best, total);
        return;
    }
    {  // a[ai] -> its diagonal projection
        const double c = diag(a[ai]);
        const double acc = state.p == 0 ? std::max(accumulated, c) : accumulated + power(c, state.p);
        enumerate(state, ai + 1, acc);
    }
    for (std::size_t bj = 0; bj < b.size(); ++bj) {
        if (state.used_b[bj]) continue;
        const double c = pair_cost(a[ai], b[bj]);
        const double acc = state.p == 0 ? std::max(accumulated, c) : accumulated + power(c, state.p);
        state.used_b[bj] = 1;
        enumerate(state, ai + 1, acc);
        state.used_b[bj] = 0;
    }
}

}  // namespace

double oracle_matching_distance(const PersistenceBarcode& a, const PersistenceBarcode& b, int p) {
    if (a.size() > 6 || b.size() > 6)
        throw std::invalid_argument("oracle_matching_distance: size guard 6 bars per barcode");
    if (a.empty() && b.empty()) return 0.0;

    MatchState state;
    state.a = &a.bars;
    state.b = &b.bars;
    state.p = p;
    state.used_b.assign(b.size(), 0);
    enumerate(state, 0, 0.0);

    if (p == 0) return state.best;
    const double n_b = static_cast<double>(std::max(a.size(), b.size()));
    return std::pow(state.best, 1.0 / p) / n_b;
}

double oracle_sphere_coverage(const Vec3& x, const PointCloud& cloud,
                              std::size_t grid_resolution, double prune_factor) {
    if (grid_resolution < 64)
        throw std::invalid_argument("oracle_sphere_coverage: grid resolution >= 64");

    std::vector<double> lat, lon;  // direction angles
    for (const Vec3& p : cloud.points) {
        const double dx = p.x() - x.x(), dy = p.y() - x.y(), dz = p.z() - x.z();
        const double len = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (len <= 1e-12) continue;
        lon.push_back(std::atan2(dy, dx));
        lat.push_back(std::atan2(dz, std::sqrt(dx * dx + dy * dy)));
    }
    const std::size_t n = lat.size();
    if (n < 2) return 0.0;

    // per-direction angular nearest-neighbor spacing, brute force
    std::vector<double> nn(n, std::numeric_limits<double>::infinity());
    std::vector<double> sin_lat(n), cos_lat(n);
    for (std::size_t i = 0; i < n; ++i) {
        sin_lat[i] = std::sin(lat[i]);
        cos_lat[i] = std::cos(lat[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double c = sin_lat[i] * sin_lat[j] +
                             cos_lat[i] * cos_lat[j] * std::cos(lon[i] - lon[j]);
            const double angle = std::acos(std::clamp(c, -1.0, 1.0));
            nn[i] = std::min(nn[i], angle);
            nn[j] = std::min(nn[j], angle);
        }

    const std::size_t rows = grid_resolution;
    const std::size_t cols = 2 * grid_resolution;
    const double dphi = M_PI / static_cast<double>(rows);
    const double dlam = 2.0 * M_PI / static_cast<double>(cols);
    std::vector<char> covered(rows * cols, 0);

    for (std::size_t d = 0; d < n; ++d) {
        // a cell is covered when its center lies within this direction's
        // pruning radius (prune_factor x its own nearest-neighbor spacing)
        const double radius = prune_factor * nn[d];
        if (!(radius > 0.0)) continue;
        const double cos_radius = std::cos(std::min(radius, M_PI));
        const long long row_lo =
            static_cast<long long>(std::floor((lat[d] - radius + M_PI / 2.0) / dphi));
        const long long row_hi =
            static_cast<long long>(std::ceil((lat[d] + radius + M_PI / 2.0) / dphi));
        for (long long r = std::max(row_lo, 0LL);
             r < std::min(row_hi, static_cast<long long>(rows)); ++r) {
            const double phi_c = -M_PI / 2.0 + (static_cast<double>(r) + 0.5) * dphi;
            const double cos_row = std::cos(phi_c);
            long long col_lo = 0, col_hi = static_cast<long long>(cols);
            if (cos_row > 1e-6 && radius / cos_row < M_PI) {
                const double span = radius / cos_row + dlam;
                const double center = (lon[d] + M_PI) / dlam;
                col_lo = static_cast<long long>(std::floor(center - span / dlam)) - 1;
                col_hi = static_cast<long long>(std::ceil(center + span / dlam)) + 1;
            }
            const double sin_row = std::sin(phi_c);
            for (long long cc = col_lo; cc < col_hi; ++cc) {
                const long long wrapped = ((cc % static_cast<long long>(cols)) +
                                           static_cast<long long>(cols)) %
                                          static_cast<long long>(cols);
                const double lam_c = -M_PI + (static_cast<double>(wrapped) + 0.5) * dlam;
                const double cos_angle = sin_lat[d] * sin_row +
                                         cos_lat[d] * cos_row * std::cos(lon[d] - lam_c);
                if (cos_angle >= cos_radius)
                    covered[static_cast<std::size_t>(r) * cols +
                            static_cast<std::size_t>(wrapped)] = 1;
            }
        }
    }

    double covered_area = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        const double phi0 = -M_PI / 2.0 + static_cast<double>(r) * dphi;
        const double band = dlam * (std::sin(phi0 + dphi) - std::sin(phi0));
        for (std::size_t c = 0; c < cols; ++c)
            if (covered[r * cols + c]) covered_area += band;
    }
    return covered_area / (4.0 * M_PI);
}

}  // namespace skelscore::oracle
