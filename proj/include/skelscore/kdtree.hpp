#pragma once

#include "skelscore/geometry.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

namespace skelscore {

/// Static 3D k-d tree over a borrowed point array. Exact nearest-neighbor
/// and k-nearest queries; the point array must outlive the tree.
class KdTree3 {
public:
    struct Hit {
        std::size_t index = 0;
        double dist2 = std::numeric_limits<double>::infinity();
    };

    explicit KdTree3(const std::vector<Vec3>& points) : points_(points) {
        order_.resize(points.size());
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        nodes_.reserve(points.size() / kLeafSize * 2 + 4);
        if (!points.empty()) root_ = build(0, points.size());
    }

    /// Nearest point to `query`; `skip` excludes one index (use npos for none).
    Hit nearest(const Vec3& query, std::size_t skip = npos) const {
        Hit best;
        if (!points_.empty()) search(root_, query, skip, best);
        return best;
    }

    /// Up to k nearest points (excluding `skip`), sorted by ascending distance.
    std::vector<Hit> k_nearest(const Vec3& query, std::size_t k, std::size_t skip = npos) const {
        std::vector<Hit> heap;  // max-heap on dist2
        if (k == 0 || points_.empty()) return heap;
        heap.reserve(k + 1);
        search_k(root_, query, skip, k, heap);
        std::sort(heap.begin(), heap.end(), [](const Hit& a, const Hit& b) {
            return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.index < b.index);
        });
        return heap;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    static constexpr std::size_t kLeafSize = 12;

    struct Node {
        double split = 0.0;
        int axis = -1;           // -1 marks a leaf
        std::size_t begin = 0, end = 0;
        int left = -1, right = -1;
    };

    int build(std::size_t begin, std::size_t end) {
        Node node;
        node.begin = begin;
        node.end = end;
        const int id = static_cast<int>(nodes_.size());
        nodes_.push_back(node);
        if (end - begin <= kLeafSize) return id;

        Vec3 lo = points_[order_[begin]], hi = lo;
        for (std::size_t i = begin; i < end; ++i) {
            lo = lo.cwiseMin(points_[order_[i]]);
            hi = hi.cwiseMax(points_[order_[i]]);
        }
        int axis = 0;
        const Vec3 extent = hi - lo;
        if (extent.y() > extent.x()) axis = 1;
        if (extent.z() > extent[axis]) axis = 2;
        if (extent[axis] <= 0.0) return id;  // all coincident: keep as leaf

        const std::size_t mid = begin + (end - begin) / 2;
        std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                         [&](std::size_t a, std::size_t b) {
                             return points_[a][axis] < points_[b][axis];
                         });
        nodes_[id].axis = axis;
        nodes_[id].split = points_[order_[mid]][axis];
        const int left = build(begin, mid);
        const int right = build(mid, end);
        nodes_[id].left = left;
        nodes_[id].right = right;
        return id;
    }

    void search(int id, const Vec3& q, std::size_t skip, Hit& best) const {
        const Node& node = nodes_[id];
        if (node.axis < 0) {
            for (std::size_t i = node.begin; i < node.end; ++i) {
                const std::size_t idx = order_[i];
                if (idx == skip) continue;
                const double d2 = (points_[idx] - q).squaredNorm();
                if (d2 < best.dist2 || (d2 == best.dist2 && idx < best.index)) {
                    best.dist2 = d2;
                    best.index = idx;
                }
            }
            return;
        }
        const double delta = q[node.axis] - node.split;
        const int near = delta < 0.0 ? node.left : node.right;
        const int far = delta < 0.0 ? node.right : node.left;
        search(near, q, skip, best);
        if (delta * delta <= best.dist2) search(far, q, skip, best);
    }

    void search_k(int id, const Vec3& q, std::size_t skip, std::size_t k,
                  std::vector<Hit>& heap) const {
        const Node& node = nodes_[id];
        auto worse = [](const Hit& a, const Hit& b) {
            return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.index < b.index);
        };
        if (node.axis < 0) {
            for (std::size_t i = node.begin; i < node.end; ++i) {
                const std::size_t idx = order_[i];
                if (idx == skip) continue;
                const double d2 = (points_[idx] - q).squaredNorm();
                if (heap.size() < k) {
                    heap.push_back({idx, d2});
                    std::push_heap(heap.begin(), heap.end(), worse);
                } else if (d2 < heap.front().dist2 ||
                           (d2 == heap.front().dist2 && idx < heap.front().index)) {
                    std::pop_heap(heap.begin(), heap.end(), worse);
                    heap.back() = {idx, d2};
                    std::push_heap(heap.begin(), heap.end(), worse);
                }
            }
            return;
        }
        const double delta = q[node.axis] - node.split;
        const int near = delta < 0.0 ? node.left : node.right;
        const int far = delta < 0.0 ? node.right : node.left;
        search_k(near, q, skip, k, heap);
        if (heap.size() < k || delta * delta <= heap.front().dist2)
            search_k(far, q, skip, k, heap);
    }

    const std::vector<Vec3>& points_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace skelscore
