#include "skelscore/delaunay2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace skelscore {

namespace {

// nbr[k] is the triangle across the edge opposite v[k], i.e. the edge
// (v[k+1], v[k+2]); -1 at the hull of the working complex.
struct Tri {
    std::array<int, 3> v;
    std::array<int, 3> nbr;
};

// Sign predicates evaluate in double with a static error filter and retry
// in long double only when the filter is inconclusive.
int orient_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double abx = b.x() - a.x(), aby = b.y() - a.y();
    const double acx = c.x() - a.x(), acy = c.y() - a.y();
    const double det = abx * acy - aby * acx;
    const double mag = std::abs(abx * acy) + std::abs(aby * acx);
    const double tol = mag * 4e-15;
    if (det > tol) return 1;
    if (det < -tol) return -1;

    const long double labx = static_cast<long double>(b.x()) - a.x();
    const long double laby = static_cast<long double>(b.y()) - a.y();
    const long double lacx = static_cast<long double>(c.x()) - a.x();
    const long double lacy = static_cast<long double>(c.y()) - a.y();
    const long double ldet = labx * lacy - laby * lacx;
    const long double lmag = std::abs(labx * lacy) + std::abs(laby * lacx);
    const long double ltol = lmag * 1e-16L;
    if (ldet > ltol) return 1;
    if (ldet < -ltol) return -1;
    return 0;
}

// Positive when d lies strictly inside the circumcircle of CCW (a, b, c).
int incircle_sign(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double adx = a.x() - d.x(), ady = a.y() - d.y();
    const double bdx = b.x() - d.x(), bdy = b.y() - d.y();
    const double cdx = c.x() - d.x(), cdy = c.y() - d.y();
    const double ad2 = adx * adx + ady * ady;
    const double bd2 = bdx * bdx + bdy * bdy;
    const double cd2 = cdx * cdx + cdy * cdy;
    const double t0 = ad2 * (bdx * cdy - bdy * cdx);
    const double t1 = bd2 * (adx * cdy - ady * cdx);
    const double t2 = cd2 * (adx * bdy - ady * bdx);
    const double det = t0 - t1 + t2;
    const double mag = std::abs(t0) + std::abs(t1) + std::abs(t2);
    const double tol = mag * 1e-14;
    if (det > tol) return 1;
    if (det < -tol) return -1;

    const long double ladx = static_cast<long double>(a.x()) - d.x();
    const long double lady = static_cast<long double>(a.y()) - d.y();
    const long double lbdx = static_cast<long double>(b.x()) - d.x();
    const long double lbdy = static_cast<long double>(b.y()) - d.y();
    const long double lcdx = static_cast<long double>(c.x()) - d.x();
    const long double lcdy = static_cast<long double>(c.y()) - d.y();
    const long double lad2 = ladx * ladx + lady * lady;
    const long double lbd2 = lbdx * lbdx + lbdy * lbdy;
    const long double lcd2 = lcdx * lcdx + lcdy * lcdy;
    const long double l0 = lad2 * (lbdx * lcdy - lbdy * lcdx);
    const long double l1 = lbd2 * (ladx * lcdy - lady * lcdx);
    const long double l2 = lcd2 * (ladx * lbdy - lady * lbdx);
    const long double ldet = l0 - l1 + l2;
    const long double lmag = std::abs(l0) + std::abs(l1) + std::abs(l2);
    const long double ltol = lmag * 1e-16L;
    if (ldet > ltol) return 1;
    if (ldet < -ltol) return -1;
    return 0;
}

class Triangulator {
public:
    const std::vector<std::array<int, 3>>& run(const std::vector<Vec2>& points) {
        out_.clear();
        const int n = static_cast<int>(points.size());
        if (n < 3) return out_;

        Vec2 lo = points[0], hi = points[0];
        for (const Vec2& p : points) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        const double extent = std::max((hi - lo).x(), (hi - lo).y());
        if (!(extent > 0.0)) return out_;
        dup_eps2_ = extent * extent * 1e-24;

        verts_.assign(points.begin(), points.end());
        const Vec2 center = 0.5 * (lo + hi);
        const double big = 256.0 * extent;
        verts_.push_back(center + Vec2(0.0, 2.0 * big));
        verts_.push_back(center + Vec2(-2.0 * big, -big));
        verts_.push_back(center + Vec2(2.0 * big, -big));

        tris_.clear();
        tris_.reserve(2 * n + 8);
        tris_.push_back({{n, n + 1, n + 2}, {-1, -1, -1}});
        last_ = 0;

        fill_insertion_order(points, lo, extent);
        for (int idx : order_) insert(idx);

        out_.reserve(tris_.size());
        for (const Tri& t : tris_)
            if (t.v[0] < n && t.v[1] < n && t.v[2] < n) out_.push_back(t.v);
        return out_;
    }

private:
    // Serpentine grid order keeps consecutive insertions spatially adjacent,
    // so the locate walk stays short.
    void fill_insertion_order(const std::vector<Vec2>& points, const Vec2& lo, double extent) {
        const int n = static_cast<int>(points.size());
        const int grid = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n) / 2.0)));
        keys_.resize(n);
        for (int i = 0; i < n; ++i) {
            int cx = static_cast<int>((points[i].x() - lo.x()) / extent * grid);
            int cy = static_cast<int>((points[i].y() - lo.y()) / extent * grid);
            cx = std::clamp(cx, 0, grid - 1);
            cy = std::clamp(cy, 0, grid - 1);
            if (cy & 1) cx = grid - 1 - cx;
            keys_[i] = (static_cast<std::uint64_t>(cy) << 40) |
                       (static_cast<std::uint64_t>(cx) << 20) | static_cast<std::uint32_t>(i);
        }
        std::sort(keys_.begin(), keys_.end());
        order_.resize(n);
        for (int i = 0; i < n; ++i) order_[i] = static_cast<int>(keys_[i] & 0xFFFFF);
    }

    int locate(const Vec2& p, std::array<int, 3>& signs) {
        int t = last_;
        const int cap = static_cast<int>(tris_.size()) * 4 + 64;
        for (int step = 0; step < cap; ++step) {
            const Tri& tri = tris_[t];
            int exit_edge = -1;
            for (int k = 0; k < 3; ++k) {
                signs[k] =
                    orient_sign(verts_[tri.v[(k + 1) % 3]], verts_[tri.v[(k + 2) % 3]], p);
                if (signs[k] < 0 && tri.nbr[k] >= 0) exit_edge = k;
            }
            if (exit_edge < 0) return t;
            t = tris_[t].nbr[exit_edge];
        }
        // walk cycled on a near-degenerate configuration: scan everything
        for (int cand = 0; cand < static_cast<int>(tris_.size()); ++cand) {
            const Tri& tri = tris_[cand];
            bool inside = true;
            for (int k = 0; k < 3; ++k) {
                signs[k] =
                    orient_sign(verts_[tri.v[(k + 1) % 3]], verts_[tri.v[(k + 2) % 3]], p);
                if (signs[k] < 0) inside = false;
            }
            if (inside) return cand;
        }
        return -1;
    }

    void set_neighbor(int tri, int old_nbr, int new_nbr) {
        if (tri < 0) return;
        for (int k = 0; k < 3; ++k)
            if (tris_[tri].nbr[k] == old_nbr) {
                tris_[tri].nbr[k] = new_nbr;
                return;
            }
    }

    int index_of_neighbor(int tri, int nbr) const {
        for (int k = 0; k < 3; ++k)
            if (tris_[tri].nbr[k] == nbr) return k;
        return -1;
    }

    void insert(int pi) {
        const Vec2 p = verts_[pi];
        std::array<int, 3> signs{};
        const int t = locate(p, signs);
        if (t < 0) return;

        for (int k = 0; k < 3; ++k)
            if ((verts_[tris_[t].v[k]] - p).squaredNorm() <= dup_eps2_) return;  // duplicate

        int zeros = 0, zero_edge = -1;
        for (int k = 0; k < 3; ++k)
            if (signs[k] == 0) {
                ++zeros;
                zero_edge = k;
            }
        flip_stack_.clear();
        if (zeros == 1 && tris_[t].nbr[zero_edge] >= 0)
            split_edge(t, zero_edge, pi);
        else if (zeros >= 2)
            return;  // effectively on a vertex
        else
            split_triangle(t, pi);
        legalize();
        last_ = t;
    }

    void split_triangle(int t, int pi) {
        const Tri old = tris_[t];
        const int a = old.v[0], b = old.v[1], c = old.v[2];
        const int q = static_cast<int>(tris_.size());
        const int r = q + 1;
        tris_[t] = {{a, b, pi}, {q, r, old.nbr[2]}};
        tris_.push_back({{b, c, pi}, {r, t, old.nbr[0]}});
        tris_.push_back({{c, a, pi}, {t, q, old.nbr[1]}});
        set_neighbor(old.nbr[0], t, q);
        set_neighbor(old.nbr[1], t, r);
        flip_stack_.push_back({t, pi});
        flip_stack_.push_back({q, pi});
        flip_stack_.push_back({r, pi});
    }

    void split_edge(int t, int k, int pi) {
        const Tri old_t = tris_[t];
        const int o = old_t.nbr[k];
        const int ko = index_of_neighbor(o, t);
        const Tri old_o = tris_[o];

        const int a = old_t.v[k];
        const int u = old_t.v[(k + 1) % 3];
        const int w = old_t.v[(k + 2) % 3];
        const int z = old_o.v[ko];

        const int ext_wa = old_t.nbr[(k + 1) % 3];
        const int ext_au = old_t.nbr[(k + 2) % 3];
        const int ext_uz = old_o.nbr[(ko + 1) % 3];
        const int ext_zw = old_o.nbr[(ko + 2) % 3];

        const int t2 = static_cast<int>(tris_.size());
        const int o2 = t2 + 1;
        tris_[t] = {{a, u, pi}, {o2, t2, ext_au}};
        tris_.push_back({{a, pi, w}, {o, ext_wa, t}});  // t2
        tris_[o] = {{z, w, pi}, {t2, o2, ext_zw}};
        tris_.push_back({{z, pi, u}, {t, ext_uz, o}});  // o2
        set_neighbor(ext_wa, t, t2);
        set_neighbor(ext_uz, o, o2);
        flip_stack_.push_back({t, pi});
        flip_stack_.push_back({t2, pi});
        flip_stack_.push_back({o, pi});
        flip_stack_.push_back({o2, pi});
    }

    void legalize() {
        int budget = static_cast<int>(tris_.size()) * 8 + 256;
        while (!flip_stack_.empty() && budget-- > 0) {
            const auto [t, apex] = flip_stack_.back();
            flip_stack_.pop_back();
            int k = -1;
            for (int i = 0; i < 3; ++i)
                if (tris_[t].v[i] == apex) k = i;
            if (k < 0) continue;  // stale entry
            const int o = tris_[t].nbr[k];
            if (o < 0) continue;
            const int ko = index_of_neighbor(o, t);
            if (ko < 0) continue;
            const int z = tris_[o].v[ko];
            const Vec2& pa = verts_[tris_[t].v[k]];
            const Vec2& pu = verts_[tris_[t].v[(k + 1) % 3]];
            const Vec2& pw = verts_[tris_[t].v[(k + 2) % 3]];
            if (incircle_sign(pa, pu, pw, verts_[z]) <= 0) continue;
            // flip only across a strictly convex quad
            if (orient_sign(pa, pu, verts_[z]) <= 0 || orient_sign(pa, verts_[z], pw) <= 0)
                continue;
            flip(t, k, o, ko);
            flip_stack_.push_back({t, apex});
            flip_stack_.push_back({o, apex});
        }
    }

    void flip(int t, int k, int o, int ko) {
        const Tri old_t = tris_[t];
        const Tri old_o = tris_[o];
        const int p = old_t.v[k];
        const int u = old_t.v[(k + 1) % 3];
        const int w = old_t.v[(k + 2) % 3];
        const int z = old_o.v[ko];
        const int A = old_t.nbr[(k + 1) % 3];   // across (w, p)
        const int B = old_t.nbr[(k + 2) % 3];   // across (p, u)
        const int C = old_o.nbr[(ko + 1) % 3];  // across (u, z)
        const int D = old_o.nbr[(ko + 2) % 3];  // across (z, w)

        tris_[t] = {{p, u, z}, {C, o, B}};
        tris_[o] = {{p, z, w}, {D, A, t}};
        set_neighbor(C, o, t);
        set_neighbor(A, t, o);
    }

    std::vector<Vec2> verts_;
    std::vector<Tri> tris_;
    std::vector<std::pair<int, int>> flip_stack_;
    std::vector<std::uint64_t> keys_;
    std::vector<int> order_;
    std::vector<std::array<int, 3>> out_;
    double dup_eps2_ = 0.0;
    int last_ = 0;
};

}  // namespace

std::vector<std::array<int, 3>> delaunay_triangulate(const std::vector<Vec2>& points) {
    thread_local Triangulator triangulator;
    return triangulator.run(points);
}

}  // namespace skelscore
