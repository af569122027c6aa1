#include "rainfield/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rainfield {

namespace {

struct Tri {
    int a, b, c;
};

bool in_circumcircle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    const double ax = a.x() - p.x(), ay = a.y() - p.y();
    const double bx = b.x() - p.x(), by = b.y() - p.y();
    const double cx = c.x() - p.x(), cy = c.y() - p.y();
    const double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                       (bx * bx + by * by) * (ax * cy - cx * ay) +
                       (cx * cx + cy * cy) * (ax * by - bx * ay);
    // sign convention assumes CCW (a,b,c)
    return det > 0.0;
}

double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

}  // namespace

std::vector<Triangle> delaunay_triangles(const StationCatalog& catalog) {
    const int n = catalog.size();
    if (n < 3) throw std::invalid_argument("delaunay_triangles: need at least 3 stations");

    std::vector<Vec2> pts(n + 3);
    for (int i = 0; i < n; ++i) pts[i] = catalog.position(i);

    Vec2 lo = pts[0], hi = pts[0];
    for (int i = 1; i < n; ++i) {
        lo = lo.cwiseMin(pts[i]);
        hi = hi.cwiseMax(pts[i]);
    }
    const Vec2 mid = 0.5 * (lo + hi);
    const double span = std::max((hi - lo).maxCoeff(), 1.0) * 64.0;
    pts[n] = mid + Vec2(-span, -span);
    pts[n + 1] = mid + Vec2(span, -span);
    pts[n + 2] = mid + Vec2(0.0, span);

    std::vector<Tri> tris{{n, n + 1, n + 2}};
    auto make_ccw = [&](Tri& t) {
        if (orient(pts[t.a], pts[t.b], pts[t.c]) < 0) std::swap(t.b, t.c);
    };

    for (int p = 0; p < n; ++p) {
        std::vector<Tri> keep;
        std::map<std::pair<int, int>, int> edge_count;
        for (const Tri& t : tris) {
            if (in_circumcircle(pts[p], pts[t.a], pts[t.b], pts[t.c])) {
                const int e[3][2] = {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
                for (const auto& ed : e) {
                    auto key = std::minmax(ed[0], ed[1]);
                    ++edge_count[{key.first, key.second}];
                }
            } else {
                keep.push_back(t);
            }
        }
        if (keep.size() == tris.size())
            throw std::runtime_error(
                "delaunay_triangles: point outside all circumcircles (duplicate position?)");
        // boundary edges of the cavity appear exactly once
        std::vector<Tri> cavity;
        for (const Tri& t : tris) {
            if (!in_circumcircle(pts[p], pts[t.a], pts[t.b], pts[t.c])) continue;
            const int e[3][2] = {{t.a, t.b}, {t.b, t.c}, {t.c, t.a}};
            for (const auto& ed : e) {
                auto key = std::minmax(ed[0], ed[1]);
                if (edge_count[{key.first, key.second}] == 1) {
                    Tri nt{ed[0], ed[1], p};
                    if (std::abs(orient(pts[nt.a], pts[nt.b], pts[nt.c])) < 1e-12) continue;
                    make_ccw(nt);
                    cavity.push_back(nt);
                }
            }
        }
        tris = std::move(keep);
        tris.insert(tris.end(), cavity.begin(), cavity.end());
    }

    std::vector<Triangle> out;
    for (const Tri& t : tris) {
        if (t.a >= n || t.b >= n || t.c >= n) continue;
        out.push_back({t.a, t.b, t.c});
    }
    if (out.empty()) throw std::runtime_error("delaunay_triangles: empty triangulation");
    std::sort(out.begin(), out.end(), [](const Triangle& x, const Triangle& y) {
        auto kx = x, ky = y;
        std::sort(kx.begin(), kx.end());
        std::sort(ky.begin(), ky.end());
        return kx < ky;
    });
    return out;
}

}  // namespace rainfield
