#include "fraclap/geometry.hpp"
#include "fraclap/error.hpp"

#include <cmath>

namespace fraclap {

namespace {

double dist2(const Point& a, const Point& b, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return acc;
}

// distance from q to segment [a, b] in 2D
double segment_distance(const std::array<double, 2>& a,
                        const std::array<double, 2>& b, double qx, double qy) {
    const double vx = b[0] - a[0], vy = b[1] - a[1];
    const double wx = qx - a[0], wy = qy - a[1];
    const double vv = vx * vx + vy * vy;
    double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = wx - t * vx, dy = wy - t * vy;
    return std::sqrt(dx * dx + dy * dy);
}

bool point_in_polygon(const Polygon& poly, double qx, double qy) {
    // even-odd crossing rule
    bool inside = false;
    const auto& v = poly.vertices;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        const bool cross = ((v[i][1] > qy) != (v[j][1] > qy)) &&
                           (qx < (v[j][0] - v[i][0]) * (qy - v[i][1]) /
                                         (v[j][1] - v[i][1]) +
                                     v[i][0]);
        if (cross) inside = !inside;
    }
    return inside;
}

double polygon_area2(const Polygon& poly) {
    double acc = 0.0;
    const auto& v = poly.vertices;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
        acc += v[j][0] * v[i][1] - v[i][0] * v[j][1];
    return acc; // twice the signed area
}

bool segments_intersect(const std::array<double, 2>& p1,
                        const std::array<double, 2>& p2,
                        const std::array<double, 2>& q1,
                        const std::array<double, 2>& q2) {
    auto orient = [](const std::array<double, 2>& a,
                     const std::array<double, 2>& b,
                     const std::array<double, 2>& c) {
        const double v = (b[0] - a[0]) * (c[1] - a[1]) -
                         (b[1] - a[1]) * (c[0] - a[0]);
        return v > 0 ? 1 : (v < 0 ? -1 : 0);
    };
    const int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    const int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    return o1 != o2 && o3 != o4;
}

} // namespace

Domain::Domain(int n, Ball b) : n_(n), shape_(b) {
    if (n != 2 && n != 3) throw ConfigError("domain dimension must be 2 or 3");
    if (!(b.radius > 0.0)) throw ConfigError("ball radius must be positive");
}

Domain::Domain(int n, AxisBox b) : n_(n), shape_(b) {
    if (n != 2 && n != 3) throw ConfigError("domain dimension must be 2 or 3");
    for (int i = 0; i < n; ++i)
        if (!(b.lo[i] < b.hi[i]))
            throw ConfigError("box must satisfy lo < hi componentwise");
}

Domain::Domain(Polygon p) : n_(2), shape_(std::move(p)) {
    const auto& poly = std::get<Polygon>(shape_);
    if (poly.vertices.size() < 3)
        throw ConfigError("polygon needs at least 3 vertices");
    if (polygon_area2(poly) <= 0.0)
        throw ConfigError("polygon must be positively oriented");
    // simplicity: no two non-adjacent edges intersect
    const auto& v = poly.vertices;
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            if (j == i || (j + 1) % m == i || (i + 1) % m == j) continue;
            if (segments_intersect(v[i], v[(i + 1) % m], v[j],
                                   v[(j + 1) % m]))
                throw ConfigError("polygon is self-intersecting");
        }
}

bool Domain::contains(const Point& x) const {
    constexpr double kEdge = 1e-12;
    if (const Ball* b = std::get_if<Ball>(&shape_)) {
        return std::sqrt(dist2(x, b->center, n_)) < b->radius - kEdge;
    }
    if (const AxisBox* b = std::get_if<AxisBox>(&shape_)) {
        for (int i = 0; i < n_; ++i)
            if (!(x[i] > b->lo[i] + kEdge && x[i] < b->hi[i] - kEdge))
                return false;
        return true;
    }
    const Polygon& poly = std::get<Polygon>(shape_);
    if (!point_in_polygon(poly, x[0], x[1])) return false;
    return boundary_distance(x) > kEdge;
}

double Domain::boundary_distance(const Point& x) const {
    if (const Ball* b = std::get_if<Ball>(&shape_)) {
        return std::abs(std::sqrt(dist2(x, b->center, n_)) - b->radius);
    }
    if (const AxisBox* b = std::get_if<AxisBox>(&shape_)) {
        double out2 = 0.0;
        double inner = 1e300;
        bool outside = false;
        for (int i = 0; i < n_; ++i) {
            const double below = b->lo[i] - x[i];
            const double above = x[i] - b->hi[i];
            const double exc = std::max({below, above, 0.0});
            if (exc > 0.0) {
                outside = true;
                out2 += exc * exc;
            }
            inner = std::min(inner, std::min(x[i] - b->lo[i],
                                             b->hi[i] - x[i]));
        }
        return outside ? std::sqrt(out2) : std::max(inner, 0.0);
    }
    const Polygon& poly = std::get<Polygon>(shape_);
    double best = 1e300;
    const auto& v = poly.vertices;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++)
        best = std::min(best, segment_distance(v[j], v[i], x[0], x[1]));
    return best;
}

double Domain::bounding_radius() const {
    if (const Ball* b = std::get_if<Ball>(&shape_)) {
        double c = 0.0;
        for (int i = 0; i < n_; ++i) c += b->center[i] * b->center[i];
        return std::sqrt(c) + b->radius;
    }
    if (const AxisBox* b = std::get_if<AxisBox>(&shape_)) {
        double acc = 0.0;
        for (int i = 0; i < n_; ++i)
            acc += std::max(b->lo[i] * b->lo[i], b->hi[i] * b->hi[i]);
        return std::sqrt(acc);
    }
    const Polygon& poly = std::get<Polygon>(shape_);
    double best = 0.0;
    for (const auto& p : poly.vertices)
        best = std::max(best, std::hypot(p[0], p[1]));
    return best;
}

AnnulusFamily::AnnulusFamily(Domain d, std::vector<double> r)
    : domain(std::move(d)), offsets(std::move(r)) {
    if (offsets.empty()) throw ConfigError("annulus family needs offsets");
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (!(offsets[i] > 0.0))
            throw ConfigError("annulus offsets must be positive");
        if (i > 0 && !(offsets[i] < offsets[i - 1]))
            throw ConfigError("annulus offsets must be strictly decreasing");
    }
}

bool AnnulusFamily::in_shrunken(std::size_t k, const Point& x) const {
    return domain.contains(x) && domain.boundary_distance(x) > offsets[k];
}

std::vector<Point> exterior_annulus_nodes(const Domain& d, double R_trunc,
                                          double h) {
    if (!(h > 0.0)) throw ConfigError("node spacing must be positive");
    if (!(R_trunc > d.bounding_radius()))
        throw ConfigError("R_trunc must contain the domain");
    std::vector<Point> out;
    const long kmax = static_cast<long>(std::ceil(R_trunc / h)) + 1;
    const int n = d.n();
    auto consider = [&](const Point& x) {
        double r2 = 0.0;
        for (int i = 0; i < n; ++i) r2 += x[i] * x[i];
        if (r2 > R_trunc * R_trunc) return;
        if (d.contains(x)) return;
        if (d.boundary_distance(x) <= 0.5 * h) return;
        out.push_back(x);
    };
    if (n == 2) {
        for (long i = -kmax; i <= kmax; ++i)
            for (long j = -kmax; j <= kmax; ++j)
                consider({i * h, j * h, 0.0});
    } else {
        for (long i = -kmax; i <= kmax; ++i)
            for (long j = -kmax; j <= kmax; ++j)
                for (long k = -kmax; k <= kmax; ++k)
                    consider({i * h, j * h, k * h});
    }
    return out;
}

} // namespace fraclap
