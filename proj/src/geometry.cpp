#include "geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grenlab {

namespace {

void check_point_sequence(std::span<const PlanePoint> points) {
    if (points.empty())
        throw input_error("point sequence must contain at least one point");
    double prev_x = -std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw input_error("point coordinates must be finite");
        if (!(p.x > prev_x))
            throw input_error("point abscissae must be strictly increasing");
        prev_x = p.x;
    }
}

// > 0 when going o -> a -> b turns counter-clockwise, 0 when collinear.
inline double cross(const PlanePoint& o, const PlanePoint& a, const PlanePoint& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline double segment_value(const PlanePoint& p, const PlanePoint& q, double x) {
    return p.y + (x - p.x) * ((q.y - p.y) / (q.x - p.x));
}

std::vector<PlanePoint> upper_hull_vertices(std::span<const PlanePoint> points) {
    std::vector<PlanePoint> hull;
    hull.reserve(points.size());
    for (const auto& p : points) {
        // pop while the middle point is on or below the chord (keeps slopes
        // strictly decreasing; collinear points are removed)
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0)
            hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

} // namespace

PolylineEnvelope::PolylineEnvelope(std::vector<PlanePoint> vertices, Orientation orientation)
    : vertices_(std::move(vertices)), orientation_(orientation) {
    check_point_sequence(vertices_);
    for (std::size_t i = 2; i < vertices_.size(); ++i) {
        const double c = cross(vertices_[i - 2], vertices_[i - 1], vertices_[i]);
        const bool ok = orientation_ == Orientation::concave ? c < 0.0 : c > 0.0;
        if (!ok)
            throw input_error("envelope slopes must be strictly monotone");
    }
}

std::size_t PolylineEnvelope::segment_index(double x) const {
    // rightmost vertex with vertex.x < x, clamped to a valid segment start
    std::size_t lo = 0, hi = vertices_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (vertices_[mid].x < x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double PolylineEnvelope::value_at(double x) const {
    if (x < x_min() || x > x_max())
        throw domain_error("envelope evaluated outside its domain");
    if (vertices_.size() == 1)
        return vertices_.front().y;
    const std::size_t i = segment_index(x);
    const PlanePoint& p = vertices_[i];
    const PlanePoint& q = vertices_[i + 1];
    if (x == p.x)
        return p.y;
    if (x == q.x)
        return q.y;
    return segment_value(p, q, x);
}

double PolylineEnvelope::left_slope_at(double x) const {
    if (x < x_min() || x > x_max())
        throw domain_error("envelope evaluated outside its domain");
    if (vertices_.size() == 1)
        return 0.0;
    std::size_t i = segment_index(x);
    if (x == vertices_[i].x && i > 0)
        --i; // interior vertex: take the segment on its left
    const PlanePoint& p = vertices_[i];
    const PlanePoint& q = vertices_[i + 1];
    return (q.y - p.y) / (q.x - p.x);
}

PolylineEnvelope upper_concave_majorant(std::span<const PlanePoint> points) {
    check_point_sequence(points);
    return PolylineEnvelope(upper_hull_vertices(points), Orientation::concave);
}

PolylineEnvelope lower_convex_minorant(std::span<const PlanePoint> points) {
    check_point_sequence(points);
    std::vector<PlanePoint> hull;
    hull.reserve(points.size());
    for (const auto& p : points) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0)
            hull.pop_back();
        hull.push_back(p);
    }
    return PolylineEnvelope(std::move(hull), Orientation::convex);
}

double interpolate_points(std::span<const PlanePoint> points, double x) {
    check_point_sequence(points);
    if (x < points.front().x || x > points.back().x)
        throw domain_error("interpolation abscissa outside the point range");
    if (points.size() == 1)
        return points.front().y;
    auto it = std::lower_bound(points.begin(), points.end(), x,
                               [](const PlanePoint& p, double v) { return p.x < v; });
    if (it != points.end() && it->x == x)
        return it->y;
    const PlanePoint& q = *it;
    const PlanePoint& p = *(it - 1);
    return segment_value(p, q, x);
}

CadlagStep::CadlagStep(double lower, double upper, double base_value,
                       std::vector<double> jump_x, std::vector<double> jump_to)
    : lower_(lower), upper_(upper), base_(base_value),
      jump_x_(std::move(jump_x)), jump_to_(std::move(jump_to)) {
    if (!std::isfinite(lower_) || !std::isfinite(upper_) || !(lower_ < upper_))
        throw input_error("step function requires finite lower < upper");
    if (!std::isfinite(base_))
        throw input_error("step base value must be finite");
    if (jump_x_.size() != jump_to_.size())
        throw input_error("jump abscissae and values must have equal length");
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < jump_x_.size(); ++i) {
        if (!std::isfinite(jump_x_[i]) || !std::isfinite(jump_to_[i]))
            throw input_error("jumps must be finite");
        if (!(jump_x_[i] > prev))
            throw input_error("jump abscissae must be strictly increasing");
        if (jump_x_[i] < lower_ || jump_x_[i] > upper_)
            throw input_error("jump abscissae must lie within the domain");
        prev = jump_x_[i];
    }
}

double CadlagStep::value_at(double t) const {
    if (t < lower_ || t > upper_)
        throw domain_error("step evaluated outside its domain");
    auto it = std::upper_bound(jump_x_.begin(), jump_x_.end(), t);
    if (it == jump_x_.begin())
        return base_;
    return jump_to_[static_cast<std::size_t>(it - jump_x_.begin()) - 1];
}

double CadlagStep::left_limit_at(double t) const {
    if (t < lower_ || t > upper_)
        throw domain_error("step evaluated outside its domain");
    auto it = std::lower_bound(jump_x_.begin(), jump_x_.end(), t);
    if (it == jump_x_.begin())
        return base_;
    return jump_to_[static_cast<std::size_t>(it - jump_x_.begin()) - 1];
}

std::vector<double> CadlagStep::jump_sizes() const {
    std::vector<double> sizes(jump_x_.size());
    double prev = base_;
    for (std::size_t i = 0; i < jump_x_.size(); ++i) {
        sizes[i] = jump_to_[i] - prev;
        prev = jump_to_[i];
    }
    return sizes;
}

std::vector<PlanePoint> CadlagStep::closed_graph_points() const {
    std::vector<PlanePoint> pts;
    pts.reserve(jump_x_.size() + 2);
    std::size_t first = 0;
    if (!jump_x_.empty() && jump_x_.front() == lower_) {
        pts.push_back({lower_, jump_to_.front()});
        first = 1;
    } else {
        pts.push_back({lower_, base_});
    }
    double prev = pts.front().y;
    for (std::size_t i = first; i < jump_x_.size(); ++i) {
        pts.push_back({jump_x_[i], std::max(prev, jump_to_[i])});
        prev = jump_to_[i];
    }
    if (jump_x_.empty() || jump_x_.back() < upper_)
        pts.push_back({upper_, prev});
    return pts;
}

PolylineEnvelope majorant(const CadlagStep& step) {
    return upper_concave_majorant(step.closed_graph_points());
}

SupGap sup_gap(const CadlagStep& step, const PolylineEnvelope& env) {
    if (env.x_min() != step.lower() || env.x_max() != step.upper())
        throw input_error("envelope and step domains do not match");
    SupGap best{env.value_at(step.lower()) - step.value_at(step.lower()), step.lower()};
    auto consider = [&best](double x, double diff) {
        if (diff > best.gap) {
            best.gap = diff;
            best.location = x;
        }
    };
    const auto& xs = step.jump_x();
    const auto& ys = step.jump_to();
    double prev = step.base_value();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = env.value_at(xs[i]);
        if (xs[i] > step.lower())
            consider(xs[i], e - prev); // left limit
        consider(xs[i], e - ys[i]);
        prev = ys[i];
    }
    consider(step.upper(), env.value_at(step.upper()) - step.value_at(step.upper()));
    return best;
}

PolylineEnvelope windowed_majorant(std::span<const PlanePoint> points,
                                   double center, double halfwidth) {
    check_point_sequence(points);
    if (!(halfwidth > 0.0))
        throw input_error("window halfwidth must be positive");
    const double lo = std::max(points.front().x, center - halfwidth);
    const double hi = std::min(points.back().x, center + halfwidth);
    if (lo > hi)
        throw input_error("window does not intersect the point domain");
    std::vector<PlanePoint> restricted;
    restricted.push_back({lo, interpolate_points(points, lo)});
    for (const auto& p : points)
        if (p.x > lo && p.x < hi)
            restricted.push_back(p);
    if (hi > lo)
        restricted.push_back({hi, interpolate_points(points, hi)});
    return upper_concave_majorant(restricted);
}

PolylineEnvelope windowed_majorant(const CadlagStep& step,
                                   double center, double halfwidth) {
    if (!(halfwidth > 0.0))
        throw input_error("window halfwidth must be positive");
    const double lo = std::max(step.lower(), center - halfwidth);
    const double hi = std::min(step.upper(), center + halfwidth);
    if (lo > hi)
        throw input_error("window does not intersect the step domain");
    std::vector<PlanePoint> restricted;
    restricted.push_back({lo, step.value_at(lo)});
    if (hi > lo) {
        const auto& xs = step.jump_x();
        const auto& ys = step.jump_to();
        double prev = step.base_value();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] > lo && xs[i] < hi)
                restricted.push_back({xs[i], std::max(prev, ys[i])});
            prev = ys[i];
        }
        // at the right boundary the restriction still sees the left limit
        restricted.push_back({hi, std::max(step.left_limit_at(hi), step.value_at(hi))});
    }
    return upper_concave_majorant(restricted);
}

} // namespace grenlab
