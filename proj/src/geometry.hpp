#pragma once

#include <span>
#include <vector>

#include "errors.hpp"

namespace grenlab {

struct PlanePoint {
    double x = 0.0;
    double y = 0.0;
};

enum class Orientation { concave, convex };

/// Piecewise-linear concave (or convex) function stored as ordered vertices
/// with strictly increasing x and strictly monotone segment slopes.
/// Produced by the hull constructors below; immutable afterwards.
class PolylineEnvelope {
  public:
    PolylineEnvelope(std::vector<PlanePoint> vertices, Orientation orientation);

    const std::vector<PlanePoint>& vertices() const { return vertices_; }
    Orientation orientation() const { return orientation_; }
    double x_min() const { return vertices_.front().x; }
    double x_max() const { return vertices_.back().x; }

    /// Linear interpolation between bracketing vertices; exact at vertices.
    double value_at(double x) const;

    /// Slope of the segment immediately left of x. At an interior vertex the
    /// left segment's slope; at the left endpoint the first segment's slope
    /// (right limit). A single-vertex envelope is constant with slope 0.
    double left_slope_at(double x) const;

  private:
    std::vector<PlanePoint> vertices_;
    Orientation orientation_;

    // index of the segment [v_i, v_{i+1}] containing x; requires >= 2 vertices
    std::size_t segment_index(double x) const;
};

/// Least concave majorant of a point sequence with strictly increasing x.
/// Vertices are a subsequence of the input; collinear interior points are
/// removed so segment slopes decrease strictly. Monotone-chain construction,
/// exact floating comparisons on cross products of differences.
PolylineEnvelope upper_concave_majorant(std::span<const PlanePoint> points);

/// Greatest convex minorant; dual of the majorant (slopes strictly increase).
PolylineEnvelope lower_convex_minorant(std::span<const PlanePoint> points);

/// Piecewise-linear interpolation through an arbitrary ordered point sequence
/// (no shape constraint). Used to synthesize window boundary values.
double interpolate_points(std::span<const PlanePoint> points, double x);

/// Right-continuous step function with finitely many jumps on [lower, upper].
/// Evaluation at t returns the value of the last jump at or before t, the
/// base value when no jump has occurred yet. Jumps may sit at the left
/// endpoint (a point mass at `lower` has nowhere else to go).
class CadlagStep {
  public:
    CadlagStep(double lower, double upper, double base_value,
               std::vector<double> jump_x, std::vector<double> jump_to);

    double lower() const { return lower_; }
    double upper() const { return upper_; }
    double base_value() const { return base_; }
    const std::vector<double>& jump_x() const { return jump_x_; }
    const std::vector<double>& jump_to() const { return jump_to_; }

    double value_at(double t) const;
    /// Limit from the left: value of the last jump strictly before t.
    double left_limit_at(double t) const;

    /// Jump increments (value after minus value before each jump).
    std::vector<double> jump_sizes() const;

    /// Graph points whose least concave majorant equals the majorant of the
    /// step over the whole interval: endpoints plus one point per jump at the
    /// larger of the left limit and the value (a concave function dominating
    /// these dominates every constant piece).
    std::vector<PlanePoint> closed_graph_points() const;

  private:
    double lower_, upper_, base_;
    std::vector<double> jump_x_;
    std::vector<double> jump_to_;
};

/// Least concave majorant of a cadlag step over its whole domain.
PolylineEnvelope majorant(const CadlagStep& step);

struct SupGap {
    double gap = 0.0;
    double location = 0.0;
};

/// Supremum of env - step over [lower, upper], exact: the difference is
/// linear between jumps, so the supremum is attained among the jump
/// abscissae (value and left limit) and the two endpoints.
SupGap sup_gap(const CadlagStep& step, const PolylineEnvelope& env);

/// Majorant of the restriction of a point sequence to
/// [center - halfwidth, center + halfwidth] clipped to the point domain.
/// Window boundary values are synthesized by linear interpolation so the
/// restriction is exact.
PolylineEnvelope windowed_majorant(std::span<const PlanePoint> points,
                                   double center, double halfwidth);

/// Same for a step function; boundary values come from step evaluation and
/// interior jumps keep their left limits.
PolylineEnvelope windowed_majorant(const CadlagStep& step,
                                   double center, double halfwidth);

} // namespace grenlab
