#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace grenlab {

/// Fixed-design regression observations Y_i = f(t_i) + e_i on [lower, upper].
struct RegressionData {
    double lower = 0.0;
    double upper = 1.0;
    std::vector<double> design;    // non-decreasing within [lower, upper]
    std::vector<double> responses; // same length
};

/// Right-censored survival observations (X_i, Delta_i) with horizon b.
struct SurvivalData {
    std::vector<double> times;   // X_i >= 0
    std::vector<int> uncensored; // Delta_i in {0, 1}
    double horizon = 1.0;        // b
};

/// A known curve f on [lower, upper] together with its exact primitives.
/// F(lower) = 0; F2 is the primitive of F with F2(lower) = 0 (used for the
/// integrated process H).
struct TrueCurve {
    double lower = 0.0;
    double upper = 1.0;
    std::function<double(double)> f;
    std::function<double(double)> F;
    std::function<double(double)> F2;
};

/// f(x) = intercept + slope * x with closed-form primitives.
TrueCurve linear_curve(double lower, double upper, double intercept, double slope);

enum class DriverKind { motion, bridge };

/// Gaussian driver path sampled on a monotone time-change grid
/// s_k = L(t_k). The path starts at 0; a bridge also vanishes at the last
/// grid value after the origin shift.
struct GaussDriver {
    DriverKind kind = DriverKind::bridge;
    std::vector<double> time_change; // non-decreasing L values
    std::vector<double> path;        // same length, path[0] == 0
};

/// Exact-on-grid simulation: Brownian motion via cumulative Gaussian
/// increments with variances equal to the grid spacings; a bridge subtracts
/// the linear interpolation of the terminal value.
GaussDriver simulate_driver(DriverKind kind, std::vector<double> time_change,
                            std::mt19937_64& rng);

/// Cumulative sum process F_n(t) = (1/n) sum Y_i 1{t_i <= t}.
/// Coincident design points merge into one jump by summation.
CadlagStep regression_cusum(const RegressionData& data);

/// Empirical distribution function of samples within [lower, upper].
CadlagStep empirical_cdf(std::span<const double> samples, double lower, double upper);

/// Nelson-Aalen cumulative hazard estimator on [0, horizon]: at the k-th
/// ordered distinct uncensored time, the value increases by 1 / #{X_i >= t_k};
/// constant after the last uncensored time within the horizon.
CadlagStep nelson_aalen(const SurvivalData& data);

/// Vertices of the continuous piecewise-linear integrated process
/// H_n(t) = int_a^t (F_n(b) - F_n(x)) dx. Linear between jumps of F_n, with
/// vertices at the domain endpoints and every jump abscissa; H_n(a) = 0.
std::vector<PlanePoint> primitive_process(const CadlagStep& step);

/// Graph points of F + n^{-1/2} B_n(L(t)) on the given grid. The driver's
/// time-change grid must have been built as L evaluated on the same grid, so
/// the approximation holds with zero embedding error by construction.
std::vector<PlanePoint> gaussian_surrogate(const TrueCurve& curve,
                                           const GaussDriver& driver,
                                           std::size_t n,
                                           std::span<const double> grid);

} // namespace grenlab
