#pragma once

#include <functional>
#include <span>
#include <vector>

#include "geometry.hpp"

namespace grenlab {

/// Compactly supported kernel density on [-1, 1] with its derivative and
/// survival function S_K(u) = int_u^inf K. Built-in kernels store S_K in
/// closed form; user-supplied kernels must provide all three callables
/// (each responsible for vanishing outside the support).
class KernelSpec {
  public:
    KernelSpec(std::function<double(double)> density,
               std::function<double(double)> derivative,
               std::function<double(double)> survival);

    static const KernelSpec& biweight();     // (15/16)(1-u^2)^2
    static const KernelSpec& epanechnikov(); // (3/4)(1-u^2)

    double density(double u) const { return density_(u); }
    double derivative(double u) const { return derivative_(u); }
    double survival(double u) const { return survival_(u); }

  private:
    std::function<double(double)> density_, derivative_, survival_;
};

/// Non-increasing step function on [lower, upper] stored as its jump
/// decomposition: breakpoints tau_1 < ... < tau_m, jump sizes p_j >= 0, and
/// the tail value on (tau_m, upper]. The value on (tau_{i-1}, tau_i] is
/// tail + sum_{j >= i} p_j; the value at `lower` is the right limit.
class MonotoneStepFn {
  public:
    MonotoneStepFn(double lower, double upper, std::vector<double> breakpoints,
                   std::vector<double> jump_sizes, double tail_value);

    double lower() const { return lower_; }
    double upper() const { return upper_; }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& jump_sizes() const { return jumps_; }
    double tail_value() const { return tail_; }

    double value_at(double t) const;

  private:
    friend MonotoneStepFn grenander_decompose(const PolylineEnvelope&);
    MonotoneStepFn() = default;

    double lower_ = 0.0, upper_ = 1.0, tail_ = 0.0;
    std::vector<double> breaks_;
    std::vector<double> jumps_;
    std::vector<double> levels_; // levels_[i] = value on (tau_{i-1}, tau_i]
};

/// Slope decomposition of a concave envelope spanning [a, b]: breakpoints at
/// the interior vertices, jump sizes equal to the slope drops, tail value the
/// last segment's slope. Reconstructs the left-hand slope exactly.
MonotoneStepFn grenander_decompose(const PolylineEnvelope& env);

/// Weighted least-squares projection onto non-increasing sequences (pool
/// adjacent violators). Blocks merge with weighted means; equal-value
/// neighbors merge. Equals the left-hand slopes of the concave majorant of
/// the cumulative-sum diagram.
std::vector<double> pava_decreasing(std::span<const double> values,
                                    std::span<const double> weights);

/// Smoothed monotone estimator at an interior point t in [a+h, b-h].
/// Order 0: sum_j p_j S_K((t - tau_j)/h) + tail. Order 1: the exact
/// derivative -(1/h) sum_j p_j K((t - tau_j)/h).
double smoothed_grenander_eval(const MonotoneStepFn& mono, const KernelSpec& kernel,
                               double h, double t, int order);

/// Ordinary kernel estimator of order l at an interior point:
/// h^{-(1+l)} sum_i w_i K^{(l)}((t - x_i)/h) over the jumps (x_i, w_i).
double kernel_estimator_eval(const CadlagStep& step, const KernelSpec& kernel,
                             double h, double t, int order);

enum class Edge { lower, upper };

/// Local linear extension into the boundary strip: value and derivative taken
/// at the seam a+h (resp. b-h) continue linearly to the endpoint.
double boundary_extend(double interior_value, double interior_deriv,
                       Edge edge, double edge_x, double h, double t);

/// Holder-class bandwidth h = scale * n^{-1/(2 alpha + 1)} with alpha in (1,2].
struct BandwidthRule {
    double holder_exponent = 2.0; // alpha
    double scale = 1.0;           // R_n
};

double bandwidth_holder(const BandwidthRule& rule, std::size_t n);

/// Smoothed monotone estimator over the whole domain: interior closed form on
/// [a+h, b-h], local linear extension on the boundary strips. Order 1 on a
/// strip returns the (constant) seam derivative.
double smoothed_grenander_corrected(const MonotoneStepFn& mono, const KernelSpec& kernel,
                                    double h, double t, int order);

/// Boundary-corrected ordinary kernel estimator over the whole domain.
double kernel_estimator_corrected(const CadlagStep& step, const KernelSpec& kernel,
                                  double h, double t, int order);

/// sup_t |smoothed^{(l)}(t) - kernel^{(l)}(t)| over the grid, with both
/// estimators boundary-corrected on [a, a+h) and (b-h, b].
double discrepancy_stat(const MonotoneStepFn& mono, const CadlagStep& step,
                        const KernelSpec& kernel, double h, int order,
                        std::span<const double> grid);

} // namespace grenlab
