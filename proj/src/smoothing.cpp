#include "smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grenlab {

namespace {

// Biweight survival, right tail: int_{1-s}^1 K = (5/4)s^3 - (15/16)s^4 + (3/16)s^5.
// Evaluated in the distance-to-support-edge variable s so that values near the
// edges carry no cancellation (all terms are O(s^3)); together with the exact
// branch split at u = 0 this keeps the float evaluation weakly monotone on
// grids, which the monotonicity of the smoothed estimator relies on.
double biweight_tail(double s) {
    return s * s * s * (1.25 - s * (0.9375 - 0.1875 * s));
}

double biweight_density(double u) {
    if (u <= -1.0 || u >= 1.0)
        return 0.0;
    const double q = (1.0 - u) * (1.0 + u);
    return 0.9375 * q * q;
}

double biweight_derivative(double u) {
    if (u <= -1.0 || u >= 1.0)
        return 0.0;
    return -3.75 * u * (1.0 - u) * (1.0 + u);
}

double biweight_survival(double u) {
    if (u <= -1.0)
        return 1.0;
    if (u >= 1.0)
        return 0.0;
    if (u >= 0.0)
        return std::max(0.0, biweight_tail(1.0 - u));
    return 1.0 - biweight_tail(1.0 + u);
}

// Epanechnikov right tail: int_{1-s}^1 K = (3/4)s^2 - (1/4)s^3.
double epan_tail(double s) {
    return s * s * (0.75 - 0.25 * s);
}

double epan_density(double u) {
    if (u <= -1.0 || u >= 1.0)
        return 0.0;
    return 0.75 * (1.0 - u) * (1.0 + u);
}

double epan_derivative(double u) {
    if (u <= -1.0 || u >= 1.0)
        return 0.0;
    return -1.5 * u;
}

double epan_survival(double u) {
    if (u <= -1.0)
        return 1.0;
    if (u >= 1.0)
        return 0.0;
    if (u >= 0.0)
        return std::max(0.0, epan_tail(1.0 - u));
    return 1.0 - epan_tail(1.0 + u);
}

} // namespace

KernelSpec::KernelSpec(std::function<double(double)> density,
                       std::function<double(double)> derivative,
                       std::function<double(double)> survival)
    : density_(std::move(density)), derivative_(std::move(derivative)),
      survival_(std::move(survival)) {
    if (!density_ || !derivative_ || !survival_)
        throw input_error("kernel requires density, derivative and survival");
    if (std::abs(survival_(-1.0) - 1.0) > 1e-9 || std::abs(survival_(1.0)) > 1e-9)
        throw input_error("kernel survival must run from 1 at -1 to 0 at 1");
}

const KernelSpec& KernelSpec::biweight() {
    static const KernelSpec k(biweight_density, biweight_derivative, biweight_survival);
    return k;
}

const KernelSpec& KernelSpec::epanechnikov() {
    static const KernelSpec k(epan_density, epan_derivative, epan_survival);
    return k;
}

MonotoneStepFn::MonotoneStepFn(double lower, double upper, std::vector<double> breakpoints,
                               std::vector<double> jump_sizes, double tail_value)
    : lower_(lower), upper_(upper), tail_(tail_value),
      breaks_(std::move(breakpoints)), jumps_(std::move(jump_sizes)) {
    if (!(lower_ < upper_))
        throw input_error("monotone step requires lower < upper");
    if (breaks_.size() != jumps_.size())
        throw input_error("breakpoints and jump sizes must have equal length");
    double prev = lower_;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
        if (!(breaks_[i] > prev) || breaks_[i] > upper_)
            throw input_error("breakpoints must be strictly increasing in (lower, upper]");
        if (!(jumps_[i] >= 0.0))
            throw input_error("jump sizes must be nonnegative");
        prev = breaks_[i];
    }
    levels_.resize(breaks_.size() + 1);
    double level = tail_;
    levels_.back() = level;
    for (std::size_t i = breaks_.size(); i-- > 0;) {
        level += jumps_[i];
        levels_[i] = level;
    }
}

double MonotoneStepFn::value_at(double t) const {
    if (t < lower_ || t > upper_)
        throw domain_error("monotone step evaluated outside its domain");
    // value on (tau_{i-1}, tau_i]; at `lower` the right limit, i.e. i = 0
    const auto it = std::lower_bound(breaks_.begin(), breaks_.end(), t);
    return levels_[static_cast<std::size_t>(it - breaks_.begin())];
}

MonotoneStepFn grenander_decompose(const PolylineEnvelope& env) {
    if (env.orientation() != Orientation::concave)
        throw input_error("slope decomposition requires a concave envelope");
    const auto& v = env.vertices();
    MonotoneStepFn out;
    out.lower_ = env.x_min();
    out.upper_ = env.x_max();
    if (v.size() < 2) {
        out.tail_ = 0.0;
        out.levels_ = {0.0};
        return out;
    }
    std::vector<double> slopes(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        slopes[i] = (v[i + 1].y - v[i].y) / (v[i + 1].x - v[i].x);
    out.tail_ = slopes.back();
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
        out.breaks_.push_back(v[i + 1].x);
        out.jumps_.push_back(slopes[i] - slopes[i + 1]);
    }
    // keep the exact segment slopes as the levels so reconstruction is exact
    out.levels_ = std::move(slopes);
    return out;
}

std::vector<double> pava_decreasing(std::span<const double> values,
                                    std::span<const double> weights) {
    const std::size_t n = values.size();
    if (n == 0)
        throw input_error("pava input is empty");
    if (weights.size() != n)
        throw input_error("values and weights must have equal length");
    for (double w : weights)
        if (!(w > 0.0))
            throw input_error("weights must be positive");

    struct Block {
        double weight, mean;
        std::size_t count;
    };
    std::vector<Block> blocks;
    blocks.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        blocks.push_back({weights[i], values[i], 1});
        while (blocks.size() >= 2 &&
               blocks[blocks.size() - 2].mean <= blocks.back().mean) {
            const Block b = blocks.back();
            blocks.pop_back();
            Block& a = blocks.back();
            a.mean = (a.weight * a.mean + b.weight * b.mean) / (a.weight + b.weight);
            a.weight += b.weight;
            a.count += b.count;
        }
    }
    std::vector<double> fitted(n);
    std::size_t k = 0;
    for (const Block& b : blocks)
        for (std::size_t i = 0; i < b.count; ++i)
            fitted[k++] = b.mean;
    return fitted;
}

namespace {

void check_interior(double lower, double upper, double h, double t) {
    if (!(h > 0.0))
        throw input_error("bandwidth must be positive");
    if (t < lower + h || t > upper - h)
        throw domain_error("evaluation point outside the interior window");
}

} // namespace

double smoothed_grenander_eval(const MonotoneStepFn& mono, const KernelSpec& kernel,
                               double h, double t, int order) {
    check_interior(mono.lower(), mono.upper(), h, t);
    if (order != 0 && order != 1)
        throw input_error("order must be 0 or 1");
    const auto& taus = mono.breakpoints();
    const auto& jumps = mono.jump_sizes();
    // full fixed-order summation: keeps grid evaluations weakly monotone
    double sum = 0.0;
    if (order == 0) {
        for (std::size_t j = 0; j < taus.size(); ++j)
            sum += jumps[j] * kernel.survival((t - taus[j]) / h);
        return sum + mono.tail_value();
    }
    for (std::size_t j = 0; j < taus.size(); ++j)
        sum += jumps[j] * kernel.density((t - taus[j]) / h);
    return -sum / h;
}

double kernel_estimator_eval(const CadlagStep& step, const KernelSpec& kernel,
                             double h, double t, int order) {
    check_interior(step.lower(), step.upper(), h, t);
    if (order != 0 && order != 1)
        throw input_error("order must be 0 or 1");
    const auto& xs = step.jump_x();
    const auto sizes = step.jump_sizes();
    // atoms outside [t-h, t+h] contribute exactly zero
    const auto first = std::lower_bound(xs.begin(), xs.end(), t - h);
    const auto last = std::upper_bound(xs.begin(), xs.end(), t + h);
    double sum = 0.0;
    for (auto it = first; it != last; ++it) {
        const std::size_t i = static_cast<std::size_t>(it - xs.begin());
        const double u = (t - xs[i]) / h;
        sum += sizes[i] * (order == 0 ? kernel.density(u) : kernel.derivative(u));
    }
    return sum / (order == 0 ? h : h * h);
}

double boundary_extend(double interior_value, double interior_deriv,
                       Edge edge, double edge_x, double h, double t) {
    if (!(h > 0.0))
        throw input_error("bandwidth must be positive");
    if (edge == Edge::lower) {
        if (t < edge_x || t > edge_x + h)
            throw domain_error("evaluation point outside the lower boundary strip");
        return interior_value + interior_deriv * (t - edge_x - h);
    }
    if (t < edge_x - h || t > edge_x)
        throw domain_error("evaluation point outside the upper boundary strip");
    return interior_value + interior_deriv * (t - edge_x + h);
}

double bandwidth_holder(const BandwidthRule& rule, std::size_t n) {
    if (!(rule.holder_exponent > 1.0) || !(rule.holder_exponent <= 2.0))
        throw input_error("Holder exponent must lie in (1, 2]");
    if (!(rule.scale > 0.0))
        throw input_error("bandwidth scale must be positive");
    if (n < 2)
        throw input_error("bandwidth rule requires n >= 2");
    return rule.scale *
           std::pow(static_cast<double>(n), -1.0 / (2.0 * rule.holder_exponent + 1.0));
}

namespace {

template <typename Interior>
double corrected_eval(double lower, double upper, double h, double t, int order,
                      Interior&& interior) {
    if (t < lower || t > upper)
        throw domain_error("evaluation point outside the domain");
    if (t < lower + h) {
        const double seam = lower + h;
        if (order == 1)
            return interior(seam, 1);
        return boundary_extend(interior(seam, 0), interior(seam, 1), Edge::lower,
                               lower, h, t);
    }
    if (t > upper - h) {
        const double seam = upper - h;
        if (order == 1)
            return interior(seam, 1);
        return boundary_extend(interior(seam, 0), interior(seam, 1), Edge::upper,
                               upper, h, t);
    }
    return interior(t, order);
}

} // namespace

double smoothed_grenander_corrected(const MonotoneStepFn& mono, const KernelSpec& kernel,
                                    double h, double t, int order) {
    return corrected_eval(mono.lower(), mono.upper(), h, t, order,
                          [&](double s, int l) {
                              return smoothed_grenander_eval(mono, kernel, h, s, l);
                          });
}

double kernel_estimator_corrected(const CadlagStep& step, const KernelSpec& kernel,
                                  double h, double t, int order) {
    return corrected_eval(step.lower(), step.upper(), h, t, order,
                          [&](double s, int l) {
                              return kernel_estimator_eval(step, kernel, h, s, l);
                          });
}

double discrepancy_stat(const MonotoneStepFn& mono, const CadlagStep& step,
                        const KernelSpec& kernel, double h, int order,
                        std::span<const double> grid) {
    if (grid.empty())
        throw input_error("discrepancy grid is empty");
    double sup = 0.0;
    for (double t : grid) {
        const double s = smoothed_grenander_corrected(mono, kernel, h, t, order);
        const double k = kernel_estimator_corrected(step, kernel, h, t, order);
        sup = std::max(sup, std::abs(s - k));
    }
    return sup;
}

} // namespace grenlab
