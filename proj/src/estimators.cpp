#include "estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace grenlab {

TrueCurve linear_curve(double lower, double upper, double intercept, double slope) {
    if (!(lower < upper))
        throw input_error("curve requires lower < upper");
    TrueCurve c;
    c.lower = lower;
    c.upper = upper;
    c.f = [intercept, slope](double x) { return intercept + slope * x; };
    c.F = [intercept, slope, lower](double t) {
        return intercept * (t - lower) + 0.5 * slope * (t * t - lower * lower);
    };
    // primitive of F with F2(lower) = 0
    c.F2 = [intercept, slope, lower](double t) {
        const double d = t - lower;
        return 0.5 * intercept * d * d +
               slope * (t * t * t / 6.0 - 0.5 * lower * lower * t + lower * lower * lower / 3.0);
    };
    return c;
}

GaussDriver simulate_driver(DriverKind kind, std::vector<double> time_change,
                            std::mt19937_64& rng) {
    if (time_change.size() < 2)
        throw input_error("driver grid needs at least two points");
    for (std::size_t i = 1; i < time_change.size(); ++i)
        if (time_change[i] < time_change[i - 1])
            throw input_error("driver time change must be non-decreasing");

    GaussDriver d;
    d.kind = kind;
    d.time_change = std::move(time_change);
    d.path.resize(d.time_change.size());
    d.path[0] = 0.0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 1; i < d.path.size(); ++i) {
        const double dt = d.time_change[i] - d.time_change[i - 1];
        d.path[i] = d.path[i - 1] + std::sqrt(dt) * gauss(rng);
    }
    if (kind == DriverKind::bridge) {
        const double s0 = d.time_change.front();
        const double span = d.time_change.back() - s0;
        if (!(span > 0.0))
            throw input_error("bridge requires a non-degenerate time change");
        const double terminal = d.path.back();
        for (std::size_t i = 0; i < d.path.size(); ++i)
            d.path[i] -= (d.time_change[i] - s0) / span * terminal;
    }
    return d;
}

CadlagStep regression_cusum(const RegressionData& data) {
    const std::size_t n = data.design.size();
    if (n == 0)
        throw input_error("regression data is empty");
    if (data.responses.size() != n)
        throw input_error("design and responses must have equal length");
    for (std::size_t i = 0; i < n; ++i) {
        if (data.design[i] < data.lower || data.design[i] > data.upper)
            throw input_error("design point outside the domain");
        if (i > 0 && data.design[i] < data.design[i - 1])
            throw input_error("design points must be non-decreasing");
    }
    std::vector<double> xs, values;
    xs.reserve(n);
    values.reserve(n);
    double cumulative = 0.0;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        cumulative += data.responses[i] * inv_n;
        if (!xs.empty() && xs.back() == data.design[i])
            values.back() = cumulative; // merge coincident design points
        else {
            xs.push_back(data.design[i]);
            values.push_back(cumulative);
        }
    }
    return CadlagStep(data.lower, data.upper, 0.0, std::move(xs), std::move(values));
}

CadlagStep empirical_cdf(std::span<const double> samples, double lower, double upper) {
    if (samples.empty())
        throw input_error("sample set is empty");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() < lower || sorted.back() > upper || !std::isfinite(sorted.front()))
        throw input_error("sample outside the domain");
    std::vector<double> xs, values;
    const double inv_n = 1.0 / static_cast<double>(sorted.size());
    std::size_t count = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        count += j - i;
        xs.push_back(sorted[i]);
        values.push_back(static_cast<double>(count) * inv_n);
        i = j;
    }
    return CadlagStep(lower, upper, 0.0, std::move(xs), std::move(values));
}

CadlagStep nelson_aalen(const SurvivalData& data) {
    const std::size_t n = data.times.size();
    if (n == 0 || data.uncensored.size() != n)
        throw input_error("survival data empty or mismatched");
    if (!(data.horizon > 0.0))
        throw input_error("horizon must be positive");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(data.times[i]) || data.times[i] < 0.0)
            throw input_error("survival times must be finite and nonnegative");
        if (data.uncensored[i] != 0 && data.uncensored[i] != 1)
            throw input_error("censoring indicators must be 0 or 1");
    }

    std::vector<double> sorted_times(data.times);
    std::sort(sorted_times.begin(), sorted_times.end());

    std::vector<double> failures;
    for (std::size_t i = 0; i < n; ++i)
        if (data.uncensored[i] == 1 && data.times[i] <= data.horizon)
            failures.push_back(data.times[i]);
    std::sort(failures.begin(), failures.end());
    failures.erase(std::unique(failures.begin(), failures.end()), failures.end());
    if (failures.empty())
        throw model_error("no uncensored failure times within the horizon");

    std::vector<double> xs, values;
    xs.reserve(failures.size());
    values.reserve(failures.size());
    double cumulative = 0.0;
    for (double t : failures) {
        // at risk: #{X_i >= t}
        const auto at_risk = sorted_times.end() -
            std::lower_bound(sorted_times.begin(), sorted_times.end(), t);
        cumulative += 1.0 / static_cast<double>(at_risk);
        xs.push_back(t);
        values.push_back(cumulative);
    }
    return CadlagStep(0.0, data.horizon, 0.0, std::move(xs), std::move(values));
}

std::vector<PlanePoint> primitive_process(const CadlagStep& step) {
    const double terminal = step.value_at(step.upper());
    std::vector<PlanePoint> vertices;
    vertices.reserve(step.jump_x().size() + 2);
    vertices.push_back({step.lower(), 0.0});
    double level = step.base_value();
    double x_prev = step.lower();
    double h = 0.0;
    const auto& xs = step.jump_x();
    const auto& ys = step.jump_to();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > x_prev) {
            h += (xs[i] - x_prev) * (terminal - level);
            vertices.push_back({xs[i], h});
            x_prev = xs[i];
        }
        level = ys[i];
    }
    if (step.upper() > x_prev) {
        h += (step.upper() - x_prev) * (terminal - level);
        vertices.push_back({step.upper(), h});
    }
    return vertices;
}

std::vector<PlanePoint> gaussian_surrogate(const TrueCurve& curve,
                                           const GaussDriver& driver,
                                           std::size_t n,
                                           std::span<const double> grid) {
    if (grid.empty())
        throw input_error("surrogate grid is empty");
    if (driver.time_change.size() != grid.size())
        throw input_error("driver grid size does not match the abscissa grid");
    if (n == 0)
        throw input_error("sample size must be positive");
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<PlanePoint> points(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (t < curve.lower || t > curve.upper)
            throw input_error("surrogate grid point outside the curve domain");
        points[i] = {t, curve.F(t) + scale * driver.path[i]};
    }
    return points;
}

} // namespace grenlab
