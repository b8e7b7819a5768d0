#include "rate_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "rng.hpp"

namespace grenlab {

std::string variant_label(Variant v) {
    switch (v) {
        case Variant::regression: return "regression";
        case Variant::density: return "density";
        case Variant::censoring: return "censoring";
        case Variant::surrogate: return "surrogate";
        case Variant::primitive: return "primitive";
    }
    return "?";
}

std::string statistic_label(Statistic s) {
    switch (s) {
        case Statistic::global: return "global";
        case Statistic::local: return "local";
        case Statistic::pointwise: return "pointwise";
        case Statistic::moment: return "moment";
        case Statistic::localization: return "localization";
        case Statistic::smoothing_discrepancy: return "smoothing-discrepancy";
    }
    return "?";
}

std::vector<double> equispaced_grid(double lower, double upper, std::size_t count) {
    if (count < 2)
        throw input_error("grid needs at least two points");
    std::vector<double> grid(count);
    const double span = upper - lower;
    for (std::size_t i = 0; i < count; ++i)
        grid[i] = lower + span * static_cast<double>(i) / static_cast<double>(count - 1);
    grid.front() = lower;
    grid.back() = upper;
    return grid;
}

double EpsilonRule::operator()(std::size_t n) const {
    return scale * std::pow(static_cast<double>(n), exponent);
}

void validate_model(const ModelSpec& spec) {
    const TrueCurve& c = spec.curve;
    if (!c.f || !c.F)
        throw model_error("curve must provide f and F");
    if (!(c.lower < c.upper))
        throw model_error("curve domain is degenerate");
    if (!(spec.tau >= 0.0) || !(spec.tau < 4.0))
        throw model_error("tau must lie in [0, 4)");
    if (std::abs(c.F(c.lower)) > 1e-9)
        throw model_error("F must vanish at the lower endpoint");

    const auto grid = equispaced_grid(c.lower, c.upper, 257);
    double min_f = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    double prev = c.f(grid.front());
    min_f = std::min(min_f, prev);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double fi = c.f(grid[i]);
        if (!std::isfinite(fi))
            throw model_error("f must be finite on the domain");
        if (fi >= prev)
            decreasing = false;
        min_f = std::min(min_f, fi);
        prev = fi;
    }

    const bool needs_decreasing = spec.variant != Variant::primitive;
    if (needs_decreasing && !decreasing)
        throw model_error("f must be strictly decreasing for this variant");

    switch (spec.variant) {
        case Variant::density:
            if (!(min_f > 0.0))
                throw model_error("density must be bounded away from zero");
            if (std::abs(c.F(c.upper) - 1.0) > 1e-9)
                throw model_error("density must integrate to one");
            break;
        case Variant::censoring:
            if (c.lower != 0.0)
                throw model_error("censoring model requires the domain [0, b]");
            if (!(min_f > 0.0))
                throw model_error("hazard must be positive");
            if (!(spec.censor_rate > 0.0))
                throw model_error("censoring rate must be positive");
            break;
        case Variant::regression:
            if (!(spec.noise_sd > 0.0))
                throw model_error("regression noise must have positive variance");
            break;
        case Variant::primitive:
            if (!(min_f > 0.0))
                throw model_error("f must be positive for the integrated process");
            if (!(spec.noise_sd > 0.0))
                throw model_error("regression noise must have positive variance");
            break;
        case Variant::surrogate:
            if (!(min_f > 0.0))
                throw model_error("surrogate time change requires positive f");
            break;
    }
}

void validate_plan(const ExperimentPlan& plan) {
    validate_model(plan.model);
    if (plan.n_grid.empty())
        throw config_error("n grid is empty");
    std::size_t prev = 1;
    for (std::size_t n : plan.n_grid) {
        if (n < 2)
            throw config_error("sample sizes must be at least 2");
        if (n <= prev && prev != 1)
            throw config_error("n grid must be strictly increasing");
        prev = n;
    }
    if (plan.reps == 0)
        throw config_error("reps must be positive");
    if (plan.grid_size < 2)
        throw config_error("grid size must be at least 2");

    const double a = plan.model.curve.lower, b = plan.model.curve.upper;
    switch (plan.statistic) {
        case Statistic::local:
            for (std::size_t n : plan.n_grid)
                if (!(plan.epsilon(n) > 0.0))
                    throw config_error("epsilon rule must be positive");
            [[fallthrough]];
        case Statistic::pointwise:
            if (!(plan.x0 >= a) || !(plan.x0 <= b))
                throw config_error("x0 must lie within the domain");
            break;
        case Statistic::moment:
            if (!(plan.moment_order >= 1.0))
                throw config_error("moment order must be at least 1");
            break;
        case Statistic::localization:
            if (!(plan.c0 > 0.0))
                throw config_error("c0 must be positive");
            break;
        case Statistic::smoothing_discrepancy: {
            if (plan.model.variant == Variant::surrogate ||
                plan.model.variant == Variant::primitive)
                throw config_error("smoothing discrepancy requires a step-valued model");
            if (plan.smoothing_order != 0 && plan.smoothing_order != 1)
                throw config_error("smoothing order must be 0 or 1");
            const double h = bandwidth_holder(plan.bandwidth, plan.n_grid.front());
            if (!(h < 0.5 * (b - a)))
                throw config_error("bandwidth exceeds half the domain width");
            break;
        }
        case Statistic::global:
            break;
    }
}

namespace {

// monotone bisection to 1e-12 on the abscissa
double invert_increasing(const std::function<double(double)>& fn, double lo, double hi,
                         double target) {
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (fn(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> time_change_values(const ModelSpec& spec,
                                       std::span<const double> grid) {
    std::vector<double> l(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        l[i] = spec.time_change == TimeChange::cdf ? spec.curve.F(grid[i])
                                                   : grid[i] - spec.curve.lower;
    return l;
}

} // namespace

Dataset sample_model(const ModelSpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0)
        throw model_error("sample size must be positive");
    auto rng = make_engine(seed);
    const TrueCurve& c = spec.curve;
    switch (spec.variant) {
        case Variant::regression:
        case Variant::primitive: {
            RegressionData data;
            data.lower = c.lower;
            data.upper = c.upper;
            data.design.resize(n);
            data.responses.resize(n);
            std::normal_distribution<double> gauss(0.0, spec.noise_sd);
            const double span = c.upper - c.lower;
            for (std::size_t i = 0; i < n; ++i) {
                const double t = c.lower + span * static_cast<double>(i + 1) /
                                               static_cast<double>(n);
                data.design[i] = t;
                data.responses[i] = c.f(t) + gauss(rng);
            }
            return data;
        }
        case Variant::density: {
            DensityData data;
            data.lower = c.lower;
            data.upper = c.upper;
            data.samples.resize(n);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            const double total = c.F(c.upper);
            for (std::size_t i = 0; i < n; ++i)
                data.samples[i] = invert_increasing(c.F, c.lower, c.upper,
                                                    unif(rng) * total);
            return data;
        }
        case Variant::censoring: {
            SurvivalData data;
            data.horizon = c.upper;
            data.times.resize(n);
            data.uncensored.resize(n);
            std::uniform_real_distribution<double> unif(0.0, 1.0);
            const double hazard_end = c.F(c.upper);
            const double f_end = c.f(c.upper);
            for (std::size_t i = 0; i < n; ++i) {
                // T from the cumulative hazard, extended linearly beyond b
                const double target = -std::log1p(-unif(rng));
                const double t = target <= hazard_end
                                     ? invert_increasing(c.F, c.lower, c.upper, target)
                                     : c.upper + (target - hazard_end) / f_end;
                const double y = -std::log1p(-unif(rng)) / spec.censor_rate;
                data.times[i] = std::min(t, y);
                data.uncensored[i] = t <= y ? 1 : 0;
            }
            return data;
        }
        case Variant::surrogate: {
            const std::size_t interior = spec.surrogate_grid ? spec.surrogate_grid : n;
            const auto grid = equispaced_grid(c.lower, c.upper, interior + 2);
            auto driver = simulate_driver(spec.driver, time_change_values(spec, grid), rng);
            SurrogateData data;
            data.points = gaussian_surrogate(c, driver, n, grid);
            return data;
        }
    }
    throw model_error("unknown model variant");
}

Replication build_replication(const ModelSpec& spec, std::size_t n,
                              std::uint64_t sub_seed) {
    Replication rep;
    Dataset data = sample_model(spec, n, sub_seed);
    switch (spec.variant) {
        case Variant::regression:
            rep.step = regression_cusum(std::get<RegressionData>(data));
            rep.env = majorant(*rep.step);
            break;
        case Variant::density: {
            const auto& d = std::get<DensityData>(data);
            rep.step = empirical_cdf(d.samples, d.lower, d.upper);
            rep.env = majorant(*rep.step);
            break;
        }
        case Variant::censoring:
            rep.step = nelson_aalen(std::get<SurvivalData>(data));
            rep.env = majorant(*rep.step);
            break;
        case Variant::primitive: {
            const CadlagStep step = regression_cusum(std::get<RegressionData>(data));
            rep.points = primitive_process(step);
            rep.env = upper_concave_majorant(rep.points);
            break;
        }
        case Variant::surrogate:
            rep.points = std::move(std::get<SurrogateData>(data).points);
            rep.env = upper_concave_majorant(rep.points);
            break;
    }
    return rep;
}

GapBundle gap_bundle(const Replication& rep, const GapWindow& window) {
    const PolylineEnvelope& env = rep.envelope();
    GapBundle out;
    out.local = window.active ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    out.pointwise = out.local;

    double lo = 0.0, hi = 0.0;
    if (window.active) {
        lo = std::max(env.x_min(), window.x0 - window.eps);
        hi = std::min(env.x_max(), window.x0 + window.eps);
    }

    // every candidate feeds the global max; window members feed the local max
    auto consider = [&](double x, double y, bool left_limit) {
        const double diff = env.value_at(x) - y;
        out.global = std::max(out.global, diff);
        if (window.active) {
            const bool inside = left_limit ? (x > lo && x <= hi) : (x >= lo && x <= hi);
            if (inside)
                out.local = std::max(out.local, diff);
        }
        return diff;
    };

    if (rep.step) {
        const CadlagStep& step = *rep.step;
        consider(step.lower(), step.value_at(step.lower()), false);
        const auto& xs = step.jump_x();
        const auto& ys = step.jump_to();
        double prev = step.base_value();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (xs[i] > step.lower())
                consider(xs[i], prev, true);
            consider(xs[i], ys[i], false);
            prev = ys[i];
        }
        consider(step.upper(), step.value_at(step.upper()), false);
        if (window.active) {
            consider(lo, step.value_at(lo), false);
            consider(hi, step.value_at(hi), false);
            out.pointwise = consider(window.x0, step.value_at(window.x0), false);
        }
    } else {
        const std::span<const PlanePoint> pts(rep.points);
        for (const auto& p : pts)
            consider(p.x, p.y, false);
        if (window.active) {
            consider(lo, interpolate_points(pts, lo), false);
            consider(hi, interpolate_points(pts, hi), false);
            out.pointwise = consider(window.x0, interpolate_points(pts, window.x0), false);
        }
    }
    return out;
}

bool localization_mismatch(const Replication& rep, double halfwidth,
                           std::size_t grid_points) {
    const PolylineEnvelope& env = rep.envelope();
    const auto& v = env.vertices();
    const auto grid = equispaced_grid(env.x_min(), env.x_max(), grid_points);
    std::size_t seg = 0;
    for (double x : grid) {
        while (seg + 2 < v.size() && v[seg + 1].x < x)
            ++seg;
        if (v.size() == 1 || x == v[seg].x || x == v[seg + 1].x)
            continue; // the majorant touches the process at its vertices
        const double lo = std::max(env.x_min(), x - halfwidth);
        const double hi = std::min(env.x_max(), x + halfwidth);
        if (v[seg].x >= lo && v[seg + 1].x <= hi)
            continue; // supporting chord inside the window: values coincide
        const PolylineEnvelope local =
            rep.step ? windowed_majorant(*rep.step, x, halfwidth)
                     : windowed_majorant(std::span<const PlanePoint>(rep.points), x,
                                         halfwidth);
        if (local.value_at(x) != env.value_at(x))
            return true;
    }
    return false;
}

MarshallPair marshall_distances(const Replication& rep, const ModelSpec& spec,
                                std::size_t grid_points) {
    const PolylineEnvelope& env = rep.envelope();
    const TrueCurve& c = spec.curve;
    const bool integrated = spec.variant == Variant::primitive;
    if (integrated && !c.F2)
        throw model_error("integrated model requires the second primitive F2");
    const double f_end = integrated ? c.F(c.upper) : 0.0;
    auto truth = [&](double x) {
        if (integrated)
            return f_end * (x - c.lower) - c.F2(x);
        return c.F(x);
    };

    MarshallPair out;
    auto lcm_at = [&](double x) {
        out.lcm_dist = std::max(out.lcm_dist, std::abs(env.value_at(x) - truth(x)));
    };
    auto process_at = [&](double x, double y) {
        out.process_dist = std::max(out.process_dist, std::abs(y - truth(x)));
    };

    if (rep.step) {
        const CadlagStep& step = *rep.step;
        const auto& xs = step.jump_x();
        const auto& ys = step.jump_to();
        double prev = step.base_value();
        for (std::size_t i = 0; i < xs.size(); ++i) {
            lcm_at(xs[i]);
            if (xs[i] > step.lower())
                process_at(xs[i], prev);
            process_at(xs[i], ys[i]);
            prev = ys[i];
        }
        for (double x : equispaced_grid(step.lower(), step.upper(), grid_points)) {
            lcm_at(x);
            process_at(x, step.value_at(x));
        }
    } else {
        const std::span<const PlanePoint> pts(rep.points);
        for (const auto& p : pts) {
            lcm_at(p.x);
            process_at(p.x, p.y);
        }
        for (double x : equispaced_grid(pts.front().x, pts.back().x, grid_points)) {
            lcm_at(x);
            process_at(x, interpolate_points(pts, x));
        }
    }
    return out;
}

double replication_statistic(const ExperimentPlan& plan, std::size_t n,
                             std::size_t rep_index) {
    const std::uint64_t sub_seed = mix_seed(plan.seed, n, rep_index);
    const Replication rep = build_replication(plan.model, n, sub_seed);
    switch (plan.statistic) {
        case Statistic::global:
            return gap_bundle(rep, {}).global;
        case Statistic::local:
            return gap_bundle(rep, {true, plan.x0, plan.epsilon(n)}).local;
        case Statistic::pointwise:
            return gap_bundle(rep, {true, plan.x0, plan.epsilon(n)}).pointwise;
        case Statistic::moment:
            return std::pow(gap_bundle(rep, {}).global, plan.moment_order);
        case Statistic::localization: {
            const double cn = std::pow(
                plan.c0 * std::log(static_cast<double>(n)) / static_cast<double>(n),
                1.0 / (4.0 - plan.model.tau));
            return localization_mismatch(rep, 2.0 * cn, plan.grid_size) ? 1.0 : 0.0;
        }
        case Statistic::smoothing_discrepancy: {
            const double h = bandwidth_holder(plan.bandwidth, n);
            const MonotoneStepFn mono = grenander_decompose(rep.envelope());
            const auto grid = equispaced_grid(rep.step->lower(), rep.step->upper(),
                                              plan.grid_size);
            return discrepancy_stat(mono, *rep.step, KernelSpec::biweight(), h,
                                    plan.smoothing_order, grid);
        }
    }
    throw config_error("unknown statistic");
}

ResultTable run_experiment(const ExperimentPlan& plan, unsigned threads) {
    validate_plan(plan);
    ResultTable table;
    table.model = variant_label(plan.model.variant);
    table.statistic = statistic_label(plan.statistic);
    const std::size_t total = plan.n_grid.size() * plan.reps;
    table.rows.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        table.rows[i].n = plan.n_grid[i / plan.reps];
        table.rows[i].rep = i % plan.reps;
    }

    auto worker_body = [&](std::atomic<std::size_t>& next) {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total)
                return;
            table.rows[i].value =
                replication_statistic(plan, table.rows[i].n, table.rows[i].rep);
        }
    };

    if (threads <= 1) {
        for (auto& row : table.rows)
            row.value = replication_statistic(plan, row.n, row.rep);
        return table;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned k = std::min<unsigned>(threads, std::thread::hardware_concurrency());
    pool.reserve(k);
    for (unsigned t = 0; t < std::max(1u, k); ++t)
        pool.emplace_back([&] { worker_body(next); });
    for (auto& th : pool)
        th.join();
    return table;
}

RateFit fit_log_rate(const ResultTable& table, RegressorKind kind) {
    // aggregate per sample size: median, or mean for moment statistics
    std::vector<std::pair<std::size_t, std::vector<double>>> groups;
    for (const auto& row : table.rows) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const auto& g) { return g.first == row.n; });
        if (it == groups.end())
            groups.push_back({row.n, {row.value}});
        else
            it->second.push_back(row.value);
    }
    if (groups.size() < 2)
        throw fit_error("rate fit needs at least two distinct sample sizes");
    const bool use_mean = table.statistic == "moment";

    std::vector<double> xs, ys;
    for (auto& [n, values] : groups) {
        double agg;
        if (use_mean) {
            agg = 0.0;
            for (double v : values)
                agg += v;
            agg /= static_cast<double>(values.size());
        } else {
            std::sort(values.begin(), values.end());
            const std::size_t m = values.size();
            agg = m % 2 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
        }
        if (!(agg > 0.0))
            throw fit_error("non-positive aggregate statistic");
        const double nd = static_cast<double>(n);
        xs.push_back(kind == RegressorKind::log_logn_over_n ? std::log(std::log(nd) / nd)
                                                            : std::log(nd));
        ys.push_back(std::log(agg));
    }

    const std::size_t k = xs.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0))
        throw fit_error("degenerate regressor");

    RateFit fit;
    fit.regressor = kind;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        rss += r * r;
    }
    fit.slope_stderr =
        k > 2 ? std::sqrt(rss / static_cast<double>(k - 2) / sxx) : 0.0;
    fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - rss / syy) : 1.0;
    return fit;
}

ProbabilityEstimate localization_probability(const ExperimentPlan& plan, std::size_t n) {
    if (plan.statistic != Statistic::localization)
        throw config_error("plan statistic must be localization");
    validate_plan(plan);
    double sum = 0.0;
    for (std::size_t rep = 0; rep < plan.reps; ++rep)
        sum += replication_statistic(plan, n, rep);
    ProbabilityEstimate est;
    const double m = static_cast<double>(plan.reps);
    est.estimate = sum / m;
    est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / m);
    return est;
}

} // namespace grenlab
