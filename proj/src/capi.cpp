#include "grenlab/grenlab.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "runner.hpp"

using namespace grenlab;

struct grenlab_envelope {
    PolylineEnvelope impl;
};

struct grenlab_step {
    CadlagStep impl;
};

struct grenlab_monotone_fit {
    MonotoneStepFn impl;
};

namespace {

thread_local std::string g_last_error;

grenlab_status fail(grenlab_status code, const char* what) {
    g_last_error = what;
    return code;
}

// translate the active exception into a status code
grenlab_status translate() {
    try {
        throw;
    } catch (const input_error& e) {
        return fail(GRENLAB_ERR_INVALID_INPUT, e.what());
    } catch (const domain_error& e) {
        return fail(GRENLAB_ERR_DOMAIN, e.what());
    } catch (const model_error& e) {
        return fail(GRENLAB_ERR_MODEL, e.what());
    } catch (const config_error& e) {
        return fail(GRENLAB_ERR_CONFIG, e.what());
    } catch (const io_error& e) {
        return fail(GRENLAB_ERR_IO, e.what());
    } catch (const fit_error& e) {
        return fail(GRENLAB_ERR_FIT, e.what());
    } catch (const std::exception& e) {
        return fail(GRENLAB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(GRENLAB_ERR_INTERNAL, "unknown error");
    }
}

template <typename Fn>
grenlab_status guarded(Fn&& fn) {
    try {
        fn();
        return GRENLAB_OK;
    } catch (...) {
        return translate();
    }
}

std::vector<PlanePoint> to_points(const double* x, const double* y, size_t n) {
    if (x == nullptr || y == nullptr)
        throw input_error("coordinate arrays must not be null");
    std::vector<PlanePoint> pts(n);
    for (size_t i = 0; i < n; ++i)
        pts[i] = {x[i], y[i]};
    return pts;
}

} // namespace

extern "C" {

const char* grenlab_version(void) { return "0.1.0"; }

const char* grenlab_last_error(void) { return g_last_error.c_str(); }

grenlab_status grenlab_concave_majorant(const double* x, const double* y, size_t n,
                                        grenlab_envelope** out) {
    if (out == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "out pointer must not be null");
    return guarded([&] {
        const auto pts = to_points(x, y, n);
        *out = new grenlab_envelope{upper_concave_majorant(pts)};
    });
}

grenlab_status grenlab_convex_minorant(const double* x, const double* y, size_t n,
                                       grenlab_envelope** out) {
    if (out == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "out pointer must not be null");
    return guarded([&] {
        const auto pts = to_points(x, y, n);
        *out = new grenlab_envelope{lower_convex_minorant(pts)};
    });
}

void grenlab_envelope_free(grenlab_envelope* env) { delete env; }

size_t grenlab_envelope_vertex_count(const grenlab_envelope* env) {
    return env ? env->impl.vertices().size() : 0;
}

grenlab_status grenlab_envelope_vertex(const grenlab_envelope* env, size_t i, double* x,
                                       double* y) {
    if (env == nullptr || x == nullptr || y == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    if (i >= env->impl.vertices().size())
        return fail(GRENLAB_ERR_INVALID_INPUT, "vertex index out of range");
    *x = env->impl.vertices()[i].x;
    *y = env->impl.vertices()[i].y;
    return GRENLAB_OK;
}

grenlab_status grenlab_envelope_value(const grenlab_envelope* env, double x, double* out) {
    if (env == nullptr || out == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] { *out = env->impl.value_at(x); });
}

grenlab_status grenlab_envelope_left_slope(const grenlab_envelope* env, double x,
                                           double* out) {
    if (env == nullptr || out == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] { *out = env->impl.left_slope_at(x); });
}

grenlab_status grenlab_step_empirical_cdf(const double* samples, size_t n, double lower,
                                          double upper, grenlab_step** out) {
    if (out == nullptr || samples == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] {
        *out = new grenlab_step{
            empirical_cdf(std::span<const double>(samples, n), lower, upper)};
    });
}

grenlab_status grenlab_step_regression_cusum(const double* t, const double* y, size_t n,
                                             double lower, double upper,
                                             grenlab_step** out) {
    if (out == nullptr || t == nullptr || y == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] {
        RegressionData data;
        data.lower = lower;
        data.upper = upper;
        data.design.assign(t, t + n);
        data.responses.assign(y, y + n);
        *out = new grenlab_step{regression_cusum(data)};
    });
}

grenlab_status grenlab_step_nelson_aalen(const double* times, const int32_t* uncensored,
                                         size_t n, double horizon, grenlab_step** out) {
    if (out == nullptr || times == nullptr || uncensored == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] {
        SurvivalData data;
        data.horizon = horizon;
        data.times.assign(times, times + n);
        data.uncensored.assign(uncensored, uncensored + n);
        *out = new grenlab_step{nelson_aalen(data)};
    });
}

void grenlab_step_free(grenlab_step* step) { delete step; }

grenlab_status grenlab_step_value(const grenlab_step* step, double t, double* out) {
    if (step == nullptr || out == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] { *out = step->impl.value_at(t); });
}

grenlab_status grenlab_step_majorant(const grenlab_step* step, grenlab_envelope** out) {
    if (step == nullptr || out == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] { *out = new grenlab_envelope{majorant(step->impl)}; });
}

grenlab_status grenlab_step_sup_gap(const grenlab_step* step, const grenlab_envelope* env,
                                    double* gap, double* location) {
    if (step == nullptr || env == nullptr || gap == nullptr || location == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] {
        const SupGap g = sup_gap(step->impl, env->impl);
        *gap = g.gap;
        *location = g.location;
    });
}

grenlab_status grenlab_pava_decreasing(const double* values, const double* weights,
                                       size_t n, double* fitted) {
    if (values == nullptr || fitted == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] {
        std::vector<double> w;
        if (weights == nullptr)
            w.assign(n, 1.0);
        else
            w.assign(weights, weights + n);
        const auto result = pava_decreasing(std::span<const double>(values, n), w);
        std::memcpy(fitted, result.data(), n * sizeof(double));
    });
}

grenlab_status grenlab_grenander_fit(const grenlab_envelope* env,
                                     grenlab_monotone_fit** out) {
    if (env == nullptr || out == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] {
        *out = new grenlab_monotone_fit{grenander_decompose(env->impl)};
    });
}

void grenlab_monotone_fit_free(grenlab_monotone_fit* fit) { delete fit; }

grenlab_status grenlab_monotone_fit_value(const grenlab_monotone_fit* fit, double t,
                                          double* out) {
    if (fit == nullptr || out == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] { *out = fit->impl.value_at(t); });
}

grenlab_status grenlab_monotone_fit_smoothed(const grenlab_monotone_fit* fit, double h,
                                             double t, int order, double* out) {
    if (fit == nullptr || out == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    return guarded([&] {
        *out = smoothed_grenander_corrected(fit->impl, KernelSpec::biweight(), h, t, order);
    });
}

grenlab_status grenlab_run_config(const char* config_path, const char* output_path,
                                  int has_seed_override, uint64_t seed_override,
                                  int threads) {
    if (config_path == nullptr || output_path == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null path");
    return guarded([&] {
        RunConfig cfg = load_config(config_path);
        if (has_seed_override != 0) {
            cfg.plan.seed = seed_override;
            validate_plan(cfg.plan);
        }
        run_to_csv(cfg, output_path, threads <= 1 ? 1u : static_cast<unsigned>(threads));
    });
}

grenlab_status grenlab_report(const char* results_path, const char* regressor,
                              const char* output_path) {
    if (results_path == nullptr || regressor == nullptr || output_path == nullptr)
        return fail(GRENLAB_ERR_INVALID_INPUT, "null argument");
    RegressorKind kind;
    if (std::strcmp(regressor, "lognlogn") == 0)
        kind = RegressorKind::log_logn_over_n;
    else if (std::strcmp(regressor, "logn") == 0)
        kind = RegressorKind::log_n;
    else
        return fail(GRENLAB_ERR_INVALID_INPUT, "regressor must be 'lognlogn' or 'logn'");
    return guarded([&] { report_to_csv(results_path, kind, output_path); });
}

} // extern "C"
