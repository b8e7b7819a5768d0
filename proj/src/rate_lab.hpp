#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "estimators.hpp"
#include "smoothing.hpp"

namespace grenlab {

enum class Variant { regression, density, censoring, surrogate, primitive };
enum class TimeChange { cdf, identity };
enum class Statistic { global, local, pointwise, moment, localization, smoothing_discrepancy };
enum class RegressorKind { log_logn_over_n, log_n };

std::string variant_label(Variant v);
std::string statistic_label(Statistic s);

/// Simulation model: which naive estimator is studied, under which true
/// curve, and with which Gaussian regime.
struct ModelSpec {
    Variant variant = Variant::density;
    TrueCurve curve = linear_curve(0.0, 1.0, 1.5, -1.0);
    double noise_sd = 1.0;                     // regression / primitive errors
    double censor_rate = 1.0;                  // exponential censoring law
    DriverKind driver = DriverKind::bridge;    // surrogate only
    TimeChange time_change = TimeChange::cdf;  // surrogate only
    double tau = 1.0;                          // driver tail regime in [0, 4)
    std::size_t surrogate_grid = 0;            // interior grid points; 0 -> n
};

/// Grid checks of the generator assumptions (decreasing f, positivity,
/// F(a) = 0, unit mass for densities, ...). Throws model_error on violation.
void validate_model(const ModelSpec& spec);

/// epsilon_n = scale * n^exponent, the shrinking-neighborhood rule.
struct EpsilonRule {
    double scale = 1.0;
    double exponent = -1.0 / 3.0;
    double operator()(std::size_t n) const;
};

struct ExperimentPlan {
    ModelSpec model;
    std::vector<std::size_t> n_grid;
    std::size_t reps = 1;
    std::uint64_t seed = 0;
    Statistic statistic = Statistic::global;
    double x0 = 0.5;              // local / pointwise center
    EpsilonRule epsilon;          // local window rule
    double c0 = 50.0;             // localization constant
    double moment_order = 2.0;    // r >= 1
    BandwidthRule bandwidth;      // smoothing discrepancy
    int smoothing_order = 0;      // l in {0, 1}
    std::size_t grid_size = 1024; // equispaced evaluation grid (incl. endpoints)
};

void validate_plan(const ExperimentPlan& plan);

struct DensityData {
    double lower = 0.0, upper = 1.0;
    std::vector<double> samples;
};

struct SurrogateData {
    std::vector<PlanePoint> points;
};

using Dataset = std::variant<RegressionData, DensityData, SurvivalData, SurrogateData>;

/// Draw one dataset. Deterministic in (spec, n, seed): regression designs are
/// exactly uniform, densities invert F by bisection to 1e-12, censored
/// failure times invert the cumulative hazard (extended linearly beyond the
/// horizon), surrogates realize F + n^{-1/2} B_n(L) on the grid.
Dataset sample_model(const ModelSpec& spec, std::size_t n, std::uint64_t seed);

/// One replication's process and its least concave majorant. Step variants
/// fill `step`; the primitive and surrogate variants carry the process as a
/// point sequence.
struct Replication {
    std::optional<CadlagStep> step;
    std::vector<PlanePoint> points;
    std::optional<PolylineEnvelope> env;
    const PolylineEnvelope& envelope() const { return *env; }
};

Replication build_replication(const ModelSpec& spec, std::size_t n, std::uint64_t sub_seed);

/// Supremum gaps env - process computed from one shared candidate
/// enumeration, so pointwise <= local <= global holds exactly.
struct GapBundle {
    double global = 0.0;
    double local = 0.0;
    double pointwise = 0.0;
};

struct GapWindow {
    bool active = false;
    double x0 = 0.0;
    double eps = 0.0;
};

GapBundle gap_bundle(const Replication& rep, const GapWindow& window);

/// True whether the global majorant differs from the windowed majorant
/// (window halfwidth `halfwidth` around each abscissa) anywhere on the
/// equispaced grid.
bool localization_mismatch(const Replication& rep, double halfwidth,
                           std::size_t grid_points);

/// sup |LCM - truth| and sup |process - truth| over the evaluation grid
/// (jump abscissae with left limits plus the equispaced grid). Marshall's
/// lemma implies lcm_dist <= process_dist whenever the truth is concave.
struct MarshallPair {
    double lcm_dist = 0.0;
    double process_dist = 0.0;
};

MarshallPair marshall_distances(const Replication& rep, const ModelSpec& spec,
                                std::size_t grid_points);

/// The per-replication statistic selected by the plan; a pure function of
/// (plan, n, repIndex).
double replication_statistic(const ExperimentPlan& plan, std::size_t n,
                             std::size_t rep_index);

struct ResultRow {
    std::size_t n = 0;
    std::size_t rep = 0;
    double value = 0.0;
};

struct ResultTable {
    std::string model;
    std::string statistic;
    std::vector<ResultRow> rows;
};

/// |n_grid| x reps rows in (n, rep) order; bit-identical across runs and
/// across any thread count.
ResultTable run_experiment(const ExperimentPlan& plan, unsigned threads = 1);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 0.0;
    RegressorKind regressor = RegressorKind::log_logn_over_n;
};

/// Least squares of log(per-n aggregate) on the chosen regressor. The
/// aggregate is the median, except for moment statistics where the mean
/// estimates the expectation.
RateFit fit_log_rate(const ResultTable& table, RegressorKind kind);

struct ProbabilityEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

/// Mean localization indicator over the plan's replications at sample size n,
/// with a binomial standard error.
ProbabilityEstimate localization_probability(const ExperimentPlan& plan, std::size_t n);

/// count >= 2 equispaced abscissae including both endpoints.
std::vector<double> equispaced_grid(double lower, double upper, std::size_t count);

} // namespace grenlab
