#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace grenlab {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct KeyValues {
    std::map<std::string, std::string> entries;

    bool has(const std::string& key) const { return entries.count(key) != 0; }

    std::string take(const std::string& key, const std::string& fallback) {
        auto it = entries.find(key);
        if (it == entries.end())
            return fallback;
        std::string v = it->second;
        entries.erase(it);
        return v;
    }

    std::string require(const std::string& key) {
        auto it = entries.find(key);
        if (it == entries.end())
            throw config_error("missing required key '" + key + "'");
        std::string v = it->second;
        entries.erase(it);
        return v;
    }
};

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size() || !std::isfinite(v))
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("key '" + key + "' expects a number, got '" + value + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw config_error("key '" + key + "' expects a nonnegative integer, got '" +
                           value + "'");
    return v;
}

std::vector<std::size_t> parse_size_list(const std::string& key, const std::string& value) {
    std::vector<std::size_t> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw config_error("key '" + key + "' has an empty list entry");
        out.push_back(static_cast<std::size_t>(parse_u64(key, item)));
    }
    if (out.empty())
        throw config_error("key '" + key + "' expects a comma-separated list");
    return out;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    KeyValues kv;
    std::stringstream stream(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line_no) +
                               ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("line " + std::to_string(line_no) +
                               ": expected 'key = value'");
        if (!kv.entries.emplace(key, value).second)
            throw config_error("duplicate key '" + key + "'");
    }

    RunConfig cfg;
    ExperimentPlan& plan = cfg.plan;

    const std::string variant = kv.require("model.variant");
    if (variant == "regression")
        plan.model.variant = Variant::regression;
    else if (variant == "density")
        plan.model.variant = Variant::density;
    else if (variant == "censoring")
        plan.model.variant = Variant::censoring;
    else if (variant == "surrogate")
        plan.model.variant = Variant::surrogate;
    else if (variant == "primitive")
        plan.model.variant = Variant::primitive;
    else
        throw config_error("key 'model.variant' has unknown value '" + variant + "'");

    // per-variant defaults: density-flavored models use the unit-mass curve,
    // the rest the steeper regression curve; censoring lives on [0, 0.9]
    const bool density_like =
        plan.model.variant == Variant::density || plan.model.variant == Variant::surrogate;
    double lower = 0.0;
    double upper = plan.model.variant == Variant::censoring ? 0.9 : 1.0;
    double intercept = density_like ? 1.5 : 2.0;
    double slope = -1.0;
    lower = parse_double("model.lower", kv.take("model.lower", std::to_string(lower)));
    upper = parse_double("model.upper", kv.take("model.upper", std::to_string(upper)));
    if (kv.has("model.f.intercept"))
        intercept = parse_double("model.f.intercept", kv.require("model.f.intercept"));
    if (kv.has("model.f.slope"))
        slope = parse_double("model.f.slope", kv.require("model.f.slope"));
    plan.model.curve = linear_curve(lower, upper, intercept, slope);

    plan.model.noise_sd =
        parse_double("model.noise.sd", kv.take("model.noise.sd", "1.0"));
    plan.model.censor_rate =
        parse_double("model.censor.rate", kv.take("model.censor.rate", "1.0"));
    plan.model.tau = parse_double(
        "model.tau",
        kv.take("model.tau", plan.model.variant == Variant::primitive ? "2" : "1"));

    const std::string driver = kv.take("model.driver", "bridge");
    if (driver == "bridge")
        plan.model.driver = DriverKind::bridge;
    else if (driver == "motion")
        plan.model.driver = DriverKind::motion;
    else
        throw config_error("key 'model.driver' has unknown value '" + driver + "'");

    const std::string timechange = kv.take("model.timechange", "cdf");
    if (timechange == "cdf")
        plan.model.time_change = TimeChange::cdf;
    else if (timechange == "identity")
        plan.model.time_change = TimeChange::identity;
    else
        throw config_error("key 'model.timechange' has unknown value '" + timechange + "'");

    plan.model.surrogate_grid = static_cast<std::size_t>(
        parse_u64("model.surrogate.grid", kv.take("model.surrogate.grid", "0")));

    const std::string statistic = kv.require("experiment.statistic");
    if (statistic == "global")
        plan.statistic = Statistic::global;
    else if (statistic == "local")
        plan.statistic = Statistic::local;
    else if (statistic == "pointwise")
        plan.statistic = Statistic::pointwise;
    else if (statistic == "moment")
        plan.statistic = Statistic::moment;
    else if (statistic == "localization")
        plan.statistic = Statistic::localization;
    else if (statistic == "smoothing-discrepancy")
        plan.statistic = Statistic::smoothing_discrepancy;
    else
        throw config_error("key 'experiment.statistic' has unknown value '" + statistic +
                           "'");

    plan.n_grid = parse_size_list("experiment.n", kv.require("experiment.n"));
    plan.reps =
        static_cast<std::size_t>(parse_u64("experiment.reps", kv.require("experiment.reps")));
    plan.seed = parse_u64("experiment.seed", kv.take("experiment.seed", "0"));
    plan.x0 = parse_double(
        "experiment.x0", kv.take("experiment.x0", std::to_string(0.5 * (lower + upper))));
    plan.epsilon.scale =
        parse_double("experiment.epsilon.scale", kv.take("experiment.epsilon.scale", "1.0"));
    plan.epsilon.exponent = parse_double(
        "experiment.epsilon.exponent",
        kv.take("experiment.epsilon.exponent", "-0.3333333333333333"));
    plan.c0 = parse_double("experiment.c0", kv.take("experiment.c0", "50"));
    plan.moment_order =
        parse_double("experiment.moment.order", kv.take("experiment.moment.order", "2"));
    plan.bandwidth.holder_exponent =
        parse_double("experiment.smooth.alpha", kv.take("experiment.smooth.alpha", "2.0"));
    plan.bandwidth.scale =
        parse_double("experiment.smooth.scale", kv.take("experiment.smooth.scale", "1.0"));
    plan.smoothing_order = static_cast<int>(
        parse_u64("experiment.smooth.order", kv.take("experiment.smooth.order", "0")));
    plan.grid_size = static_cast<std::size_t>(
        parse_u64("experiment.grid", kv.take("experiment.grid", "1024")));

    if (!kv.entries.empty())
        throw config_error("unknown key '" + kv.entries.begin()->first + "'");

    try {
        validate_plan(plan);
    } catch (const model_error& e) {
        throw config_error(std::string("invalid plan: ") + e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace grenlab
