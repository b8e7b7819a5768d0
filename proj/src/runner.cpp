#include "runner.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace grenlab {

std::string format_value(double v) {
    char buf[64];
    const auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc())
        throw io_error("value formatting failed");
    return std::string(buf, ptr);
}

void run_to_csv(const RunConfig& config, const std::string& output_path,
                unsigned threads) {
    const ResultTable table = run_experiment(config.plan, threads);
    std::ofstream out(output_path, std::ios::binary);
    if (!out)
        throw io_error("cannot open output file '" + output_path + "'");
    out << "model,statistic,n,rep,value\n";
    for (const auto& row : table.rows)
        out << table.model << ',' << table.statistic << ',' << row.n << ',' << row.rep
            << ',' << format_value(row.value) << '\n';
    out.flush();
    if (!out)
        throw io_error("write failed for '" + output_path + "'");
}

namespace {

struct CsvRows {
    // group key -> rows, in first-appearance order
    std::vector<std::pair<std::pair<std::string, std::string>, ResultTable>> groups;
};

CsvRows read_results(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open results file '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw config_error("results file is empty");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "model,statistic,n,rep,value")
        throw config_error("results file has an unexpected header");

    CsvRows rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::array<std::string, 5> fields;
        std::size_t start = 0;
        for (std::size_t f = 0; f < 5; ++f) {
            const auto comma = line.find(',', start);
            if (f < 4) {
                if (comma == std::string::npos)
                    throw config_error("malformed results row at line " +
                                       std::to_string(line_no));
                fields[f] = line.substr(start, comma - start);
                start = comma + 1;
            } else {
                if (comma != std::string::npos)
                    throw config_error("malformed results row at line " +
                                       std::to_string(line_no));
                fields[f] = line.substr(start);
            }
        }
        ResultRow row;
        try {
            row.n = static_cast<std::size_t>(std::stoull(fields[2]));
            row.rep = static_cast<std::size_t>(std::stoull(fields[3]));
            std::size_t pos = 0;
            row.value = std::stod(fields[4], &pos);
            if (pos != fields[4].size())
                throw std::invalid_argument(fields[4]);
        } catch (const std::exception&) {
            throw config_error("malformed results row at line " + std::to_string(line_no));
        }
        const std::pair<std::string, std::string> key{fields[0], fields[1]};
        auto it = std::find_if(rows.groups.begin(), rows.groups.end(),
                               [&](const auto& g) { return g.first == key; });
        if (it == rows.groups.end()) {
            ResultTable table;
            table.model = key.first;
            table.statistic = key.second;
            rows.groups.push_back({key, std::move(table)});
            it = rows.groups.end() - 1;
        }
        it->second.rows.push_back(row);
    }
    if (rows.groups.empty())
        throw config_error("results file contains no rows");
    return rows;
}

} // namespace

void report_to_csv(const std::string& results_path, RegressorKind regressor,
                   const std::string& output_path) {
    const CsvRows rows = read_results(results_path);
    std::ofstream out(output_path, std::ios::binary);
    if (!out)
        throw io_error("cannot open output file '" + output_path + "'");
    out << "model,statistic,slope,stderr,r2,n_min,n_max,reps\n";
    for (const auto& [key, table] : rows.groups) {
        std::size_t n_min = table.rows.front().n, n_max = n_min;
        std::vector<std::pair<std::size_t, std::size_t>> counts; // n -> rows
        for (const auto& row : table.rows) {
            n_min = std::min(n_min, row.n);
            n_max = std::max(n_max, row.n);
            auto it = std::find_if(counts.begin(), counts.end(),
                                   [&](const auto& c) { return c.first == row.n; });
            if (it == counts.end())
                counts.push_back({row.n, 1});
            else
                ++it->second;
        }
        std::size_t reps = counts.front().second;
        for (const auto& c : counts)
            reps = std::min(reps, c.second);

        out << key.first << ',' << key.second << ',';
        if (counts.size() < 2) {
            std::cerr << "warning: group " << key.first << '/' << key.second
                      << " has fewer than two distinct sample sizes; no rate fitted\n";
            out << ",,";
        } else {
            const RateFit fit = fit_log_rate(table, regressor);
            out << format_value(fit.slope) << ',' << format_value(fit.slope_stderr) << ','
                << format_value(fit.r_squared);
        }
        out << ',' << n_min << ',' << n_max << ',' << reps << '\n';
    }
    out.flush();
    if (!out)
        throw io_error("write failed for '" + output_path + "'");
}

} // namespace grenlab
