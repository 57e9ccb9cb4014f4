#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "context.hpp"

namespace pmt::cli {

struct ValidateArgs {
    std::vector<std::string> pools;
};

struct SimulateArgs {
    std::size_t size = 30;
    std::string law = "normal";  // normal | bernoulli
    double mu = 0.9915;
    double sigma = 0.0006;
    std::optional<double> lo, hi;  // default: the metric's declared range
    double p = 0.9;
    std::size_t length = 100;
    std::string label = "identity";
    std::string mutation_operator = "identity";
    std::optional<std::string> magnitude;
};

struct TestArgs {
    std::string healthy, mutant;
    std::string kind = "statistical";
};

struct PosteriorArgs {
    std::string healthy, mutant;
    std::string kind = "statistical";
    std::string ci = "equal-tailed";
};

struct DecideArgs {
    std::string healthy;
    std::vector<std::string> mutants;
    std::string kind = "statistical";
    std::string ci = "equal-tailed";
};

struct ScoreArgs {
    std::string report;
    std::vector<double> ratios;
    std::optional<double> theta;
};

struct FlakinessArgs {
    std::string healthy;
    std::vector<std::string> mutants;
    std::string kind = "statistical";
    std::size_t k = 20;
    std::size_t samplings = 100;
    std::size_t partitions = 50;
};

struct TradeoffArgs {
    std::string healthy, mutant;
    std::string kind = "statistical";
    std::vector<std::size_t> sizes;
    std::string range;  // start:stop:step, inclusive
    std::size_t n_pop = 10;
    int reps = 10;
};

struct ExportPlotArgs {
    std::string posterior;  // posterior JSON, or report.json with --mutation
    std::string mutation;
    std::size_t grid = 1001;
    bool ideals = true;
};

int cmd_validate(const Context& ctx, const ValidateArgs& args);
int cmd_simulate(const Context& ctx, const SimulateArgs& args);
int cmd_test(const Context& ctx, const TestArgs& args);
int cmd_posterior(const Context& ctx, const PosteriorArgs& args);
int cmd_decide(const Context& ctx, const DecideArgs& args);
int cmd_score(const Context& ctx, const ScoreArgs& args);
int cmd_flakiness(const Context& ctx, const FlakinessArgs& args);
int cmd_tradeoff(const Context& ctx, const TradeoffArgs& args);
int cmd_export_plot(const Context& ctx, const ExportPlotArgs& args);

/// Parses "start:stop:step" (inclusive) into sample sizes.
std::vector<std::size_t> parse_range(const std::string& text);

}  // namespace pmt::cli
