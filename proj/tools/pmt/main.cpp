// pmt: command-line front end of the probabilistic mutation testing library.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "pmt/error.hpp"

using namespace pmt::cli;

namespace {

std::string join_args(int argc, char** argv) {
    std::string out;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) out += ' ';
        out += argv[i];
    }
    return out;
}

void add_kind(CLI::App* cmd, std::string& kind) {
    cmd->add_option("--test", kind, "Mutation test: statistical | pointwise-delta")
        ->capture_default_str();
}

void add_ci(CLI::App* cmd, std::string& ci) {
    cmd->add_option("--ci", ci, "Credible interval: equal-tailed | hdi | mean-centered")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probabilistic mutation testing for stochastic models"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    app.add_option("--config", global.config_path, "Run config (JSON or key = value lines)");
    app.add_option("--seed", global.seed, "Master seed (u64)");
    app.add_option("--out", global.out_dir, "Output directory")->capture_default_str();
    app.add_flag("--strict", global.strict, "Fail when no seed is given instead of drawing one");
    app.add_option("--metric-kind", global.metric_kind, "accuracy | error | angle | custom")
        ->capture_default_str();
    app.add_option("--set", global.overrides, "Config override key=value (repeatable)");

    ValidateArgs validate;
    auto* c_validate = app.add_subcommand("validate", "Check pool CSVs against the schema");
    c_validate->add_option("pools", validate.pools, "Pool CSV files")->required()->check(CLI::ExistingFile);

    SimulateArgs simulate;
    auto* c_simulate = app.add_subcommand("simulate", "Generate a synthetic instance pool");
    c_simulate->add_option("--size", simulate.size, "Instances")->capture_default_str();
    c_simulate->add_option("--law", simulate.law, "normal | bernoulli")->capture_default_str();
    c_simulate->add_option("--mu", simulate.mu)->capture_default_str();
    c_simulate->add_option("--sigma", simulate.sigma)->capture_default_str();
    c_simulate->add_option("--lo", simulate.lo, "Truncation lower bound");
    c_simulate->add_option("--hi", simulate.hi, "Truncation upper bound");
    c_simulate->add_option("-p,--p", simulate.p, "Per-input success probability")->capture_default_str();
    c_simulate->add_option("--length", simulate.length, "Per-input outcomes per instance")
        ->capture_default_str();
    c_simulate->add_option("--label", simulate.label, "Pool label and file stem")->capture_default_str();
    c_simulate->add_option("--operator", simulate.mutation_operator)->capture_default_str();
    c_simulate->add_option("--magnitude", simulate.magnitude);

    TestArgs test;
    auto* c_test = app.add_subcommand("test", "Run N plain mutation tests and the conjugate update");
    c_test->add_option("--healthy", test.healthy)->required()->check(CLI::ExistingFile);
    c_test->add_option("--mutant", test.mutant)->required()->check(CLI::ExistingFile);
    add_kind(c_test, test.kind);

    PosteriorArgs posterior;
    auto* c_posterior = app.add_subcommand("posterior", "Bayes-bagged posterior for one mutant");
    c_posterior->add_option("--healthy", posterior.healthy)->required()->check(CLI::ExistingFile);
    c_posterior->add_option("--mutant", posterior.mutant)->required()->check(CLI::ExistingFile);
    add_kind(c_posterior, posterior.kind);
    add_ci(c_posterior, posterior.ci);

    DecideArgs decide;
    auto* c_decide = app.add_subcommand("decide", "Posterior, similarity ratio and verdict per mutant");
    c_decide->add_option("--healthy", decide.healthy)->required()->check(CLI::ExistingFile);
    c_decide->add_option("mutants", decide.mutants, "Mutant pool CSVs")->check(CLI::ExistingFile);
    add_kind(c_decide, decide.kind);
    add_ci(c_decide, decide.ci);

    ScoreArgs score;
    auto* c_score = app.add_subcommand("score", "Mutation score from a report or ratios");
    c_score->add_option("--report", score.report, "report.json from decide")->check(CLI::ExistingFile);
    c_score->add_option("--ratio", score.ratios, "Similarity ratios (repeatable)");
    c_score->add_option("--theta", score.theta, "Kill threshold (default: config theta)");

    FlakinessArgs flaky;
    auto* c_flaky = app.add_subcommand("flakiness", "Repeated plain mutation tests over partitions");
    c_flaky->add_option("--healthy", flaky.healthy)->required()->check(CLI::ExistingFile);
    c_flaky->add_option("mutants", flaky.mutants, "Mutant pool CSVs")->check(CLI::ExistingFile);
    c_flaky->add_option("-k,--k", flaky.k, "Instances per side")->capture_default_str();
    c_flaky->add_option("--samplings", flaky.samplings)->capture_default_str();
    c_flaky->add_option("--partitions", flaky.partitions)->capture_default_str();
    add_kind(c_flaky, flaky.kind);

    TradeoffArgs tradeoff;
    auto* c_tradeoff = app.add_subcommand("tradeoff", "Monte-Carlo error against sample size");
    c_tradeoff->add_option("--healthy", tradeoff.healthy)->required()->check(CLI::ExistingFile);
    c_tradeoff->add_option("--mutant", tradeoff.mutant)->required()->check(CLI::ExistingFile);
    c_tradeoff->add_option("--sizes", tradeoff.sizes, "Sample sizes")->delimiter(',');
    c_tradeoff->add_option("--range", tradeoff.range, "Sample sizes as start:stop:step");
    c_tradeoff->add_option("--n-pop", tradeoff.n_pop, "Subsample draws per size")->capture_default_str();
    c_tradeoff->add_option("--reps", tradeoff.reps, "Bagging replicates per draw")->capture_default_str();
    add_kind(c_tradeoff, tradeoff.kind);

    ExportPlotArgs plot;
    auto* c_plot = app.add_subcommand("export-plot", "Posterior density on a grid for plotting");
    c_plot->add_option("posterior", plot.posterior, "Posterior JSON or report.json")
        ->required()
        ->check(CLI::ExistingFile);
    c_plot->add_option("--mutation", plot.mutation, "Mutation label inside a report");
    c_plot->add_option("--grid", plot.grid, "Grid points on [0, 1]")->capture_default_str();
    c_plot->add_flag("!--no-ideals", plot.ideals, "Omit the ideal posterior columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string command_line = join_args(argc, argv);
    try {
        auto context = [&](bool needs_seed) { return make_context(global, needs_seed, command_line); };
        if (*c_validate) return cmd_validate(context(false), validate);
        if (*c_simulate) return cmd_simulate(context(true), simulate);
        if (*c_test) return cmd_test(context(true), test);
        if (*c_posterior) return cmd_posterior(context(true), posterior);
        if (*c_decide) return cmd_decide(context(true), decide);
        if (*c_score) return cmd_score(context(false), score);
        if (*c_flaky) return cmd_flakiness(context(true), flaky);
        if (*c_tradeoff) return cmd_tradeoff(context(true), tradeoff);
        if (*c_plot) return cmd_export_plot(context(false), plot);
    } catch (const pmt::Error& e) {
        std::cerr << "pmt: " << e.what() << '\n';
        return pmt::exit_code(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "pmt: " << e.what() << '\n';
        return pmt::exit_code(pmt::ErrorKind::data);
    } catch (const std::exception& e) {
        std::cerr << "pmt: internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
