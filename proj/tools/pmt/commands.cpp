#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "pmt/error.hpp"
#include "pmt/hellinger.hpp"
#include "pmt/mce.hpp"
#include "pmt/pipeline.hpp"
#include "pmt/posterior.hpp"
#include "pmt/report.hpp"
#include "pmt/synth.hpp"

namespace pmt::cli {
namespace {

using Clock = std::chrono::steady_clock;

MutationTest make_test(const std::string& kind) {
    MutationTest test;
    test.kind = parse_test_kind(kind);
    return test;
}

std::string with_comments(const std::vector<std::string>& header, const std::string& body) {
    std::string out;
    for (const auto& h : header) out += "# " + h + "\n";
    return out + body;
}

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

nlohmann::json timed_metadata(const Context& ctx, Clock::time_point start) {
    auto meta = ctx.metadata();
    meta["finished_at"] = utc_now();
    meta["elapsed_s"] = std::chrono::duration<double>(Clock::now() - start).count();
    return meta;
}

nlohmann::json fingerprint_json(const PoolFingerprint& f) {
    return {{"label", f.label}, {"rows", f.rows}, {"sha256", f.sha256}};
}

std::string fixed(double v, int digits = 4) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*f", digits, v);
    return buffer;
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("'" + path + "' is not valid JSON: " + e.what());
    }
}

double ratio_from_json(const nlohmann::json& v) {
    if (v.is_number()) return v.get<double>();
    if (v == "inf") return std::numeric_limits<double>::infinity();
    throw DataError("malformed raw_ratio in report");
}

}  // namespace

std::vector<std::size_t> parse_range(const std::string& text) {
    std::size_t start = 0, stop = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' || step == 0 ||
        stop < start || !in.eof())
        throw UsageError("--range expects start:stop:step with step > 0, got '" + text + "'");
    std::vector<std::size_t> sizes;
    for (std::size_t s = start; s <= stop; s += step) sizes.push_back(s);
    return sizes;
}

int cmd_validate(const Context& ctx, const ValidateArgs& args) {
    for (const auto& path : args.pools) {
        const auto pool = ctx.load(path);
        const auto f = fingerprint(pool);
        std::cout << path << ": ok, " << pool.size() << " rows, operator " << pool.mutation_operator;
        if (pool.magnitude) std::cout << " (" << *pool.magnitude << ")";
        std::cout << ", sha256 " << f.sha256 << '\n';
    }
    return 0;
}

int cmd_simulate(const Context& ctx, const SimulateArgs& args) {
    PopulationSpec spec;
    spec.size = args.size;
    spec.label = args.label;
    spec.mutation_operator = args.mutation_operator;
    spec.magnitude = args.magnitude;
    if (args.law == "normal") {
        spec.law = TruncatedNormal{args.mu, args.sigma, args.lo.value_or(ctx.schema.metric_lo),
                                   args.hi.value_or(ctx.schema.metric_hi)};
    } else if (args.law == "bernoulli") {
        spec.law = PerInputBernoulli{args.p, args.length};
    } else {
        throw UsageError("--law must be 'normal' or 'bernoulli'");
    }
    auto pool = gen_population(spec, Stream(ctx.config.master_seed));
    pool.metric_kind = ctx.schema.kind;
    validate_pool(pool, ctx.schema);

    std::ostringstream csv;
    auto header = ctx.header();
    write_pool(csv, pool, header);
    const auto path = ctx.output(args.label + ".csv");
    write_text(path, csv.str());

    double mean = 0.0;
    for (const auto& r : pool.records) mean += r.metric / static_cast<double>(pool.size());
    std::cout << "wrote " << path.string() << ": " << pool.size() << " instances, mean metric "
              << fixed(mean, 6) << '\n';
    return 0;
}

int cmd_test(const Context& ctx, const TestArgs& args) {
    const auto start = Clock::now();
    const auto healthy = ctx.load(args.healthy);
    const auto mutant = ctx.load(args.mutant);
    const auto test = make_test(args.kind);
    const auto outcome = run_trials(healthy, mutant, test, ctx.config, Stream(ctx.config.master_seed));
    const auto post = beta_posterior(outcome, ctx.config.prior_a, ctx.config.prior_b);

    const nlohmann::json payload = {
        {"config", to_json(ctx.config)},
        {"mutation_test", to_json(test)},
        {"healthy_pool", fingerprint_json(fingerprint(healthy))},
        {"mutant_pool", fingerprint_json(fingerprint(mutant))},
        {"successes", outcome.successes},
        {"trials", outcome.trials},
        {"kill_rate", static_cast<double>(outcome.successes) / outcome.trials},
        {"posterior", {{"alpha", post.alpha}, {"beta", post.beta}, {"mean", post.mean()}}},
    };
    const auto path = ctx.output("test.json");
    write_text(path, envelope(payload, timed_metadata(ctx, start)).dump(2) + "\n");

    std::cout << mutant.label << " vs " << healthy.label << ": killed " << outcome.successes << "/"
              << outcome.trials << " trials; posterior Beta(" << post.alpha << ", " << post.beta
              << "), mean " << fixed(post.mean()) << '\n'
              << "wrote " << path.string() << '\n';
    return 0;
}

int cmd_posterior(const Context& ctx, const PosteriorArgs& args) {
    const auto healthy = ctx.load(args.healthy);
    const auto mutant = ctx.load(args.mutant);
    const auto bagged = bayes_bag(healthy, mutant, make_test(args.kind), ctx.config,
                                  Stream(ctx.config.master_seed));
    const double mean = mmse(bagged.mixture);
    const double map = map_estimate(bagged.mixture);
    const auto ci = credible_interval(bagged.mixture, ctx.config.ci_level, parse_ci_kind(args.ci));

    auto summary = posterior_summary(bagged, map, mean, ci);
    summary["header"] = ctx.header();
    const auto path = ctx.output("posterior_" + mutant.label + ".json");
    write_text(path, summary.dump(2) + "\n");

    std::cout << mutant.label << " vs " << healthy.label << ": MMSE " << fixed(mean) << ", MAP "
              << fixed(map) << ", " << to_string(ci.kind) << " " << fixed(ci.level * 100, 0)
              << "% CI [" << fixed(ci.lo) << ", " << fixed(ci.hi) << "]"
              << (ci.multimodal ? " (multimodal)" : "") << '\n'
              << "wrote " << path.string() << '\n';
    return 0;
}

int cmd_decide(const Context& ctx, const DecideArgs& args) {
    const auto start = Clock::now();
    const auto healthy = ctx.load(args.healthy);
    const auto mutants = ctx.load_all(args.mutants);
    std::set<std::string> labels;
    for (const auto& m : mutants)
        if (!labels.insert(m.label).second)
            throw UsageError("two mutant pools share the label '" + m.label + "'");

    DecideOptions options;
    options.ci_kind = parse_ci_kind(args.ci);
    auto report = decide(healthy, mutants, make_test(args.kind), ctx.config, options);

    // Everything is computed before the first file is written.
    std::vector<std::pair<std::filesystem::path, std::string>> files;
    for (const auto& a : report.mutations) {
        const std::string name = "posteriors/" + a.label + ".json";
        auto summary = posterior_summary(a.posterior, a.map, a.mmse, a.ci);
        summary["header"] = ctx.header();
        files.emplace_back(ctx.output(name), summary.dump(2) + "\n");
        report.posterior_files.push_back(name);
    }
    const auto payload = to_json(report);
    const auto report_path = ctx.output("report.json");
    files.emplace_back(report_path, envelope(payload, timed_metadata(ctx, start)).dump(2) + "\n");
    for (const auto& [path, content] : files) write_text(path, content);

    std::printf("%-16s %-22s %7s %17s %7s %-24s %s\n", "mutation", "protocol", "MMSE", "CI",
                "ratio", "effect", "verdict");
    for (const auto& a : report.mutations) {
        const std::string ci = "[" + fixed(a.ci.lo, 3) + ", " + fixed(a.ci.hi, 3) + "]";
        std::printf("%-16s %-22s %7s %17s %7s %-24s %s\n", a.label.c_str(), a.protocol.c_str(),
                    fixed(a.mmse).c_str(), ci.c_str(), a.effect.display_ratio().c_str(),
                    std::string(to_string(a.effect.effect_class)).c_str(),
                    std::string(to_string(a.effect.verdict)).c_str());
    }
    std::cout << "mutation score (theta " << ctx.config.theta << "): " << report.mutation_score << '\n'
              << "seed " << ctx.config.master_seed << "; wrote " << report_path.string() << '\n';
    return 0;
}

int cmd_score(const Context& ctx, const ScoreArgs& args) {
    std::vector<double> ratios = args.ratios;
    std::vector<std::string> labels(ratios.size());
    double theta = args.theta.value_or(ctx.config.theta);
    if (!args.report.empty()) {
        const auto doc = read_json(args.report);
        const auto& payload = doc.contains("payload") ? doc.at("payload") : doc;
        try {
            for (const auto& m : payload.at("mutations")) {
                ratios.push_back(ratio_from_json(m.at("effect").at("raw_ratio")));
                labels.push_back(m.at("label").get<std::string>());
            }
            if (!args.theta && payload.contains("theta")) theta = payload.at("theta").get<double>();
        } catch (const nlohmann::json::exception& e) {
            throw DataError("'" + args.report + "' is not a decide report: " + e.what());
        }
    }
    if (ratios.empty()) throw UsageError("score needs --report or at least one --ratio");
    const double ms = mutation_score(ratios, theta);
    for (std::size_t i = 0; i < ratios.size(); ++i)
        std::cout << (labels[i].empty() ? "ratio" : labels[i]) << " " << fixed(ratios[i], 2) << " "
                  << (ratios[i] > theta ? "killed" : "not killed") << '\n';
    std::cout << "mutation score (theta " << theta << "): " << ms << '\n';
    return 0;
}

int cmd_flakiness(const Context& ctx, const FlakinessArgs& args) {
    const auto start = Clock::now();
    const auto healthy = ctx.load(args.healthy);
    const auto mutants = ctx.load_all(args.mutants);
    const auto table = flakiness(healthy, mutants, make_test(args.kind), args.k, args.samplings,
                                 args.partitions, Stream(ctx.config.master_seed));

    nlohmann::json payload = to_json(table);
    payload["config"] = to_json(ctx.config);
    payload["healthy_pool"] = fingerprint_json(fingerprint(healthy));
    std::ostringstream csv;
    csv << "label,mean_kill_probability\n";
    for (const auto& c : table.columns)
        csv << c.label << ',' << format_double(c.mean_kill_probability) << '\n';

    const auto json_path = ctx.output("flakiness.json");
    const auto csv_path = ctx.output("flakiness.csv");
    const auto json_text = envelope(payload, timed_metadata(ctx, start)).dump(2) + "\n";
    write_text(json_path, json_text);
    write_text(csv_path, with_comments(ctx.header(), csv.str()));

    for (const auto& c : table.columns) std::printf("%12s", c.label.c_str());
    std::printf("\n");
    for (const auto& c : table.columns) std::printf("%12s", fixed(c.mean_kill_probability, 2).c_str());
    std::printf("\n");
    std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << '\n';
    return 0;
}

int cmd_tradeoff(const Context& ctx, const TradeoffArgs& args) {
    std::vector<std::size_t> sizes = args.sizes;
    if (!args.range.empty()) {
        const auto more = parse_range(args.range);
        sizes.insert(sizes.end(), more.begin(), more.end());
    }
    if (sizes.empty()) throw UsageError("tradeoff needs --sizes or --range");
    const auto healthy = ctx.load(args.healthy);
    const auto mutant = ctx.load(args.mutant);
    const auto report = tradeoff_study(healthy.metrics(), mutant.metrics(), make_test(args.kind),
                                       ctx.config, sizes, args.n_pop, args.reps,
                                       Stream(ctx.config.master_seed));

    std::ostringstream cells, summary;
    write_tradeoff_csv(cells, report);
    summary << "size,estimate_mu,se_mu,ci_lo_mu,ci_hi_mu,estimate_var,se_var,ci_lo_var,ci_hi_var,"
               "dispersion_mu\n";
    for (const auto& s : report.summarize())
        summary << s.sample_size << ',' << format_double(s.estimate_mu) << ','
                << format_double(s.se_mu) << ',' << format_double(s.ci_lo_mu) << ','
                << format_double(s.ci_hi_mu) << ',' << format_double(s.estimate_var) << ','
                << format_double(s.se_var) << ',' << format_double(s.ci_lo_var) << ','
                << format_double(s.ci_hi_var) << ',' << format_double(s.dispersion_mu) << '\n';

    const auto cells_path = ctx.output("tradeoff.csv");
    const auto summary_path = ctx.output("tradeoff_summary.csv");
    write_text(cells_path, with_comments(ctx.header(), cells.str()));
    write_text(summary_path, with_comments(ctx.header(), summary.str()));

    std::printf("%6s %10s %10s %12s\n", "size", "mu", "se_mu", "dispersion");
    for (const auto& s : report.summarize())
        std::printf("%6zu %10s %10s %12s\n", s.sample_size, fixed(s.estimate_mu).c_str(),
                    fixed(s.se_mu, 5).c_str(), fixed(s.dispersion_mu, 5).c_str());
    std::cout << "wrote " << cells_path.string() << " (" << report.cells.size() << " rows) and "
              << summary_path.string() << '\n';
    return 0;
}

int cmd_export_plot(const Context& ctx, const ExportPlotArgs& args) {
    const auto doc = read_json(args.posterior);
    nlohmann::json summary;
    std::string label;
    if (doc.contains("payload")) {
        const auto& mutations = doc.at("payload").at("mutations");
        for (const auto& m : mutations)
            if (args.mutation.empty() ? mutations.size() == 1 : m.at("label") == args.mutation) {
                summary = m.at("posterior");
                label = m.at("label").get<std::string>();
            }
        if (summary.is_null())
            throw UsageError(args.mutation.empty()
                                 ? "report holds several mutations; pick one with --mutation"
                                 : "no mutation labelled '" + args.mutation + "' in the report");
    } else {
        summary = doc;
        label = doc.value("mutant", std::string("posterior"));
    }
    const auto mixture = mixture_from_summary(summary);

    std::optional<IdealPosteriors> ideals;
    RunConfig cfg = ctx.config;
    if (summary.contains("config")) cfg = config_from_json(summary.at("config"));
    if (args.ideals) ideals = IdealPosteriors::from(cfg);

    auto header = ctx.header();
    header.push_back("posterior config " + to_json(cfg).dump());
    std::ostringstream csv;
    write_density_csv(csv, mixture, args.grid, ideals ? &*ideals : nullptr, header);
    const auto path = ctx.output("density_" + label + ".csv");
    write_text(path, csv.str());
    std::cout << "wrote " << path.string() << " (" << args.grid << " grid points)\n";
    return 0;
}

}  // namespace pmt::cli
