// poolscope: constant-product pool replay and liquidity-provider analytics.
//
//   generate   synthesize an event log + price feed + registry from a scenario
//   replay     reconstruct pool state and provider balances from an event log
//   analyze    valuation, returns/fees/IL, risk, correlations, categories
//   movements  cross-pool liquidity relocation detection and matrices
//
// Exit codes: 0 success, 1 input error, 2 internal invariant violation.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "poolscope/csv.hpp"
#include "poolscope/event.hpp"
#include "poolscope/pricing.hpp"
#include "poolscope/replay.hpp"
#include "poolscope/reports.hpp"
#include "poolscope/scenario.hpp"

namespace {

using namespace poolscope;

struct CliOptions {
    RunConfig run;
    std::string config_path;
    std::string scenario_path;
    std::string scenario_name = "demo";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t approx_events = 1000000;
    int threads = -1;
    std::optional<std::uint64_t> at_block;
};

void add_common_inputs(CLI::App* cmd, CliOptions& opt, bool prices_needed) {
    cmd->add_option("--events", opt.run.events_path, "event log (JSON lines)")->required();
    cmd->add_option("--registry", opt.run.registry_path, "pool registry CSV");
    auto* prices = cmd->add_option("--prices", opt.run.prices_path, "numeraire/USD price CSV");
    if (prices_needed) prices->required();
    cmd->add_option("--out-dir", opt.run.out_dir, "output directory");
    cmd->add_option("--config", opt.config_path, "JSON config file (overrides flags)");
    cmd->add_option("--threads", opt.threads, "worker threads (1 = serial reference path)");
}

void finalize_config(CliOptions& opt) {
    if (opt.threads == 1) opt.run.exec = Exec::serial;
    if (!opt.config_path.empty()) opt.run.apply_json_file(opt.config_path);
    opt.run.validate();
}

ReplayResult run_replay(const CliOptions& opt, std::vector<Event>& events, PoolDirectory& dir,
                        bool* have_dir) {
    events = load_event_log(opt.run.events_path);
    *have_dir = !opt.run.registry_path.empty();
    if (*have_dir) dir = PoolDirectory::load_csv(opt.run.registry_path);
    return replay(events, opt.run.replay_mode, *have_dir ? &dir : nullptr, opt.run.exec);
}

int cmd_generate(CliOptions& opt) {
    SyntheticScenario scenario;
    if (!opt.scenario_path.empty()) {
        scenario = SyntheticScenario::from_json_file(opt.scenario_path);
    } else if (opt.scenario_name == "demo") {
        scenario = demo_scenario();
    } else if (opt.scenario_name == "stable") {
        scenario = stable_scenario();
    } else if (opt.scenario_name == "exotic") {
        scenario = exotic_scenario();
    } else if (opt.scenario_name == "large") {
        scenario = large_scenario(opt.approx_events);
    } else {
        throw Error(Errc::invalid_scenario,
                    "unknown built-in scenario '" + opt.scenario_name + "'");
    }
    if (opt.seed_set) scenario.seed = opt.seed;

    GeneratedData data = generate_scenario(scenario);
    const std::filesystem::path out(opt.run.out_dir);
    std::filesystem::create_directories(out);
    save_event_log((out / "events.jsonl").string(), data.events);
    data.numeraire_usd.save_csv((out / "prices.csv").string());
    data.directory.save_csv((out / "pools.csv").string());
    write_file_atomic(out / "scenario.json", scenario.to_json_text());
    std::printf("generated %zu events across %zu pools -> %s\n", data.events.size(),
                data.directory.pools().size(), out.string().c_str());
    return 0;
}

int cmd_replay(CliOptions& opt) {
    std::vector<Event> events;
    PoolDirectory dir;
    bool have_dir = false;
    ReplayResult result = run_replay(opt, events, dir, &have_dir);
    write_replay_reports(opt.run.out_dir, result, opt.at_block);
    std::printf("replayed %zu events, %zu pools, %zu warnings -> %s\n", events.size(),
                result.pools.size(), result.warnings.size(), opt.run.out_dir.c_str());
    return 0;
}

int cmd_analyze(CliOptions& opt) {
    std::vector<Event> events;
    PoolDirectory dir;
    bool have_dir = false;
    ReplayResult result = run_replay(opt, events, dir, &have_dir);
    if (!have_dir)
        throw Error(Errc::io_error, "analyze requires --registry for token decimals and pairs");
    PriceFeed feed = PriceFeed::load_csv(opt.run.prices_path);
    write_analysis_reports(opt.run.out_dir, events, result, dir, feed, opt.run);
    std::printf("analyzed %zu pools -> %s\n", result.pools.size(), opt.run.out_dir.c_str());
    return 0;
}

int cmd_movements(CliOptions& opt) {
    std::vector<Event> events;
    PoolDirectory dir;
    bool have_dir = false;
    ReplayResult result = run_replay(opt, events, dir, &have_dir);
    write_movement_reports(opt.run.out_dir, events, result, opt.run);
    std::printf("movement reports -> %s\n", opt.run.out_dir.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constant-product pool replay and LP analytics"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* generate = app.add_subcommand("generate", "synthesize an event log from a scenario");
    generate->add_option("--scenario", opt.scenario_path, "scenario JSON file");
    generate
        ->add_option("--builtin", opt.scenario_name,
                     "built-in scenario: demo|stable|exotic|large")
        ->check(CLI::IsMember({"demo", "stable", "exotic", "large"}));
    generate->add_option("--seed", opt.seed, "override the scenario seed")
        ->each([&](const std::string&) { opt.seed_set = true; });
    generate->add_option("--approx-events", opt.approx_events,
                         "target event count for --builtin large");
    generate->add_option("--out-dir", opt.run.out_dir, "output directory");

    CLI::App* replay_cmd = app.add_subcommand("replay", "replay an event log");
    add_common_inputs(replay_cmd, opt, false);
    std::string mode = "derive";
    replay_cmd->add_option("--mode", mode, "derive|trust_sync")
        ->check(CLI::IsMember({"derive", "trust_sync"}));
    std::uint64_t at_block = 0;
    CLI::Option* at_block_opt =
        replay_cmd->add_option("--at-block", at_block, "export balances as of this block");

    CLI::App* analyze = app.add_subcommand("analyze", "returns, fees, IL, risk and correlations");
    add_common_inputs(analyze, opt, true);
    analyze->add_option("--start", opt.run.t_start, "window start (unix seconds)");
    analyze->add_option("--end", opt.run.t_end, "window end (unix seconds)");
    analyze->add_option("--cvar-level", opt.run.cvar_level, "CVaR tail level");
    analyze->add_option("--min-risk-days", opt.run.min_risk_days,
                        "days of returns required for a risk row");
    analyze->add_option("--sample-interval", opt.run.sample_interval_s,
                        "valuation sampling interval (seconds)");
    analyze->add_option("--stable-vol", opt.run.classify.stable_daily_vol_pct,
                        "stable daily volatility threshold (pct)");
    analyze->add_option("--exotic-factor", opt.run.classify.exotic_range_factor,
                        "exotic price range factor");

    CLI::App* movements = app.add_subcommand("movements", "cross-pool liquidity movements");
    add_common_inputs(movements, opt, false);
    movements->add_option("--window", opt.run.movement_window, "block window");
    movements->add_option("--min-activity", opt.run.movement_min_activity,
                          "min mint+burn events for matrix eligibility");
    movements->add_option("--cap", opt.run.movement_cap, "display cap for matrix export");
    std::string match = "injective";
    movements->add_option("--match", match, "injective|all_pairs")
        ->check(CLI::IsMember({"injective", "all_pairs"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help/usage
        return code == 0 ? 0 : 1;      // any usage problem is an input error
    }

    try {
        if (replay_cmd->parsed() && mode == "trust_sync")
            opt.run.replay_mode = ReplayMode::trust_sync;
        if (replay_cmd->parsed() && at_block_opt->count() > 0) opt.at_block = at_block;
        if (movements->parsed() && match == "all_pairs")
            opt.run.movement_match = MatchMode::all_pairs;

        if (generate->parsed()) return cmd_generate(opt);
        finalize_config(opt);
        if (replay_cmd->parsed()) return cmd_replay(opt);
        if (analyze->parsed()) return cmd_analyze(opt);
        if (movements->parsed()) return cmd_movements(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
