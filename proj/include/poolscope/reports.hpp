#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "poolscope/classify.hpp"
#include "poolscope/metrics.hpp"
#include "poolscope/movement.hpp"
#include "poolscope/parallel.hpp"
#include "poolscope/pricing.hpp"
#include "poolscope/replay.hpp"

namespace poolscope {

struct RunConfig {
    std::string events_path;
    std::string prices_path;
    std::string registry_path;
    std::string out_dir = "out";

    std::optional<std::int64_t> t_start;  // unix seconds; defaults to the log range
    std::optional<std::int64_t> t_end;

    ReplayMode replay_mode = ReplayMode::derive;
    std::int64_t sample_interval_s = 3600;

    double cvar_level = 0.05;
    std::size_t min_risk_days = 20;
    ClassifyConfig classify;

    std::uint64_t movement_window = 6000;
    std::uint64_t movement_min_activity = 5000;
    std::uint64_t movement_cap = 500;
    MatchMode movement_match = MatchMode::injective;
    std::size_t movement_series_pairs = 3;  // top pairs exported as time series

    Exec exec = Exec::parallel;

    void validate() const;
    // Config file wins over flags (flag values are the fallback).
    void apply_json_file(const std::string& path);
};

// replay + ledger snapshot exports (snapshots.csv, balances.csv). Balances
// are taken as of at_block when given, else at the end of the log.
void write_replay_reports(const std::filesystem::path& out_dir, const ReplayResult& result,
                          std::optional<std::uint64_t> at_block = std::nullopt);

// Figure-equivalent data files: per-pool cumulative return/fees/IL series,
// daily returns, risk table, correlation table, categories, provider stats,
// market-wide daily counts.
void write_analysis_reports(const std::filesystem::path& out_dir,
                            const std::vector<Event>& events, const ReplayResult& result,
                            const PoolDirectory& directory, const PriceFeed& feed,
                            const RunConfig& config);

// Movement records, raw + capped matrices and top-pair time series.
void write_movement_reports(const std::filesystem::path& out_dir,
                            const std::vector<Event>& events, const ReplayResult& result,
                            const RunConfig& config);

}  // namespace poolscope
