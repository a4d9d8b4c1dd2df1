#include "poolscope/reports.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "poolscope/csv.hpp"
#include "poolscope/time_util.hpp"

namespace poolscope {

void RunConfig::validate() const {
    if (t_start && t_end && *t_start >= *t_end)
        throw Error(Errc::invalid_scenario, "analysis window start must precede end");
    if (!(cvar_level > 0.0) || !(cvar_level < 1.0))
        throw Error(Errc::invalid_scenario, "cvar level must be in (0,1)");
    if (sample_interval_s <= 0)
        throw Error(Errc::invalid_scenario, "sample interval must be positive");
    if (!(classify.stable_daily_vol_pct > 0) || !(classify.exotic_range_factor > 0))
        throw Error(Errc::invalid_scenario, "classification thresholds must be positive");
    if (movement_window == 0) throw Error(Errc::invalid_scenario, "movement window must be >= 1");
}

void RunConfig::apply_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open config " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error(Errc::malformed_record, "config is not a JSON object");

    if (j.contains("t_start")) t_start = j.at("t_start").get<std::int64_t>();
    if (j.contains("t_end")) t_end = j.at("t_end").get<std::int64_t>();
    if (j.contains("replay_mode")) {
        const std::string m = j.at("replay_mode").get<std::string>();
        if (m == "derive")
            replay_mode = ReplayMode::derive;
        else if (m == "trust_sync")
            replay_mode = ReplayMode::trust_sync;
        else
            throw Error(Errc::malformed_record, "replay_mode must be derive|trust_sync");
    }
    if (j.contains("sample_interval_s")) sample_interval_s = j.at("sample_interval_s").get<std::int64_t>();
    if (j.contains("cvar_level")) cvar_level = j.at("cvar_level").get<double>();
    if (j.contains("min_risk_days")) min_risk_days = j.at("min_risk_days").get<std::size_t>();
    if (j.contains("stable_daily_vol_pct"))
        classify.stable_daily_vol_pct = j.at("stable_daily_vol_pct").get<double>();
    if (j.contains("exotic_range_factor"))
        classify.exotic_range_factor = j.at("exotic_range_factor").get<double>();
    if (j.contains("classify_min_days")) classify.min_days = j.at("classify_min_days").get<int>();
    if (j.contains("stable_tokens")) {
        classify.stable_tokens.clear();
        for (const auto& t : j.at("stable_tokens"))
            classify.stable_tokens.insert(t.get<std::string>());
    }
    if (j.contains("movement_window")) movement_window = j.at("movement_window").get<std::uint64_t>();
    if (j.contains("movement_min_activity"))
        movement_min_activity = j.at("movement_min_activity").get<std::uint64_t>();
    if (j.contains("movement_cap")) movement_cap = j.at("movement_cap").get<std::uint64_t>();
    if (j.contains("movement_match")) {
        const std::string m = j.at("movement_match").get<std::string>();
        if (m == "injective")
            movement_match = MatchMode::injective;
        else if (m == "all_pairs")
            movement_match = MatchMode::all_pairs;
        else
            throw Error(Errc::malformed_record, "movement_match must be injective|all_pairs");
    }
    if (j.contains("threads")) exec = j.at("threads").get<int>() <= 1 ? Exec::serial : Exec::parallel;
}

void write_replay_reports(const std::filesystem::path& out_dir, const ReplayResult& result,
                          std::optional<std::uint64_t> at_block) {
    {
        CsvWriter w(out_dir / "snapshots.csv",
                    {"pool state after each event", "liquidity = share-token supply"},
                    "pool,block,tx_index,log_index,ts,kind,reserve0,reserve1,liquidity");
        for (const auto& [pool_id, series] : result.pools) {
            for (const PoolSnapshot& row : series.rows) {
                w.field(pool_id)
                    .field(row.key.block)
                    .field(row.key.tx_index)
                    .field(row.key.log_index)
                    .field(row.key.ts)
                    .field(event_kind_name(row.kind))
                    .field(row.reserve0.str())
                    .field(row.reserve1.str())
                    .field(row.liquidity.str());
                w.end_row();
            }
        }
        w.commit();
    }
    {
        const std::string when =
            at_block ? "as of block " + std::to_string(*at_block) : "at the end of the log";
        CsvWriter w(out_dir / "balances.csv",
                    {"liquidity-token balances per provider " + when}, "pool,address,balance");
        for (const std::string& pool_id : result.ledger.pool_ids()) {
            const auto balances =
                at_block ? result.ledger.balances_at(pool_id, EventKey{*at_block, ~0u, ~0u, 0})
                         : result.ledger.current_balances(pool_id);
            for (const auto& [address, balance] : balances) {
                w.field(pool_id).field(address).field(balance.str());
                w.end_row();
            }
        }
        w.commit();
    }
    if (!result.warnings.empty()) {
        CsvWriter w(out_dir / "warnings.csv", {"non-fatal replay divergences"},
                    "pool,block,tx_index,log_index,message");
        for (const ReplayWarning& warn : result.warnings) {
            w.field(warn.pool_id)
                .field(warn.key.block)
                .field(warn.key.tx_index)
                .field(warn.key.log_index)
                .field(warn.message);
            w.end_row();
        }
        w.commit();
    }
}

namespace {

struct PoolAnalysis {
    std::string pool_id;
    const PoolSnapshotSeries* series = nullptr;
    ValuationSeries valuation;
    std::vector<DailyPoolRow> daily;
    std::vector<DailyReturn> daily_returns;  // empty when insufficient
    bool have_risk = false;
    RiskReport risk;
    bool have_category = false;
    PoolCategoryReport category;
    std::string category_status = "ok";
    double corr_volume = std::nan("");
    double corr_price0 = std::nan("");
    double corr_price1 = std::nan("");
};

double safe_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    try {
        return pearson(x, y);
    } catch (const Error&) {
        return std::nan("");
    }
}

std::string risk_status(const PoolAnalysis& a, std::size_t min_days) {
    if (a.valuation.samples.empty()) return "no_samples";
    if (a.daily_returns.size() < min_days) return "insufficient_data";
    return "ok";
}

}  // namespace

void write_analysis_reports(const std::filesystem::path& out_dir,
                            const std::vector<Event>& events, const ReplayResult& result,
                            const PoolDirectory& directory, const PriceFeed& feed,
                            const RunConfig& config) {
    config.validate();
    std::int64_t t_start = config.t_start.value_or(
        events.empty() ? 0 : events.front().key.ts);
    std::int64_t t_end = config.t_end.value_or(
        events.empty() ? 0 : events.back().key.ts);

    ValuationContext ctx(result.pools, directory, feed);

    std::vector<PoolAnalysis> analyses;
    analyses.reserve(result.pools.size());
    for (const auto& [pool_id, series] : result.pools) {
        PoolAnalysis a;
        a.pool_id = pool_id;
        a.series = &series;
        analyses.push_back(std::move(a));
    }

    for_index(analyses.size(), config.exec, [&](std::size_t i) {
        PoolAnalysis& a = analyses[i];
        const PoolSnapshotSeries& series = *a.series;
        a.valuation =
            build_pool_valuation_series(ctx, series, t_start, t_end, config.sample_interval_s);
        a.daily = daily_aggregate(series, events, &ctx);
        try {
            a.daily_returns = daily_return_series(a.valuation);
        } catch (const Error&) {
            a.daily_returns.clear();
        }
        if (a.daily_returns.size() >= config.min_risk_days) {
            a.risk = risk_report(a.pool_id, a.daily_returns, config.cvar_level);
            a.have_risk = true;
        }
        try {
            a.category = classify_pool(ctx, series, t_start, t_end, config.classify);
            a.have_category = true;
        } catch (const Error& e) {
            a.category_status = errc_name(e.code());
        }

        // daily vectors for the liquidity correlations
        std::vector<double> liq, vol, px0, px1;
        for (const DailyPoolRow& row : a.daily) {
            const std::int64_t ts = std::min(day_start_ts(row.day + 1) - 1, t_end);
            if (row.end_liquidity_usd <= 0.0) continue;
            if (!ctx.priceable(series.token0, ts) || !ctx.priceable(series.token1, ts)) continue;
            liq.push_back(row.end_liquidity_usd);
            vol.push_back(row.volume_usd);
            px0.push_back(ctx.token_price_usd(series.token0, ts));
            px1.push_back(ctx.token_price_usd(series.token1, ts));
        }
        a.corr_volume = safe_pearson(liq, vol);
        a.corr_price0 = safe_pearson(liq, px0);
        a.corr_price1 = safe_pearson(liq, px1);
    });

    // per-pool series files
    for (const PoolAnalysis& a : analyses) {
        const std::string stem = sanitize_filename(a.pool_id);
        {
            CsvWriter w(out_dir / ("valuation_" + stem + ".csv"),
                        {"pool " + a.pool_id + " (" + a.series->token0 + "/" + a.series->token1 +
                             ")",
                         "daily close of the whole-pool position opened at inception",
                         "cum_* columns are percent since inception"},
                        "ts,day,invest_usd,hold_usd,ratio,cum_return_pct,cum_fees_pct,cum_il_pct");
            if (!a.valuation.samples.empty()) {
                const ValuationSample& first = a.valuation.samples.front();
                const PoolSnapshot* snap0 = a.series->at_or_before_ts(first.ts);
                const double p0 = snap0 && snap0->reserve0 > 0
                                      ? to_double(rational(snap0->reserve1, snap0->reserve0))
                                      : 0.0;
                for (std::int64_t day = utc_day(first.ts); day_start_ts(day) <= t_end; ++day) {
                    const std::int64_t ts = std::min(day_start_ts(day + 1) - 1, t_end);
                    const ValuationSample* s = a.valuation.at_or_before_ts(ts);
                    if (!s || s->ts < first.ts) continue;
                    const PoolSnapshot* snap = a.series->at_or_before_ts(ts);
                    double cum_fees = std::nan(""), cum_il = std::nan("");
                    try {
                        cum_fees = fees_pct(*a.series, first.ts, ts);
                    } catch (const Error&) {
                    }
                    if (p0 > 0 && snap && snap->reserve0 > 0 && snap->reserve1 > 0)
                        cum_il = impermanent_loss_pct(
                            p0, to_double(rational(snap->reserve1, snap->reserve0)));
                    w.field(ts)
                        .field(utc_date_string(day))
                        .field(s->invest_usd)
                        .field(s->hold_usd)
                        .field(s->ratio)
                        .field(100.0 * (s->ratio / first.ratio - 1.0))
                        .field(cum_fees)
                        .field(cum_il);
                    w.end_row();
                }
            }
            w.commit();
        }
        {
            CsvWriter w(out_dir / ("daily_returns_" + stem + ".csv"),
                        {"pool " + a.pool_id,
                         "average daily return: day level = mean of in-day invest/hold samples"},
                        "day,return_pct");
            for (const DailyReturn& d : a.daily_returns) {
                w.field(utc_date_string(d.day)).field(d.return_pct);
                w.end_row();
            }
            w.commit();
        }
        {
            CsvWriter w(out_dir / ("daily_" + stem + ".csv"),
                        {"pool " + a.pool_id + " per-UTC-day activity"},
                        "day,mints,burns,volume_usd,end_liquidity_usd");
            for (const DailyPoolRow& row : a.daily) {
                w.field(utc_date_string(row.day))
                    .field(row.mint_count)
                    .field(row.burn_count)
                    .field(row.volume_usd)
                    .field(row.end_liquidity_usd);
                w.end_row();
            }
            w.commit();
        }
    }

    {
        CsvWriter w(out_dir / "risk.csv",
                    {"mean daily return vs daily CVaR at level " + format_double(config.cvar_level),
                     "rows with status != ok carry no risk figures"},
                    "pool,token0,token1,category,status,n_days,mean_daily_return_pct,cvar_pct");
        for (const PoolAnalysis& a : analyses) {
            const std::string status = a.have_risk ? "ok" : risk_status(a, config.min_risk_days);
            w.field(a.pool_id)
                .field(a.series->token0)
                .field(a.series->token1)
                .field(a.have_category ? pool_category_name(a.category.category) : "unknown")
                .field(status);
            if (a.have_risk) {
                w.field(a.risk.n_days)
                    .field(a.risk.mean_daily_return_pct)
                    .field(a.risk.cvar_daily_pct);
            } else {
                w.field(a.daily_returns.size()).field("").field("");
            }
            w.end_row();
        }
        w.commit();
    }

    {
        CsvWriter w(out_dir / "correlations.csv",
                    {"pearson correlation of daily pool liquidity against volume and token prices"},
                    "pool,corr_liquidity_volume,corr_liquidity_price0,corr_liquidity_price1");
        for (const PoolAnalysis& a : analyses) {
            w.field(a.pool_id).field(a.corr_volume).field(a.corr_price0).field(a.corr_price1);
            w.end_row();
        }
        w.commit();
    }

    {
        CsvWriter w(out_dir / "categories.csv",
                    {"pool taxonomy: stable / normal / exotic",
                     "vol = stddev of daily USD returns (pct); range = max/min USD price"},
                    "pool,token0,token1,status,category,vol0_pct,vol1_pct,range0,range1,n_days");
        for (const PoolAnalysis& a : analyses) {
            w.field(a.pool_id).field(a.series->token0).field(a.series->token1);
            if (a.have_category) {
                const CategoryEvidence& e = a.category.evidence;
                w.field("ok")
                    .field(pool_category_name(a.category.category))
                    .field(e.vol0_pct)
                    .field(e.vol1_pct)
                    .field(e.range0)
                    .field(e.range1)
                    .field(e.n_days);
            } else {
                w.field(a.category_status);
                for (int blank = 0; blank < 6; ++blank) w.field("");
            }
            w.end_row();
        }
        w.commit();
    }

    // market-wide daily counts and provider stats
    {
        std::map<std::int64_t, std::pair<std::uint64_t, std::uint64_t>> per_day;
        for (const Event& ev : events) {
            if (ev.key.ts < t_start || ev.key.ts > t_end) continue;
            if (ev.kind == EventKind::mint) ++per_day[utc_day(ev.key.ts)].first;
            if (ev.kind == EventKind::burn) ++per_day[utc_day(ev.key.ts)].second;
        }
        std::vector<double> mints, burns;
        CsvWriter w(out_dir / "market_daily.csv",
                    {"market-wide liquidity injections and withdrawals per UTC day"},
                    "day,mints,burns");
        if (!per_day.empty()) {
            for (std::int64_t d = per_day.begin()->first; d <= per_day.rbegin()->first; ++d) {
                auto it = per_day.find(d);
                const std::uint64_t m = it == per_day.end() ? 0 : it->second.first;
                const std::uint64_t b = it == per_day.end() ? 0 : it->second.second;
                w.field(utc_date_string(d)).field(m).field(b);
                w.end_row();
                mints.push_back(static_cast<double>(m));
                burns.push_back(static_cast<double>(b));
            }
        }
        w.commit();

        const EventKey end_key{~0ull, ~0u, ~0u, t_end};
        auto histogram = result.ledger.pools_per_provider_distribution(end_key);
        std::size_t current_providers = 0;
        for (const auto& [pools, providers] : histogram) current_providers += providers;
        const auto profiles = result.ledger.provider_profiles();

        CsvWriter h(out_dir / "provider_histogram.csv",
                    {"providers by number of pools they currently fund"},
                    "pools_per_provider,providers");
        for (const auto& [pools, providers] : histogram) {
            h.field(pools).field(providers);
            h.end_row();
        }
        h.commit();

        CsvWriter s(out_dir / "market_summary.csv", {"whole-market scalar statistics"},
                    "statistic,value");
        s.field("events").field(static_cast<std::uint64_t>(events.size()));
        s.end_row();
        s.field("pools").field(static_cast<std::uint64_t>(result.pools.size()));
        s.end_row();
        s.field("providers_ever").field(static_cast<std::uint64_t>(profiles.size()));
        s.end_row();
        s.field("providers_current").field(static_cast<std::uint64_t>(current_providers));
        s.end_row();
        s.field("mint_burn_daily_correlation").field(safe_pearson(mints, burns));
        s.end_row();
        s.commit();

        CsvWriter p(out_dir / "pool_providers.csv",
                    {"provider participation per pool at the window end",
                     "single_pool_share: fraction of liquidity from providers funding only this pool"},
                    "pool,providers,single_pool_share");
        for (const PoolAnalysis& a : analyses) {
            if (!result.ledger.has_pool(a.pool_id)) continue;
            auto balances = result.ledger.balances_at(a.pool_id, end_key);
            double share = std::nan("");
            try {
                share = result.ledger.single_pool_liquidity_share(a.pool_id, end_key);
            } catch (const Error&) {
            }
            p.field(a.pool_id).field(balances.size()).field(share);
            p.end_row();
        }
        p.commit();
    }
}

void write_movement_reports(const std::filesystem::path& out_dir,
                            const std::vector<Event>& events, const ReplayResult& result,
                            const RunConfig& config) {
    config.validate();
    const std::vector<MovementRecord> records =
        detect_movements(events, config.movement_window, config.movement_match, config.exec);

    const std::vector<std::string> ordered =
        eligible_pools(events, result.pools, config.movement_min_activity);
    const MovementMatrix matrix = build_matrix(records, ordered, config.movement_cap);

    const std::vector<std::string> meta = {
        "window_blocks=" + std::to_string(config.movement_window),
        std::string("matching=") + match_mode_name(config.movement_match),
        "min_activity=" + std::to_string(config.movement_min_activity),
        "display_cap=" + std::to_string(config.movement_cap)};

    {
        std::vector<std::string> comments = meta;
        comments.insert(comments.begin(), "liquidity relocations (burn then mint elsewhere)");
        CsvWriter w(out_dir / "movements.csv", comments,
                    "address,from_pool,to_pool,burn_block,mint_block,block_gap,mint_ts");
        for (const MovementRecord& r : records) {
            w.field(r.address)
                .field(r.from_pool)
                .field(r.to_pool)
                .field(r.burn_key.block)
                .field(r.mint_key.block)
                .field(r.block_gap)
                .field(r.mint_key.ts);
            w.end_row();
        }
        w.commit();
    }

    auto write_matrix = [&](const std::string& name, bool capped) {
        std::vector<std::string> comments = meta;
        comments.insert(comments.begin(),
                        std::string(capped ? "display (capped)" : "raw") +
                            " directional movement counts; pools ascending by average liquidity");
        CsvWriter w(out_dir / name, comments, "from_pool\\to_pool," + [&] {
            std::string h;
            for (std::size_t i = 0; i < matrix.pools.size(); ++i) {
                if (i) h += ',';
                h += matrix.pools[i];
            }
            return h;
        }());
        for (std::size_t i = 0; i < matrix.pools.size(); ++i) {
            w.field(matrix.pools[i]);
            for (std::size_t j = 0; j < matrix.pools.size(); ++j)
                w.field(capped ? matrix.capped(i, j) : matrix.at(i, j));
            w.end_row();
        }
        w.commit();
    };
    write_matrix("matrix_raw.csv", false);
    write_matrix("matrix_display.csv", true);

    // top directed pairs by raw count, exported as daily series
    std::vector<std::tuple<std::uint64_t, std::string, std::string>> ranked;
    for (std::size_t i = 0; i < matrix.pools.size(); ++i)
        for (std::size_t j = 0; j < matrix.pools.size(); ++j)
            if (matrix.at(i, j) > 0)
                ranked.emplace_back(matrix.at(i, j), matrix.pools[i], matrix.pools[j]);
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
    });
    const std::size_t n_series = std::min(config.movement_series_pairs, ranked.size());
    for (std::size_t i = 0; i < n_series; ++i) {
        const auto& [count, from, to] = ranked[i];
        auto series = movement_timeseries(records, from, to);
        std::vector<std::string> comments = meta;
        comments.insert(comments.begin(),
                        "daily movements " + from + " -> " + to + " (bucketed by mint day)");
        CsvWriter w(out_dir / ("movement_series_" + sanitize_filename(from) + "__" +
                               sanitize_filename(to) + ".csv"),
                    comments, "day,count");
        for (const auto& [day, c] : series) {
            w.field(utc_date_string(day)).field(c);
            w.end_row();
        }
        w.commit();
    }
}

}  // namespace poolscope
