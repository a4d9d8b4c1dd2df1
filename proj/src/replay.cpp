#include "poolscope/replay.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "poolscope/csv.hpp"
#include "poolscope/pricing.hpp"
#include "poolscope/time_util.hpp"

namespace poolscope {

void PoolDirectory::add(const std::string& pool_id, PairInfo info) {
    auto [token0, token1] = canonical_pair(info.token0, info.token1);
    if (token0 != info.token0) {
        std::swap(info.token0, info.token1);
        std::swap(info.decimals0, info.decimals1);
    }
    token_decimals_.try_emplace(info.token0, info.decimals0);
    token_decimals_.try_emplace(info.token1, info.decimals1);
    by_pool_[pool_id] = std::move(info);
}

const PairInfo* PoolDirectory::find(const std::string& pool_id) const {
    auto it = by_pool_.find(pool_id);
    return it == by_pool_.end() ? nullptr : &it->second;
}

unsigned PoolDirectory::token_decimals(const std::string& token) const {
    auto it = token_decimals_.find(token);
    return it == token_decimals_.end() ? 18 : it->second;
}

std::optional<std::string> PoolDirectory::pool_for_pair(const std::string& token,
                                                        const std::string& quote) const {
    for (const auto& [pool_id, info] : by_pool_) {
        if ((info.token0 == token && info.token1 == quote) ||
            (info.token0 == quote && info.token1 == token))
            return pool_id;
    }
    return std::nullopt;
}

PoolDirectory PoolDirectory::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open registry " + path);
    PoolDirectory dir;
    std::string line;
    std::uint64_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // "pool,token0,token1,decimals0,decimals1"
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 5)
            throw Error(Errc::malformed_record, "registry row needs 5 fields", line_no);
        PairInfo info;
        info.token0 = fields[1];
        info.token1 = fields[2];
        info.decimals0 = static_cast<unsigned>(std::stoul(fields[3]));
        info.decimals1 = static_cast<unsigned>(std::stoul(fields[4]));
        dir.add(fields[0], std::move(info));
    }
    return dir;
}

void PoolDirectory::save_csv(const std::string& path) const {
    CsvWriter w(path, {"pool registry: token pair and display decimals per pool"},
                "pool,token0,token1,decimals0,decimals1");
    for (const auto& [pool_id, info] : by_pool_) {
        w.field(pool_id)
            .field(info.token0)
            .field(info.token1)
            .field(static_cast<std::uint64_t>(info.decimals0))
            .field(static_cast<std::uint64_t>(info.decimals1));
        w.end_row();
    }
    w.commit();
}

const PoolSnapshot* PoolSnapshotSeries::at_or_before(const EventKey& key) const {
    auto it = std::upper_bound(rows.begin(), rows.end(), key,
                               [](const EventKey& k, const PoolSnapshot& s) { return k < s.key; });
    if (it == rows.begin()) return nullptr;
    return &*std::prev(it);
}

const PoolSnapshot* PoolSnapshotSeries::at_or_before_ts(std::int64_t ts) const {
    auto it = std::upper_bound(rows.begin(), rows.end(), ts,
                               [](std::int64_t t, const PoolSnapshot& s) { return t < s.key.ts; });
    if (it == rows.begin()) return nullptr;
    return &*std::prev(it);
}

namespace {

// Replays one pool's event slice. Runs independently per pool.
struct PoolReplayer {
    ReplayMode mode;
    const PoolDirectory* directory;
    double sync_tolerance;

    PoolSnapshotSeries series;
    PositionLedger ledger;
    std::vector<ReplayWarning> warnings;
    Pool pool;
    bool created = false;

    void warn(const Event& ev, std::string message) {
        warnings.push_back({ev.pool, ev.key, std::move(message)});
    }

    void ensure_created(const Event& ev, bool creating) {
        if (created) {
            if (creating) throw Error(Errc::pool_exists, ev.pool);
            return;
        }
        // A pool may open with PoolCreated or directly with a Mint into the
        // empty pool; anything else references an unknown pool.
        if (!creating && ev.kind != EventKind::mint)
            throw Error(Errc::orphan_event, std::string(event_kind_name(ev.kind)) + " for " +
                                                ev.pool + " at " + ev.key.to_string());
        pool.pool_id = ev.pool;
        if (const PairInfo* info = directory ? directory->find(ev.pool) : nullptr) {
            pool.token0 = info->token0;
            pool.token1 = info->token1;
        } else {
            pool.token0 = ev.pool + ":0";
            pool.token1 = ev.pool + ":1";
        }
        series.pool_id = ev.pool;
        series.token0 = pool.token0;
        series.token1 = pool.token1;
        created = true;
    }

    void snapshot(const Event& ev) {
        series.rows.push_back(
            {ev.key, ev.kind, pool.reserve0, pool.reserve1, pool.total_liquidity});
    }

    void apply(const Event& ev) {
        switch (ev.kind) {
            case EventKind::pool_created:
                ensure_created(ev, true);
                break;
            case EventKind::mint: {
                ensure_created(ev, false);
                MintResult<bigint> res = pool.empty()
                                             ? pool.mint_initial(ev.amount0, ev.amount1)
                                             : pool.mint(ev.amount0, ev.amount1);
                if (ev.has_liquidity && ev.liquidity != res.minted_liquidity)
                    warn(ev, "logged liquidity " + ev.liquidity.str() + " != computed " +
                                 res.minted_liquidity.str());
                Event enriched = ev;
                enriched.liquidity = res.minted_liquidity;
                enriched.has_liquidity = true;
                ledger.apply_liquidity_event(enriched);
                break;
            }
            case EventKind::burn: {
                ensure_created(ev, false);
                if (ev.liquidity > pool.total_liquidity)
                    throw Error(Errc::negative_reserve,
                                "burn exceeds supply at " + ev.key.to_string());
                // The ledger enforces the actor's balance; the pool only needs
                // the supply bound here.
                pool.burn(ev.liquidity, pool.total_liquidity);
                ledger.apply_liquidity_event(ev);
                break;
            }
            case EventKind::swap: {
                ensure_created(ev, false);
                SwapResult<bigint> res = pool.swap_token(ev.in_token, ev.amount_in);
                if (ev.amount_out != 0 && ev.amount_out != res.amount_out)
                    warn(ev, "logged amount_out " + ev.amount_out.str() + " != computed " +
                                 res.amount_out.str());
                break;
            }
            case EventKind::transfer:
                ensure_created(ev, false);
                ledger.apply_liquidity_event(ev);
                // Transfers do not move reserves; no snapshot row would change
                // state, but the row keeps the series aligned with the log.
                break;
            case EventKind::sync: {
                ensure_created(ev, false);
                if (mode == ReplayMode::trust_sync) {
                    double expected0 = to_double(pool.reserve0);
                    double actual0 = to_double(ev.reserve0);
                    double expected1 = to_double(pool.reserve1);
                    double actual1 = to_double(ev.reserve1);
                    auto diverges = [&](double e, double a) {
                        return std::abs(e - a) > sync_tolerance * std::max(1.0, std::abs(e));
                    };
                    if (diverges(expected0, actual0) || diverges(expected1, actual1))
                        warn(ev, "sync overwrites derived reserves (" + pool.reserve0.str() +
                                     "," + pool.reserve1.str() + ") with (" + ev.reserve0.str() +
                                     "," + ev.reserve1.str() + ")");
                    pool.reserve0 = ev.reserve0;
                    pool.reserve1 = ev.reserve1;
                }
                break;
            }
        }
        snapshot(ev);
    }
};

}  // namespace

ReplayResult replay(const std::vector<Event>& events, ReplayMode mode,
                    const PoolDirectory* directory, Exec exec, double sync_tolerance) {
    // Partition event indices by pool, preserving log order within a pool.
    std::map<std::string, std::vector<std::size_t>> by_pool;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (i > 0 && events[i].key < events[i - 1].key)
            throw Error(Errc::internal_error, "replay requires sorted events");
        by_pool[events[i].pool].push_back(i);
    }

    std::vector<const std::vector<std::size_t>*> slices;
    std::vector<std::string> pool_order;
    slices.reserve(by_pool.size());
    for (const auto& [pool_id, idx] : by_pool) {
        pool_order.push_back(pool_id);
        slices.push_back(&idx);
    }

    std::vector<PoolReplayer> replayers(slices.size());
    for_index(slices.size(), exec, [&](std::size_t p) {
        PoolReplayer& r = replayers[p];
        r.mode = mode;
        r.directory = directory;
        r.sync_tolerance = sync_tolerance;
        for (std::size_t i : *slices[p]) r.apply(events[i]);
    });

    ReplayResult result;
    for (std::size_t p = 0; p < replayers.size(); ++p) {
        result.pools.emplace(pool_order[p], std::move(replayers[p].series));
        result.ledger.absorb(std::move(replayers[p].ledger));
        for (auto& w : replayers[p].warnings) result.warnings.push_back(std::move(w));
    }
    return result;
}

std::vector<DailyPoolRow> daily_aggregate(const PoolSnapshotSeries& series,
                                          const std::vector<Event>& events,
                                          const ValuationContext* ctx) {
    std::vector<DailyPoolRow> out;
    if (series.rows.empty()) return out;

    const std::int64_t first_day = utc_day(series.rows.front().key.ts);
    const std::int64_t last_day = utc_day(series.rows.back().key.ts);
    out.reserve(static_cast<std::size_t>(last_day - first_day + 1));
    for (std::int64_t d = first_day; d <= last_day; ++d) out.push_back({d, 0, 0, 0.0, 0.0});

    for (const Event& ev : events) {
        if (ev.pool != series.pool_id) continue;
        const std::int64_t d = utc_day(ev.key.ts);
        if (d < first_day || d > last_day) continue;
        DailyPoolRow& row = out[static_cast<std::size_t>(d - first_day)];
        if (ev.kind == EventKind::mint) ++row.mint_count;
        if (ev.kind == EventKind::burn) ++row.burn_count;
        if (ev.kind == EventKind::swap && ctx) {
            const std::string& token =
                (ev.in_token == series.token0 || ev.in_token == "0") ? series.token0
                                                                     : series.token1;
            if (ctx->priceable(token, ev.key.ts))
                row.volume_usd += ctx->amount_usd(token, ev.amount_in, ev.key.ts);
        }
    }

    if (ctx) {
        for (DailyPoolRow& row : out) {
            const std::int64_t day_end = day_start_ts(row.day + 1) - 1;
            const PoolSnapshot* snap = series.at_or_before_ts(day_end);
            if (!snap) continue;  // pool not yet created that day
            if (ctx->priceable(series.token0, day_end) && ctx->priceable(series.token1, day_end))
                row.end_liquidity_usd = ctx->pool_value_usd(series, *snap, day_end);
        }
    }
    return out;
}

}  // namespace poolscope
