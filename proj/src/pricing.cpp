#include "poolscope/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "poolscope/csv.hpp"
#include "poolscope/time_util.hpp"

namespace poolscope {

void PriceFeed::validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second <= 0.0)
            throw Error(Errc::non_positive_price, "price feed value <= 0");
        if (i > 0 && points[i].first <= points[i - 1].first)
            throw Error(Errc::malformed_record, "price feed ts must be strictly increasing");
    }
}

double PriceFeed::at(std::int64_t ts) const {
    auto it = std::upper_bound(points.begin(), points.end(), ts,
                               [](std::int64_t t, const auto& p) { return t < p.first; });
    if (it == points.begin())
        throw Error(Errc::missing_sample, "price feed starts after ts " + std::to_string(ts));
    return std::prev(it)->second;
}

PriceFeed PriceFeed::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open price feed " + path);
    PriceFeed feed;
    std::string line;
    std::uint64_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;  // "ts,price_usd"
            continue;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw Error(Errc::malformed_record, "price feed row needs 2 fields", line_no);
        feed.points.emplace_back(std::stoll(fields[0]), std::stod(fields[1]));
    }
    feed.validate();
    return feed;
}

void PriceFeed::save_csv(const std::string& path) const {
    CsvWriter w(path, {"numeraire/USD price feed, step function (last observation carries forward)"},
                "ts,price_usd");
    for (const auto& [ts, price] : points) {
        w.field(ts).field(price);
        w.end_row();
    }
    w.commit();
}

ValuationContext::ValuationContext(const std::map<std::string, PoolSnapshotSeries>& pools,
                                   const PoolDirectory& directory, const PriceFeed& numeraire_usd,
                                   std::string numeraire)
    : feed_(&numeraire_usd), numeraire_(std::move(numeraire)) {
    feed_->validate();
    for (const auto& [pool_id, info] : directory.pools()) {
        decimals_.try_emplace(info.token0, info.decimals0);
        decimals_.try_emplace(info.token1, info.decimals1);
        const bool t0_is_numeraire = info.token0 == numeraire_;
        const bool t1_is_numeraire = info.token1 == numeraire_;
        if (t0_is_numeraire == t1_is_numeraire) continue;  // not a quote pool
        auto sit = pools.find(pool_id);
        if (sit == pools.end()) continue;
        const std::string& token = t0_is_numeraire ? info.token1 : info.token0;
        // first (lowest id) quote pool wins, matching PoolDirectory iteration
        quotes_.try_emplace(token, QuotePool{&sit->second, !t0_is_numeraire});
    }
}

unsigned ValuationContext::decimals(const std::string& token) const {
    auto it = decimals_.find(token);
    return it == decimals_.end() ? 18 : it->second;
}

const ValuationContext::QuotePool* ValuationContext::quote_for(const std::string& token) const {
    auto it = quotes_.find(token);
    return it == quotes_.end() ? nullptr : &it->second;
}

double ValuationContext::token_price_eth(const std::string& token, const EventKey& key) const {
    return token_price_eth_ts(token, key.ts);
}

double ValuationContext::token_price_eth_ts(const std::string& token, std::int64_t ts) const {
    if (token == numeraire_) return 1.0;
    const QuotePool* quote = quote_for(token);
    if (!quote) throw Error(Errc::no_eth_pair, token);
    const PoolSnapshot* snap = quote->series->at_or_before_ts(ts);
    if (!snap || snap->reserve0 == 0 || snap->reserve1 == 0)
        throw Error(Errc::empty_pool, "quote pool for " + token + " unfunded at ts " +
                                          std::to_string(ts));
    const bigint& token_reserve = quote->token_is_0 ? snap->reserve0 : snap->reserve1;
    const bigint& quote_reserve = quote->token_is_0 ? snap->reserve1 : snap->reserve0;
    const double raw = to_double(rational(quote_reserve, token_reserve));
    const int scale = static_cast<int>(decimals(token)) - static_cast<int>(decimals(numeraire_));
    return raw * std::pow(10.0, scale);
}

double ValuationContext::token_price_usd(const std::string& token, std::int64_t ts) const {
    return token_price_eth_ts(token, ts) * feed_->at(ts);
}

double ValuationContext::amount_usd(const std::string& token, const bigint& base_units,
                                    std::int64_t ts) const {
    const double whole = to_double(base_units) / std::pow(10.0, decimals(token));
    return whole * token_price_usd(token, ts);
}

double ValuationContext::pool_value_usd(const PoolSnapshotSeries& series, const PoolSnapshot& snap,
                                        std::int64_t ts) const {
    return amount_usd(series.token0, snap.reserve0, ts) +
           amount_usd(series.token1, snap.reserve1, ts);
}

bool ValuationContext::priceable(const std::string& token, std::int64_t ts) const {
    if (feed_->points.empty() || feed_->points.front().first > ts) return false;
    if (token == numeraire_) return true;
    const QuotePool* quote = quote_for(token);
    if (!quote) return false;
    const PoolSnapshot* snap = quote->series->at_or_before_ts(ts);
    return snap && snap->reserve0 > 0 && snap->reserve1 > 0;
}

const ValuationSample* ValuationSeries::at_or_before_ts(std::int64_t ts) const {
    auto it = std::upper_bound(samples.begin(), samples.end(), ts,
                               [](std::int64_t t, const ValuationSample& s) { return t < s.ts; });
    if (it == samples.begin()) return nullptr;
    return &*std::prev(it);
}

const ValuationSample& ValuationSeries::sample_at(std::int64_t ts) const {
    const ValuationSample* s = at_or_before_ts(ts);
    if (!s) throw Error(Errc::missing_sample, "no sample at or before ts " + std::to_string(ts));
    return *s;
}

PositionValue position_value_usd(const ValuationContext& ctx, const PoolSnapshotSeries& series,
                                 const bigint& liquidity, const PoolSnapshot& inception,
                                 const bigint& inception_supply, std::int64_t ts) {
    if (liquidity <= 0 || inception_supply <= 0 || liquidity > inception_supply)
        throw Error(Errc::insufficient_liquidity_balance, "position share out of range");
    const PoolSnapshot* now = series.at_or_before_ts(ts);
    if (!now || now->liquidity == 0) throw Error(Errc::empty_pool, series.pool_id);

    const double share_now = to_double(rational(liquidity, now->liquidity));
    PositionValue v;
    v.invest_usd = share_now * ctx.pool_value_usd(series, *now, ts);

    const double share_then = to_double(rational(liquidity, inception_supply));
    const double hold0 = share_then * to_double(inception.reserve0);
    const double hold1 = share_then * to_double(inception.reserve1);
    v.hold_usd = hold0 / std::pow(10.0, ctx.decimals(series.token0)) *
                     ctx.token_price_usd(series.token0, ts) +
                 hold1 / std::pow(10.0, ctx.decimals(series.token1)) *
                     ctx.token_price_usd(series.token1, ts);
    return v;
}

ValuationSeries build_pool_valuation_series(const ValuationContext& ctx,
                                            const PoolSnapshotSeries& series, std::int64_t t_start,
                                            std::int64_t t_end, std::int64_t sample_interval_s) {
    ValuationSeries v;
    v.pool_id = series.pool_id;
    v.label = "pool";
    if (series.rows.empty() || sample_interval_s <= 0) return v;

    // sampling grid: every pool event in range plus interval boundaries; one
    // sample per second, valued at the state after the last event of that ts
    std::vector<std::int64_t> grid;
    for (const PoolSnapshot& row : series.rows) {
        if (row.key.ts < t_start || row.key.ts > t_end) continue;
        grid.push_back(row.key.ts);
    }
    const std::int64_t first_mark =
        ((std::max(t_start, series.rows.front().key.ts) + sample_interval_s - 1) /
         sample_interval_s) *
        sample_interval_s;
    for (std::int64_t ts = first_mark; ts <= t_end; ts += sample_interval_s) grid.push_back(ts);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    const PoolSnapshot* inception = nullptr;
    bigint inception_supply;
    for (const std::int64_t ts : grid) {
        const PoolSnapshot* snap = series.at_or_before_ts(ts);
        if (!snap || snap->liquidity == 0) continue;
        if (!ctx.priceable(series.token0, ts) || !ctx.priceable(series.token1, ts))
            continue;  // unpriceable samples are excluded, not zeroed
        if (!inception) {
            inception = snap;
            inception_supply = snap->liquidity;
        }
        PositionValue pv =
            position_value_usd(ctx, series, inception_supply, *inception, inception_supply, ts);
        if (pv.hold_usd <= 0.0) continue;
        ValuationSample sample;
        sample.ts = ts;
        sample.key = snap->key;
        sample.invest_usd = pv.invest_usd;
        sample.hold_usd = pv.hold_usd;
        sample.ratio = pv.invest_usd / pv.hold_usd;
        v.samples.push_back(sample);
    }
    return v;
}

}  // namespace poolscope
