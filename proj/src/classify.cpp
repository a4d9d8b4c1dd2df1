#include "poolscope/classify.hpp"

#include <algorithm>
#include <cmath>

#include "poolscope/time_util.hpp"

namespace poolscope {

const char* pool_category_name(PoolCategory c) {
    switch (c) {
        case PoolCategory::stable: return "stable";
        case PoolCategory::normal: return "normal";
        case PoolCategory::exotic: return "exotic";
    }
    return "?";
}

namespace {

struct PriceStats {
    double vol_pct = 0.0;
    double range = 1.0;
};

PriceStats price_stats(std::span<const double> daily_usd) {
    PriceStats s;
    double lo = daily_usd[0], hi = daily_usd[0];
    std::vector<double> rets;
    rets.reserve(daily_usd.size());
    for (std::size_t i = 0; i < daily_usd.size(); ++i) {
        if (!(daily_usd[i] > 0.0))
            throw Error(Errc::non_positive_price, "price history must be positive");
        lo = std::min(lo, daily_usd[i]);
        hi = std::max(hi, daily_usd[i]);
        if (i > 0) rets.push_back(100.0 * (daily_usd[i] / daily_usd[i - 1] - 1.0));
    }
    s.range = hi / lo;
    if (!rets.empty()) {
        double m = 0.0;
        for (double r : rets) m += r;
        m /= static_cast<double>(rets.size());
        double var = 0.0;
        for (double r : rets) var += (r - m) * (r - m);
        s.vol_pct = std::sqrt(var / static_cast<double>(rets.size()));
    }
    return s;
}

}  // namespace

PoolCategoryReport classify_from_prices(const std::string& token0, const std::string& token1,
                                        std::span<const double> daily_usd0,
                                        std::span<const double> daily_usd1,
                                        const ClassifyConfig& cfg) {
    PoolCategoryReport report;
    report.evidence.stable_listed =
        cfg.stable_tokens.count(token0) != 0 && cfg.stable_tokens.count(token1) != 0;

    if (!report.evidence.stable_listed) {
        const std::size_t n = std::min(daily_usd0.size(), daily_usd1.size());
        if (n < static_cast<std::size_t>(cfg.min_days))
            throw Error(Errc::insufficient_history,
                        token0 + "/" + token1 + " has " + std::to_string(n) + " days, needs " +
                            std::to_string(cfg.min_days));
    }
    if (!daily_usd0.empty() && !daily_usd1.empty()) {
        const PriceStats s0 = price_stats(daily_usd0);
        const PriceStats s1 = price_stats(daily_usd1);
        report.evidence.vol0_pct = s0.vol_pct;
        report.evidence.vol1_pct = s1.vol_pct;
        report.evidence.range0 = s0.range;
        report.evidence.range1 = s1.range;
        report.evidence.n_days = std::min(daily_usd0.size(), daily_usd1.size());
    }

    const CategoryEvidence& e = report.evidence;
    if (e.stable_listed || (e.n_days > 0 && e.vol0_pct < cfg.stable_daily_vol_pct &&
                            e.vol1_pct < cfg.stable_daily_vol_pct)) {
        report.category = PoolCategory::stable;
    } else if (e.range0 > cfg.exotic_range_factor || e.range1 > cfg.exotic_range_factor) {
        report.category = PoolCategory::exotic;
    } else {
        report.category = PoolCategory::normal;
    }
    return report;
}

PoolCategoryReport classify_pool(const ValuationContext& ctx, const PoolSnapshotSeries& pool,
                                 std::int64_t t_start, std::int64_t t_end,
                                 const ClassifyConfig& cfg) {
    std::vector<double> p0, p1;
    for (std::int64_t day = utc_day(t_start); day_start_ts(day) <= t_end; ++day) {
        const std::int64_t ts = std::min(day_start_ts(day + 1) - 1, t_end);
        if (ts < t_start) continue;
        if (!ctx.priceable(pool.token0, ts) || !ctx.priceable(pool.token1, ts)) continue;
        p0.push_back(ctx.token_price_usd(pool.token0, ts));
        p1.push_back(ctx.token_price_usd(pool.token1, ts));
    }
    return classify_from_prices(pool.token0, pool.token1, p0, p1, cfg);
}

}  // namespace poolscope
