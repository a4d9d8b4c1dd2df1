#include "poolscope/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "poolscope/time_util.hpp"

namespace poolscope {

double return_pct(const ValuationSeries& v, std::int64_t t1, std::int64_t t2) {
    if (t1 >= t2) throw Error(Errc::missing_sample, "return interval requires t1 < t2");
    const ValuationSample* s1 = v.at_or_before_ts(t1);
    const ValuationSample* s2 = v.at_or_before_ts(t2);
    if (!s1 || !s2) throw Error(Errc::missing_sample, "valuation sample missing for interval");
    return 100.0 * (s2->ratio - s1->ratio) / s1->ratio;
}

namespace {

// sqrt(k_from / k_to) with the ratio formed exactly before the conversion
double sqrt_k_ratio(const bigint& k_from, const bigint& k_to) {
    return std::sqrt(to_double(rational(k_from, k_to)));
}

}  // namespace

double fees_pct(const PoolSnapshotSeries& series, std::int64_t t1, std::int64_t t2) {
    if (t1 > t2) throw Error(Errc::missing_sample, "fee interval requires t1 <= t2");
    const PoolSnapshot* start = series.at_or_before_ts(t1);
    if (!start || start->reserve0 == 0 || start->reserve1 == 0)
        throw Error(Errc::empty_pool, series.pool_id);

    // sqrt(k) jumps at liquidity events, so the fee factor compounds per
    // mint/burn-free epoch.
    double factor = 1.0;
    bigint epoch_start_k = start->reserve0 * start->reserve1;
    bigint last_k = epoch_start_k;
    for (auto it = std::upper_bound(series.rows.begin(), series.rows.end(), t1,
                                    [](std::int64_t t, const PoolSnapshot& s) {
                                        return t < s.key.ts;
                                    });
         it != series.rows.end() && it->key.ts <= t2; ++it) {
        const bigint k = it->reserve0 * it->reserve1;
        const bool epoch_boundary = it->kind == EventKind::mint || it->kind == EventKind::burn ||
                                    it->kind == EventKind::sync;
        if (epoch_boundary) {
            if (epoch_start_k > 0 && last_k > 0) factor *= sqrt_k_ratio(epoch_start_k, last_k);
            epoch_start_k = k;
        }
        last_k = k;
    }
    if (epoch_start_k > 0 && last_k > 0) factor *= sqrt_k_ratio(epoch_start_k, last_k);
    return 100.0 * (1.0 - factor);
}

double impermanent_loss_pct(double p_t1, double p_t2) {
    if (!(p_t1 > 0.0) || !(p_t2 > 0.0))
        throw Error(Errc::non_positive_price, "reserve ratio must be positive");
    const double r = p_t2 / p_t1;
    return 100.0 * (2.0 * std::sqrt(r) / (1.0 + r) - 1.0);
}

std::vector<DailyReturn> daily_return_series(const ValuationSeries& v) {
    // day level = mean of in-day ratio samples
    std::vector<std::pair<std::int64_t, double>> levels;
    std::int64_t cur_day = 0;
    double sum = 0.0;
    std::size_t n = 0;
    for (const ValuationSample& s : v.samples) {
        const std::int64_t d = utc_day(s.ts);
        if (n > 0 && d != cur_day) {
            levels.emplace_back(cur_day, sum / static_cast<double>(n));
            sum = 0.0;
            n = 0;
        }
        cur_day = d;
        sum += s.ratio;
        ++n;
    }
    if (n > 0) levels.emplace_back(cur_day, sum / static_cast<double>(n));
    if (levels.size() < 2)
        throw Error(Errc::insufficient_data, "daily returns need at least 2 days of samples");

    std::vector<DailyReturn> out;
    out.reserve(levels.size() - 1);
    for (std::size_t i = 1; i < levels.size(); ++i) {
        out.push_back(
            {levels[i].first,
             100.0 * (levels[i].second - levels[i - 1].second) / levels[i - 1].second});
    }
    return out;
}

double cvar(std::span<const double> returns, double level) {
    if (returns.empty()) throw Error(Errc::empty_input, "cvar of empty sample");
    if (!(level > 0.0) || !(level < 1.0))
        throw Error(Errc::empty_input, "cvar level must be in (0,1)");
    const std::size_t n = returns.size();
    const std::size_t tail =
        static_cast<std::size_t>(std::ceil(level * static_cast<double>(n)));
    std::vector<double> sorted(returns.begin(), returns.end());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(tail - 1),
                     sorted.end());
    // summed in ascending order so the estimate is a deterministic function
    // of the sample values
    std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(tail));
    double sum = 0.0;
    for (std::size_t i = 0; i < tail; ++i) sum += sorted[i];
    return sum / static_cast<double>(tail);
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw Error(Errc::empty_input, "mean of empty sample");
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error(Errc::degenerate_series, "pearson needs equal lengths >= 2");
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw Error(Errc::degenerate_series, "pearson needs nonzero variance");
    return sxy / std::sqrt(sxx * syy);
}

RiskReport risk_report(const std::string& pool_id, const std::vector<DailyReturn>& daily,
                       double cvar_level) {
    std::vector<double> returns;
    returns.reserve(daily.size());
    for (const DailyReturn& d : daily) returns.push_back(d.return_pct);
    RiskReport r;
    r.pool_id = pool_id;
    r.n_days = returns.size();
    r.mean_daily_return_pct = mean(returns);
    r.cvar_daily_pct = cvar(returns, cvar_level);
    return r;
}

}  // namespace poolscope
