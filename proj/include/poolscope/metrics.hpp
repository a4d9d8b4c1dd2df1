#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "poolscope/pricing.hpp"
#include "poolscope/replay.hpp"

namespace poolscope {

// return over [t1, t2] in percent:
//   100 * ((invest_t2/hold_t2) - (invest_t1/hold_t1)) / (invest_t1/hold_t1)
double return_pct(const ValuationSeries& v, std::int64_t t1, std::int64_t t2);

// Fee accrual over [t1, t2] in percent of liquidity: 100 * (1 - sqrt(k1/k2)),
// compounded per mint/burn-free epoch since k jumps at liquidity events.
double fees_pct(const PoolSnapshotSeries& series, std::int64_t t1, std::int64_t t2);

// Divergence loss from the reserve-ratio move p1 -> p2 (p = reserve1/reserve0):
//   100 * (2*sqrt(p2/p1) / (1 + p2/p1) - 1),  in (-100, 0].
double impermanent_loss_pct(double p_t1, double p_t2);

struct DailyReturn {
    std::int64_t day = 0;
    double return_pct = 0.0;
};

// Average daily returns: day d's level is the mean of in-day ratio samples,
// and the return is the percent change of consecutive day levels. The mean
// damps the one-sample reserve-imbalance spikes a closing value would keep.
std::vector<DailyReturn> daily_return_series(const ValuationSeries& v);

// Historical CVaR: mean of the ceil(level*n) smallest returns.
double cvar(std::span<const double> returns, double level = 0.05);

double mean(std::span<const double> xs);

// Pearson correlation; both series need length >= 2 and nonzero variance.
double pearson(std::span<const double> x, std::span<const double> y);

struct RiskReport {
    std::string pool_id;
    double mean_daily_return_pct = 0.0;
    double cvar_daily_pct = 0.0;
    std::size_t n_days = 0;
};

RiskReport risk_report(const std::string& pool_id, const std::vector<DailyReturn>& daily,
                       double cvar_level = 0.05);

}  // namespace poolscope
