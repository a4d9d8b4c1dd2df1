#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "poolscope/pricing.hpp"

namespace poolscope {

enum class PoolCategory { stable, normal, exotic };

const char* pool_category_name(PoolCategory c);

struct ClassifyConfig {
    double stable_daily_vol_pct = 1.0;   // both below -> stable
    double exotic_range_factor = 100.0;  // either max/min above -> exotic
    int min_days = 30;
    std::set<std::string> stable_tokens = {"USDC", "USDT", "DAI"};
};

// The statistics the category was decided on.
struct CategoryEvidence {
    double vol0_pct = 0.0;  // stddev of daily USD returns, percent
    double vol1_pct = 0.0;
    double range0 = 1.0;  // max/min USD price over the window
    double range1 = 1.0;
    bool stable_listed = false;
    std::size_t n_days = 0;
};

struct PoolCategoryReport {
    PoolCategory category = PoolCategory::normal;
    CategoryEvidence evidence;
};

// Classification from per-day USD price series of the two tokens.
PoolCategoryReport classify_from_prices(const std::string& token0, const std::string& token1,
                                        std::span<const double> daily_usd0,
                                        std::span<const double> daily_usd1,
                                        const ClassifyConfig& cfg = {});

// Samples daily USD prices of both pool tokens over [t_start, t_end] via the
// valuation context, then classifies. Needs min_days of history unless both
// tokens are stable-listed.
PoolCategoryReport classify_pool(const ValuationContext& ctx, const PoolSnapshotSeries& pool,
                                 std::int64_t t_start, std::int64_t t_end,
                                 const ClassifyConfig& cfg = {});

}  // namespace poolscope
