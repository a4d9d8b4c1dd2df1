#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "poolscope/event.hpp"
#include "poolscope/replay.hpp"

namespace poolscope {

// Numeraire/USD price feed: a step function, strictly increasing in ts.
struct PriceFeed {
    std::vector<std::pair<std::int64_t, double>> points;

    void validate() const;
    double at(std::int64_t ts) const;  // last observation <= ts

    static PriceFeed load_csv(const std::string& path);
    void save_csv(const std::string& path) const;
};

// Two-step valuation: token -> numeraire via the token's quote-pool spot
// ratio (last snapshot <= t), numeraire -> USD via the price feed.
class ValuationContext {
  public:
    ValuationContext(const std::map<std::string, PoolSnapshotSeries>& pools,
                     const PoolDirectory& directory, const PriceFeed& numeraire_usd,
                     std::string numeraire = "WETH");

    // Price of one whole token (decimals applied) in numeraire units.
    double token_price_eth(const std::string& token, const EventKey& key) const;
    double token_price_eth_ts(const std::string& token, std::int64_t ts) const;

    double token_price_usd(const std::string& token, std::int64_t ts) const;

    // USD value of a whole-token amount given in base units.
    double amount_usd(const std::string& token, const bigint& base_units, std::int64_t ts) const;

    // USD value of the full pool reserves at the snapshot.
    double pool_value_usd(const PoolSnapshotSeries& series, const PoolSnapshot& snap,
                          std::int64_t ts) const;

    bool priceable(const std::string& token, std::int64_t ts) const;

    const std::string& numeraire() const { return numeraire_; }
    unsigned decimals(const std::string& token) const;
    const PriceFeed& feed() const { return *feed_; }

  private:
    struct QuotePool {
        const PoolSnapshotSeries* series = nullptr;
        bool token_is_0 = false;  // which side of the quote pool is the priced token
    };
    const QuotePool* quote_for(const std::string& token) const;

    std::map<std::string, QuotePool> quotes_;
    std::map<std::string, unsigned> decimals_;
    const PriceFeed* feed_;
    std::string numeraire_;
};

// invest/hold trajectory of a liquidity position: the position holds a fixed
// number of liquidity tokens from inception; hold is the inception token
// amounts valued at current prices (the constant-mix benchmark).
struct ValuationSample {
    std::int64_t ts = 0;
    EventKey key;
    double invest_usd = 0.0;
    double hold_usd = 0.0;
    double ratio = 0.0;  // invest / hold
};

struct ValuationSeries {
    std::string pool_id;
    std::string label;  // position identity ("pool" for the whole-pool series)
    std::vector<ValuationSample> samples;

    const ValuationSample* at_or_before_ts(std::int64_t ts) const;
    // Exactly the sample at ts (the sampling grid includes hour marks).
    const ValuationSample& sample_at(std::int64_t ts) const;
};

// invest and hold for a position holding `liquidity` tokens, with the hold
// leg frozen at the inception snapshot.
struct PositionValue {
    double invest_usd = 0.0;
    double hold_usd = 0.0;
};

PositionValue position_value_usd(const ValuationContext& ctx, const PoolSnapshotSeries& series,
                                 const bigint& liquidity, const PoolSnapshot& inception,
                                 const bigint& inception_supply, std::int64_t ts);

// Builds the whole-pool valuation series over [t_start, t_end], sampling at
// every pool event plus hour boundaries. Inception is the first sampling
// point where the pool is funded and both tokens priceable; samples where a
// price is unavailable are excluded rather than recorded as zero.
ValuationSeries build_pool_valuation_series(const ValuationContext& ctx,
                                            const PoolSnapshotSeries& series,
                                            std::int64_t t_start, std::int64_t t_end,
                                            std::int64_t sample_interval_s = 3600);

}  // namespace poolscope
