#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "poolscope/event.hpp"
#include "poolscope/pricing.hpp"
#include "poolscope/replay.hpp"

namespace poolscope {

// Daily geometric price path; an optional one-day jump models the
// collapse/moon moves that make a pair exotic.
struct PricePathSpec {
    double initial_usd = 1.0;
    double drift_pct_per_day = 0.0;
    double vol_pct_per_day = 0.0;
    double jump_factor = 1.0;
    int jump_day = -1;
};

struct TokenSpec {
    std::string symbol;
    unsigned decimals = 18;
    PricePathSpec usd_price;
};

// noise_arb: random-direction trades plus an arbitrage trade that steers the
// reserve ratio back to the external price ratio.
// balanced: mirrored in/out trade pairs that accrue fees while keeping the
// reserve ratio pinned (the stable-pool regime).
enum class FlowKind { noise_arb, balanced };

struct PoolSpec {
    std::string token0;
    std::string token1;
    bigint initial0;
    bigint initial1;
    FlowKind flow = FlowKind::noise_arb;
    std::uint32_t swaps_per_day = 24;
    double swap_reserve_fraction = 0.001;  // trade size relative to the in-side reserve
    std::uint32_t mints_per_day = 0;
    std::uint32_t burns_per_day = 0;
    double liquidity_event_fraction = 0.01;  // mint/burn size relative to position
    std::uint32_t providers = 3;
    std::uint32_t transfers_per_day = 0;
};

struct SyntheticScenario {
    std::uint64_t seed = 42;
    std::int64_t start_ts = 1609459200;  // 2021-01-01T00:00:00Z
    std::uint64_t start_block = 1000000;
    std::uint32_t block_time_s = 12;
    std::uint32_t duration_days = 30;
    std::string numeraire = "WETH";
    PricePathSpec numeraire_usd{1000.0, 0.0, 0.0, 1.0, -1};
    std::vector<TokenSpec> tokens;
    std::vector<PoolSpec> pools;
    // Deep side pools quoting every non-numeraire token against the
    // numeraire, so every token is priceable. Skipped for tokens that
    // already have a numeraire pool in `pools`.
    bool auto_quote_pools = true;
    double quote_pool_numeraire_reserve = 1e6;  // whole numeraire units

    void validate() const;  // throws InvalidScenario

    static SyntheticScenario from_json_file(const std::string& path);
    static SyntheticScenario from_json_text(const std::string& text);
    std::string to_json_text() const;
};

struct GeneratedData {
    std::vector<Event> events;
    PriceFeed numeraire_usd;
    PoolDirectory directory;
};

// Fully deterministic under (scenario, seed): the generator drives the real
// pool state machine, so the emitted log always replays cleanly and the
// replayed reserves match the generator's bit for bit.
GeneratedData generate_scenario(const SyntheticScenario& scenario);

// Canned scenarios used by the CLI and the test-bench (kept here so tests,
// benchmarks and docs agree on them).
SyntheticScenario demo_scenario();
SyntheticScenario stable_scenario();
SyntheticScenario exotic_scenario();
SyntheticScenario large_scenario(std::uint64_t approx_events);

}  // namespace poolscope
