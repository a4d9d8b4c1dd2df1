#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "poolscope/amm.hpp"
#include "poolscope/event.hpp"
#include "poolscope/ledger.hpp"
#include "poolscope/parallel.hpp"

namespace poolscope {

// Token metadata sidecar (the `pool,token0,token1,decimals0,decimals1` CSV).
struct PairInfo {
    std::string token0;
    std::string token1;
    unsigned decimals0 = 18;
    unsigned decimals1 = 18;
};

class PoolDirectory {
  public:
    void add(const std::string& pool_id, PairInfo info);
    const PairInfo* find(const std::string& pool_id) const;
    unsigned token_decimals(const std::string& token) const;  // first pool wins, default 18

    // First (lowest pool id) pool pairing `token` with `quote`, if any.
    std::optional<std::string> pool_for_pair(const std::string& token,
                                             const std::string& quote) const;

    const std::map<std::string, PairInfo>& pools() const { return by_pool_; }

    static PoolDirectory load_csv(const std::string& path);
    void save_csv(const std::string& path) const;

  private:
    std::map<std::string, PairInfo> by_pool_;
    std::map<std::string, unsigned> token_decimals_;
};

// Pool state after each event that touched it.
struct PoolSnapshot {
    EventKey key;
    EventKind kind = EventKind::pool_created;
    bigint reserve0;
    bigint reserve1;
    bigint liquidity;
};

struct PoolSnapshotSeries {
    std::string pool_id;
    std::string token0;
    std::string token1;
    std::vector<PoolSnapshot> rows;  // strictly increasing EventKey

    // Last row at or before key/ts; nullptr when the pool had no event yet.
    const PoolSnapshot* at_or_before(const EventKey& key) const;
    const PoolSnapshot* at_or_before_ts(std::int64_t ts) const;
};

enum class ReplayMode { derive, trust_sync };

struct ReplayWarning {
    std::string pool_id;
    EventKey key;
    std::string message;
};

struct ReplayResult {
    std::map<std::string, PoolSnapshotSeries> pools;
    PositionLedger ledger;
    std::vector<ReplayWarning> warnings;
};

// Replays a sorted event log through the pool state machine. In derive mode
// reserves evolve purely via the pool transition functions; in trust_sync
// mode Sync events overwrite reserves and divergence beyond
// sync_tolerance (relative) is reported as a warning, not an error.
// Events are partitioned by pool, so pools replay independently (and in
// parallel under Exec::parallel) with bit-identical results either way.
ReplayResult replay(const std::vector<Event>& events, ReplayMode mode = ReplayMode::derive,
                    const PoolDirectory* directory = nullptr, Exec exec = Exec::serial,
                    double sync_tolerance = 1e-9);

// One row per UTC day covering the series range: event counts, swap volume
// and end-of-day pool value. USD columns need a valuation context and are
// zero without one (see pricing.hpp for the context).
struct DailyPoolRow {
    std::int64_t day = 0;  // days since epoch, UTC
    std::uint64_t mint_count = 0;
    std::uint64_t burn_count = 0;
    double volume_usd = 0.0;
    double end_liquidity_usd = 0.0;
};

class ValuationContext;  // pricing.hpp

std::vector<DailyPoolRow> daily_aggregate(const PoolSnapshotSeries& series,
                                          const std::vector<Event>& events,
                                          const ValuationContext* ctx = nullptr);

}  // namespace poolscope
