#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "poolscope/event.hpp"
#include "poolscope/parallel.hpp"
#include "poolscope/replay.hpp"

namespace poolscope {

// A provider pulling liquidity out of one pool and pushing it into another
// within the block window.
struct MovementRecord {
    std::string address;
    std::string from_pool;
    std::string to_pool;
    EventKey burn_key;
    EventKey mint_key;
    std::uint64_t block_gap = 0;  // mint block - burn block, in (0, window]
};

// injective: each mint consumes the earliest unmatched qualifying burn and
// each burn seeds at most one record. all_pairs: every qualifying burn/mint
// pair counts (the unmatched alternative reading; see report metadata).
enum class MatchMode { injective, all_pairs };

const char* match_mode_name(MatchMode mode);

// Detection partitions by address; partitions are independent, so the
// parallel path gives identical output. Records are ordered by mint key.
std::vector<MovementRecord> detect_movements(const std::vector<Event>& events,
                                             std::uint64_t window_blocks = 6000,
                                             MatchMode mode = MatchMode::injective,
                                             Exec exec = Exec::serial);

struct MovementMatrix {
    std::vector<std::string> pools;             // ascending average liquidity since creation
    std::vector<std::vector<std::uint64_t>> counts;  // counts[from][to], diagonal zero
    std::uint64_t display_cap = 500;

    std::uint64_t at(std::size_t from, std::size_t to) const { return counts[from][to]; }
    std::uint64_t capped(std::size_t from, std::size_t to) const {
        return counts[from][to] > display_cap ? display_cap : counts[from][to];
    }
    std::uint64_t total() const;
};

// Block-weighted average of sqrt(reserve0*reserve1) from the pool's first
// event to end_block: the size measure used to order matrix axes.
double average_liquidity(const PoolSnapshotSeries& series, std::uint64_t end_block);

// Pools with more than min_activity Mint+Burn events, ordered ascending by
// average liquidity (ties by pool id).
std::vector<std::string> eligible_pools(const std::vector<Event>& events,
                                        const std::map<std::string, PoolSnapshotSeries>& pools,
                                        std::uint64_t min_activity = 5000);

// Aggregates records whose endpoints are both in `ordered_pools`. Raw counts
// are kept; the cap applies to display export only.
MovementMatrix build_matrix(const std::vector<MovementRecord>& records,
                            const std::vector<std::string>& ordered_pools,
                            std::uint64_t display_cap = 500);

// Per-UTC-day (or coarser bucket) counts for one directed pool pair,
// bucketed by the mint event's day. Covers the full day range of `records`.
std::vector<std::pair<std::int64_t, std::uint64_t>> movement_timeseries(
    const std::vector<MovementRecord>& records, const std::string& from_pool,
    const std::string& to_pool, int bucket_days = 1);

}  // namespace poolscope
