#include "poolscope/movement.hpp"

#include <algorithm>
#include <cmath>

#include "poolscope/time_util.hpp"

namespace poolscope {

const char* match_mode_name(MatchMode mode) {
    return mode == MatchMode::injective ? "injective" : "all_pairs";
}

namespace {

struct AddressActivity {
    // (event index) of burns and mints, in log order
    std::vector<std::size_t> burns;
    std::vector<std::size_t> mints;
};

}  // namespace

std::vector<MovementRecord> detect_movements(const std::vector<Event>& events,
                                             std::uint64_t window_blocks, MatchMode mode,
                                             Exec exec) {
    std::map<std::string, AddressActivity> by_address;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& ev = events[i];
        if (ev.kind == EventKind::burn)
            by_address[ev.actor].burns.push_back(i);
        else if (ev.kind == EventKind::mint)
            by_address[ev.actor].mints.push_back(i);
    }

    std::vector<const AddressActivity*> partitions;
    std::vector<const std::string*> addresses;
    partitions.reserve(by_address.size());
    for (const auto& [address, act] : by_address) {
        addresses.push_back(&address);
        partitions.push_back(&act);
    }

    std::vector<std::vector<MovementRecord>> per_address(partitions.size());
    for_index(partitions.size(), exec, [&](std::size_t p) {
        const AddressActivity& act = *partitions[p];
        std::vector<MovementRecord>& out = per_address[p];
        std::vector<bool> burn_used(act.burns.size(), false);
        for (std::size_t mi : act.mints) {
            const Event& mint = events[mi];
            for (std::size_t b = 0; b < act.burns.size(); ++b) {
                if (mode == MatchMode::injective && burn_used[b]) continue;
                const Event& burn = events[act.burns[b]];
                if (burn.key.block >= mint.key.block) break;  // burns are in block order
                const std::uint64_t gap = mint.key.block - burn.key.block;
                if (gap > window_blocks || burn.pool == mint.pool) continue;
                out.push_back({*addresses[p], burn.pool, mint.pool, burn.key, mint.key, gap});
                if (mode == MatchMode::injective) {
                    burn_used[b] = true;
                    break;  // each mint consumes at most one burn
                }
            }
        }
    });

    std::vector<MovementRecord> records;
    for (auto& part : per_address)
        records.insert(records.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    std::sort(records.begin(), records.end(), [](const MovementRecord& a, const MovementRecord& b) {
        if (a.mint_key != b.mint_key) return a.mint_key < b.mint_key;
        if (a.burn_key != b.burn_key) return a.burn_key < b.burn_key;
        return a.address < b.address;
    });
    return records;
}

std::uint64_t MovementMatrix::total() const {
    std::uint64_t sum = 0;
    for (const auto& row : counts)
        for (std::uint64_t c : row) sum += c;
    return sum;
}

double average_liquidity(const PoolSnapshotSeries& series, std::uint64_t end_block) {
    if (series.rows.empty()) return 0.0;
    double weighted = 0.0;
    double total_blocks = 0.0;
    for (std::size_t i = 0; i < series.rows.size(); ++i) {
        const PoolSnapshot& row = series.rows[i];
        const std::uint64_t from = row.key.block;
        const std::uint64_t to =
            i + 1 < series.rows.size() ? series.rows[i + 1].key.block : end_block + 1;
        if (to <= from) continue;
        const double span = static_cast<double>(to - from);
        weighted += span * std::sqrt(to_double(row.reserve0)) * std::sqrt(to_double(row.reserve1));
        total_blocks += span;
    }
    return total_blocks > 0.0 ? weighted / total_blocks : 0.0;
}

std::vector<std::string> eligible_pools(const std::vector<Event>& events,
                                        const std::map<std::string, PoolSnapshotSeries>& pools,
                                        std::uint64_t min_activity) {
    std::map<std::string, std::uint64_t> activity;
    std::uint64_t end_block = 0;
    for (const Event& ev : events) {
        end_block = std::max(end_block, ev.key.block);
        if (ev.kind == EventKind::mint || ev.kind == EventKind::burn) ++activity[ev.pool];
    }

    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& [pool_id, count] : activity) {
        if (count <= min_activity) continue;
        auto it = pools.find(pool_id);
        if (it == pools.end()) continue;
        ranked.emplace_back(average_liquidity(it->second, end_block), pool_id);
    }
    std::sort(ranked.begin(), ranked.end());
    std::vector<std::string> out;
    out.reserve(ranked.size());
    for (auto& [avg, pool_id] : ranked) out.push_back(std::move(pool_id));
    return out;
}

MovementMatrix build_matrix(const std::vector<MovementRecord>& records,
                            const std::vector<std::string>& ordered_pools,
                            std::uint64_t display_cap) {
    MovementMatrix m;
    m.pools = ordered_pools;
    m.display_cap = display_cap;
    m.counts.assign(ordered_pools.size(), std::vector<std::uint64_t>(ordered_pools.size(), 0));
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < ordered_pools.size(); ++i) index[ordered_pools[i]] = i;
    for (const MovementRecord& r : records) {
        auto from = index.find(r.from_pool);
        auto to = index.find(r.to_pool);
        if (from == index.end() || to == index.end()) continue;
        ++m.counts[from->second][to->second];
    }
    return m;
}

std::vector<std::pair<std::int64_t, std::uint64_t>> movement_timeseries(
    const std::vector<MovementRecord>& records, const std::string& from_pool,
    const std::string& to_pool, int bucket_days) {
    std::vector<std::pair<std::int64_t, std::uint64_t>> out;
    if (records.empty() || bucket_days <= 0) return out;

    std::int64_t first_day = utc_day(records.front().mint_key.ts);
    std::int64_t last_day = first_day;
    for (const MovementRecord& r : records) {
        first_day = std::min(first_day, utc_day(r.mint_key.ts));
        last_day = std::max(last_day, utc_day(r.mint_key.ts));
    }
    const std::int64_t n_buckets = (last_day - first_day) / bucket_days + 1;
    out.reserve(static_cast<std::size_t>(n_buckets));
    for (std::int64_t b = 0; b < n_buckets; ++b)
        out.emplace_back(first_day + b * bucket_days, 0);
    for (const MovementRecord& r : records) {
        if (r.from_pool != from_pool || r.to_pool != to_pool) continue;
        const std::int64_t b = (utc_day(r.mint_key.ts) - first_day) / bucket_days;
        ++out[static_cast<std::size_t>(b)].second;
    }
    return out;
}

}  // namespace poolscope
