#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "poolscope/wide_math.hpp"

namespace poolscope {

// Total order over a log: (block, tx_index, log_index) mirrors on-chain
// receipt ordering; ts is the block timestamp.
struct EventKey {
    std::uint64_t block = 0;
    std::uint32_t tx_index = 0;
    std::uint32_t log_index = 0;
    std::int64_t ts = 0;

    friend std::strong_ordering operator<=>(const EventKey& a, const EventKey& b) {
        if (auto c = a.block <=> b.block; c != 0) return c;
        if (auto c = a.tx_index <=> b.tx_index; c != 0) return c;
        return a.log_index <=> b.log_index;
    }
    friend bool operator==(const EventKey& a, const EventKey& b) {
        return a.block == b.block && a.tx_index == b.tx_index && a.log_index == b.log_index;
    }

    std::string to_string() const;
};

enum class EventKind { pool_created, mint, burn, swap, transfer, sync };

const char* event_kind_name(EventKind kind);

struct Event {
    EventKey key;
    std::string pool;
    EventKind kind = EventKind::pool_created;
    std::string actor;

    // Mint / Burn
    bigint amount0;
    bigint amount1;
    // Burn / Transfer; optional on Mint (replay fills in the computed value)
    bigint liquidity;
    bool has_liquidity = false;
    // Transfer
    std::string from;
    std::string to;
    // Swap
    std::string in_token;
    bigint amount_in;
    bigint amount_out;
    // Sync
    bigint reserve0;
    bigint reserve1;

    std::string to_json_line() const;
};

bool is_zero_address(const std::string& addr);

// Parses a JSON-lines event log. Returns events sorted by EventKey;
// duplicate keys, unknown kinds, missing kind-specific fields and
// timestamps that decrease along the block order are rejected.
std::vector<Event> parse_event_log(std::istream& in);
std::vector<Event> load_event_log(const std::string& path);

void write_event_log(std::ostream& out, const std::vector<Event>& events);
void save_event_log(const std::string& path, const std::vector<Event>& events);

}  // namespace poolscope
