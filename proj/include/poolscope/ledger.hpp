#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "poolscope/event.hpp"
#include "poolscope/wide_math.hpp"

namespace poolscope {

// Per-(address, pool) liquidity-token balance with full history.
struct Position {
    bigint balance;
    // signed deltas in event order; balance is their running sum and never
    // goes negative
    std::vector<std::pair<EventKey, bigint>> history;

    bigint balance_at(const EventKey& key) const;
};

struct ProviderProfile {
    std::string address;
    std::set<std::string> pools_participated;  // ever, not just currently funded
    EventKey first_seen;
    EventKey last_seen;
};

// Tracks provider balances through Mint / Burn / Transfer events. Mint
// credits the actor, Burn debits it, Transfer moves balance between
// addresses; legs touching the zero address are supply changes already
// accounted for by Mint/Burn and are not positions.
class PositionLedger {
  public:
    // Mint events must carry liquidity (replay fills in the pool-computed
    // value before applying).
    void apply_liquidity_event(const Event& event);

    // Balances as of the last event <= key. Their sum equals the pool's
    // share supply at that key.
    std::map<std::string, bigint> balances_at(const std::string& pool_id,
                                              const EventKey& key) const;

    std::map<std::string, bigint> current_balances(const std::string& pool_id) const;
    bigint balance_sum(const std::string& pool_id) const;

    // count-of-pools -> count-of-providers, over providers with at least one
    // strictly positive balance at key.
    std::map<std::size_t, std::size_t> pools_per_provider_distribution(const EventKey& key) const;

    // Share of pool liquidity held by providers whose only funded pool is
    // this one.
    double single_pool_liquidity_share(const std::string& pool_id, const EventKey& key) const;

    std::map<std::string, ProviderProfile> provider_profiles() const;

    bool has_pool(const std::string& pool_id) const { return books_.count(pool_id) != 0; }
    std::vector<std::string> pool_ids() const;
    const std::map<std::string, Position>& positions(const std::string& pool_id) const;

    // Merges per-pool books built in parallel; pools must be disjoint.
    void absorb(PositionLedger&& other);

  private:
    struct Book {
        std::map<std::string, Position> positions;
        bigint supply;  // running sum of all balances, = pool share supply
    };

    Book& book(const std::string& pool_id) { return books_[pool_id]; }
    void credit(Book& b, const std::string& address, const EventKey& key, const bigint& amount);
    void debit(Book& b, const std::string& address, const EventKey& key, const bigint& amount);

    std::map<std::string, Book> books_;
};

}  // namespace poolscope
