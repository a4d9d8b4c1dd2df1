#include "poolscope/ledger.hpp"

#include <algorithm>

#include "poolscope/errors.hpp"

namespace poolscope {

bigint Position::balance_at(const EventKey& key) const {
    bigint sum = 0;
    for (const auto& [k, delta] : history) {
        if (key < k) break;
        sum += delta;
    }
    return sum;
}

void PositionLedger::credit(Book& b, const std::string& address, const EventKey& key,
                            const bigint& amount) {
    Position& pos = b.positions[address];
    pos.balance += amount;
    pos.history.emplace_back(key, amount);
    b.supply += amount;
}

void PositionLedger::debit(Book& b, const std::string& address, const EventKey& key,
                           const bigint& amount) {
    Position& pos = b.positions[address];
    if (pos.balance < amount)
        throw Error(Errc::negative_balance,
                    address + " holds " + pos.balance.str() + ", debit of " + amount.str());
    pos.balance -= amount;
    pos.history.emplace_back(key, -amount);
    b.supply -= amount;
}

void PositionLedger::apply_liquidity_event(const Event& event) {
    switch (event.kind) {
        case EventKind::mint: {
            if (!event.has_liquidity)
                throw Error(Errc::internal_error,
                            "Mint without computed liquidity at " + event.key.to_string());
            credit(book(event.pool), event.actor, event.key, event.liquidity);
            return;
        }
        case EventKind::burn: {
            debit(book(event.pool), event.actor, event.key, event.liquidity);
            return;
        }
        case EventKind::transfer: {
            // zero-address legs are mint/burn supply moves, already applied
            if (is_zero_address(event.from) || is_zero_address(event.to)) return;
            Book& b = book(event.pool);
            debit(b, event.from, event.key, event.liquidity);
            credit(b, event.to, event.key, event.liquidity);
            return;
        }
        default:
            throw Error(Errc::internal_error,
                        std::string("not a liquidity event: ") + event_kind_name(event.kind));
    }
}

std::map<std::string, bigint> PositionLedger::balances_at(const std::string& pool_id,
                                                          const EventKey& key) const {
    auto it = books_.find(pool_id);
    if (it == books_.end()) throw Error(Errc::unknown_pool, pool_id);
    std::map<std::string, bigint> out;
    for (const auto& [address, pos] : it->second.positions) {
        bigint bal = pos.balance_at(key);
        if (bal != 0) out.emplace(address, std::move(bal));
    }
    return out;
}

std::map<std::string, bigint> PositionLedger::current_balances(const std::string& pool_id) const {
    auto it = books_.find(pool_id);
    if (it == books_.end()) throw Error(Errc::unknown_pool, pool_id);
    std::map<std::string, bigint> out;
    for (const auto& [address, pos] : it->second.positions)
        if (pos.balance != 0) out.emplace(address, pos.balance);
    return out;
}

bigint PositionLedger::balance_sum(const std::string& pool_id) const {
    auto it = books_.find(pool_id);
    if (it == books_.end()) throw Error(Errc::unknown_pool, pool_id);
    return it->second.supply;
}

std::map<std::size_t, std::size_t> PositionLedger::pools_per_provider_distribution(
    const EventKey& key) const {
    std::map<std::string, std::size_t> pools_of;
    for (const auto& [pool_id, b] : books_) {
        for (const auto& [address, pos] : b.positions) {
            if (pos.balance_at(key) > 0) ++pools_of[address];
        }
    }
    std::map<std::size_t, std::size_t> histogram;
    for (const auto& [address, n] : pools_of) ++histogram[n];
    return histogram;
}

double PositionLedger::single_pool_liquidity_share(const std::string& pool_id,
                                                   const EventKey& key) const {
    auto it = books_.find(pool_id);
    if (it == books_.end()) throw Error(Errc::unknown_pool, pool_id);

    std::map<std::string, bigint> balances = balances_at(pool_id, key);
    bigint supply = 0;
    for (const auto& [address, bal] : balances) supply += bal;
    if (supply == 0) throw Error(Errc::empty_pool, pool_id);

    bigint single = 0;
    for (const auto& [address, bal] : balances) {
        bool elsewhere = false;
        for (const auto& [other_id, other] : books_) {
            if (other_id == pool_id) continue;
            auto pit = other.positions.find(address);
            if (pit != other.positions.end() && pit->second.balance_at(key) > 0) {
                elsewhere = true;
                break;
            }
        }
        if (!elsewhere) single += bal;
    }
    return to_double(rational(single, supply));
}

std::map<std::string, ProviderProfile> PositionLedger::provider_profiles() const {
    std::map<std::string, ProviderProfile> out;
    for (const auto& [pool_id, b] : books_) {
        for (const auto& [address, pos] : b.positions) {
            if (pos.history.empty()) continue;
            auto [it, inserted] = out.try_emplace(address);
            ProviderProfile& p = it->second;
            if (inserted) {
                p.address = address;
                p.first_seen = pos.history.front().first;
                p.last_seen = pos.history.back().first;
            } else {
                p.first_seen = std::min(p.first_seen, pos.history.front().first);
                p.last_seen = std::max(p.last_seen, pos.history.back().first);
            }
            p.pools_participated.insert(pool_id);
        }
    }
    return out;
}

std::vector<std::string> PositionLedger::pool_ids() const {
    std::vector<std::string> out;
    out.reserve(books_.size());
    for (const auto& [pool_id, b] : books_) out.push_back(pool_id);
    return out;
}

const std::map<std::string, Position>& PositionLedger::positions(
    const std::string& pool_id) const {
    auto it = books_.find(pool_id);
    if (it == books_.end()) throw Error(Errc::unknown_pool, pool_id);
    return it->second.positions;
}

void PositionLedger::absorb(PositionLedger&& other) {
    for (auto& [pool_id, b] : other.books_) {
        if (books_.count(pool_id))
            throw Error(Errc::internal_error, "ledger merge overlap on " + pool_id);
        books_.emplace(pool_id, std::move(b));
    }
    other.books_.clear();
}

}  // namespace poolscope
