#pragma once

// Shared helpers for the test suites: deterministic random generators,
// an event-log builder, and brute-force oracles kept independent of the
// library code paths they check.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "poolscope/event.hpp"
#include "poolscope/wide_math.hpp"

namespace poolscope::test {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    std::uint64_t u64(std::uint64_t lo, std::uint64_t hi) {  // inclusive
        return lo + gen() % (hi - lo + 1);
    }
    double u01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * u01(); }
    bool coin() { return (gen() & 1) != 0; }

    // log-uniform positive integer with `digits` decimal digits
    bigint big_with_digits(unsigned digits) {
        std::string s;
        s.push_back(static_cast<char>('1' + gen() % 9));
        for (unsigned i = 1; i < digits; ++i) s.push_back(static_cast<char>('0' + gen() % 10));
        return bigint(s);
    }
    bigint big(unsigned min_digits, unsigned max_digits) {
        return big_with_digits(
            static_cast<unsigned>(u64(min_digits, max_digits)));
    }
    // uniform in [1, upper]
    bigint big_below(const bigint& upper) {
        if (upper <= 1) return 1;
        bigint span = upper;
        bigint r = 0;
        while (span > 0) {
            r = r * 0x100000000ull + bigint(gen() & 0xffffffffull);
            span >>= 32;
        }
        return r % upper + 1;
    }
};

// floor sqrt by pure binary search; does not share code with the library
inline bigint oracle_isqrt(const bigint& x) {
    if (x < 2) return x;
    bigint lo = 1, hi = x;
    while (lo < hi) {
        bigint mid = (lo + hi + 1) / 2;
        if (mid * mid <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

// sort-and-average historical CVaR
inline double oracle_cvar(std::vector<double> returns, double level) {
    std::sort(returns.begin(), returns.end());
    const std::size_t tail = static_cast<std::size_t>(
        std::ceil(level * static_cast<double>(returns.size())));
    double sum = 0.0;
    for (std::size_t i = 0; i < tail; ++i) sum += returns[i];
    return sum / static_cast<double>(tail);
}

// Builds a well-formed log: tx_index auto-increments per block, ts follows
// the block number.
class LogBuilder {
  public:
    explicit LogBuilder(std::int64_t ts_per_block = 12, std::int64_t ts0 = 1609459200)
        : ts_per_block_(ts_per_block), ts0_(ts0) {}

    Event& add(std::uint64_t block, const std::string& pool, EventKind kind) {
        Event ev;
        ev.key.block = block;
        ev.key.tx_index = next_tx_[block]++;
        ev.key.log_index = 0;
        ev.key.ts = ts0_ + static_cast<std::int64_t>(block) * ts_per_block_;
        ev.pool = pool;
        ev.kind = kind;
        events_.push_back(std::move(ev));
        return events_.back();
    }

    Event& created(std::uint64_t block, const std::string& pool) {
        return add(block, pool, EventKind::pool_created);
    }
    Event& mint(std::uint64_t block, const std::string& pool, const std::string& actor,
                const bigint& a0, const bigint& a1) {
        Event& ev = add(block, pool, EventKind::mint);
        ev.actor = actor;
        ev.amount0 = a0;
        ev.amount1 = a1;
        return ev;
    }
    Event& burn(std::uint64_t block, const std::string& pool, const std::string& actor,
                const bigint& liquidity) {
        Event& ev = add(block, pool, EventKind::burn);
        ev.actor = actor;
        ev.liquidity = liquidity;
        ev.has_liquidity = true;
        return ev;
    }
    Event& swap(std::uint64_t block, const std::string& pool, const std::string& in_token,
                const bigint& amount_in) {
        Event& ev = add(block, pool, EventKind::swap);
        ev.actor = "trader";
        ev.in_token = in_token;
        ev.amount_in = amount_in;
        return ev;
    }
    Event& transfer(std::uint64_t block, const std::string& pool, const std::string& from,
                    const std::string& to, const bigint& liquidity) {
        Event& ev = add(block, pool, EventKind::transfer);
        ev.from = from;
        ev.to = to;
        ev.liquidity = liquidity;
        ev.has_liquidity = true;
        return ev;
    }
    Event& sync(std::uint64_t block, const std::string& pool, const bigint& r0, const bigint& r1) {
        Event& ev = add(block, pool, EventKind::sync);
        ev.reserve0 = r0;
        ev.reserve1 = r1;
        return ev;
    }

    const std::vector<Event>& events() const { return events_; }
    std::vector<Event> take() { return std::move(events_); }

  private:
    std::int64_t ts_per_block_;
    std::int64_t ts0_;
    std::map<std::uint64_t, std::uint32_t> next_tx_;
    std::vector<Event> events_;
};

}  // namespace poolscope::test
