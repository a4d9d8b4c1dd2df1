#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "poolscope/errors.hpp"
#include "poolscope/wide_math.hpp"

namespace poolscope {

// Swap fee expressed as exact ratios, never floats. r1 discounts the input
// side, r2 the output side; the deployed constant-product contract this
// models uses r1 = 997/1000 and r2 = 1, and only the r2 = 1 path is wired
// into swap().
struct FeeParams {
    std::uint64_t r1_num = 997;
    std::uint64_t r1_den = 1000;
    std::uint64_t r2_num = 1;
    std::uint64_t r2_den = 1;

    void validate() const {
        if (r1_num == 0 || r1_den == 0 || r1_num > r1_den)
            throw Error(Errc::invalid_scenario, "fee ratio r1 must satisfy 0 < r1 <= 1");
        if (r2_num == 0 || r2_den == 0 || r2_num > r2_den)
            throw Error(Errc::invalid_scenario, "fee ratio r2 must satisfy 0 < r2 <= 1");
    }

    static FeeParams no_fee() { return FeeParams{1, 1, 1, 1}; }
};

template <class Num>
struct MintResult {
    Num minted_liquidity{};
};

template <class Num>
struct BurnResult {
    Num amount0{};
    Num amount1{};
};

template <class Num>
struct SwapResult {
    Num amount_out{};
    Num fee_paid{};  // input-token units withheld by the fee
};

// Base-unit integer arithmetic with floor rounding: what a deployed pool
// contract actually computes.
struct IntArith {
    using Num = bigint;
    static Num div(const Num& n, const Num& d) { return n / d; }  // floor for n,d >= 0
    static Num initial_liquidity(const Num& a, const Num& b) { return isqrt(a * b); }
};

// Exact rationals: the real-valued equations hold with equality, which the
// property tests rely on.
struct RationalArith {
    using Num = rational;
    static Num div(const Num& n, const Num& d) { return n / d; }
    static Num initial_liquidity(const Num& a, const Num& b) { return sqrt_exact(a * b); }
};

// fee charged on an input of amount_in: floor(amount * (r1_den - r1_num) / r1_den).
template <class Arith>
typename Arith::Num quote_fee(const typename Arith::Num& amount_in, const FeeParams& fees) {
    using Num = typename Arith::Num;
    if (amount_in < 0) throw Error(Errc::zero_amount, "negative amount");
    return Arith::div(amount_in * Num(fees.r1_den - fees.r1_num), Num(fees.r1_den));
}

inline bigint quote_fee(const bigint& amount_in, const FeeParams& fees) {
    return quote_fee<IntArith>(amount_in, fees);
}

// Constant-product pool state machine. token0 < token1 (canonical order);
// total_liquidity is the share-token supply, zero exactly when both
// reserves are zero. Single writer per pool.
template <class Arith>
struct BasicPool {
    using Num = typename Arith::Num;

    std::string pool_id;
    std::string token0;
    std::string token1;
    Num reserve0{};
    Num reserve1{};
    Num total_liquidity{};
    FeeParams fees{};

    Num k() const { return reserve0 * reserve1; }
    bool empty() const { return total_liquidity == 0; }

    // First deposit into an empty pool: shares = floor(sqrt(a*b)).
    MintResult<Num> mint_initial(const Num& amount0_in, const Num& amount1_in) {
        if (total_liquidity != 0) throw Error(Errc::pool_not_empty, pool_id);
        if (amount0_in <= 0 || amount1_in <= 0)
            throw Error(Errc::zero_amount, "initial deposit requires both amounts > 0");
        Num minted = Arith::initial_liquidity(amount0_in, amount1_in);
        if (minted == 0) throw Error(Errc::zero_liquidity_minted, pool_id);
        reserve0 = amount0_in;
        reserve1 = amount1_in;
        total_liquidity = minted;
        return {minted};
    }

    // Deposit into a live pool. Credits the smaller of the two proportional
    // claims; any excess on the other side stays in the pool. The deposit is
    // not required to match the reserve ratio, which keeps replay of real
    // logs robust.
    MintResult<Num> mint(const Num& amount0_in, const Num& amount1_in) {
        if (total_liquidity == 0) throw Error(Errc::empty_pool, pool_id);
        if (amount0_in <= 0 || amount1_in <= 0)
            throw Error(Errc::zero_amount, "deposit requires both amounts > 0");
        Num claim0 = Arith::div(total_liquidity * amount0_in, reserve0);
        Num claim1 = Arith::div(total_liquidity * amount1_in, reserve1);
        Num minted = claim0 < claim1 ? claim0 : claim1;
        if (minted == 0) throw Error(Errc::zero_liquidity_minted, pool_id);
        reserve0 += amount0_in;
        reserve1 += amount1_in;
        total_liquidity += minted;
        return {minted};
    }

    // Redeems liquidity shares for the proportional slice of both reserves;
    // the shares are destroyed.
    BurnResult<Num> burn(const Num& liquidity, const Num& owner_balance) {
        if (liquidity <= 0) throw Error(Errc::zero_amount, "burn of zero liquidity");
        if (liquidity > owner_balance || owner_balance > total_liquidity)
            throw Error(Errc::insufficient_liquidity_balance, pool_id);
        // Full redemption is exact: floor(a * L / L) == a, so reserves reach
        // zero together with the share supply.
        Num out0 = Arith::div(reserve0 * liquidity, total_liquidity);
        Num out1 = Arith::div(reserve1 * liquidity, total_liquidity);
        reserve0 -= out0;
        reserve1 -= out1;
        total_liquidity -= liquidity;
        return {out0, out1};
    }

    // Swap amount_in of one side for the other at the fee-discounted
    // constant-product rate:
    //   out = floor(in * r1_num * reserve_out / (reserve_in * r1_den + in * r1_num))
    // The share supply does not change, and k never decreases.
    SwapResult<Num> swap(bool zero_for_one, const Num& amount_in) {
        if (reserve0 <= 0 || reserve1 <= 0) throw Error(Errc::empty_pool, pool_id);
        if (amount_in <= 0) throw Error(Errc::zero_amount, "swap of zero input");
        Num& reserve_in = zero_for_one ? reserve0 : reserve1;
        Num& reserve_out = zero_for_one ? reserve1 : reserve0;
        Num in_with_fee = amount_in * Num(fees.r1_num);
        Num out = Arith::div(in_with_fee * reserve_out,
                             reserve_in * Num(fees.r1_den) + in_with_fee);
        if (out == 0) throw Error(Errc::insufficient_output, pool_id);
        if (out >= reserve_out) throw Error(Errc::internal_error, "swap would drain reserve");
        reserve_in += amount_in;
        reserve_out -= out;
        return {out, quote_fee<Arith>(amount_in, fees)};
    }

    // Swap addressed by token id, as events are.
    SwapResult<Num> swap_token(const std::string& input_token, const Num& amount_in) {
        if (input_token == token0 || input_token == "0") return swap(true, amount_in);
        if (input_token == token1 || input_token == "1") return swap(false, amount_in);
        throw Error(Errc::unknown_in_token, input_token + " not in pool " + pool_id);
    }
};

using Pool = BasicPool<IntArith>;
using RationalPool = BasicPool<RationalArith>;

inline std::pair<std::string, std::string> canonical_pair(const std::string& token_a,
                                                          const std::string& token_b) {
    if (token_a == token_b) throw Error(Errc::duplicate_tokens, token_a);
    return token_a < token_b ? std::make_pair(token_a, token_b)
                             : std::make_pair(token_b, token_a);
}

// One pool per unordered token pair. Deterministic iteration order (by id).
class PoolRegistry {
  public:
    // Derives the id from the canonical pair, so (A,B) and (B,A) name the same pool.
    Pool& create_pool(const std::string& token_a, const std::string& token_b,
                      const FeeParams& fees = {});
    // Replay path: ids come from the log.
    Pool& create_pool_with_id(const std::string& pool_id, const std::string& token_a,
                              const std::string& token_b, const FeeParams& fees = {});

    Pool* find(const std::string& pool_id);
    const Pool* find(const std::string& pool_id) const;
    Pool& get(const std::string& pool_id);

    bool has_pair(const std::string& token_a, const std::string& token_b) const;
    std::size_t size() const { return pools_.size(); }
    const std::map<std::string, Pool>& pools() const { return pools_; }

  private:
    std::map<std::string, Pool> pools_;
    std::set<std::pair<std::string, std::string>> pairs_;
};

}  // namespace poolscope
