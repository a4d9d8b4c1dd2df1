#include <doctest.h>

#include "poolscope/amm.hpp"
#include "support.hpp"

using namespace poolscope;
using test::Rng;

namespace {

Pool make_pool(const bigint& r0, const bigint& r1, const bigint& supply) {
    Pool p;
    p.pool_id = "T0/T1";
    p.token0 = "T0";
    p.token1 = "T1";
    p.reserve0 = r0;
    p.reserve1 = r1;
    p.total_liquidity = supply;
    return p;
}

}  // namespace

TEST_CASE("pool registry canonical creation") {
    PoolRegistry reg;
    Pool& p = reg.create_pool("A", "B");
    CHECK(p.reserve0 == 0);
    CHECK(p.reserve1 == 0);
    CHECK(p.total_liquidity == 0);
    CHECK(p.token0 == "A");
    CHECK(p.token1 == "B");

    PoolRegistry reg2;
    Pool& q = reg2.create_pool("B", "A");
    CHECK(q.pool_id == p.pool_id);  // (B,A) names the same pool as (A,B)
    CHECK(q.token0 == "A");

    CHECK_THROWS_WITH_AS(reg.create_pool("A", "A"), doctest::Contains("DuplicateTokens"), Error);
    CHECK_THROWS_AS(reg.create_pool("B", "A"), Error);  // PoolExists
    try {
        reg.create_pool("A", "B");
        FAIL("expected PoolExists");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::pool_exists);
    }
}

TEST_CASE("initial mint takes the floor square root") {
    Pool p = make_pool(0, 0, 0);
    CHECK(p.mint_initial(4, 9).minted_liquidity == 6);
    CHECK(p.reserve0 == 4);
    CHECK(p.reserve1 == 9);
    CHECK(p.total_liquidity == 6);

    Pool q = make_pool(0, 0, 0);
    CHECK(q.mint_initial(2, 3).minted_liquidity == test::oracle_isqrt(6));
    CHECK(q.total_liquidity == 2);

    Pool r = make_pool(0, 0, 0);
    CHECK_THROWS_AS(r.mint_initial(0, 9), Error);
    CHECK_THROWS_AS(p.mint_initial(4, 9), Error);  // PoolNotEmpty
}

TEST_CASE("initial mint matches the isqrt oracle on random amounts") {
    Rng rng(101);
    for (int i = 0; i < 200; ++i) {
        Pool p = make_pool(0, 0, 0);
        const bigint a = rng.big(1, 24);
        const bigint b = rng.big(1, 24);
        CHECK(p.mint_initial(a, b).minted_liquidity == test::oracle_isqrt(a * b));
    }
}

TEST_CASE("subsequent mint credits the smaller proportional claim") {
    Pool p = make_pool(100, 400, 200);
    CHECK(p.mint(10, 40).minted_liquidity == 20);  // exact proportional
    CHECK(p.reserve0 == 110);
    CHECK(p.reserve1 == 440);
    CHECK(p.total_liquidity == 220);

    Pool q = make_pool(100, 400, 200);
    CHECK(q.mint(10, 80).minted_liquidity == 20);  // limited by the token0 side
    CHECK(q.reserve1 == 480);                      // excess stays in the pool

    Pool empty = make_pool(0, 0, 0);
    CHECK_THROWS_AS(empty.mint(10, 40), Error);  // EmptyPool
    CHECK_THROWS_AS(p.mint(0, 40), Error);       // ZeroAmount

    Pool fine = make_pool(bigint(1000000), 4, 2000);
    try {
        fine.mint(10, 1);  // both claims floor to zero
        FAIL("expected ZeroLiquidityMinted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::zero_liquidity_minted);
    }
}

TEST_CASE("burn redeems the proportional share") {
    Pool p = make_pool(100, 400, 200);
    BurnResult<bigint> full = p.burn(200, 200);
    CHECK(full.amount0 == 100);
    CHECK(full.amount1 == 400);
    CHECK(p.total_liquidity == 0);
    CHECK(p.reserve0 == 0);
    CHECK(p.reserve1 == 0);

    Pool q = make_pool(100, 400, 200);
    BurnResult<bigint> quarter = q.burn(50, 200);
    CHECK(quarter.amount0 == 25);
    CHECK(quarter.amount1 == 100);
    CHECK(q.total_liquidity == 150);

    try {
        q.burn(300, 200);
        FAIL("expected InsufficientLiquidityBalance");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::insufficient_liquidity_balance);
    }
    CHECK_THROWS_AS(q.burn(0, 150), Error);  // ZeroAmount
}

TEST_CASE("swap output matches the wide-integer closed form") {
    // oracle: floor(997 * 10^6 * 10^5 / (10^6 * 1000 + 10^5 * 997)), evaluated
    // directly in exact integers
    const bigint a = 1000000, b = 1000000, in = 100000;
    const bigint expected = (in * 997 * b) / (a * 1000 + in * 997);
    CHECK(expected == 90661);

    Pool p = make_pool(a, b, 1000000);
    SwapResult<bigint> res = p.swap(true, in);
    CHECK(res.amount_out == 90661);
    CHECK(p.reserve0 == 1100000);
    CHECK(p.reserve1 == 1000000 - 90661);
    CHECK(p.total_liquidity == 1000000);  // share supply unchanged by swaps

    // one base unit in: output floors to zero
    Pool q = make_pool(1000000, 1000000, 1000000);
    try {
        q.swap(true, 1);
        FAIL("expected InsufficientOutput");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::insufficient_output);
    }

    Pool empty = make_pool(0, 0, 0);
    CHECK_THROWS_AS(empty.swap(true, 5), Error);  // EmptyPool
}

TEST_CASE("swap by token id resolves the side") {
    Pool p = make_pool(1000000, 2000000, 1000000);
    Pool q = p;
    CHECK(p.swap_token("T0", 5000).amount_out == q.swap(true, 5000).amount_out);
    CHECK_THROWS_AS(p.swap_token("T9", 5000), Error);  // UnknownInToken
}

TEST_CASE("zero-fee swap preserves k exactly in rational mode") {
    RationalPool p;
    p.token0 = "A";
    p.token1 = "B";
    p.fees = FeeParams::no_fee();
    p.mint_initial(rational(9), rational(9));
    const rational k0 = p.k();
    // swapping a into the symmetric pool returns a*in/(a+in) exactly
    SwapResult<rational> res = p.swap(true, rational(9));
    CHECK(res.amount_out == rational(9) * 9 / 18);
    CHECK(p.k() == k0);
}

TEST_CASE("fee quote floors at the stated ratio") {
    FeeParams fees;  // 997/1000
    CHECK(quote_fee(bigint(1000), fees) == 3);
    CHECK(quote_fee(bigint(0), fees) == 0);
    CHECK(quote_fee(bigint(999), fees) == 2);  // floor(999 * 3 / 1000)
}

TEST_CASE("k never decreases across random integer swaps and grows strictly with fees") {
    Rng rng(202);
    for (int i = 0; i < 300; ++i) {
        Pool p = make_pool(0, 0, 0);
        p.mint_initial(rng.big(6, 18), rng.big(6, 18));
        const bigint k0 = p.k();
        const bool side = rng.coin();
        const bigint in = rng.big_below(side ? p.reserve0 : p.reserve1);
        try {
            p.swap(side, in);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::insufficient_output);
            continue;
        }
        CHECK(p.k() > k0);  // strict: r1 < 1 retains fees in the pool
    }
}

TEST_CASE("rational swaps preserve k exactly without fees and grow it with fees") {
    Rng rng(203);
    for (int i = 0; i < 100; ++i) {
        // perfect-square product so the rational pool can be seeded exactly
        const bigint c = rng.big(1, 6), d = rng.big(1, 6), e = rng.big(1, 6);
        RationalPool p;
        p.token0 = "A";
        p.token1 = "B";
        p.fees = FeeParams::no_fee();
        p.mint_initial(rational(c * d * d), rational(c * e * e));
        const rational k0 = p.k();
        p.swap(rng.coin(), rational(rng.big(1, 6)));
        CHECK(p.k() == k0);

        RationalPool q;
        q.token0 = "A";
        q.token1 = "B";
        q.mint_initial(rational(c * d * d), rational(c * e * e));  // 997/1000 fee
        const rational kq = q.k();
        q.swap(rng.coin(), rational(rng.big(1, 6)));
        CHECK(q.k() > kq);
    }
}

TEST_CASE("swap output is monotone in the input and bounded by the out-reserve") {
    Rng rng(204);
    for (int i = 0; i < 200; ++i) {
        Pool base = make_pool(0, 0, 0);
        base.mint_initial(rng.big(6, 15), rng.big(6, 15));
        bigint in1 = rng.big_below(base.reserve0);
        bigint in2 = rng.big_below(base.reserve0);
        if (in1 > in2) std::swap(in1, in2);
        Pool p1 = base, p2 = base;
        bigint out1 = 0, out2 = 0;
        try {
            out1 = p1.swap(true, in1).amount_out;
        } catch (const Error&) {
        }
        try {
            out2 = p2.swap(true, in2).amount_out;
        } catch (const Error&) {
        }
        CHECK(out1 <= out2);
        CHECK(out2 < base.reserve1);
    }
}

TEST_CASE("mint then burn returns at most the deposit, within the share-granularity bound") {
    Rng rng(205);
    for (int i = 0; i < 300; ++i) {
        Pool p = make_pool(0, 0, 0);
        p.mint_initial(rng.big(4, 15), rng.big(4, 15));
        const bigint a = p.reserve0, b = p.reserve1, supply = p.total_liquidity;

        const bigint amount0 = rng.big_below(a);
        bigint amount1 = (amount0 * b + a - 1) / a;  // ceil-proportional
        MintResult<bigint> minted;
        try {
            minted = p.mint(amount0, amount1);
        } catch (const Error&) {
            continue;
        }
        BurnResult<bigint> out = p.burn(minted.minted_liquidity, minted.minted_liquidity);
        CHECK(out.amount0 <= amount0);
        CHECK(out.amount1 <= amount1);
        // one share is worth about reserve/supply base units; each floor loses
        // at most a share's worth per side (the ceil on amount1 adds a unit of
        // slack on that side)
        const bigint deficit0 = amount0 - out.amount0;
        const bigint deficit1 = amount1 - out.amount1;
        CHECK(deficit0 * supply <= a + supply);
        CHECK(deficit1 * supply <= 2 * b + 3 * supply);
    }
}

TEST_CASE("mint then burn is exact in rational mode") {
    Rng rng(206);
    for (int i = 0; i < 100; ++i) {
        const bigint c = rng.big(1, 8), d = rng.big(1, 8), e = rng.big(1, 8);
        RationalPool p;
        p.token0 = "A";
        p.token1 = "B";
        p.mint_initial(rational(c * d * d), rational(c * e * e));
        const rational amount0 = rational(rng.big(1, 8));
        const rational amount1 = amount0 * p.reserve1 / p.reserve0;  // exactly proportional
        MintResult<rational> minted = p.mint(amount0, amount1);
        BurnResult<rational> out = p.burn(minted.minted_liquidity, minted.minted_liquidity);
        CHECK(out.amount0 == amount0);
        CHECK(out.amount1 == amount1);
    }
}
