#include <doctest.h>

#include <cmath>

#include "poolscope/classify.hpp"
#include "poolscope/metrics.hpp"
#include "poolscope/pricing.hpp"
#include "poolscope/replay.hpp"
#include "poolscope/time_util.hpp"
#include "support.hpp"

using namespace poolscope;
using test::LogBuilder;
using test::Rng;

namespace {

// quote series with one row: reserves fixed, so prices are constant
PoolSnapshotSeries quote_series(const std::string& pool_id, const std::string& token0,
                                const std::string& token1, const bigint& r0, const bigint& r1) {
    PoolSnapshotSeries s;
    s.pool_id = pool_id;
    s.token0 = token0;
    s.token1 = token1;
    s.rows.push_back({EventKey{1, 0, 0, 0}, EventKind::mint, r0, r1, test::oracle_isqrt(r0 * r1)});
    return s;
}

}  // namespace

TEST_CASE("price feed is a step function") {
    PriceFeed feed;
    feed.points = {{100, 10.0}, {200, 20.0}};
    feed.validate();
    CHECK(feed.at(100) == 10.0);
    CHECK(feed.at(199) == 10.0);
    CHECK(feed.at(200) == 20.0);
    CHECK(feed.at(5000) == 20.0);
    CHECK_THROWS_AS(feed.at(99), Error);  // before the first observation

    PriceFeed bad;
    bad.points = {{100, 10.0}, {100, 11.0}};
    CHECK_THROWS_AS(bad.validate(), Error);  // ts must strictly increase
    PriceFeed neg;
    neg.points = {{100, -1.0}};
    CHECK_THROWS_AS(neg.validate(), Error);
}

TEST_CASE("token price in the numeraire comes from the quote-pool ratio") {
    std::map<std::string, PoolSnapshotSeries> pools;
    pools["T/WETH"] = quote_series("T/WETH", "T", "WETH", 2000, 1000);
    PoolDirectory dir;
    dir.add("T/WETH", {"T", "WETH", 18, 18});
    PriceFeed feed;
    feed.points = {{0, 100.0}};
    ValuationContext ctx(pools, dir, feed);

    CHECK(ctx.token_price_eth_ts("WETH", 50) == 1.0);  // the numeraire prices itself
    CHECK(ctx.token_price_eth_ts("T", 50) == 0.5);     // 1000 WETH / 2000 T
    CHECK(ctx.token_price_usd("T", 50) == 50.0);

    CHECK_THROWS_AS(ctx.token_price_eth_ts("UNKNOWN", 50), Error);  // NoEthPair
}

TEST_CASE("decimal scaling matches the hand-computed oracle") {
    // token with 6 decimals against an 18-decimal numeraire:
    // 3,000,000 base units of T (3.0 whole) vs 6e18 base units of WETH (6.0)
    std::map<std::string, PoolSnapshotSeries> pools;
    pools["T/WETH"] =
        quote_series("T/WETH", "T", "WETH", bigint(3000000), bigint("6000000000000000000"));
    PoolDirectory dir;
    dir.add("T/WETH", {"T", "WETH", 6, 18});
    PriceFeed feed;
    feed.points = {{0, 10.0}};
    ValuationContext ctx(pools, dir, feed);

    // oracle: (6e18 / 1e18) / (3e6 / 1e6) = 2 WETH per whole T
    const double expected = (6e18 / 1e18) / (3000000.0 / 1e6);
    CHECK(ctx.token_price_eth_ts("T", 5) == doctest::Approx(expected).epsilon(1e-12));
    // and a base-unit amount of T values through the same scaling
    CHECK(ctx.amount_usd("T", bigint(1500000), 5) ==
          doctest::Approx(1.5 * expected * 10.0).epsilon(1e-12));
}

TEST_CASE("empty quote pools cannot price") {
    std::map<std::string, PoolSnapshotSeries> pools;
    PoolSnapshotSeries s = quote_series("T/WETH", "T", "WETH", 10, 10);
    s.rows.push_back({EventKey{5, 0, 0, 600}, EventKind::burn, 0, 0, 0});
    pools["T/WETH"] = s;
    PoolDirectory dir;
    dir.add("T/WETH", {"T", "WETH", 18, 18});
    PriceFeed feed;
    feed.points = {{0, 100.0}};
    ValuationContext ctx(pools, dir, feed);

    CHECK(ctx.priceable("T", 300));
    CHECK_FALSE(ctx.priceable("T", 700));  // drained
    try {
        ctx.token_price_eth_ts("T", 700);
        FAIL("expected EmptyPool");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_pool);
    }
}

TEST_CASE("position value: invest equals hold at inception and after no price moves") {
    LogBuilder log(12, 0);
    log.created(1, "P");
    log.mint(2, "P", "a", bigint("1000000000000000000000"), bigint("500000000000000000000"));
    ReplayResult result = replay(log.events(), ReplayMode::derive, nullptr);

    // register the pool as its own quote pool for token P:0 priced in P:1;
    // simplest: both tokens priced through a separate deep static pool
    std::map<std::string, PoolSnapshotSeries> pools = result.pools;
    pools["X/WETH"] = quote_series("X/WETH", "P:0", "WETH", 1000, 2000);
    pools["Y/WETH"] = quote_series("Y/WETH", "P:1", "WETH", 1000, 1000);
    PoolDirectory dir;
    dir.add("P", {"P:0", "P:1", 18, 18});
    dir.add("X/WETH", {"P:0", "WETH", 18, 18});
    dir.add("Y/WETH", {"P:1", "WETH", 18, 18});
    PriceFeed feed;
    feed.points = {{0, 1000.0}};
    ValuationContext ctx(pools, dir, feed);

    const PoolSnapshotSeries& series = pools.at("P");
    const PoolSnapshot& inception = series.rows.back();
    PositionValue v0 =
        position_value_usd(ctx, series, inception.liquidity, inception, inception.liquidity, 24);
    CHECK(v0.invest_usd == doctest::Approx(v0.hold_usd).epsilon(1e-12));  // t2 == t1

    // later, with no trades and unchanged prices, the ratio is still 1
    PositionValue v1 = position_value_usd(ctx, series, inception.liquidity, inception,
                                          inception.liquidity, 86400);
    CHECK(v1.invest_usd == doctest::Approx(v1.hold_usd).epsilon(1e-12));
}

TEST_CASE("a fee-bearing swap pushes invest above hold") {
    LogBuilder log(12, 0);
    log.created(1, "P");
    log.mint(2, "P", "a", bigint("1000000000000"), bigint("1000000000000"));
    log.swap(7200, "P", "P:0", bigint("10000000000"));  // 1% of the reserve
    log.swap(7201, "P", "P:1", bigint("10000000000"));  // mirrored, restores the ratio
    ReplayResult result = replay(log.events());

    std::map<std::string, PoolSnapshotSeries> pools = result.pools;
    pools["X/WETH"] = quote_series("X/WETH", "P:0", "WETH", 1000, 1000);
    pools["Y/WETH"] = quote_series("Y/WETH", "P:1", "WETH", 1000, 1000);
    PoolDirectory dir;
    dir.add("P", {"P:0", "P:1", 18, 18});
    dir.add("X/WETH", {"P:0", "WETH", 18, 18});
    dir.add("Y/WETH", {"P:1", "WETH", 18, 18});
    PriceFeed feed;
    feed.points = {{0, 1000.0}};
    ValuationContext ctx(pools, dir, feed);

    ValuationSeries v = build_pool_valuation_series(ctx, pools.at("P"), 0, 2 * 86400);
    REQUIRE(!v.samples.empty());
    CHECK(v.samples.front().ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.samples.back().ratio > 1.0);  // fees accrued to the position
}

TEST_CASE("return_pct applies the ratio formula") {
    ValuationSeries v;
    v.samples = {{0, {}, 100.0, 100.0, 1.0},
                 {3600, {}, 102.0, 100.0, 1.02},
                 {7200, {}, 100.0, 125.0, 0.8},
                 {10800, {}, 125.0, 125.0, 1.0}};
    CHECK(return_pct(v, 0, 0 + 1) == doctest::Approx(0.0));  // flat interval
    CHECK(return_pct(v, 0, 3600) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(return_pct(v, 7200, 10800) == doctest::Approx(25.0).epsilon(1e-12));
    CHECK_THROWS_AS(return_pct(v, 3600, 3600), Error);   // needs t1 < t2
    ValuationSeries empty;
    CHECK_THROWS_AS(return_pct(empty, 0, 10), Error);  // MissingSample
}

TEST_CASE("fees_pct evaluates 100*(1 - sqrt(k1/k2)) per epoch") {
    // k unchanged -> 0
    LogBuilder flat(12, 0);
    flat.created(1, "P");
    flat.mint(2, "P", "a", 1000, 1000);
    ReplayResult r0 = replay(flat.events());
    CHECK(fees_pct(r0.pools.at("P"), 30, 1000) == doctest::Approx(0.0));

    // closed form: k goes 10^12 -> 1.0201 * 10^12, fees = 100 * (1 - 1/1.01)
    LogBuilder grown(12, 0);
    grown.created(1, "P");
    grown.mint(2, "P", "a", bigint(1000000), bigint(1000000));
    grown.sync(10, "P", bigint(1010000), bigint(1010000));  // k * 1.0201
    ReplayResult r1 = replay(grown.events(), ReplayMode::trust_sync);
    const double expected = 100.0 * (1.0 - 1.0 / 1.01);
    // sync is an epoch boundary, so measure across the swap-free reading
    PoolSnapshotSeries manual = r1.pools.at("P");
    manual.rows[2].kind = EventKind::swap;  // treat the jump as trading growth
    CHECK(fees_pct(manual, 30, 1000) == doctest::Approx(expected).epsilon(1e-12));

    // single swap: fees match 1 - sqrt(ab)/sqrt((a+da)(b-db)) from the
    // replayed reserves
    LogBuilder one(12, 0);
    one.created(1, "P");
    one.mint(2, "P", "a", bigint(1000000), bigint(1000000));
    one.swap(10, "P", "P:0", bigint(100000));
    ReplayResult r2 = replay(one.events());
    const PoolSnapshotSeries& series = r2.pools.at("P");
    const PoolSnapshot& before = series.rows[1];
    const PoolSnapshot& after = series.rows[2];
    const double oracle =
        100.0 * (1.0 - std::sqrt(to_double(rational(before.reserve0 * before.reserve1,
                                                    after.reserve0 * after.reserve1))));
    CHECK(fees_pct(series, before.key.ts, after.key.ts) ==
          doctest::Approx(oracle).epsilon(1e-15));
    CHECK(fees_pct(series, before.key.ts, after.key.ts) > 0.0);
}

TEST_CASE("fees compound per mint/burn-free epoch") {
    LogBuilder log(12, 0);
    log.created(1, "P");
    log.mint(2, "P", "a", bigint(1000000), bigint(1000000));
    log.swap(10, "P", "P:0", bigint(50000));
    log.mint(20, "P", "b", bigint(500000), bigint(500000));  // sqrt(k) jumps here
    log.swap(30, "P", "P:1", bigint(80000));
    ReplayResult r = replay(log.events());
    const PoolSnapshotSeries& s = r.pools.at("P");

    // manual per-epoch product over the same snapshots
    auto k_of = [&](std::size_t i) {
        return rational(s.rows[i].reserve0 * s.rows[i].reserve1);
    };
    const double factor = std::sqrt(to_double(k_of(1) / k_of(2))) *
                          std::sqrt(to_double(k_of(3) / k_of(4)));
    const double expected = 100.0 * (1.0 - factor);
    CHECK(fees_pct(s, s.rows[1].key.ts, s.rows[4].key.ts) ==
          doctest::Approx(expected).epsilon(1e-12));
    // the liquidity event itself contributes no fee
    CHECK(fees_pct(s, s.rows[2].key.ts, s.rows[3].key.ts) == doctest::Approx(0.0));
}

TEST_CASE("impermanent loss closed forms") {
    CHECK(impermanent_loss_pct(1.0, 1.0) == 0.0);
    CHECK(impermanent_loss_pct(1.0, 4.0) == doctest::Approx(-20.0).epsilon(1e-12));
    CHECK(impermanent_loss_pct(1.0, 100.0) ==
          doctest::Approx(100.0 * (20.0 / 101.0 - 1.0)).epsilon(1e-12));
    CHECK(impermanent_loss_pct(1.0, 100.0) == doctest::Approx(-80.198019801980198).epsilon(1e-12));
    CHECK_THROWS_AS(impermanent_loss_pct(0.0, 1.0), Error);
    CHECK_THROWS_AS(impermanent_loss_pct(1.0, -2.0), Error);

    Rng rng(42);
    for (int i = 0; i < 1000; ++i) {
        const double r = std::exp(rng.range(-8.0, 8.0));
        const double il = impermanent_loss_pct(1.0, r);
        CHECK(il <= 0.0);
        CHECK(il > -100.0);
        // ratio inversion leaves the loss unchanged
        CHECK(il == doctest::Approx(impermanent_loss_pct(1.0, 1.0 / r)).epsilon(1e-9));
        // scaling both endpoints cancels
        CHECK(impermanent_loss_pct(3.0, 3.0 * r) == doctest::Approx(il).epsilon(1e-9));
    }
}

TEST_CASE("daily returns use the mean of in-day ratio samples") {
    ValuationSeries v;
    for (int d = 0; d < 3; ++d)
        for (int h = 0; h < 24; ++h)
            v.samples.push_back(
                {static_cast<std::int64_t>(d) * 86400 + h * 3600, {}, 1.0, 1.0, 1.0});
    auto flat = daily_return_series(v);
    REQUIRE(flat.size() == 2);
    CHECK(flat[0].return_pct == 0.0);
    CHECK(flat[1].return_pct == 0.0);

    ValuationSeries step;
    for (int h = 0; h < 24; ++h) step.samples.push_back({h * 3600, {}, 1.0, 1.0, 1.0});
    for (int h = 0; h < 24; ++h)
        step.samples.push_back({86400 + h * 3600, {}, 1.01, 1.0, 1.01});
    auto up = daily_return_series(step);
    REQUIRE(up.size() == 1);
    CHECK(up[0].return_pct == doctest::Approx(1.0).epsilon(1e-12));

    ValuationSeries single;
    single.samples = {{0, {}, 1.0, 1.0, 1.0}};
    CHECK_THROWS_AS(daily_return_series(single), Error);  // InsufficientData
}

TEST_CASE("the in-day mean damps one-sample spikes relative to closing returns") {
    // day 0 flat at 1.0; day 1 flat at 1.0 except one spiked sample at 0.5
    ValuationSeries v;
    for (int h = 0; h < 24; ++h) v.samples.push_back({h * 3600, {}, 1.0, 1.0, 1.0});
    for (int h = 0; h < 24; ++h) {
        const double ratio = h == 23 ? 0.5 : 1.0;
        v.samples.push_back({86400 + h * 3600, {}, ratio, 1.0, ratio});
    }

    // brute-force both estimators
    const double mean_day1 = (23.0 * 1.0 + 0.5) / 24.0;
    const double average_estimator = 100.0 * (mean_day1 - 1.0) / 1.0;
    const double closing_estimator = 100.0 * (0.5 - 1.0) / 1.0;

    auto returns = daily_return_series(v);
    REQUIRE(returns.size() == 1);
    CHECK(returns[0].return_pct == doctest::Approx(average_estimator).epsilon(1e-12));
    CHECK(std::abs(returns[0].return_pct) < std::abs(closing_estimator));
}

TEST_CASE("cvar equals the sort-and-average oracle") {
    std::vector<double> one_to_twenty;
    for (int i = 1; i <= 20; ++i) one_to_twenty.push_back(static_cast<double>(i));
    CHECK(cvar(one_to_twenty, 0.05) == 1.0);  // ceil(0.05*20) = 1 worst value

    std::vector<double> constant(17, 3.25);
    CHECK(cvar(constant, 0.05) == 3.25);

    Rng rng(99);
    std::vector<double> planted;
    for (int i = 0; i < 38; ++i) planted.push_back(rng.range(0.0, 50.0));
    planted.push_back(-5.0);
    planted.push_back(-3.0);
    CHECK(cvar(planted, 0.05) == doctest::Approx(-4.0));  // ceil(2) = worst two

    const std::vector<double> no_returns;
    CHECK_THROWS_AS(cvar(no_returns, 0.05), Error);      // EmptyInput
    CHECK_THROWS_AS(cvar(one_to_twenty, 0.0), Error);   // level out of range
    CHECK_THROWS_AS(cvar(one_to_twenty, 1.0), Error);

    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.u64(1, 400));
        std::vector<double> xs;
        for (std::size_t i = 0; i < n; ++i) xs.push_back(rng.range(-30.0, 30.0));
        const double level = rng.range(0.01, 0.5);
        CHECK(cvar(xs, level) == test::oracle_cvar(xs, level));
        CHECK(cvar(xs, level) <= mean(xs));
    }
}

TEST_CASE("pearson correlation") {
    std::vector<double> x = {1, 2, 3, 4, 5, 6};
    std::vector<double> y;
    for (double v : x) y.push_back(2.0 * v + 1.0);
    CHECK(pearson(x, y) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> neg;
    for (double v : x) neg.push_back(-v);
    CHECK(pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-12));

    std::vector<double> constant(6, 2.0);
    CHECK_THROWS_AS(pearson(x, constant), Error);  // DegenerateSeries
    const std::vector<double> lone = {1.0};
    CHECK_THROWS_AS(pearson(x, lone), Error);

    // planted correlation: y = rho*x + sqrt(1-rho^2)*z on gaussians
    Rng rng(123);
    const double rho = 0.8;
    std::vector<double> gx, gy;
    for (int i = 0; i < 10000; ++i) {
        const double u1 = std::max(rng.u01(), 1e-12), u2 = rng.u01();
        const double z1 = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        const double z2 = std::sqrt(-2.0 * std::log(u1)) * std::sin(2.0 * M_PI * u2);
        gx.push_back(z1);
        gy.push_back(rho * z1 + std::sqrt(1.0 - rho * rho) * z2);
    }
    CHECK(std::abs(pearson(gx, gy) - rho) < 0.02);

    // symmetric in its arguments; scale/shift flips only with the sign:
    // pearson(a*x+b, y) = sign(a) * pearson(x, y)
    const double base = pearson(gx, gy);
    CHECK(pearson(gy, gx) == doctest::Approx(base).epsilon(1e-12));
    std::vector<double> scaled;
    for (double v : gx) scaled.push_back(-2.5 * v + 7.0);
    CHECK(pearson(scaled, gy) == doctest::Approx(-base).epsilon(1e-9));
}

TEST_CASE("pool classification thresholds") {
    ClassifyConfig cfg;  // stable vol < 1%/day, exotic range > 100x, 30 days
    Rng rng(5);

    std::vector<double> flat(40, 1.0);
    std::vector<double> flat2(40, 1.001);
    // listed pairs classify stable regardless of history length
    const std::vector<double> no_history;
    CHECK(classify_from_prices("USDC", "USDT", no_history, no_history, cfg).category ==
          PoolCategory::stable);
    CHECK(classify_from_prices("USDC", "USDT", flat, flat2, cfg).evidence.stable_listed);

    // both quiet but unlisted: stable by volatility
    std::vector<double> quiet0, quiet1;
    double p0 = 10.0, p1 = 5.0;
    for (int i = 0; i < 40; ++i) {
        quiet0.push_back(p0 *= 1.0 + rng.range(-0.002, 0.002));
        quiet1.push_back(p1 *= 1.0 + rng.range(-0.002, 0.002));
    }
    CHECK(classify_from_prices("AAA", "BBB", quiet0, quiet1, cfg).category ==
          PoolCategory::stable);

    // moderate drift and vol, range well under 100x: normal
    std::vector<double> drift;
    double p = 100.0;
    for (int i = 0; i < 40; ++i) drift.push_back(p *= 1.0 + rng.range(-0.02, 0.05));
    auto normal = classify_from_prices("AAA", "WETH", drift, drift, cfg);
    CHECK(normal.category == PoolCategory::normal);
    CHECK(normal.evidence.vol0_pct >= cfg.stable_daily_vol_pct);
    CHECK(normal.evidence.range0 < cfg.exotic_range_factor);

    // a collapse beyond 100x on either side: exotic
    std::vector<double> collapse;
    p = 50.0;
    for (int i = 0; i < 40; ++i) collapse.push_back(p *= 0.85);
    auto exotic = classify_from_prices("MOON", "WETH", collapse, drift, cfg);
    CHECK(exotic.category == PoolCategory::exotic);
    CHECK(exotic.evidence.range0 > cfg.exotic_range_factor);

    // short unlisted history: InsufficientHistory
    std::vector<double> short_history(5, 1.0);
    try {
        classify_from_prices("AAA", "BBB", short_history, short_history, cfg);
        FAIL("expected InsufficientHistory");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::insufficient_history);
    }
}

TEST_CASE("risk report ties the daily series to cvar and mean") {
    std::vector<DailyReturn> daily;
    Rng rng(8);
    for (int i = 0; i < 120; ++i) daily.push_back({i, rng.range(-2.0, 2.0)});
    RiskReport r = risk_report("P", daily, 0.05);
    CHECK(r.n_days == 120);
    CHECK(r.cvar_daily_pct <= r.mean_daily_return_pct);
    std::vector<double> raw;
    for (const auto& d : daily) raw.push_back(d.return_pct);
    CHECK(r.cvar_daily_pct == test::oracle_cvar(raw, 0.05));
}

TEST_CASE("return factor decomposes into fee factor times divergence factor") {
    // pool TOK/WETH valued through its own spot ratio: over any swap-only
    // interval, 1 + return/100 == sqrt(k2/k1) * (1 + IL/100) algebraically
    Rng rng(77);
    LogBuilder log(12, 0);
    log.created(1, "P");
    log.mint(2, "P", "seed", bigint("40000000000000000"), bigint("10000000000000000"));
    std::uint64_t block = 10;
    for (int i = 0; i < 60; ++i) {
        block += 97;
        const bool side = rng.coin();
        log.swap(block, "P", side ? "TOK" : "WETH", bigint(rng.u64(1, 40)) * 10000000000000ull);
    }
    PoolDirectory dir;
    dir.add("P", {"TOK", "WETH", 18, 18});
    PriceFeed feed;
    feed.points = {{0, 1700.0}};
    ReplayResult result = replay(log.events(), ReplayMode::derive, &dir);
    CHECK(result.warnings.empty());
    const PoolSnapshotSeries& series = result.pools.at("P");
    ValuationContext ctx(result.pools, dir, feed);
    ValuationSeries v = build_pool_valuation_series(ctx, series, 0, block * 12 + 12);
    REQUIRE(v.samples.size() > 10);

    const PoolSnapshot& first = series.rows[1];
    const double p0 = to_double(rational(first.reserve1, first.reserve0));
    for (std::size_t i = 2; i < series.rows.size(); i += 7) {
        const PoolSnapshot& snap = series.rows[i];
        const double ret = return_pct(v, first.key.ts, snap.key.ts);
        const double fee = fees_pct(series, first.key.ts, snap.key.ts);
        const double il = impermanent_loss_pct(
            p0, to_double(rational(snap.reserve1, snap.reserve0)));
        const double lhs = 1.0 + ret / 100.0;
        const double rhs = (1.0 / (1.0 - fee / 100.0)) * (1.0 + il / 100.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    }
}
