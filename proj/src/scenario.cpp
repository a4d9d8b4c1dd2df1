#include "poolscope/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "poolscope/amm.hpp"
#include "poolscope/csv.hpp"
#include "poolscope/time_util.hpp"

namespace poolscope {

namespace {

using nlohmann::json;

bigint pow10_big(unsigned exp) {
    bigint b = 1;
    for (unsigned i = 0; i < exp; ++i) b *= 10;
    return b;
}

bigint bigint_from_double(double v) {
    if (v < 1.0) return 0;
    return static_cast<bigint>(v);
}

// Portable uniform draws on top of the standard-specified mt19937_64 stream,
// so the same seed gives the same event bytes everywhere.
struct Rand {
    std::mt19937_64 rng;
    explicit Rand(std::uint64_t seed) : rng(seed) {}

    double u01() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * u01(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng() % n); }
    bool coin() { return (rng() & 1) != 0; }
    double normal() {
        double u1 = u01(), u2 = u01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
    }
};

PricePathSpec path_from_json(const json& j) {
    PricePathSpec p;
    if (j.contains("initial_usd")) p.initial_usd = j.at("initial_usd").get<double>();
    if (j.contains("drift_pct_per_day")) p.drift_pct_per_day = j.at("drift_pct_per_day").get<double>();
    if (j.contains("vol_pct_per_day")) p.vol_pct_per_day = j.at("vol_pct_per_day").get<double>();
    if (j.contains("jump_factor")) p.jump_factor = j.at("jump_factor").get<double>();
    if (j.contains("jump_day")) p.jump_day = j.at("jump_day").get<int>();
    return p;
}

json path_to_json(const PricePathSpec& p) {
    return json{{"initial_usd", p.initial_usd},
                {"drift_pct_per_day", p.drift_pct_per_day},
                {"vol_pct_per_day", p.vol_pct_per_day},
                {"jump_factor", p.jump_factor},
                {"jump_day", p.jump_day}};
}

FlowKind flow_from_string(const std::string& s) {
    if (s == "noise_arb") return FlowKind::noise_arb;
    if (s == "balanced") return FlowKind::balanced;
    throw Error(Errc::invalid_scenario, "unknown flow '" + s + "'");
}

// USD price per day, one value per day index [0, duration_days]
std::vector<double> build_price_path(const PricePathSpec& spec, std::uint32_t duration_days,
                                     Rand& rand) {
    std::vector<double> path;
    path.reserve(duration_days + 1);
    double p = spec.initial_usd;
    for (std::uint32_t d = 0; d <= duration_days; ++d) {
        if (static_cast<int>(d) == spec.jump_day) p *= spec.jump_factor;
        path.push_back(p);
        const double z = rand.normal();  // drawn even with vol 0 to keep streams aligned
        p *= (1.0 + spec.drift_pct_per_day / 100.0) *
             std::exp(spec.vol_pct_per_day / 100.0 * z);
    }
    return path;
}

}  // namespace

void SyntheticScenario::validate() const {
    if (duration_days == 0) throw Error(Errc::invalid_scenario, "duration_days must be >= 1");
    if (block_time_s == 0) throw Error(Errc::invalid_scenario, "block_time_s must be >= 1");
    if (numeraire.empty()) throw Error(Errc::invalid_scenario, "numeraire symbol empty");
    if (!(numeraire_usd.initial_usd > 0))
        throw Error(Errc::invalid_scenario, "numeraire price must be positive");
    std::set<std::string> symbols{numeraire};
    for (const TokenSpec& t : tokens) {
        if (t.symbol.empty()) throw Error(Errc::invalid_scenario, "token symbol empty");
        if (!symbols.insert(t.symbol).second)
            throw Error(Errc::invalid_scenario, "duplicate token " + t.symbol);
        if (!(t.usd_price.initial_usd > 0))
            throw Error(Errc::invalid_scenario, t.symbol + " price must be positive");
        if (t.decimals > 30) throw Error(Errc::invalid_scenario, "decimals out of range");
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const PoolSpec& p : pools) {
        if (p.token0 == p.token1) throw Error(Errc::invalid_scenario, "pool with equal tokens");
        if (!symbols.count(p.token0) || !symbols.count(p.token1))
            throw Error(Errc::invalid_scenario,
                        "pool references unknown token " + p.token0 + "/" + p.token1);
        if (!pairs.insert(canonical_pair(p.token0, p.token1)).second)
            throw Error(Errc::invalid_scenario, "duplicate pool " + p.token0 + "/" + p.token1);
        if (p.initial0 <= 0 || p.initial1 <= 0)
            throw Error(Errc::invalid_scenario, "pool initial reserves must be positive");
        if (!(p.swap_reserve_fraction > 0) || p.swap_reserve_fraction > 0.4)
            throw Error(Errc::invalid_scenario, "swap_reserve_fraction must be in (0, 0.4]");
        if ((p.mints_per_day || p.burns_per_day || p.transfers_per_day) && p.providers == 0)
            throw Error(Errc::invalid_scenario, "liquidity flow needs providers >= 1");
        if (!(p.liquidity_event_fraction > 0) || p.liquidity_event_fraction > 0.5)
            throw Error(Errc::invalid_scenario, "liquidity_event_fraction must be in (0, 0.5]");
    }
    if (!(quote_pool_numeraire_reserve > 0))
        throw Error(Errc::invalid_scenario, "quote_pool_numeraire_reserve must be positive");
}

SyntheticScenario SyntheticScenario::from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error(Errc::invalid_scenario, "scenario is not a JSON object");
    SyntheticScenario sc;
    if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("start_ts")) sc.start_ts = j.at("start_ts").get<std::int64_t>();
    if (j.contains("start_block")) sc.start_block = j.at("start_block").get<std::uint64_t>();
    if (j.contains("block_time_s")) sc.block_time_s = j.at("block_time_s").get<std::uint32_t>();
    if (j.contains("duration_days")) sc.duration_days = j.at("duration_days").get<std::uint32_t>();
    if (j.contains("numeraire")) sc.numeraire = j.at("numeraire").get<std::string>();
    if (j.contains("numeraire_usd")) sc.numeraire_usd = path_from_json(j.at("numeraire_usd"));
    if (j.contains("auto_quote_pools")) sc.auto_quote_pools = j.at("auto_quote_pools").get<bool>();
    if (j.contains("quote_pool_numeraire_reserve"))
        sc.quote_pool_numeraire_reserve = j.at("quote_pool_numeraire_reserve").get<double>();
    if (j.contains("tokens")) {
        for (const json& tj : j.at("tokens")) {
            TokenSpec t;
            t.symbol = tj.at("symbol").get<std::string>();
            if (tj.contains("decimals")) t.decimals = tj.at("decimals").get<unsigned>();
            if (tj.contains("usd_price")) t.usd_price = path_from_json(tj.at("usd_price"));
            sc.tokens.push_back(std::move(t));
        }
    }
    if (j.contains("pools")) {
        for (const json& pj : j.at("pools")) {
            PoolSpec p;
            p.token0 = pj.at("token0").get<std::string>();
            p.token1 = pj.at("token1").get<std::string>();
            p.initial0 = parse_bigint(pj.at("initial0").get<std::string>());
            p.initial1 = parse_bigint(pj.at("initial1").get<std::string>());
            if (pj.contains("flow")) p.flow = flow_from_string(pj.at("flow").get<std::string>());
            if (pj.contains("swaps_per_day")) p.swaps_per_day = pj.at("swaps_per_day").get<std::uint32_t>();
            if (pj.contains("swap_reserve_fraction"))
                p.swap_reserve_fraction = pj.at("swap_reserve_fraction").get<double>();
            if (pj.contains("mints_per_day")) p.mints_per_day = pj.at("mints_per_day").get<std::uint32_t>();
            if (pj.contains("burns_per_day")) p.burns_per_day = pj.at("burns_per_day").get<std::uint32_t>();
            if (pj.contains("liquidity_event_fraction"))
                p.liquidity_event_fraction = pj.at("liquidity_event_fraction").get<double>();
            if (pj.contains("providers")) p.providers = pj.at("providers").get<std::uint32_t>();
            if (pj.contains("transfers_per_day"))
                p.transfers_per_day = pj.at("transfers_per_day").get<std::uint32_t>();
            sc.pools.push_back(std::move(p));
        }
    }
    sc.validate();
    return sc;
}

SyntheticScenario SyntheticScenario::from_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open scenario " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string SyntheticScenario::to_json_text() const {
    json j;
    j["seed"] = seed;
    j["start_ts"] = start_ts;
    j["start_block"] = start_block;
    j["block_time_s"] = block_time_s;
    j["duration_days"] = duration_days;
    j["numeraire"] = numeraire;
    j["numeraire_usd"] = path_to_json(numeraire_usd);
    j["auto_quote_pools"] = auto_quote_pools;
    j["quote_pool_numeraire_reserve"] = quote_pool_numeraire_reserve;
    j["tokens"] = json::array();
    for (const TokenSpec& t : tokens) {
        j["tokens"].push_back(json{{"symbol", t.symbol},
                                   {"decimals", t.decimals},
                                   {"usd_price", path_to_json(t.usd_price)}});
    }
    j["pools"] = json::array();
    for (const PoolSpec& p : pools) {
        j["pools"].push_back(json{
            {"token0", p.token0},
            {"token1", p.token1},
            {"initial0", p.initial0.str()},
            {"initial1", p.initial1.str()},
            {"flow", p.flow == FlowKind::balanced ? "balanced" : "noise_arb"},
            {"swaps_per_day", p.swaps_per_day},
            {"swap_reserve_fraction", p.swap_reserve_fraction},
            {"mints_per_day", p.mints_per_day},
            {"burns_per_day", p.burns_per_day},
            {"liquidity_event_fraction", p.liquidity_event_fraction},
            {"providers", p.providers},
            {"transfers_per_day", p.transfers_per_day}});
    }
    return j.dump(2) + "\n";
}

namespace {

// Drives the real pool state machine and emits the corresponding events, so
// the log always replays to exactly the generator's final state.
class Generator {
  public:
    explicit Generator(const SyntheticScenario& sc) : sc_(sc), rand_(sc.seed) {}

    GeneratedData run() {
        build_prices();
        create_pools();
        for (std::uint32_t day = 0; day < sc_.duration_days; ++day) run_day(day);
        return finish();
    }

  private:
    struct LivePool {
        std::string id;
        Pool* pool = nullptr;
        const PoolSpec* spec = nullptr;  // null for auto quote pools
        unsigned decimals0 = 18;
        unsigned decimals1 = 18;
        std::map<std::string, bigint> balances;  // provider -> liquidity tokens
    };

    struct Pending {
        std::uint64_t block;
        std::uint64_t seq;
        Event event;
    };

    const SyntheticScenario& sc_;
    Rand rand_;
    PoolRegistry registry_;
    std::vector<LivePool> live_;
    std::map<std::string, std::vector<double>> price_usd_;  // symbol -> per-day path
    std::map<std::string, unsigned> decimals_;
    std::vector<Pending> pending_;
    std::uint64_t seq_ = 0;
    std::uint64_t blocks_per_day_ = 0;

    double price_usd(const std::string& symbol, std::uint32_t day) const {
        return price_usd_.at(symbol)[day];
    }

    std::int64_t ts_of_block(std::uint64_t block) const {
        return sc_.start_ts +
               static_cast<std::int64_t>(block - sc_.start_block) * sc_.block_time_s;
    }

    Event base_event(std::uint64_t block, const std::string& pool_id, EventKind kind) {
        Event ev;
        ev.key.block = block;
        ev.key.ts = ts_of_block(block);
        ev.pool = pool_id;
        ev.kind = kind;
        return ev;
    }

    void emit(std::uint64_t block, Event ev) { pending_.push_back({block, seq_++, std::move(ev)}); }

    void build_prices() {
        blocks_per_day_ = std::max<std::uint64_t>(1, kSecondsPerDay / sc_.block_time_s);
        price_usd_[sc_.numeraire] = build_price_path(sc_.numeraire_usd, sc_.duration_days, rand_);
        decimals_[sc_.numeraire] = 18;
        for (const TokenSpec& t : sc_.tokens) {
            price_usd_[t.symbol] = build_price_path(t.usd_price, sc_.duration_days, rand_);
            decimals_[t.symbol] = t.decimals;
        }
    }

    void create_main_pool(const PoolSpec& spec, std::uint64_t block) {
        Pool& pool = registry_.create_pool(spec.token0, spec.token1);
        LivePool lp;
        lp.id = pool.pool_id;
        lp.pool = &pool;
        lp.spec = &spec;
        lp.decimals0 = decimals_.at(pool.token0);
        lp.decimals1 = decimals_.at(pool.token1);

        emit(block, base_event(block, lp.id, EventKind::pool_created));

        // canonical ordering may have swapped the sides relative to PoolSpec
        const bigint& init0 = pool.token0 == spec.token0 ? spec.initial0 : spec.initial1;
        const bigint& init1 = pool.token0 == spec.token0 ? spec.initial1 : spec.initial0;
        MintResult<bigint> res = pool.mint_initial(init0, init1);
        const std::string provider = "lp0";
        lp.balances[provider] += res.minted_liquidity;
        Event mint = base_event(block, lp.id, EventKind::mint);
        mint.actor = provider;
        mint.amount0 = init0;
        mint.amount1 = init1;
        emit(block, std::move(mint));
        live_.push_back(std::move(lp));
    }

    void create_quote_pool(const std::string& token, std::uint64_t block) {
        Pool& pool = registry_.create_pool(token, sc_.numeraire);
        LivePool lp;
        lp.id = pool.pool_id;
        lp.pool = &pool;
        lp.decimals0 = decimals_.at(pool.token0);
        lp.decimals1 = decimals_.at(pool.token1);

        emit(block, base_event(block, lp.id, EventKind::pool_created));

        const double numeraire_whole = sc_.quote_pool_numeraire_reserve;
        const double token_whole =
            numeraire_whole * price_usd(sc_.numeraire, 0) / price_usd(token, 0);
        bigint numeraire_base =
            bigint_from_double(numeraire_whole) * pow10_big(decimals_.at(sc_.numeraire));
        bigint token_base = bigint_from_double(token_whole * std::pow(10.0, decimals_.at(token)));
        if (token_base <= 0) token_base = 1;
        const bigint& init0 = pool.token0 == token ? token_base : numeraire_base;
        const bigint& init1 = pool.token0 == token ? numeraire_base : token_base;
        MintResult<bigint> res = pool.mint_initial(init0, init1);
        const std::string provider = "mm";
        lp.balances[provider] += res.minted_liquidity;
        Event mint = base_event(block, lp.id, EventKind::mint);
        mint.actor = provider;
        mint.amount0 = init0;
        mint.amount1 = init1;
        emit(block, std::move(mint));
        live_.push_back(std::move(lp));
    }

    void create_pools() {
        const std::uint64_t block = sc_.start_block;
        for (const PoolSpec& spec : sc_.pools) create_main_pool(spec, block);
        if (sc_.auto_quote_pools) {
            for (const TokenSpec& t : sc_.tokens) {
                if (registry_.has_pair(t.symbol, sc_.numeraire)) continue;
                create_quote_pool(t.symbol, block);
            }
        }
    }

    // target reserve1/reserve0 implied by external prices
    double target_raw_ratio(const LivePool& lp, std::uint32_t day) const {
        const double p0 = price_usd(lp.pool->token0, day);
        const double p1 = price_usd(lp.pool->token1, day);
        // whole-unit price ratio, rescaled to base units
        return p0 / p1 * std::pow(10.0, static_cast<int>(lp.decimals1) -
                                            static_cast<int>(lp.decimals0));
    }

    void emit_swap(LivePool& lp, std::uint64_t block, bool zero_for_one, const bigint& amount_in,
                   const std::string& actor) {
        if (amount_in <= 0) return;
        SwapResult<bigint> res;
        try {
            res = lp.pool->swap(zero_for_one, amount_in);
        } catch (const Error&) {
            return;  // dust trade or drained pool; skip the slot
        }
        Event ev = base_event(block, lp.id, EventKind::swap);
        ev.actor = actor;
        ev.in_token = zero_for_one ? lp.pool->token0 : lp.pool->token1;
        ev.amount_in = amount_in;
        ev.amount_out = res.amount_out;
        emit(block, std::move(ev));
    }

    // closed-form input that moves the reserve ratio to the target, given the
    // input-side fee discount
    void arbitrage(LivePool& lp, std::uint64_t block, std::uint32_t day) {
        const double r0 = to_double(lp.pool->reserve0);
        const double r1 = to_double(lp.pool->reserve1);
        if (r0 <= 0 || r1 <= 0) return;
        const double target = target_raw_ratio(lp, day);
        const double current = r1 / r0;
        const double gamma = static_cast<double>(lp.pool->fees.r1_num) /
                             static_cast<double>(lp.pool->fees.r1_den);
        // inside the fee band there is no profitable arbitrage
        if (std::abs(current / target - 1.0) < 2.0 * (1.0 - gamma) + 1e-6) return;

        bool zero_for_one;
        double reserve_in, k_scaled;
        if (current > target) {
            // ratio must fall: sell token0 into the pool
            zero_for_one = true;
            reserve_in = r0;
            k_scaled = r0 * r1 / target;
        } else {
            zero_for_one = false;
            reserve_in = r1;
            k_scaled = r0 * r1 * target;
        }
        const double a = gamma;
        const double b = reserve_in * (1.0 + gamma);
        const double c = reserve_in * reserve_in - k_scaled;
        const double disc = b * b - 4.0 * a * c;
        if (disc <= 0) return;
        const double delta = (-b + std::sqrt(disc)) / (2.0 * a);
        if (!(delta > 0)) return;
        emit_swap(lp, block, zero_for_one, bigint_from_double(delta), "arb");
    }

    void noise_trade(LivePool& lp, std::uint64_t block) {
        const bool zero_for_one = rand_.coin();
        const bigint& reserve_in = zero_for_one ? lp.pool->reserve0 : lp.pool->reserve1;
        const double size =
            to_double(reserve_in) * lp.spec->swap_reserve_fraction * rand_.range(0.5, 1.5);
        emit_swap(lp, block, zero_for_one, bigint_from_double(size),
                  "trader" + std::to_string(rand_.index(8)));
    }

    // mirrored in/out pair: accrues fees while keeping the ratio pinned
    void balanced_trade(LivePool& lp, std::uint64_t block) {
        const double size = to_double(lp.pool->reserve0) * lp.spec->swap_reserve_fraction *
                            rand_.range(0.9, 1.1);
        const bigint amount = bigint_from_double(size);
        emit_swap(lp, block, true, amount, "trader0");
        emit_swap(lp, block, false, amount, "trader1");
    }

    std::string provider_name(const LivePool& lp, std::size_t i) const {
        (void)lp;
        return "lp" + std::to_string(i);
    }

    void random_mint(LivePool& lp, std::uint64_t block) {
        const std::string provider = provider_name(lp, rand_.index(lp.spec->providers));
        const double f = lp.spec->liquidity_event_fraction * rand_.range(0.5, 1.5);
        bigint amount0 = bigint_from_double(to_double(lp.pool->reserve0) * f);
        if (amount0 <= 0) return;
        // proportional counterpart, rounded up so the token0 side binds
        bigint amount1 = (amount0 * lp.pool->reserve1 + lp.pool->reserve0 - 1) / lp.pool->reserve0;
        if (amount1 <= 0) return;
        MintResult<bigint> res;
        try {
            res = lp.pool->mint(amount0, amount1);
        } catch (const Error&) {
            return;
        }
        lp.balances[provider] += res.minted_liquidity;
        Event ev = base_event(block, lp.id, EventKind::mint);
        ev.actor = provider;
        ev.amount0 = amount0;
        ev.amount1 = amount1;
        emit(block, std::move(ev));
    }

    void random_burn(LivePool& lp, std::uint64_t block) {
        // pick a funded provider, keeping the initial provider's floor so the
        // pool never fully drains mid-scenario
        std::vector<std::pair<const std::string*, const bigint*>> funded;
        for (const auto& [addr, bal] : lp.balances)
            if (bal > 0) funded.emplace_back(&addr, &bal);
        if (funded.empty()) return;
        const auto& [addr, bal] = funded[rand_.index(funded.size())];
        bigint amount = bigint_from_double(to_double(*bal) * lp.spec->liquidity_event_fraction *
                                           rand_.range(0.5, 1.5));
        if (amount <= 0) amount = 1;
        if (amount > *bal) amount = *bal;
        BurnResult<bigint> res;
        try {
            res = lp.pool->burn(amount, *bal);
        } catch (const Error&) {
            return;
        }
        Event ev = base_event(block, lp.id, EventKind::burn);
        ev.actor = *addr;
        ev.amount0 = res.amount0;
        ev.amount1 = res.amount1;
        ev.liquidity = amount;
        ev.has_liquidity = true;
        lp.balances[*addr] -= amount;
        emit(block, std::move(ev));
    }

    void random_transfer(LivePool& lp, std::uint64_t block) {
        if (lp.spec->providers < 2) return;
        std::vector<std::pair<const std::string*, const bigint*>> funded;
        for (const auto& [addr, bal] : lp.balances)
            if (bal > 0) funded.emplace_back(&addr, &bal);
        if (funded.empty()) return;
        const auto& [from, bal] = funded[rand_.index(funded.size())];
        std::string to = provider_name(lp, rand_.index(lp.spec->providers));
        if (to == *from) return;
        bigint amount = bigint_from_double(to_double(*bal) * rand_.range(0.1, 0.5));
        if (amount <= 0 || amount > *bal) return;
        Event ev = base_event(block, lp.id, EventKind::transfer);
        ev.from = *from;
        ev.to = to;
        ev.liquidity = amount;
        ev.has_liquidity = true;
        lp.balances[to] += amount;
        lp.balances[ev.from] -= amount;
        emit(block, std::move(ev));
    }

    void run_day(std::uint32_t day) {
        const std::uint64_t day_start = sc_.start_block + 1 + day * blocks_per_day_;

        // quote pools track the day's external prices
        for (LivePool& lp : live_) {
            if (!lp.spec) arbitrage(lp, day_start, day);
        }

        for (LivePool& lp : live_) {
            if (!lp.spec) continue;
            const PoolSpec& spec = *lp.spec;
            const std::uint32_t slots =
                spec.swaps_per_day + spec.mints_per_day + spec.burns_per_day +
                spec.transfers_per_day;
            if (slots == 0) continue;

            // deterministic schedule: kind sequence mixed round-robin
            std::vector<int> kinds;
            kinds.reserve(slots);
            for (std::uint32_t i = 0; i < spec.swaps_per_day; ++i) kinds.push_back(0);
            for (std::uint32_t i = 0; i < spec.mints_per_day; ++i) kinds.push_back(1);
            for (std::uint32_t i = 0; i < spec.burns_per_day; ++i) kinds.push_back(2);
            for (std::uint32_t i = 0; i < spec.transfers_per_day; ++i) kinds.push_back(3);
            for (std::size_t i = kinds.size(); i > 1; --i)
                std::swap(kinds[i - 1], kinds[rand_.index(i)]);

            for (std::uint32_t s = 0; s < slots; ++s) {
                const std::uint64_t block =
                    day_start + 1 +
                    static_cast<std::uint64_t>((static_cast<double>(s) + 0.5) /
                                               static_cast<double>(slots) *
                                               static_cast<double>(blocks_per_day_ - 2));
                switch (kinds[s]) {
                    case 0:
                        if (spec.flow == FlowKind::balanced)
                            balanced_trade(lp, block);
                        else {
                            noise_trade(lp, block);
                            arbitrage(lp, block, day);
                        }
                        break;
                    case 1: random_mint(lp, block); break;
                    case 2: random_burn(lp, block); break;
                    case 3: random_transfer(lp, block); break;
                }
            }
        }
    }

    GeneratedData finish() {
        // assign tx indices: stable block order, emission order within a block
        std::stable_sort(pending_.begin(), pending_.end(), [](const Pending& a, const Pending& b) {
            return a.block != b.block ? a.block < b.block : a.seq < b.seq;
        });
        GeneratedData out;
        out.events.reserve(pending_.size());
        std::uint64_t cur_block = 0;
        std::uint32_t tx = 0;
        for (Pending& p : pending_) {
            if (out.events.empty() || p.block != cur_block) {
                cur_block = p.block;
                tx = 0;
            }
            p.event.key.tx_index = tx++;
            p.event.key.log_index = 0;
            out.events.push_back(std::move(p.event));
        }

        for (std::uint32_t d = 0; d <= sc_.duration_days; ++d) {
            out.numeraire_usd.points.emplace_back(
                sc_.start_ts + static_cast<std::int64_t>(d) * kSecondsPerDay,
                price_usd(sc_.numeraire, d));
        }

        for (const auto& [pool_id, pool] : registry_.pools()) {
            PairInfo info;
            info.token0 = pool.token0;
            info.token1 = pool.token1;
            info.decimals0 = decimals_.at(pool.token0);
            info.decimals1 = decimals_.at(pool.token1);
            out.directory.add(pool_id, std::move(info));
        }
        return out;
    }
};

}  // namespace

GeneratedData generate_scenario(const SyntheticScenario& scenario) {
    scenario.validate();
    return Generator(scenario).run();
}

SyntheticScenario demo_scenario() {
    SyntheticScenario sc;
    sc.seed = 42;
    sc.duration_days = 14;
    sc.numeraire_usd = {1000.0, 0.1, 1.0, 1.0, -1};
    sc.tokens = {
        {"ALPHA", 18, {5.0, 0.5, 3.0, 1.0, -1}},
        {"BETA", 6, {1.0, 0.0, 0.05, 1.0, -1}},
        {"GAMMA", 18, {0.02, -1.0, 6.0, 1.0, -1}},
    };
    PoolSpec ab;
    ab.token0 = "ALPHA";
    ab.token1 = "BETA";
    ab.initial0 = bigint("200000") * pow10_big(18);
    ab.initial1 = bigint("1000000") * pow10_big(6);
    ab.swaps_per_day = 40;
    ab.swap_reserve_fraction = 0.002;
    ab.mints_per_day = 4;
    ab.burns_per_day = 2;
    ab.transfers_per_day = 1;
    ab.providers = 6;
    PoolSpec gw;
    gw.token0 = "GAMMA";
    gw.token1 = "WETH";
    gw.initial0 = bigint("5000000") * pow10_big(18);
    gw.initial1 = bigint("100") * pow10_big(18);
    gw.swaps_per_day = 30;
    gw.swap_reserve_fraction = 0.004;
    gw.mints_per_day = 3;
    gw.burns_per_day = 3;
    gw.providers = 6;
    sc.pools = {ab, gw};
    return sc;
}

SyntheticScenario stable_scenario() {
    SyntheticScenario sc;
    sc.seed = 7;
    sc.duration_days = 30;
    sc.numeraire_usd = {1000.0, 0.0, 0.0, 1.0, -1};
    sc.tokens = {
        {"USDX", 6, {1.0, 0.0, 0.0, 1.0, -1}},
        {"USDY", 6, {1.0, 0.0, 0.0, 1.0, -1}},
    };
    PoolSpec p;
    p.token0 = "USDX";
    p.token1 = "USDY";
    p.initial0 = bigint("1000000") * pow10_big(6);  // 1M whole units a side
    p.initial1 = bigint("1000000") * pow10_big(6);
    p.flow = FlowKind::balanced;
    p.swaps_per_day = 48;
    p.swap_reserve_fraction = 3e-5;
    p.providers = 1;
    sc.pools = {p};
    return sc;
}

SyntheticScenario exotic_scenario() {
    SyntheticScenario sc;
    sc.seed = 11;
    sc.duration_days = 30;
    sc.numeraire_usd = {1000.0, 0.0, 0.0, 1.0, -1};
    sc.tokens = {
        {"MOONX", 18, {0.1, 0.0, 0.0, 0.01, 15}},  // one-day 100x collapse
    };
    PoolSpec p;
    p.token0 = "MOONX";
    p.token1 = "WETH";
    p.initial0 = bigint("1000000") * pow10_big(18);
    p.initial1 = bigint("100") * pow10_big(18);
    p.swaps_per_day = 48;
    p.swap_reserve_fraction = 0.001;
    p.providers = 2;
    sc.pools = {p};
    sc.auto_quote_pools = false;  // the pool itself is the quote pool
    return sc;
}

SyntheticScenario large_scenario(std::uint64_t approx_events) {
    SyntheticScenario sc;
    sc.seed = 42;
    sc.duration_days = 30;
    sc.numeraire_usd = {1000.0, 0.05, 1.5, 1.0, -1};
    const std::size_t n_tokens = 8;
    for (std::size_t i = 0; i < n_tokens; ++i) {
        TokenSpec t;
        t.symbol = "TOK" + std::to_string(i);
        t.decimals = i % 2 == 0 ? 18 : 6;
        t.usd_price = {1.0 + static_cast<double>(i), 0.1, 2.0, 1.0, -1};
        sc.tokens.push_back(std::move(t));
    }
    // balanced flow emits exactly two swap events per slot
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < n_tokens; ++i)
        pairs.emplace_back("TOK" + std::to_string(i),
                           i + 1 < n_tokens ? "TOK" + std::to_string(i + 1) : "WETH");
    for (std::size_t i = 0; i + 1 < n_tokens; i += 2)
        pairs.emplace_back("TOK" + std::to_string(i), "WETH");

    // balanced slots emit two events each; mints/burns add six more per
    // pool-day, so this lands slightly above the requested count
    const std::uint64_t budget = approx_events / (sc.duration_days * pairs.size());
    const std::uint32_t slots = static_cast<std::uint32_t>(budget / 2 + 10);
    for (auto& [t0, t1] : pairs) {
        PoolSpec p;
        p.token0 = t0;
        p.token1 = t1;
        p.initial0 = bigint("1000000") * pow10_big(18);
        p.initial1 = bigint("1000000") * pow10_big(18);
        p.flow = FlowKind::balanced;
        p.swaps_per_day = slots;
        p.swap_reserve_fraction = 1e-4;
        p.mints_per_day = 4;
        p.burns_per_day = 2;
        p.providers = 16;
        sc.pools.push_back(std::move(p));
    }
    return sc;
}

}  // namespace poolscope
