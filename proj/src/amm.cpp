#include "poolscope/amm.hpp"

namespace poolscope {

Pool& PoolRegistry::create_pool(const std::string& token_a, const std::string& token_b,
                                const FeeParams& fees) {
    auto pair = canonical_pair(token_a, token_b);
    return create_pool_with_id(pair.first + "/" + pair.second, token_a, token_b, fees);
}

Pool& PoolRegistry::create_pool_with_id(const std::string& pool_id, const std::string& token_a,
                                        const std::string& token_b, const FeeParams& fees) {
    fees.validate();
    auto pair = canonical_pair(token_a, token_b);
    if (pairs_.count(pair) || pools_.count(pool_id))
        throw Error(Errc::pool_exists, pair.first + "/" + pair.second);
    Pool pool;
    pool.pool_id = pool_id;
    pool.token0 = pair.first;
    pool.token1 = pair.second;
    pool.fees = fees;
    pairs_.insert(pair);
    return pools_.emplace(pool_id, std::move(pool)).first->second;
}

Pool* PoolRegistry::find(const std::string& pool_id) {
    auto it = pools_.find(pool_id);
    return it == pools_.end() ? nullptr : &it->second;
}

const Pool* PoolRegistry::find(const std::string& pool_id) const {
    auto it = pools_.find(pool_id);
    return it == pools_.end() ? nullptr : &it->second;
}

Pool& PoolRegistry::get(const std::string& pool_id) {
    if (Pool* p = find(pool_id)) return *p;
    throw Error(Errc::unknown_pool, pool_id);
}

bool PoolRegistry::has_pair(const std::string& token_a, const std::string& token_b) const {
    return pairs_.count(canonical_pair(token_a, token_b)) != 0;
}

}  // namespace poolscope
