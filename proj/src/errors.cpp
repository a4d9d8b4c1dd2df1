#include "poolscope/errors.hpp"

namespace poolscope {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::duplicate_tokens: return "DuplicateTokens";
        case Errc::pool_exists: return "PoolExists";
        case Errc::pool_not_empty: return "PoolNotEmpty";
        case Errc::empty_pool: return "EmptyPool";
        case Errc::zero_amount: return "ZeroAmount";
        case Errc::zero_liquidity_minted: return "ZeroLiquidityMinted";
        case Errc::insufficient_liquidity_balance: return "InsufficientLiquidityBalance";
        case Errc::insufficient_output: return "InsufficientOutput";
        case Errc::non_square: return "NonSquare";
        case Errc::malformed_record: return "MalformedRecord";
        case Errc::duplicate_key: return "DuplicateKey";
        case Errc::non_monotonic_timestamp: return "NonMonotonicTimestamp";
        case Errc::orphan_event: return "OrphanEvent";
        case Errc::negative_reserve: return "NegativeReserve";
        case Errc::unknown_in_token: return "UnknownInToken";
        case Errc::negative_balance: return "NegativeBalance";
        case Errc::unknown_pool: return "UnknownPool";
        case Errc::no_eth_pair: return "NoEthPair";
        case Errc::missing_sample: return "MissingSample";
        case Errc::non_positive_price: return "NonPositivePrice";
        case Errc::insufficient_data: return "InsufficientData";
        case Errc::insufficient_history: return "InsufficientHistory";
        case Errc::empty_input: return "EmptyInput";
        case Errc::degenerate_series: return "DegenerateSeries";
        case Errc::invalid_scenario: return "InvalidScenario";
        case Errc::io_error: return "IoError";
        case Errc::internal_error: return "InternalError";
    }
    return "UnknownError";
}

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::negative_reserve:
        case Errc::negative_balance:
        case Errc::internal_error:
            return 2;
        default:
            return 1;
    }
}

}  // namespace poolscope
