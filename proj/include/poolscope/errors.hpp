#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace poolscope {

enum class Errc {
    // pool state machine
    duplicate_tokens,
    pool_exists,
    pool_not_empty,
    empty_pool,
    zero_amount,
    zero_liquidity_minted,
    insufficient_liquidity_balance,
    insufficient_output,
    non_square,
    // event log / replay
    malformed_record,
    duplicate_key,
    non_monotonic_timestamp,
    orphan_event,
    negative_reserve,
    unknown_in_token,
    // ledger
    negative_balance,
    unknown_pool,
    // valuation & metrics
    no_eth_pair,
    missing_sample,
    non_positive_price,
    insufficient_data,
    insufficient_history,
    empty_input,
    degenerate_series,
    // cli / scenario
    invalid_scenario,
    io_error,
    internal_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
  public:
    Error(Errc code, std::string message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + std::move(message)),
          code_(code) {}

    Error(Errc code, std::string message, std::uint64_t line)
        : std::runtime_error(std::string(errc_name(code)) + " at line " + std::to_string(line) +
                             ": " + std::move(message)),
          code_(code),
          line_(line) {}

    Errc code() const { return code_; }
    std::uint64_t line() const { return line_; }

  private:
    Errc code_;
    std::uint64_t line_ = 0;
};

// Exit-code contract used by the CLI: 0 ok, 1 bad input, 2 broken internal invariant.
int exit_code_for(Errc code);

}  // namespace poolscope
