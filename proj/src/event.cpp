#include "poolscope/event.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

#include "poolscope/csv.hpp"
#include "poolscope/errors.hpp"

namespace poolscope {

namespace {

using nlohmann::json;

EventKind kind_from_string(const std::string& s, std::uint64_t line) {
    if (s == "PoolCreated") return EventKind::pool_created;
    if (s == "Mint") return EventKind::mint;
    if (s == "Burn") return EventKind::burn;
    if (s == "Swap") return EventKind::swap;
    if (s == "Transfer") return EventKind::transfer;
    if (s == "Sync") return EventKind::sync;
    throw Error(Errc::malformed_record, "unknown kind '" + s + "'", line);
}

std::uint64_t get_uint(const json& j, const char* field, std::uint64_t line) {
    auto it = j.find(field);
    if (it == j.end())
        throw Error(Errc::malformed_record, std::string("missing field '") + field + "'", line);
    if (it->is_number_unsigned()) return it->get<std::uint64_t>();
    throw Error(Errc::malformed_record, std::string("field '") + field + "' must be unsigned",
                line);
}

std::int64_t get_int(const json& j, const char* field, std::uint64_t line) {
    auto it = j.find(field);
    if (it == j.end())
        throw Error(Errc::malformed_record, std::string("missing field '") + field + "'", line);
    if (it->is_number_integer()) return it->get<std::int64_t>();
    throw Error(Errc::malformed_record, std::string("field '") + field + "' must be an integer",
                line);
}

std::string get_string(const json& j, const char* field, std::uint64_t line) {
    auto it = j.find(field);
    if (it == j.end())
        throw Error(Errc::malformed_record, std::string("missing field '") + field + "'", line);
    if (!it->is_string())
        throw Error(Errc::malformed_record, std::string("field '") + field + "' must be a string",
                    line);
    return it->get<std::string>();
}

// Amounts may be decimal strings (lossless for wide values) or JSON unsigned
// integers.
bigint get_amount(const json& j, const char* field, std::uint64_t line) {
    auto it = j.find(field);
    if (it == j.end())
        throw Error(Errc::malformed_record, std::string("missing field '") + field + "'", line);
    if (it->is_string()) {
        try {
            return parse_bigint(it->get<std::string>());
        } catch (const Error& e) {
            throw Error(Errc::malformed_record, e.what(), line);
        }
    }
    if (it->is_number_unsigned()) return bigint(it->get<std::uint64_t>());
    throw Error(Errc::malformed_record,
                std::string("field '") + field + "' must be a nonnegative integer or string", line);
}

}  // namespace

std::string EventKey::to_string() const {
    std::ostringstream os;
    os << block << ':' << tx_index << ':' << log_index;
    return os.str();
}

const char* event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::pool_created: return "PoolCreated";
        case EventKind::mint: return "Mint";
        case EventKind::burn: return "Burn";
        case EventKind::swap: return "Swap";
        case EventKind::transfer: return "Transfer";
        case EventKind::sync: return "Sync";
    }
    return "?";
}

bool is_zero_address(const std::string& addr) {
    if (addr == "0" || addr == "0x0") return true;
    if (addr.size() > 2 && addr[0] == '0' && addr[1] == 'x') {
        return std::all_of(addr.begin() + 2, addr.end(), [](char c) { return c == '0'; });
    }
    return false;
}

std::string Event::to_json_line() const {
    // Hand-rolled for speed and stable field order; parsing uses a real JSON
    // parser.
    std::ostringstream os;
    os << "{\"block\":" << key.block << ",\"tx_index\":" << key.tx_index
       << ",\"log_index\":" << key.log_index << ",\"ts\":" << key.ts << ",\"pool\":\"" << pool
       << "\",\"kind\":\"" << event_kind_name(kind) << "\"";
    if (!actor.empty()) os << ",\"actor\":\"" << actor << "\"";
    switch (kind) {
        case EventKind::pool_created:
            break;
        case EventKind::mint:
            os << ",\"amount0\":\"" << amount0.str() << "\",\"amount1\":\"" << amount1.str()
               << "\"";
            if (has_liquidity) os << ",\"liquidity\":\"" << liquidity.str() << "\"";
            break;
        case EventKind::burn:
            os << ",\"amount0\":\"" << amount0.str() << "\",\"amount1\":\"" << amount1.str()
               << "\",\"liquidity\":\"" << liquidity.str() << "\"";
            break;
        case EventKind::swap:
            os << ",\"in_token\":\"" << in_token << "\",\"amount_in\":\"" << amount_in.str()
               << "\",\"amount_out\":\"" << amount_out.str() << "\"";
            break;
        case EventKind::transfer:
            os << ",\"from\":\"" << from << "\",\"to\":\"" << to << "\",\"liquidity\":\""
               << liquidity.str() << "\"";
            break;
        case EventKind::sync:
            os << ",\"reserve0\":\"" << reserve0.str() << "\",\"reserve1\":\"" << reserve1.str()
               << "\"";
            break;
    }
    os << "}";
    return os.str();
}

std::vector<Event> parse_event_log(std::istream& in) {
    std::vector<Event> events;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw Error(Errc::malformed_record, "not a JSON object", line_no);

        Event ev;
        ev.key.block = get_uint(j, "block", line_no);
        ev.key.tx_index = static_cast<std::uint32_t>(get_uint(j, "tx_index", line_no));
        ev.key.log_index = static_cast<std::uint32_t>(get_uint(j, "log_index", line_no));
        ev.key.ts = get_int(j, "ts", line_no);
        ev.pool = get_string(j, "pool", line_no);
        ev.kind = kind_from_string(get_string(j, "kind", line_no), line_no);
        if (j.contains("actor")) ev.actor = get_string(j, "actor", line_no);

        switch (ev.kind) {
            case EventKind::pool_created:
                break;
            case EventKind::mint:
                ev.amount0 = get_amount(j, "amount0", line_no);
                ev.amount1 = get_amount(j, "amount1", line_no);
                if (j.contains("liquidity")) {
                    ev.liquidity = get_amount(j, "liquidity", line_no);
                    ev.has_liquidity = true;
                }
                if (ev.actor.empty())
                    throw Error(Errc::malformed_record, "Mint requires actor", line_no);
                break;
            case EventKind::burn:
                if (j.contains("amount0")) ev.amount0 = get_amount(j, "amount0", line_no);
                if (j.contains("amount1")) ev.amount1 = get_amount(j, "amount1", line_no);
                ev.liquidity = get_amount(j, "liquidity", line_no);
                ev.has_liquidity = true;
                if (ev.actor.empty())
                    throw Error(Errc::malformed_record, "Burn requires actor", line_no);
                break;
            case EventKind::swap:
                ev.in_token = get_string(j, "in_token", line_no);
                ev.amount_in = get_amount(j, "amount_in", line_no);
                if (j.contains("amount_out")) ev.amount_out = get_amount(j, "amount_out", line_no);
                break;
            case EventKind::transfer:
                ev.from = get_string(j, "from", line_no);
                ev.to = get_string(j, "to", line_no);
                ev.liquidity = get_amount(j, "liquidity", line_no);
                ev.has_liquidity = true;
                if (ev.from == ev.to)
                    throw Error(Errc::malformed_record, "Transfer from == to", line_no);
                break;
            case EventKind::sync:
                ev.reserve0 = get_amount(j, "reserve0", line_no);
                ev.reserve1 = get_amount(j, "reserve1", line_no);
                break;
        }
        events.push_back(std::move(ev));
    }

    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.key < b.key; });
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].key == events[i - 1].key)
            throw Error(Errc::duplicate_key, "duplicate key " + events[i].key.to_string());
        if (events[i].key.ts < events[i - 1].key.ts)
            throw Error(Errc::non_monotonic_timestamp,
                        "timestamp decreases at " + events[i].key.to_string());
    }
    return events;
}

std::vector<Event> load_event_log(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open event log " + path);
    return parse_event_log(in);
}

void write_event_log(std::ostream& out, const std::vector<Event>& events) {
    for (const Event& ev : events) out << ev.to_json_line() << '\n';
}

void save_event_log(const std::string& path, const std::vector<Event>& events) {
    std::ostringstream os;
    write_event_log(os, events);
    write_file_atomic(path, os.str());
}

}  // namespace poolscope
