#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arena/config.hpp"
#include "arena/types.hpp"

namespace arena {

enum class LedgerCategory { Inference = 0, Hint = 1, Test = 2, Time = 3, Penalty = 4 };

inline constexpr std::array<LedgerCategory, 5> kAllCategories = {
    LedgerCategory::Inference, LedgerCategory::Hint, LedgerCategory::Test,
    LedgerCategory::Time, LedgerCategory::Penalty};

std::string_view to_string(LedgerCategory category);
std::optional<LedgerCategory> parse_category(std::string_view text);

struct LedgerEntry {
    LedgerCategory category;
    Credits amount;
    int turn_index;
    std::int64_t t_ms;

    bool operator==(const LedgerEntry&) const = default;
};

void to_json(nlohmann::json& j, const LedgerEntry& entry);
void from_json(const nlohmann::json& j, LedgerEntry& entry);

class LedgerError : public Error {
public:
    using Error::Error;
};

/// Append-only record of every credit a participant spends.
///
/// Entries are stamped with the turn index and match-clock time set through
/// `set_stamp`. Category sums are cached and kept equal to the fold over
/// `entries()`.
class CreditLedger {
public:
    void set_stamp(int turn_index, std::int64_t t_ms) {
        turn_ = turn_index;
        t_ms_ = t_ms;
    }

    /// Appends an entry and returns its amount. Negative amounts are rejected.
    Credits append(LedgerCategory category, Credits amount);

    const std::vector<LedgerEntry>& entries() const { return entries_; }
    Credits sum(LedgerCategory category) const { return sums_[static_cast<std::size_t>(category)]; }

private:
    std::vector<LedgerEntry> entries_;
    std::array<Credits, 5> sums_{};
    int turn_ = 0;
    std::int64_t t_ms_ = 0;
};

/// Prices in USD per million tokens, stored exactly in 1e-4 USD units.
struct PriceEntry {
    std::int64_t input_e4 = 0;
    std::int64_t output_e4 = 0;

    static PriceEntry from_usd(double input_per_mtok, double output_per_mtok);
    double input_usd() const { return static_cast<double>(input_e4) / 1e4; }
    double output_usd() const { return static_cast<double>(output_e4) / 1e4; }
};

class PriceTable {
public:
    void set(std::string model_id, PriceEntry entry);
    /// Throws LedgerError for an unknown model id.
    const PriceEntry& at(std::string_view model_id) const;
    bool contains(std::string_view model_id) const;
    const std::map<std::string, PriceEntry, std::less<>>& entries() const { return prices_; }

    /// The published per-model API prices the arena normalizes inference by.
    static PriceTable standard();
    /// {"<model_id>": {"input_price": usd, "output_price": usd}, ...}
    static PriceTable from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

private:
    std::map<std::string, PriceEntry, std::less<>> prices_;
};

/// Inference cost in credits for a token count pair, rounded half-up.
Credits inference_cost(std::int64_t input_tokens, std::int64_t output_tokens, const PriceEntry& price);

Credits charge_inference(CreditLedger& ledger, std::int64_t input_tokens, std::int64_t output_tokens,
                         const PriceEntry& price);
Credits charge_inference(CreditLedger& ledger, std::int64_t input_tokens, std::int64_t output_tokens,
                         const PriceTable& prices, std::string_view model_id);
Credits charge_hint(CreditLedger& ledger, int level, const ContestConfig& config);
/// One flat charge per TEST_CODE request, plus the optional per-case extension.
Credits charge_test(CreditLedger& ledger, const ContestConfig& config, std::size_t case_count = 0);
/// Brings the Time category up to round(alpha * elapsed_seconds). Re-accruing
/// the same or an earlier elapsed time writes nothing.
Credits accrue_time(CreditLedger& ledger, double elapsed_seconds, const ContestConfig& config);
Credits add_penalty(CreditLedger& ledger, Verdict verdict, const ContestConfig& config);

/// Action plus time costs; the quantity checked against the credit limit.
Credits termination_total(const CreditLedger& ledger);
/// Action, time, and penalty costs; the ranking tie-breaker.
Credits consumed_total(const CreditLedger& ledger);
bool is_terminated(const CreditLedger& ledger, const ContestConfig& config);

}  // namespace arena
