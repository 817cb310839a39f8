#include "arena/ledger.hpp"

#include <cmath>

namespace arena {

using nlohmann::json;

std::string_view to_string(LedgerCategory category) {
    switch (category) {
        case LedgerCategory::Inference: return "inference";
        case LedgerCategory::Hint: return "hint";
        case LedgerCategory::Test: return "test";
        case LedgerCategory::Time: return "time";
        case LedgerCategory::Penalty: return "penalty";
    }
    return "?";
}

std::optional<LedgerCategory> parse_category(std::string_view text) {
    for (auto c : kAllCategories) {
        if (to_string(c) == text) return c;
    }
    return std::nullopt;
}

void to_json(json& j, const LedgerEntry& entry) {
    j = json{{"category", to_string(entry.category)},
             {"amount", entry.amount},
             {"turn", entry.turn_index},
             {"t_ms", entry.t_ms}};
}

void from_json(const json& j, LedgerEntry& entry) {
    auto category = parse_category(j.at("category").get<std::string>());
    if (!category) throw LedgerError("unknown ledger category " + j.at("category").dump());
    entry.category = *category;
    entry.amount = j.at("amount").get<Credits>();
    entry.turn_index = j.at("turn").get<int>();
    entry.t_ms = j.at("t_ms").get<std::int64_t>();
}

Credits CreditLedger::append(LedgerCategory category, Credits amount) {
    if (amount < 0) throw LedgerError("ledger amounts must be >= 0");
    entries_.push_back({category, amount, turn_, t_ms_});
    sums_[static_cast<std::size_t>(category)] += amount;
    return amount;
}

PriceEntry PriceEntry::from_usd(double input_per_mtok, double output_per_mtok) {
    if (input_per_mtok < 0 || output_per_mtok < 0) throw LedgerError("prices must be >= 0");
    return {std::llround(input_per_mtok * 1e4), std::llround(output_per_mtok * 1e4)};
}

void PriceTable::set(std::string model_id, PriceEntry entry) {
    if (entry.input_e4 < 0 || entry.output_e4 < 0) throw LedgerError("prices must be >= 0");
    prices_[std::move(model_id)] = entry;
}

const PriceEntry& PriceTable::at(std::string_view model_id) const {
    auto it = prices_.find(model_id);
    if (it == prices_.end()) throw LedgerError("unknown model id '" + std::string(model_id) + "'");
    return it->second;
}

bool PriceTable::contains(std::string_view model_id) const {
    return prices_.find(model_id) != prices_.end();
}

PriceTable PriceTable::standard() {
    PriceTable t;
    t.set("gpt-5-2025-08-07", PriceEntry::from_usd(1.25, 10.00));
    t.set("gpt-5-codex", PriceEntry::from_usd(1.25, 10.00));
    t.set("gemini-2.5-pro", PriceEntry::from_usd(1.25, 10.00));
    t.set("claude-sonnet-4-20250514", PriceEntry::from_usd(3.00, 15.00));
    t.set("deepseek-v3", PriceEntry::from_usd(0.27, 1.10));
    t.set("deepseek-v3.1", PriceEntry::from_usd(0.27, 1.10));
    t.set("qwen3-235b-a22b-instruct-2507", PriceEntry::from_usd(0.70, 2.80));
    t.set("kimi-k2-0905", PriceEntry::from_usd(1.00, 2.75));
    t.set("glm-4.5", PriceEntry::from_usd(0.59, 2.19));
    return t;
}

PriceTable PriceTable::from_json(const json& j) {
    if (!j.is_object()) throw LedgerError("price table: expected an object keyed by model id");
    PriceTable t;
    for (auto it = j.begin(); it != j.end(); ++it) {
        t.set(it.key(), PriceEntry::from_usd(it.value().at("input_price").get<double>(),
                                             it.value().at("output_price").get<double>()));
    }
    return t;
}

json PriceTable::to_json() const {
    json j = json::object();
    for (const auto& [id, p] : prices_) {
        j[id] = {{"input_price", p.input_usd()}, {"output_price", p.output_usd()}};
    }
    return j;
}

Credits inference_cost(std::int64_t input_tokens, std::int64_t output_tokens, const PriceEntry& price) {
    if (input_tokens < 0 || output_tokens < 0) throw LedgerError("token counts must be >= 0");
    // tokens * (USD per Mtok) == micro-USD; prices carry four decimals.
    const auto scaled = static_cast<__int128>(input_tokens) * price.input_e4 +
                        static_cast<__int128>(output_tokens) * price.output_e4;
    return static_cast<Credits>((scaled + 5000) / 10000);
}

Credits charge_inference(CreditLedger& ledger, std::int64_t input_tokens, std::int64_t output_tokens,
                         const PriceEntry& price) {
    return ledger.append(LedgerCategory::Inference, inference_cost(input_tokens, output_tokens, price));
}

Credits charge_inference(CreditLedger& ledger, std::int64_t input_tokens, std::int64_t output_tokens,
                         const PriceTable& prices, std::string_view model_id) {
    return charge_inference(ledger, input_tokens, output_tokens, prices.at(model_id));
}

Credits charge_hint(CreditLedger& ledger, int level, const ContestConfig& config) {
    if (level < 0 || level > 4) throw LedgerError("hint level must be in 0..4, got " + std::to_string(level));
    return ledger.append(LedgerCategory::Hint, config.hint_costs[static_cast<std::size_t>(level)]);
}

Credits charge_test(CreditLedger& ledger, const ContestConfig& config, std::size_t case_count) {
    return ledger.append(LedgerCategory::Test,
                         config.test_cost + config.test_cost_per_case * static_cast<Credits>(case_count));
}

Credits accrue_time(CreditLedger& ledger, double elapsed_seconds, const ContestConfig& config) {
    if (elapsed_seconds < 0) throw LedgerError("elapsed time must be >= 0");
    const auto target = static_cast<Credits>(std::floor(config.alpha * elapsed_seconds + 0.5));
    const auto current = ledger.sum(LedgerCategory::Time);
    if (target <= current) return 0;
    return ledger.append(LedgerCategory::Time, target - current);
}

Credits add_penalty(CreditLedger& ledger, Verdict verdict, const ContestConfig& config) {
    if (verdict == Verdict::AC) throw LedgerError("AC submissions carry no penalty");
    auto it = config.penalty_schedule.find(verdict);
    const Credits amount = it == config.penalty_schedule.end() ? 0 : it->second;
    return ledger.append(LedgerCategory::Penalty, amount);
}

Credits termination_total(const CreditLedger& ledger) {
    return ledger.sum(LedgerCategory::Inference) + ledger.sum(LedgerCategory::Hint) +
           ledger.sum(LedgerCategory::Test) + ledger.sum(LedgerCategory::Time);
}

Credits consumed_total(const CreditLedger& ledger) {
    return termination_total(ledger) + ledger.sum(LedgerCategory::Penalty);
}

bool is_terminated(const CreditLedger& ledger, const ContestConfig& config) {
    return termination_total(ledger) >= config.credit_limit;
}

}  // namespace arena
