#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace arena {

/// Credits are integral; one credit is one micro-USD of normalized spend.
using Credits = std::int64_t;

enum class DifficultyLevel { Bronze = 0, Silver = 1, Gold = 2, Platinum = 3 };

inline constexpr std::array<DifficultyLevel, 4> kAllLevels = {
    DifficultyLevel::Bronze, DifficultyLevel::Silver, DifficultyLevel::Gold,
    DifficultyLevel::Platinum};

enum class Verdict { AC, WA, TLE, MLE, RE, CE };

inline constexpr std::array<Verdict, 6> kAllVerdicts = {
    Verdict::AC, Verdict::WA, Verdict::TLE, Verdict::MLE, Verdict::RE, Verdict::CE};

enum class LanguageId { Cpp17, Java, Python3 };

/// Base class for every error the arena raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string_view to_string(DifficultyLevel level);
std::string_view to_string(Verdict verdict);
std::string_view to_string(LanguageId language);

// Parsers are case-insensitive for levels ("bronze", "Bronze") and exact for
// verdicts and language ids.
std::optional<DifficultyLevel> parse_level(std::string_view text);
std::optional<Verdict> parse_verdict(std::string_view text);
std::optional<LanguageId> parse_language(std::string_view text);

inline constexpr std::size_t index_of(DifficultyLevel level) {
    return static_cast<std::size_t>(level);
}

}  // namespace arena
