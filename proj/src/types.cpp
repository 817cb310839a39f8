#include "arena/types.hpp"

#include <algorithm>
#include <cctype>

namespace arena {

namespace {

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

std::string_view to_string(DifficultyLevel level) {
    switch (level) {
        case DifficultyLevel::Bronze: return "Bronze";
        case DifficultyLevel::Silver: return "Silver";
        case DifficultyLevel::Gold: return "Gold";
        case DifficultyLevel::Platinum: return "Platinum";
    }
    return "?";
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::AC: return "AC";
        case Verdict::WA: return "WA";
        case Verdict::TLE: return "TLE";
        case Verdict::MLE: return "MLE";
        case Verdict::RE: return "RE";
        case Verdict::CE: return "CE";
    }
    return "?";
}

std::string_view to_string(LanguageId language) {
    switch (language) {
        case LanguageId::Cpp17: return "cpp17";
        case LanguageId::Java: return "java";
        case LanguageId::Python3: return "python3";
    }
    return "?";
}

std::optional<DifficultyLevel> parse_level(std::string_view text) {
    const auto key = lower(text);
    for (auto level : kAllLevels) {
        if (lower(to_string(level)) == key) return level;
    }
    return std::nullopt;
}

std::optional<Verdict> parse_verdict(std::string_view text) {
    for (auto verdict : kAllVerdicts) {
        if (to_string(verdict) == text) return verdict;
    }
    return std::nullopt;
}

std::optional<LanguageId> parse_language(std::string_view text) {
    for (auto language : {LanguageId::Cpp17, LanguageId::Java, LanguageId::Python3}) {
        if (to_string(language) == text) return language;
    }
    return std::nullopt;
}

}  // namespace arena
