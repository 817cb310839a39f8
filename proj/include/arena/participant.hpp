#pragma once

#include <set>
#include <string>
#include <vector>

#include "arena/ledger.hpp"
#include "arena/types.hpp"

namespace arena {

enum class ParticipantStatus { Active, Terminated, Withdrawn };

std::string_view to_string(ParticipantStatus status);
std::optional<ParticipantStatus> parse_status(std::string_view text);

struct SubmissionRecord {
    std::string problem_id;
    int turn_index = 0;
    Verdict verdict = Verdict::CE;
    int passed = 0;
    int total = 0;
    LanguageId language = LanguageId::Cpp17;
    std::string source_hash;
};

struct ParticipantState {
    std::string id;
    CreditLedger ledger;
    std::set<std::string> solved;
    std::vector<SubmissionRecord> submissions;
    ParticipantStatus status = ParticipantStatus::Active;

    bool active() const { return status == ParticipantStatus::Active; }
    /// One-way transition out of Active; later calls are ignored.
    void finish(ParticipantStatus next) {
        if (status == ParticipantStatus::Active && next != ParticipantStatus::Active) status = next;
    }
};

}  // namespace arena
