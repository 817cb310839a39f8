#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace arena {

/// 64-bit FNV-1a. Chain calls by passing the previous hash as `seed`.
constexpr std::uint64_t fnv1a(std::string_view bytes,
                              std::uint64_t seed = 0xcbf29ce484222325ULL) {
    std::uint64_t h = seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value);

}  // namespace arena
