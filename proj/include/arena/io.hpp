#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace arena {

/// Reads a whole file in binary mode; throws arena::Error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

/// Creates a fresh uniquely named directory under the system temp dir.
std::filesystem::path make_temp_dir(std::string_view prefix);

/// Owns a temp directory and removes it on destruction.
class TempDir {
public:
    explicit TempDir(std::string_view prefix = "arena") : path_(make_temp_dir(prefix)) {}
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    TempDir(TempDir&& other) noexcept : path_(std::move(other.path_)) { other.path_.clear(); }
    TempDir& operator=(TempDir&&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

}  // namespace arena
