#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace guiharvest::util {

std::string read_text_file(const std::filesystem::path& path);
std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);

// Writes via a sibling temp file and rename so readers never observe a
// partial file. Creates parent directories.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view data);
void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& data);

// Regular files directly inside `dir`, sorted by filename.
std::vector<std::filesystem::path> list_files_sorted(
    const std::filesystem::path& dir);

}  // namespace guiharvest::util
