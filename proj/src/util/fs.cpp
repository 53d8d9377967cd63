#include "guiharvest/util/fs.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "guiharvest/errors.hpp"

namespace guiharvest::util {

namespace fs = std::filesystem;

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string out((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error("read failed: " + path.string());
  return out;
}

std::vector<std::uint8_t> read_binary_file(const fs::path& path) {
  std::string s = read_text_file(path);
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

static void write_atomic_impl(const fs::path& path, const void* data,
                              std::size_t len) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string());
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
    if (!out) throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_file_atomic(const fs::path& path, std::string_view data) {
  write_atomic_impl(path, data.data(), data.size());
}

void write_file_atomic(const fs::path& path,
                       const std::vector<std::uint8_t>& data) {
  write_atomic_impl(path, data.data(), data.size());
}

std::vector<fs::path> list_files_sorted(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });
  return out;
}

}  // namespace guiharvest::util
