#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace lsmjoin {

// Owning POSIX file descriptor with positional I/O. All failures throw IoError.
class File {
 public:
  enum class Mode { kRead, kWriteTruncate };

  File() = default;
  File(const std::filesystem::path& path, Mode mode);
  ~File();

  File(File&& other) noexcept;
  File& operator=(File&& other) noexcept;
  File(const File&) = delete;
  File& operator=(const File&) = delete;

  bool is_open() const { return fd_ >= 0; }
  const std::filesystem::path& path() const { return path_; }

  void write_at(uint64_t offset, std::span<const char> data);
  void append(std::span<const char> data);
  // Reads exactly data.size() bytes; a short read is an IoError.
  void read_at(uint64_t offset, std::span<char> data) const;
  uint64_t size() const;
  void close();

 private:
  int fd_ = -1;
  uint64_t append_offset_ = 0;
  std::filesystem::path path_;
};

// Creates a unique directory under the system temp dir (or `parent`) and
// removes it recursively on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "lsmjoin",
                   const std::filesystem::path& parent = std::filesystem::temp_directory_path());
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace lsmjoin
