#include "lsmjoin/common/file.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <random>

#include "lsmjoin/common/error.hpp"

namespace lsmjoin {

namespace {

std::string errno_message(const std::string& what, const std::filesystem::path& path) {
  return what + " " + path.string() + ": " + std::strerror(errno);
}

}  // namespace

File::File(const std::filesystem::path& path, Mode mode) : path_(path) {
  int flags = mode == Mode::kRead ? O_RDONLY : (O_WRONLY | O_CREAT | O_TRUNC);
  fd_ = ::open(path.c_str(), flags | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoError(errno_message("cannot open", path));
}

File::~File() {
  if (fd_ >= 0) ::close(fd_);
}

File::File(File&& other) noexcept
    : fd_(other.fd_), append_offset_(other.append_offset_), path_(std::move(other.path_)) {
  other.fd_ = -1;
}

File& File::operator=(File&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = other.fd_;
    append_offset_ = other.append_offset_;
    path_ = std::move(other.path_);
    other.fd_ = -1;
  }
  return *this;
}

void File::write_at(uint64_t offset, std::span<const char> data) {
  size_t done = 0;
  while (done < data.size()) {
    ssize_t n = ::pwrite(fd_, data.data() + done, data.size() - done, static_cast<off_t>(offset + done));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(errno_message("write failed on", path_));
    }
    done += static_cast<size_t>(n);
  }
}

void File::append(std::span<const char> data) {
  write_at(append_offset_, data);
  append_offset_ += data.size();
}

void File::read_at(uint64_t offset, std::span<char> data) const {
  size_t done = 0;
  while (done < data.size()) {
    ssize_t n = ::pread(fd_, data.data() + done, data.size() - done, static_cast<off_t>(offset + done));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw IoError(errno_message("read failed on", path_));
    }
    if (n == 0) throw IoError("short read on " + path_.string());
    done += static_cast<size_t>(n);
  }
}

uint64_t File::size() const {
  struct stat st {};
  if (::fstat(fd_, &st) != 0) throw IoError(errno_message("stat failed on", path_));
  return static_cast<uint64_t>(st.st_size);
}

void File::close() {
  if (fd_ >= 0) {
    if (::close(fd_) != 0) {
      fd_ = -1;
      throw IoError(errno_message("close failed on", path_));
    }
    fd_ = -1;
  }
}

TempDir::TempDir(const std::string& prefix, const std::filesystem::path& parent) {
  static std::atomic<uint64_t> counter{0};
  std::random_device rd;
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = parent / (prefix + "-" + std::to_string(::getpid()) + "-" +
                               std::to_string(counter++) + "-" + std::to_string(rd() % 100000));
    std::error_code ec;
    if (std::filesystem::create_directories(candidate, ec) && !ec) {
      path_ = candidate;
      return;
    }
  }
  throw IoError("cannot create temp dir under " + parent.string());
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace lsmjoin
