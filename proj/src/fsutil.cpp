// Copyright 2026 The JFSS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jfss/fsutil.hpp"

#include <fcntl.h>
#include <linux/fs.h>
#include <sys/ioctl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <string>
#include <system_error>

#include "jfss/error.hpp"

namespace jfss::fsutil {
namespace {

[[noreturn]] void throw_io(const std::string& what, int err = errno) {
  throw Error(Errc::kIo, what + ": " + std::strerror(err));
}

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  int get() const { return fd_; }
  int release() {
    int fd = fd_;
    fd_ = -1;
    return fd;
  }

 private:
  int fd_;
};

void fsync_dir(const fs::path& dir) {
  Fd fd(::open(dir.empty() ? "." : dir.c_str(), O_RDONLY | O_DIRECTORY));
  if (fd.get() >= 0) ::fsync(fd.get());
}

void write_all(int fd, ByteView data, const fs::path& path) {
  std::size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_io("write " + path.string());
    }
    off += static_cast<std::size_t>(n);
  }
}

// Returns -1 when inode flags are not supported here.
int get_flags(int fd) {
  int flags = 0;
  if (::ioctl(fd, FS_IOC_GETFLAGS, &flags) != 0) return -1;
  return flags;
}

}  // namespace

Bytes read_file(const fs::path& path, std::uintmax_t max_size) {
  Fd fd(::open(path.c_str(), O_RDONLY | O_CLOEXEC));
  if (fd.get() < 0) throw_io("open " + path.string());
  struct stat st {};
  if (::fstat(fd.get(), &st) != 0) throw_io("stat " + path.string());
  if (!S_ISREG(st.st_mode)) {
    throw Error(Errc::kIo, path.string() + " is not a regular file");
  }
  if (static_cast<std::uintmax_t>(st.st_size) > max_size) {
    throw Error(Errc::kIo, path.string() + ": file too large");
  }
  Bytes out(static_cast<std::size_t>(st.st_size));
  std::size_t off = 0;
  while (off < out.size()) {
    ssize_t n = ::read(fd.get(), out.data() + off, out.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw_io("read " + path.string());
    }
    if (n == 0) break;
    off += static_cast<std::size_t>(n);
  }
  out.resize(off);
  return out;
}

void atomic_write(const fs::path& path, ByteView data,
                  const WriteOptions& options) {
  const fs::path dir = path.parent_path();
  std::string tmpl =
      (dir / ("." + path.filename().string() + ".tmp-XXXXXX")).string();
  Fd fd(::mkstemp(tmpl.data()));
  if (fd.get() < 0) throw_io("create temp in " + dir.string());
  const fs::path tmp(tmpl);

  auto discard = [&] { ::unlink(tmp.c_str()); };
  try {
    write_all(fd.get(), data, tmp);
    if (::fchmod(fd.get(), static_cast<mode_t>(options.mode)) != 0) {
      throw_io("chmod " + tmp.string());
    }
    if (::fsync(fd.get()) != 0) throw_io("fsync " + tmp.string());
    if (::close(fd.release()) != 0) throw_io("close " + tmp.string());

    if (options.before_commit) options.before_commit();

    if (options.overwrite) {
      if (::rename(tmp.c_str(), path.c_str()) != 0) {
        throw_io("rename to " + path.string());
      }
    } else {
      if (::link(tmp.c_str(), path.c_str()) != 0) {
        if (errno == EEXIST) {
          throw Error(Errc::kNameCollision, path.string() + " already exists");
        }
        throw_io("link to " + path.string());
      }
      ::unlink(tmp.c_str());
    }
  } catch (...) {
    discard();
    throw;
  }
  fsync_dir(dir);
}

bool make_read_only(const fs::path& path) {
  Fd fd(::open(path.c_str(), O_RDONLY | O_NONBLOCK | O_CLOEXEC));
  if (fd.get() < 0) throw_io("open " + path.string());
  int flags = get_flags(fd.get());
  // An immutable inode already rejects writes and refuses chmod.
  if (flags >= 0 && (flags & FS_IMMUTABLE_FL)) return true;

  struct stat st {};
  if (::fstat(fd.get(), &st) != 0) throw_io("stat " + path.string());
  if (::fchmod(fd.get(), st.st_mode & ~(S_IWUSR | S_IWGRP | S_IWOTH) & 07777) !=
      0) {
    throw_io("chmod " + path.string());
  }
  if (flags < 0) return false;
  flags |= FS_IMMUTABLE_FL;
  return ::ioctl(fd.get(), FS_IOC_SETFLAGS, &flags) == 0;
}

void make_writable(const fs::path& path) {
  Fd fd(::open(path.c_str(), O_RDONLY | O_NONBLOCK | O_CLOEXEC));
  if (fd.get() < 0) throw_io("open " + path.string());
  int flags = get_flags(fd.get());
  if (flags >= 0 && (flags & FS_IMMUTABLE_FL)) {
    flags &= ~FS_IMMUTABLE_FL;
    if (::ioctl(fd.get(), FS_IOC_SETFLAGS, &flags) != 0) {
      throw_io("clear immutable flag on " + path.string());
    }
  }
  std::error_code ec;
  fs::permissions(path, fs::perms::owner_write, fs::perm_options::add, ec);
  if (ec) throw Error(Errc::kIo, "chmod " + path.string() + ": " + ec.message());
}

bool is_immutable(const fs::path& path) {
  Fd fd(::open(path.c_str(), O_RDONLY | O_NONBLOCK | O_CLOEXEC));
  if (fd.get() < 0) return false;
  int flags = get_flags(fd.get());
  return flags >= 0 && (flags & FS_IMMUTABLE_FL);
}

void force_remove_all(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(fs::symlink_status(path, ec))) return;
  if (fs::is_directory(fs::symlink_status(path, ec))) {
    for (auto it = fs::recursive_directory_iterator(path, ec);
         it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (ec) break;
      if (it->is_symlink(ec)) continue;
      try {
        make_writable(it->path());
      } catch (const Error&) {
      }
    }
  }
  try {
    if (!fs::is_symlink(fs::symlink_status(path, ec))) make_writable(path);
  } catch (const Error&) {
  }
  fs::remove_all(path, ec);
  if (ec) {
    throw Error(Errc::kIo, "remove " + path.string() + ": " + ec.message());
  }
}

}  // namespace jfss::fsutil
