#pragma once

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <sys/file.h>
#include <unistd.h>
#include <vector>

#include "evolver/errors.hpp"

namespace evolver {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read file: " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::optional<std::string> read_file_if_exists(const fs::path& p) {
    if (!fs::exists(p)) return std::nullopt;
    return read_file(p);
}

inline void write_file(const fs::path& p, std::string_view content) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + p.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("short write: " + p.string());
}

// Stage next to the target, then rename. Readers never see a partial file.
inline void write_file_atomic(const fs::path& p, std::string_view content) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".staged";
    write_file(tmp, content);
    std::error_code ec;
    fs::rename(tmp, p, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error("rename failed for " + p.string());
    }
}

inline void append_line(const fs::path& p, std::string_view line) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::app);
    if (!out) throw Error("cannot append to file: " + p.string());
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.put('\n');
}

// Shortest round-trip decimal form, the same text Python's repr would print.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string now_iso8601() {
    using namespace std::chrono;
    auto t = system_clock::to_time_t(system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Advisory flock on a sidecar lock file; one writer per store across
// processes (and across handles within one process).
class FileLock {
public:
    FileLock() = default;
    explicit FileLock(const fs::path& lock_path) { acquire(lock_path); }

    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;
    FileLock(FileLock&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
    FileLock& operator=(FileLock&& other) noexcept {
        release();
        fd_ = other.fd_;
        other.fd_ = -1;
        return *this;
    }
    ~FileLock() { release(); }

    void acquire(const fs::path& lock_path) {
        release();
        fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
        if (fd_ < 0) throw Error("cannot open lock file: " + lock_path.string());
        if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd_);
            fd_ = -1;
            throw StoreLockedError("store is locked by another writer: " + lock_path.string());
        }
    }

    bool held() const { return fd_ >= 0; }

    void release() {
        if (fd_ >= 0) {
            ::flock(fd_, LOCK_UN);
            ::close(fd_);
            fd_ = -1;
        }
    }

private:
    int fd_ = -1;
};

inline void copy_tree(const fs::path& from, const fs::path& to) {
    fs::create_directories(to);
    fs::copy(from, to, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
}

} // namespace evolver
