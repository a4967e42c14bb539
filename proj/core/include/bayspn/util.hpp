#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bayspn {

// Error taxonomy maps onto CLI exit codes: usage 1, data 2, numerical 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fixed-capacity bitset over data dimensions, used for node scopes.
class DimSet {
 public:
  DimSet() = default;
  explicit DimSet(int num_dims)
      : num_dims_(num_dims), words_((num_dims + 63) / 64, 0) {}

  int num_dims() const { return num_dims_; }

  bool test(int d) const { return (words_[d >> 6] >> (d & 63)) & 1u; }
  void set(int d) { words_[d >> 6] |= uint64_t(1) << (d & 63); }
  void reset(int d) { words_[d >> 6] &= ~(uint64_t(1) << (d & 63)); }
  void assign(int d, bool v) { v ? set(d) : reset(d); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  void set_all() {
    for (int d = 0; d < num_dims_; ++d) set(d);
  }

  int count() const {
    int c = 0;
    for (uint64_t w : words_) c += __builtin_popcountll(w);
    return c;
  }
  bool empty() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

  bool intersects(const DimSet& o) const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  void unite(const DimSet& o) {
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  }

  bool operator==(const DimSet& o) const {
    return num_dims_ == o.num_dims_ && words_ == o.words_;
  }

  std::vector<int> to_list() const {
    std::vector<int> out;
    out.reserve(count());
    for (int d = 0; d < num_dims_; ++d)
      if (test(d)) out.push_back(d);
    return out;
  }

 private:
  int num_dims_ = 0;
  std::vector<uint64_t> words_;
};

/// FNV-1a 64-bit, used for dataset hashes in run manifests.
uint64_t fnv1a64(const void* data, size_t len);
uint64_t fnv1a64_file(const std::string& path);

// Minimal leveled logger controlled by the BAYSPN_LOG environment variable
// (debug|info|warn|error|off; default warn).
enum class LogLevel { Debug = 0, Info = 1, Warn = 2, Error = 3, Off = 4 };
LogLevel log_threshold();
void log_msg(LogLevel level, const std::string& msg);

inline void log_debug(const std::string& m) { log_msg(LogLevel::Debug, m); }
inline void log_info(const std::string& m) { log_msg(LogLevel::Info, m); }
inline void log_warn(const std::string& m) { log_msg(LogLevel::Warn, m); }
inline void log_error(const std::string& m) { log_msg(LogLevel::Error, m); }

}  // namespace bayspn
