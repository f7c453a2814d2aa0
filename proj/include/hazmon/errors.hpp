#ifndef HAZMON_ERRORS_HPP
#define HAZMON_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace hazmon {

// Requested interval contains no usable observations, or collapses after
// truncation at the largest order statistic.
class degenerate_interval_error : public std::runtime_error {
 public:
  explicit degenerate_interval_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Isotonic fit unusable for resampling (e.g. no strictly positive slope).
class degenerate_fit_error : public std::runtime_error {
 public:
  explicit degenerate_fit_error(const std::string& what)
      : std::runtime_error(what) {}
};

// Malformed study configuration; carries the offending key names.
class config_error : public std::runtime_error {
 public:
  config_error(const std::string& what, std::vector<std::string> keys = {})
      : std::runtime_error(what), keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const { return keys_; }

 private:
  std::vector<std::string> keys_;
};

}  // namespace hazmon

#endif
