#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace owcsim {

/// Invalid user-supplied configuration. `key` names the offending
/// `section.key` (or list element) when one applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, std::string message)
      : std::runtime_error(key.empty() ? message : key + ": " + message),
        key_(std::move(key)),
        detail_(std::move(message)) {}

  const std::string& key() const { return key_; }
  /// The message without the key prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::string key_;
  std::string detail_;
};

/// The channel of a user group has (numerically) dependent rows, so no
/// zero-forcing precoder exists for it.
class RankDeficientError : public std::runtime_error {
 public:
  RankDeficientError(std::vector<int> users, const std::string& message)
      : std::runtime_error(message), users_(std::move(users)) {}

  /// Row (user) indices taking part in the near-dependency.
  const std::vector<int>& users() const { return users_; }

 private:
  std::vector<int> users_;
};

}  // namespace owcsim
