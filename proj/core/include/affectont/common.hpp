#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace affectont {

/// String-backed identifier that does not mix with other identifier kinds.
template <typename Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}
  explicit StrongId(std::string_view value) : value_(value) {}
  explicit StrongId(const char* value) : value_(value) {}

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
  friend bool operator==(const StrongId&, const StrongId&) = default;

  friend std::ostream& operator<<(std::ostream& os, const StrongId& id) {
    return os << id.value_;
  }

 private:
  std::string value_;
};

using SynsetId = StrongId<struct SynsetIdTag>;
using ConceptId = StrongId<struct ConceptIdTag>;
using StimulusId = StrongId<struct StimulusIdTag>;

/// Root of every error thrown by the library. The CLI maps it to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration input (prune lists, tables, flag values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace affectont

template <typename Tag>
struct std::hash<affectont::StrongId<Tag>> {
  std::size_t operator()(const affectont::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};
