#pragma once

// Stimulus-database manifests: CSV ingestion, resource classification and
// keyword distribution statistics.

#include <affectont/common.hpp>

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace affectont {

enum class MediaKind { image, sound, video };

std::string_view to_string(MediaKind kind);

/// Point in the pleasure/arousal plane. Both axes are normalized to [1, 9].
struct AffectPoint {
  double pleasure = 5.0;
  double arousal = 5.0;

  friend bool operator==(const AffectPoint&, const AffectPoint&) = default;
};

inline constexpr double kAffectMin = 1.0;
inline constexpr double kAffectMax = 9.0;

bool in_affect_range(double value);

struct Stimulus {
  StimulusId id;
  /// Resource URI, resolved against the manifest's base directory.
  std::string resource;
  /// Empty when the resource extension is not a known media type.
  std::optional<MediaKind> media_kind;
  AffectPoint affect;
  std::string raw_keyword;

  friend bool operator==(const Stimulus&, const Stimulus&) = default;
};

/// A row-level manifest problem. `line` is the 1-based physical line on which
/// the offending record starts (the header is line 1).
struct ManifestIssue {
  std::size_t line = 0;
  std::string message;
};

class ManifestError : public Error {
 public:
  ManifestError(std::size_t line, std::string message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ManifestOptions {
  /// Collect every row error instead of throwing on the first one.
  bool lenient = false;
};

struct ManifestParse {
  std::vector<Stimulus> stimuli;
  std::vector<ManifestIssue> errors;
  std::vector<std::string> warnings;
};

inline constexpr std::array<std::string_view, 5> kManifestColumns = {
    "id", "resource", "keyword", "pleasure", "arousal"};

/// Parses a manifest (`id,resource,keyword,pleasure,arousal`, RFC-4180 quoting
/// accepted). Relative resources are resolved to `file://` URIs against
/// `base_path`; an empty base leaves them as relative references.
/// Throws ManifestError in strict mode; in lenient mode bad rows are skipped
/// and reported in `errors`.
ManifestParse parse_manifest(std::istream& source,
                             const std::filesystem::path& base_path,
                             ManifestOptions options = {});

ManifestParse load_manifest(const std::filesystem::path& file,
                            ManifestOptions options = {});

/// Writes the canonical manifest form; parsing it back yields the same list.
void write_manifest(std::ostream& out, std::span<const Stimulus> stimuli);

class ClassificationError : public Error {
 public:
  using Error::Error;
};

struct ResolvedResource {
  std::string uri;
  MediaKind media_kind;
};

/// Throws ClassificationError for an unknown or missing extension.
MediaKind classify_extension(std::string_view resource);
ResolvedResource resolve_resource(const Stimulus& stimulus);

/// Lowercased extension of the last path segment, without the dot.
std::string resource_extension(std::string_view resource);

/// Keyword-count buckets, largest first: 10+, 6-9, 4-5, 2-3, 1.
/// A keyword with exactly ten stimuli belongs to the 10+ bucket.
struct KeywordHistogram {
  std::size_t ten_plus = 0;
  std::size_t six_to_ten = 0;
  std::size_t four_to_five = 0;
  std::size_t two_to_three = 0;
  std::size_t one = 0;

  std::size_t total() const noexcept {
    return ten_plus + six_to_ten + four_to_five + two_to_three + one;
  }
  friend bool operator==(const KeywordHistogram&, const KeywordHistogram&) = default;
};

struct ManifestStats {
  std::size_t num_stimuli = 0;
  std::size_t num_keywords = 0;
  std::size_t max_per_keyword = 0;
  KeywordHistogram histogram;
  double mean_per_keyword = 0.0;
  std::size_t mode_per_keyword = 0;
  double median_per_keyword = 0.0;
  /// Sample standard deviation (n - 1 divisor); 0 for fewer than two keywords.
  double stddev_per_keyword = 0.0;
};

/// Statistics over the multiset of stimuli-per-keyword counts. Keywords are
/// compared by exact, case-sensitive string equality. Mode ties resolve to the
/// smallest count.
ManifestStats compute_stats(std::span<const Stimulus> stimuli);

void write_stats_table(std::ostream& out, const ManifestStats& stats);
std::string stats_to_json(const ManifestStats& stats);

}  // namespace affectont
