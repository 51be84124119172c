#pragma once

// Dublin Core Simple records for stimulus resources, rendered as RDF/XML.

#include <affectont/common.hpp>
#include <affectont/manifest.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace affectont {

class DublinCoreError : public Error {
 public:
  using Error::Error;
};

/// Proleptic Gregorian date written as YYYY-MM-DD.
struct CalendarDate {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  bool valid() const;
  std::string str() const;
  /// Strict YYYY-MM-DD. Throws DublinCoreError for anything else or an
  /// impossible date such as 2009-02-29.
  static CalendarDate parse(std::string_view text);

  friend bool operator==(const CalendarDate&, const CalendarDate&) = default;
};

enum class FormatStyle {
  word,  ///< Image, Sound, Video
  mime,  ///< image/jpeg, audio/wav, ...
};

struct DublinCoreRecord {
  std::string identifier;
  std::string creator;
  std::string subject;
  std::string contributor;
  CalendarDate date;
  std::string type;
  std::string format;

  friend bool operator==(const DublinCoreRecord&, const DublinCoreRecord&) = default;
};

/// "Image"/"Sound"/"Video", or the MIME type of the resource extension.
std::string format_value(std::string_view resource, FormatStyle style);

/// Keywords joined with ", ".
std::string join_subjects(std::span<const std::string> keywords);

/// Throws DublinCoreError when the media kind cannot be derived from the
/// resource extension.
DublinCoreRecord derive_record(const Stimulus& stimulus, std::string db_name, std::string creator,
                               std::string contributor, CalendarDate date,
                               FormatStyle style = FormatStyle::word);

/// Throws DublinCoreError for an empty identifier, invalid date or a format
/// outside the word/MIME vocabulary.
void validate_record(const DublinCoreRecord& record);

std::string serialize_dc(const DublinCoreRecord& record);

/// Writes `<identifier>.dc.rdf` per record into `directory`, creating it if
/// needed. Returns the written paths in input order.
std::vector<std::filesystem::path> write_dc_batch(std::span<const DublinCoreRecord> records,
                                                  const std::filesystem::path& directory);

}  // namespace affectont
