#include <affectont/manifest.hpp>

#include "text_util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace affectont {

std::string_view to_string(MediaKind kind) {
  switch (kind) {
    case MediaKind::image: return "image";
    case MediaKind::sound: return "sound";
    case MediaKind::video: return "video";
  }
  return "unknown";
}

bool in_affect_range(double value) {
  return std::isfinite(value) && value >= kAffectMin && value <= kAffectMax;
}

ManifestError::ManifestError(std::size_t line, std::string message)
    : Error("manifest line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct CsvRecord {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// RFC-4180 reader. Unquoted fields are trimmed; quoted fields are verbatim and
// may span lines.
class CsvReader {
 public:
  explicit CsvReader(std::string text) : text_(std::move(text)) {
    if (text_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
  }

  std::optional<CsvRecord> next() {
    while (pos_ < text_.size()) {
      CsvRecord record;
      record.line = line_;
      if (read_record(record.fields)) return record;
    }
    return std::nullopt;
  }

 private:
  // Returns false for blank lines.
  bool read_record(std::vector<std::string>& fields) {
    std::string field;
    bool quoted = false;
    bool any = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '"' && trim(field).empty()) {
        field.clear();
        quoted = true;
        any = true;
        ++pos_;
        read_quoted(field);
        continue;
      }
      if (c == ',') {
        fields.push_back(quoted ? field : std::string(trim(field)));
        field.clear();
        quoted = false;
        any = true;
        ++pos_;
        continue;
      }
      if (c == '\r' || c == '\n') {
        consume_newline();
        break;
      }
      if (!quoted) {
        field.push_back(c);
        if (c != ' ' && c != '\t') any = true;
      }
      ++pos_;
    }
    if (!any) return false;
    fields.push_back(quoted ? field : std::string(trim(field)));
    return true;
  }

  void read_quoted(std::string& field) {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '"') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
          field.push_back('"');
          pos_ += 2;
          continue;
        }
        ++pos_;
        return;
      }
      if (c == '\n') ++line_;
      field.push_back(c);
      ++pos_;
    }
  }

  void consume_newline() {
    if (text_[pos_] == '\r') ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '\n') ++pos_;
    ++line_;
  }

  std::string text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::optional<double> parse_real(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool has_scheme(std::string_view resource) {
  const auto colon = resource.find(':');
  if (colon == std::string_view::npos || colon < 2) return false;
  return std::all_of(resource.begin(), resource.begin() + colon, [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
  });
}

std::string percent_encode_path(std::string_view path) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : path) {
    if (std::isalnum(c) || c == '/' || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::string resolve_uri(std::string_view resource, const std::filesystem::path& base) {
  if (has_scheme(resource)) return std::string(resource);
  std::filesystem::path path(resource);
  if (path.is_relative()) {
    if (base.empty()) return std::string(resource);
    path = base / path;
  }
  path = std::filesystem::absolute(path).lexically_normal();
  return "file://" + percent_encode_path(path.generic_string());
}

std::optional<Stimulus> build_stimulus(const CsvRecord& record,
                                       const std::filesystem::path& base,
                                       std::set<std::string>& seen_ids,
                                       std::vector<ManifestIssue>& problems) {
  const auto fail = [&](std::string message) {
    problems.push_back({record.line, std::move(message)});
    return std::nullopt;
  };
  const auto& f = record.fields;
  if (f[0].empty()) return fail("empty stimulus id");
  if (f[1].empty()) return fail("empty resource for stimulus " + f[0]);
  if (f[2].empty()) return fail("empty keyword for stimulus " + f[0]);

  AffectPoint affect;
  for (int axis = 0; axis < 2; ++axis) {
    const std::string& text = f[3 + axis];
    const char* name = axis == 0 ? "pleasure" : "arousal";
    auto value = parse_real(text);
    if (!value) return fail(std::string("non-numeric ") + name + " value '" + text + "'");
    if (!in_affect_range(*value)) {
      return fail(std::string(name) + " " + text + " outside [1, 9]");
    }
    (axis == 0 ? affect.pleasure : affect.arousal) = *value;
  }
  if (!seen_ids.insert(f[0]).second) return fail("duplicate stimulus id " + f[0]);

  Stimulus s;
  s.id = StimulusId(f[0]);
  s.resource = resolve_uri(f[1], base);
  try {
    s.media_kind = classify_extension(s.resource);
  } catch (const ClassificationError&) {
    s.media_kind.reset();
  }
  s.affect = affect;
  s.raw_keyword = f[2];
  return s;
}

std::string csv_field(std::string_view value) {
  const bool needs_quotes =
      value.find_first_of(",\"\r\n") != std::string_view::npos ||
      (!value.empty() && (value.front() == ' ' || value.back() == ' '));
  if (!needs_quotes) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

ManifestParse parse_manifest(std::istream& source,
                             const std::filesystem::path& base_path,
                             ManifestOptions options) {
  std::string text((std::istreambuf_iterator<char>(source)), std::istreambuf_iterator<char>());
  CsvReader reader(std::move(text));
  ManifestParse result;

  auto header = reader.next();
  if (!header) throw ManifestError(1, "missing header");
  const auto& columns = header->fields;
  if (columns.size() < kManifestColumns.size() ||
      !std::equal(kManifestColumns.begin(), kManifestColumns.end(), columns.begin(),
                  [](std::string_view want, const std::string& got) {
                    return to_lower(got) == want;
                  })) {
    throw ManifestError(header->line, "header must begin with id,resource,keyword,pleasure,arousal");
  }
  if (columns.size() > kManifestColumns.size()) {
    std::string extra;
    for (std::size_t i = kManifestColumns.size(); i < columns.size(); ++i) {
      if (!extra.empty()) extra += ", ";
      extra += columns[i];
    }
    result.warnings.push_back("ignoring trailing columns: " + extra);
  }

  std::set<std::string> seen_ids;
  while (auto record = reader.next()) {
    std::vector<ManifestIssue> problems;
    if (record->fields.size() != columns.size()) {
      problems.push_back({record->line, "expected " + std::to_string(columns.size()) +
                                            " columns, found " +
                                            std::to_string(record->fields.size())});
    } else if (auto stimulus = build_stimulus(*record, base_path, seen_ids, problems)) {
      result.stimuli.push_back(std::move(*stimulus));
    }
    if (!problems.empty()) {
      if (!options.lenient) throw ManifestError(problems.front().line, problems.front().message);
      result.errors.insert(result.errors.end(), problems.begin(), problems.end());
    }
  }
  return result;
}

ManifestParse load_manifest(const std::filesystem::path& file, ManifestOptions options) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open manifest " + file.string());
  auto base = file.parent_path();
  if (base.empty()) base = ".";
  return parse_manifest(in, base, options);
}

void write_manifest(std::ostream& out, std::span<const Stimulus> stimuli) {
  out << "id,resource,keyword,pleasure,arousal\n";
  for (const auto& s : stimuli) {
    out << csv_field(s.id.str()) << ',' << csv_field(s.resource) << ','
        << csv_field(s.raw_keyword) << ',' << format_real(s.affect.pleasure) << ','
        << format_real(s.affect.arousal) << '\n';
  }
}

std::string resource_extension(std::string_view resource) {
  const auto cut = resource.find_first_of("?#");
  if (cut != std::string_view::npos) resource = resource.substr(0, cut);
  const auto slash = resource.find_last_of('/');
  if (slash != std::string_view::npos) resource.remove_prefix(slash + 1);
  const auto dot = resource.find_last_of('.');
  if (dot == std::string_view::npos || dot + 1 == resource.size()) return {};
  return to_lower(resource.substr(dot + 1));
}

MediaKind classify_extension(std::string_view resource) {
  static const std::map<std::string, MediaKind, std::less<>> kKinds = {
      {"jpg", MediaKind::image}, {"jpeg", MediaKind::image}, {"png", MediaKind::image},
      {"bmp", MediaKind::image}, {"wav", MediaKind::sound},  {"mp3", MediaKind::sound},
      {"ogg", MediaKind::sound}, {"mp4", MediaKind::video},  {"avi", MediaKind::video},
      {"mkv", MediaKind::video},
  };
  const std::string ext = resource_extension(resource);
  if (ext.empty()) {
    throw ClassificationError("resource '" + std::string(resource) + "' has no extension");
  }
  auto it = kKinds.find(ext);
  if (it == kKinds.end()) {
    throw ClassificationError("unknown media extension '." + ext + "' in '" +
                              std::string(resource) + "'");
  }
  return it->second;
}

ResolvedResource resolve_resource(const Stimulus& stimulus) {
  std::string uri = resolve_uri(stimulus.resource, {});
  if (!has_scheme(uri) && !uri.empty()) {
    uri = resolve_uri(stimulus.resource, std::filesystem::current_path());
  }
  return {std::move(uri), classify_extension(stimulus.resource)};
}

ManifestStats compute_stats(std::span<const Stimulus> stimuli) {
  ManifestStats stats;
  stats.num_stimuli = stimuli.size();
  if (stimuli.empty()) return stats;

  std::map<std::string_view, std::size_t> per_keyword;
  for (const auto& s : stimuli) ++per_keyword[s.raw_keyword];

  std::vector<std::size_t> counts;
  counts.reserve(per_keyword.size());
  for (const auto& [keyword, n] : per_keyword) counts.push_back(n);
  std::sort(counts.begin(), counts.end());

  stats.num_keywords = counts.size();
  stats.max_per_keyword = counts.back();
  for (std::size_t n : counts) {
    auto& h = stats.histogram;
    if (n >= 10) ++h.ten_plus;
    else if (n >= 6) ++h.six_to_ten;
    else if (n >= 4) ++h.four_to_five;
    else if (n >= 2) ++h.two_to_three;
    else ++h.one;
  }

  const double k = static_cast<double>(counts.size());
  stats.mean_per_keyword = static_cast<double>(stats.num_stimuli) / k;

  const std::size_t mid = counts.size() / 2;
  stats.median_per_keyword = counts.size() % 2 == 1
                                 ? static_cast<double>(counts[mid])
                                 : (static_cast<double>(counts[mid - 1]) + counts[mid]) / 2.0;

  // counts is sorted, so runs are contiguous and the first longest run is the
  // smallest modal value.
  std::size_t best_run = 0;
  for (std::size_t i = 0; i < counts.size();) {
    std::size_t j = i;
    while (j < counts.size() && counts[j] == counts[i]) ++j;
    if (j - i > best_run) {
      best_run = j - i;
      stats.mode_per_keyword = counts[i];
    }
    i = j;
  }

  if (counts.size() > 1) {
    double ss = 0.0;
    for (std::size_t n : counts) {
      const double d = static_cast<double>(n) - stats.mean_per_keyword;
      ss += d * d;
    }
    stats.stddev_per_keyword = std::sqrt(ss / (k - 1.0));
  }
  return stats;
}

void write_stats_table(std::ostream& out, const ManifestStats& s) {
  const auto row = [&](std::string_view label, const std::string& value) {
    out << std::left << std::setw(36) << label << value << '\n';
  };
  const auto fixed3 = [](double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << v;
    return os.str();
  };
  row("Feature", "Value");
  row("Num. of stim.", std::to_string(s.num_stimuli));
  row("Num. of keywords", std::to_string(s.num_keywords));
  row("Max. stim. per 1 keyword", std::to_string(s.max_per_keyword));
  row("Num. of keywords with 10+ stim.", std::to_string(s.histogram.ten_plus));
  row("Num. of keywords with 6-10 stim.", std::to_string(s.histogram.six_to_ten));
  row("Num. of keywords with 4-5 stim.", std::to_string(s.histogram.four_to_five));
  row("Num. of keywords with 2-3 stim.", std::to_string(s.histogram.two_to_three));
  row("Num. of keywords with 1 stim.", std::to_string(s.histogram.one));
  row("Avg. num. of stim. per 1 keyword", fixed3(s.mean_per_keyword));
  row("Mode of stim. per 1 keyword", std::to_string(s.mode_per_keyword));
  row("Median of stim. per 1 keyword", fixed3(s.median_per_keyword));
  row("Std.dev.", fixed3(s.stddev_per_keyword));
}

std::string stats_to_json(const ManifestStats& s) {
  nlohmann::ordered_json j;
  j["num_stimuli"] = s.num_stimuli;
  j["num_keywords"] = s.num_keywords;
  j["max_per_keyword"] = s.max_per_keyword;
  j["histogram"] = {
      {"10+", s.histogram.ten_plus},      {"6-10", s.histogram.six_to_ten},
      {"4-5", s.histogram.four_to_five},  {"2-3", s.histogram.two_to_three},
      {"1", s.histogram.one},
  };
  j["mean_per_keyword"] = s.mean_per_keyword;
  j["mode_per_keyword"] = s.mode_per_keyword;
  j["median_per_keyword"] = s.median_per_keyword;
  j["stddev_per_keyword"] = s.stddev_per_keyword;
  return j.dump(2);
}

}  // namespace affectont
