#include <affectont/dublin_core.hpp>
#include <affectont/xml.hpp>


#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace affectont {

bool CalendarDate::valid() const {
  if (year < 1 || year > 9999) return false;
  return std::chrono::year_month_day{std::chrono::year{year}, std::chrono::month{month},
                                     std::chrono::day{day}}
      .ok();
}

std::string CalendarDate::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
  return buf;
}

CalendarDate CalendarDate::parse(std::string_view text) {
  const auto fail = [&]() -> CalendarDate {
    throw DublinCoreError("invalid calendar date '" + std::string(text) + "', expected YYYY-MM-DD");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return fail();
  const auto number = [&](std::size_t pos, std::size_t len, auto& out) {
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') fail();
    }
    std::from_chars(text.data() + pos, text.data() + pos + len, out);
  };
  CalendarDate d;
  number(0, 4, d.year);
  number(5, 2, d.month);
  number(8, 2, d.day);
  if (!d.valid()) return fail();
  return d;
}

std::string format_value(std::string_view resource, FormatStyle style) {
  MediaKind kind;
  try {
    kind = classify_extension(resource);
  } catch (const ClassificationError& e) {
    throw DublinCoreError(e.what());
  }
  if (style == FormatStyle::word) {
    switch (kind) {
      case MediaKind::image: return "Image";
      case MediaKind::sound: return "Sound";
      case MediaKind::video: return "Video";
    }
  }
  static const std::map<std::string, std::string, std::less<>> mime{
      {"jpg", "image/jpeg"},  {"jpeg", "image/jpeg"},     {"png", "image/png"},
      {"bmp", "image/bmp"},   {"wav", "audio/wav"},       {"mp3", "audio/mpeg"},
      {"ogg", "audio/ogg"},   {"mp4", "video/mp4"},       {"avi", "video/x-msvideo"},
      {"mkv", "video/x-matroska"}};
  return mime.at(resource_extension(resource));
}

std::string join_subjects(std::span<const std::string> keywords) {
  std::string out;
  for (const auto& k : keywords) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

DublinCoreRecord derive_record(const Stimulus& stimulus, std::string db_name, std::string creator,
                               std::string contributor, CalendarDate date, FormatStyle style) {
  DublinCoreRecord record;
  record.identifier = stimulus.id.str();
  record.creator = std::move(creator);
  record.subject = stimulus.raw_keyword;
  record.contributor = std::move(contributor);
  record.date = date;
  record.type = std::move(db_name);
  try {
    record.format = format_value(stimulus.resource, style);
  } catch (const DublinCoreError& e) {
    throw DublinCoreError("stimulus " + stimulus.id.str() + ": " + e.what());
  }
  validate_record(record);
  return record;
}

void validate_record(const DublinCoreRecord& record) {
  if (record.identifier.empty()) throw DublinCoreError("record has an empty identifier");
  if (!record.date.valid()) {
    throw DublinCoreError("record " + record.identifier + " has invalid date " + record.date.str());
  }
  const std::string& f = record.format;
  const bool word = f == "Image" || f == "Sound" || f == "Video";
  const bool mime = f.starts_with("image/") || f.starts_with("audio/") || f.starts_with("video/");
  if (!word && !mime) {
    throw DublinCoreError("record " + record.identifier + " has unknown format '" + f + "'");
  }
}

std::string serialize_dc(const DublinCoreRecord& record) {
  validate_record(record);
  std::ostringstream out;
  out << "<?xml version=\"1.0\"?>\n"
         "<!DOCTYPE rdf:RDF PUBLIC \"-//DUBLIN CORE//DCMES DTD 2002/07/31//EN\"\n"
         "\"http://dublincore.org/documents/2002/07/31/dcmes-xml/dcmes-xml-dtd.dtd\">\n"
         "<rdf:RDF xmlns:rdf=\"http://www.w3.org/1999/02/22-rdf-syntax-ns#\" "
         "xmlns:dc=\"http://purl.org/dc/elements/1.1/\">\n"
         "  <rdf:Description>\n";
  const std::pair<const char*, std::string> fields[] = {
      {"identifier", record.identifier}, {"creator", record.creator},
      {"subject", record.subject},       {"contributor", record.contributor},
      {"date", record.date.str()},       {"type", record.type},
      {"format", record.format}};
  for (const auto& [name, value] : fields) {
    out << "    <dc:" << name << '>' << xml_escape(value) << "</dc:" << name << ">\n";
  }
  out << "  </rdf:Description>\n"
         "</rdf:RDF>\n";
  return out.str();
}

std::vector<std::filesystem::path> write_dc_batch(std::span<const DublinCoreRecord> records,
                                                  const std::filesystem::path& directory) {
  std::vector<std::filesystem::path> written;
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw DublinCoreError("cannot create directory " + directory.string() + ": " + ec.message());
  for (const auto& record : records) {
    const std::string& id = record.identifier;
    if (id.empty() || id == "." || id == ".." || id.find_first_of("/\\") != std::string::npos) {
      throw DublinCoreError("identifier '" + id + "' cannot be used as a file name");
    }
    const std::string document = serialize_dc(record);
    const auto path = directory / (id + ".dc.rdf");
    std::ofstream out(path, std::ios::binary);
    if (!(out << document)) throw DublinCoreError("cannot write " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace affectont
