#pragma once

// Namespace-aware XML element tree and text escaping.

#include <affectont/common.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace affectont {

class XmlError : public Error {
 public:
  XmlError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct XmlAttribute {
  std::string ns;
  std::string local;
  std::string value;
};

struct XmlElement {
  std::string ns;
  std::string local;
  std::vector<XmlAttribute> attributes;
  std::vector<XmlElement> children;
  /// Character data directly inside this element, concatenated.
  std::string text;
  std::size_t line = 0;

  const std::string* attribute(std::string_view ns_uri, std::string_view name) const;
  bool is(std::string_view ns_uri, std::string_view name) const {
    return ns == ns_uri && local == name;
  }
};

/// Parses a complete document and returns its root element. Comments,
/// processing instructions and the doctype are dropped; external entities are
/// never fetched.
XmlElement parse_xml(std::string_view document);

/// Escapes &, <, >, " and ' for use in text or attribute values.
std::string xml_escape(std::string_view text);

}  // namespace affectont
