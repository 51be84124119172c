#include <affectont/xml.hpp>

#include <expat.h>

#include <limits>
#include <memory>

namespace affectont {

XmlError::XmlError(std::size_t line, const std::string& message)
    : Error("XML line " + std::to_string(line) + ": " + message), line_(line) {}

const std::string* XmlElement::attribute(std::string_view ns_uri, std::string_view name) const {
  for (const auto& a : attributes) {
    if (a.ns == ns_uri && a.local == name) return &a.value;
  }
  return nullptr;
}

namespace {

constexpr char kNsSeparator = '\x01';

void split_name(const XML_Char* qualified, std::string& ns, std::string& local) {
  const std::string_view name(qualified);
  const auto sep = name.find(kNsSeparator);
  if (sep == std::string_view::npos) {
    ns.clear();
    local = name;
  } else {
    ns = name.substr(0, sep);
    local = name.substr(sep + 1);
  }
}

struct TreeBuilder {
  XML_Parser parser = nullptr;
  XmlElement root;
  std::vector<XmlElement*> stack;
  bool have_root = false;

  static void on_start(void* data, const XML_Char* name, const XML_Char** attrs) {
    auto* self = static_cast<TreeBuilder*>(data);
    XmlElement element;
    split_name(name, element.ns, element.local);
    element.line = XML_GetCurrentLineNumber(self->parser);
    for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
      XmlAttribute a;
      split_name(attrs[i], a.ns, a.local);
      a.value = attrs[i + 1];
      element.attributes.push_back(std::move(a));
    }
    if (self->stack.empty()) {
      self->root = std::move(element);
      self->have_root = true;
      self->stack.push_back(&self->root);
    } else {
      auto& siblings = self->stack.back()->children;
      siblings.push_back(std::move(element));
      self->stack.push_back(&siblings.back());
    }
  }

  static void on_end(void* data, const XML_Char*) {
    static_cast<TreeBuilder*>(data)->stack.pop_back();
  }

  static void on_text(void* data, const XML_Char* s, int len) {
    auto* self = static_cast<TreeBuilder*>(data);
    if (!self->stack.empty()) self->stack.back()->text.append(s, static_cast<std::size_t>(len));
  }
};

}  // namespace

XmlElement parse_xml(std::string_view document) {
  if (document.size() > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw XmlError(0, "document too large");
  }
  std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(
      XML_ParserCreateNS("UTF-8", kNsSeparator), &XML_ParserFree);
  if (!parser) throw XmlError(0, "cannot create XML parser");
  TreeBuilder builder;
  builder.parser = parser.get();
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), &TreeBuilder::on_start, &TreeBuilder::on_end);
  XML_SetCharacterDataHandler(parser.get(), &TreeBuilder::on_text);
  XML_SetParamEntityParsing(parser.get(), XML_PARAM_ENTITY_PARSING_NEVER);
  if (XML_Parse(parser.get(), document.data(), static_cast<int>(document.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw XmlError(XML_GetCurrentLineNumber(parser.get()),
                   XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!builder.have_root) throw XmlError(0, "no root element");
  return std::move(builder.root);
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace affectont
