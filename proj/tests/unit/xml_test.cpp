#include <affectont/xml.hpp>

#include <gtest/gtest.h>

namespace affectont {
namespace {

constexpr std::string_view kNs = "urn:x#";

TEST(Xml, NamespacesAttributesAndText) {
  const auto root = parse_xml(
      "<?xml version=\"1.0\"?>\n"
      "<r xmlns=\"urn:x#\" xmlns:y=\"urn:y#\">\n"
      "  <y:item y:name=\"a &amp; b\" plain=\"1\">t&lt;1</y:item>\n"
      "</r>\n");
  EXPECT_TRUE(root.is(kNs, "r"));
  ASSERT_EQ(root.children.size(), 1u);
  const auto& item = root.children[0];
  EXPECT_TRUE(item.is("urn:y#", "item"));
  EXPECT_EQ(item.line, 3u);
  ASSERT_NE(item.attribute("urn:y#", "name"), nullptr);
  EXPECT_EQ(*item.attribute("urn:y#", "name"), "a & b");
  ASSERT_NE(item.attribute("", "plain"), nullptr);
  EXPECT_EQ(item.attribute("urn:y#", "missing"), nullptr);
  EXPECT_EQ(item.text, "t<1");
}

TEST(Xml, ErrorsReportLine) {
  try {
    parse_xml("<a>\n<b>\n</a>");
    FAIL();
  } catch (const XmlError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_xml(""), XmlError);
  EXPECT_THROW(parse_xml("<a/><b/>"), XmlError);
}

TEST(Xml, ExternalEntitiesAreNotExpanded) {
  try {
    const auto root = parse_xml("<!DOCTYPE a [<!ENTITY e SYSTEM \"file:///etc/passwd\">]><a>&e;</a>");
    EXPECT_EQ(root.text.find("root"), std::string::npos);
  } catch (const XmlError&) {
  }
}

TEST(Xml, Escape) {
  EXPECT_EQ(xml_escape("a<b>&\"c'"), "a&lt;b&gt;&amp;&quot;c&apos;");
  EXPECT_EQ(xml_escape("plain"), "plain");
}

}  // namespace
}  // namespace affectont
