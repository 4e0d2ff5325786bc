#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "nslice/text_format.hpp"

using namespace nslice;
using nslice::testing::fixture;
using nslice::testing::random_template;

TEST_CASE("parse_document: sections, args, entries, presence markers, raw lines") {
  const std::string text =
      "[alpha one]\n"
      "key = value\n"
      "opt ?= maybe\n"
      "cond ~= depends\n"
      "\n"
      "[beta]\n"
      "raw line here\n"
      "# a comment\n"
      "x = 1\n";
  const auto doc = parse_document(text);
  REQUIRE(doc.sections.size() == 2);
  CHECK(doc.sections[0].name == "alpha");
  CHECK(doc.sections[0].arg == "one");
  REQUIRE(doc.sections[0].entries.size() == 3);
  CHECK(doc.sections[0].entries[0].key == "key");
  CHECK(doc.sections[0].entries[0].value == "value");
  CHECK(doc.sections[0].entries[0].presence == Presence::Mandatory);
  CHECK(doc.sections[0].entries[1].presence == Presence::Optional);
  CHECK(doc.sections[0].entries[2].presence == Presence::Conditional);
  CHECK(doc.sections[1].arg.empty());
  REQUIRE(doc.sections[1].raw.size() == 1);
  CHECK(doc.sections[1].raw[0] == "raw line here");
  CHECK(doc.sections[1].require("x") == "1");
  CHECK(doc.sections[1].find("missing") == nullptr);
}

TEST_CASE("parse_document rejects malformed input with a line number") {
  CHECK_THROWS_AS(parse_document("stray line before any section\n"), ParseError);
  CHECK_THROWS_AS(parse_document("[unterminated\nk = v\n"), ParseError);
  try {
    parse_document("[s]\nok = 1\n[broken\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("require on a missing key throws") {
  const auto doc = parse_document("[s]\nk = v\n");
  CHECK_THROWS_AS((void)doc.sections[0].require("absent"), ParseError);
}

// Byte-exactness: each fixture was written in canonical form, so
// serialize(parse(file)) must reproduce the file identically.
TEST_CASE("fixture templates round-trip byte-identically") {
  for (const char* name :
       {"v2x_us_autonomous_driving.nst", "v2x_us_infotainment.nst", "v2x_us_remote_diagnostics.nst",
        "v2x_gn_nsit.nst", "v2x_s_autonomous_driving.nst", "v2x_s_infotainment.nst",
        "v2x_s_remote_diagnostics.nst"}) {
    const auto original = read_file(fixture(name));
    const auto tpls = parse_templates(parse_document(original));
    REQUIRE(tpls.size() == 1);
    INFO(name);
    CHECK(serialize_template(tpls[0]) == original);
  }
}

TEST_CASE("random templates survive a serialize/parse round trip") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = random_template(rng, "round.trip" + std::to_string(trial),
                             trial % 3 == 0 ? TemplateFlavor::SNsit : TemplateFlavor::UsNsit);
    if (trial % 5 == 0) {
      t = random_template(rng, "round.gn" + std::to_string(trial), TemplateFlavor::GnNsit);
      t.sub_templates = {"round.gn.a", "round.gn.b"};
    }
    const auto text = serialize_template(t);
    const auto back = parse_templates(parse_document(text));
    REQUIRE(back.size() == 1);
    INFO("trial ", trial, "\n", text);
    CHECK(back[0] == t);
    // And the canonical form is a fixed point.
    CHECK(serialize_template(back[0]) == text);
  }
}

TEST_CASE("multi-template documents parse in order") {
  std::mt19937 rng(7);
  const auto a = random_template(rng, "doc.a");
  const auto b = random_template(rng, "doc.b");
  const auto text = serialize_template(a) + "\n" + serialize_template(b);
  const auto tpls = parse_templates(parse_document(text));
  REQUIRE(tpls.size() == 2);
  CHECK(tpls[0] == a);
  CHECK(tpls[1] == b);
}

TEST_CASE("read_file on a missing path throws ParseError") {
  CHECK_THROWS_AS((void)read_file("/nonexistent/really/not/here.nst"), ParseError);
}
