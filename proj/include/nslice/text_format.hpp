#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nslice/slice_model.hpp"

namespace nslice {

struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

/// `key = value` entry; presence markers `?=` and `~=` carry the Optional and
/// Conditional classes.
struct DocEntry {
  std::string key;
  std::string value;
  Presence presence = Presence::Mandatory;
  int line = 0;
};

struct DocSection {
  std::string name;  // "[attributes Performance]" -> name "attributes", arg "Performance"
  std::string arg;
  std::vector<DocEntry> entries;
  std::vector<std::string> raw;  // non key=value lines, e.g. id lists and event rows
  int line = 0;

  const DocEntry* find(const std::string& key) const;
  std::string require(const std::string& key) const;
};

struct Document {
  std::vector<DocSection> sections;
};

Document parse_document(const std::string& text);

std::string read_file(const std::string& path);      // throws ParseError on I/O failure
void write_file(const std::string& path, const std::string& content);

/// Canonical template document text; parse(serialize(t)) == t.
std::string serialize_template(const SliceTemplate& tpl);

/// Parses every [template] block in the document, in order.
std::vector<SliceTemplate> parse_templates(const Document& doc);

std::vector<SliceTemplate> load_templates(const std::string& path);

}  // namespace nslice
