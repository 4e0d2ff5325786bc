#include "nslice/text_format.hpp"

#include <fstream>
#include <cstring>
#include <sstream>

namespace nslice {

static std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const DocEntry* DocSection::find(const std::string& key) const {
  for (const auto& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

std::string DocSection::require(const std::string& key) const {
  const auto* e = find(key);
  if (!e) throw ParseError(line, "missing key '" + key + "' in [" + name + "]");
  return e->value;
}

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string raw_line;
  int line_no = 0;
  while (std::getline(in, raw_line)) {
    ++line_no;
    const std::string line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      const std::string header = trim(line.substr(1, line.size() - 2));
      DocSection section;
      section.line = line_no;
      if (auto sp = header.find(' '); sp != std::string::npos) {
        section.name = header.substr(0, sp);
        section.arg = trim(header.substr(sp + 1));
      } else {
        section.name = header;
      }
      doc.sections.push_back(std::move(section));
      continue;
    }
    if (doc.sections.empty()) throw ParseError(line_no, "content before first section");
    DocSection& section = doc.sections.back();
    struct Sep {
      const char* token;
      Presence presence;
    };
    static const Sep seps[] = {{" ?= ", Presence::Optional},
                               {" ~= ", Presence::Conditional},
                               {" = ", Presence::Mandatory}};
    std::size_t best = std::string::npos;
    const Sep* best_sep = nullptr;
    for (const auto& sep : seps) {
      const auto pos = line.find(sep.token);
      if (pos != std::string::npos && pos < best) {
        best = pos;
        best_sep = &sep;
      }
    }
    if (best_sep) {
      DocEntry entry;
      entry.key = trim(line.substr(0, best));
      entry.value = trim(line.substr(best + std::strlen(best_sep->token)));
      entry.presence = best_sep->presence;
      entry.line = line_no;
      section.entries.push_back(std::move(entry));
    } else {
      section.raw.push_back(line);
    }
  }
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(0, "cannot write " + path);
  out << content;
}

static const char* presence_sep(Presence p) {
  switch (p) {
    case Presence::Optional: return " ?= ";
    case Presence::Conditional: return " ~= ";
    default: return " = ";
  }
}

std::string serialize_template(const SliceTemplate& tpl) {
  std::ostringstream out;
  out << "[template]\n";
  out << "id = " << tpl.id_info.template_id << "\n";
  out << "flavor = " << flavor_token(tpl.flavor) << "\n";
  if (tpl.service_category) out << "service_category = " << category_token(*tpl.service_category) << "\n";
  out << "tenant = " << tpl.id_info.tenant_id << "\n";
  out << "vertical = " << tpl.id_info.vertical_id << "\n";
  if (tpl.id_info.use_case_id) out << "use_case = " << *tpl.id_info.use_case_id << "\n";
  out << "level = " << level_token(tpl.id_info.level) << "\n";

  for (auto cat : {Category::Performance, Category::Functional, Category::Operational}) {
    // Schema rows first in schema order, then any extra names in document order.
    std::vector<const AttributeSpec*> rows;
    for (const auto& schema_row : standard_schema()) {
      if (schema_row.category != cat) continue;
      if (const auto* a = tpl.find_attribute(schema_row.name); a && a->category == cat)
        rows.push_back(a);
    }
    for (const auto& a : tpl.attributes)
      if (a.category == cat && !schema_lookup(a.name)) rows.push_back(&a);
    if (rows.empty()) continue;
    out << "\n[attributes " << category_name(cat) << "]\n";
    for (const auto* a : rows)
      out << a->name << presence_sep(a->presence) << format_value(a->value) << "\n";
  }

  out << "\n[resources]\n";
  for (std::size_t d = 0; d < kResourceDims; ++d) {
    const auto dim = static_cast<ResourceDim>(d);
    out << dim_name(dim) << " = " << tpl.resources.quantity[d] << " "
        << (tpl.resources.sharing[d] == Sharing::Shared ? "Shared" : "Dedicated") << "\n";
  }

  if (!tpl.sub_templates.empty()) {
    out << "\n[sub_templates]\n";
    for (const auto& id : tpl.sub_templates) out << id << "\n";
  }
  return out.str();
}

static Category parse_category_name(const std::string& s, int line) {
  if (s == "Performance") return Category::Performance;
  if (s == "Functional") return Category::Functional;
  if (s == "Operational") return Category::Operational;
  throw ParseError(line, "unknown attribute category '" + s + "'");
}

static SliceTemplate parse_block(const std::vector<const DocSection*>& block) {
  SliceTemplate tpl;
  for (const auto* section : block) {
    if (section->name == "template") {
      tpl.id_info.template_id = section->require("id");
      const auto flavor = parse_flavor_token(section->require("flavor"));
      if (!flavor) throw ParseError(section->line, "unknown flavor");
      tpl.flavor = *flavor;
      if (const auto* sc = section->find("service_category")) {
        const auto cat = parse_category_token(sc->value);
        if (!cat) throw ParseError(sc->line, "unknown service_category '" + sc->value + "'");
        tpl.service_category = cat;
      }
      tpl.id_info.tenant_id = section->require("tenant");
      tpl.id_info.vertical_id = section->require("vertical");
      if (const auto* uc = section->find("use_case")) tpl.id_info.use_case_id = uc->value;
      const auto level = parse_level_token(section->require("level"));
      if (!level) throw ParseError(section->line, "unknown level");
      tpl.id_info.level = *level;
    } else if (section->name == "attributes") {
      const Category cat = parse_category_name(section->arg, section->line);
      for (const auto& entry : section->entries) {
        AttributeSpec attr;
        attr.name = entry.key;
        attr.category = cat;
        attr.presence = entry.presence;
        auto value = parse_value(entry.value, schema_lookup(entry.key));
        if (!value) throw ParseError(entry.line, "cannot parse value '" + entry.value + "'");
        attr.value = std::move(*value);
        tpl.attributes.push_back(std::move(attr));
      }
    } else if (section->name == "resources") {
      for (std::size_t d = 0; d < kResourceDims; ++d) {
        const auto dim = static_cast<ResourceDim>(d);
        const auto* entry = section->find(dim_name(dim));
        if (!entry) continue;
        std::istringstream v(entry->value);
        std::int64_t qty = 0;
        std::string sharing;
        v >> qty >> sharing;
        if (v.fail()) throw ParseError(entry->line, "bad resource quantity");
        tpl.resources.quantity[d] = qty;
        if (sharing == "Shared")
          tpl.resources.sharing[d] = Sharing::Shared;
        else if (sharing == "Dedicated" || sharing.empty())
          tpl.resources.sharing[d] = Sharing::Dedicated;
        else
          throw ParseError(entry->line, "bad sharing mode '" + sharing + "'");
      }
    } else if (section->name == "sub_templates") {
      for (const auto& id : section->raw) tpl.sub_templates.push_back(id);
    }
  }
  return tpl;
}

std::vector<SliceTemplate> parse_templates(const Document& doc) {
  std::vector<SliceTemplate> result;
  std::vector<const DocSection*> block;
  auto flush = [&] {
    if (!block.empty()) result.push_back(parse_block(block));
    block.clear();
  };
  for (const auto& section : doc.sections) {
    if (section.name == "template") {
      flush();
      block.push_back(&section);
    } else if (!block.empty() && (section.name == "attributes" || section.name == "resources" ||
                                  section.name == "sub_templates")) {
      block.push_back(&section);
    } else {
      flush();
    }
  }
  flush();
  return result;
}

std::vector<SliceTemplate> load_templates(const std::string& path) {
  return parse_templates(parse_document(read_file(path)));
}

}  // namespace nslice
