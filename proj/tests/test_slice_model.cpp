#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "helpers.hpp"
#include "nslice/slice_model.hpp"
#include "nslice/text_format.hpp"

using namespace nslice;
using nslice::testing::fixture;
using nslice::testing::make_template;
using nslice::testing::random_template;

TEST_CASE("fixture templates validate cleanly") {
  for (const char* name :
       {"v2x_us_autonomous_driving.nst", "v2x_us_infotainment.nst", "v2x_us_remote_diagnostics.nst",
        "v2x_gn_nsit.nst", "v2x_s_autonomous_driving.nst", "v2x_s_infotainment.nst",
        "v2x_s_remote_diagnostics.nst"}) {
    const auto tpls = load_templates(fixture(name));
    REQUIRE(tpls.size() == 1);
    const auto report = validate_template(tpls[0]);
    INFO(name, ": ", report.violations.empty() ? "" : report.violations[0]);
    CHECK(report.ok());
  }
}

// Field-deletion oracle: removing any one schema attribute from a complete
// template must produce exactly the matching missing-mandatory violation.
TEST_CASE("every schema attribute is mandatory on slice-level templates") {
  for (auto flavor : {TemplateFlavor::UsNsit, TemplateFlavor::SNsit}) {
    const auto base = make_template("t.base", flavor);
    REQUIRE(validate_template(base).ok());
    for (const auto& row : standard_schema()) {
      SliceTemplate mutated = base;
      std::erase_if(mutated.attributes,
                    [&](const AttributeSpec& a) { return a.name == row.name; });
      const auto report = validate_template(mutated);
      REQUIRE(report.violations.size() == 1);
      CHECK(report.violations[0] == "missing mandatory attribute: " + row.name);
    }
  }
}

TEST_CASE("level must match flavor") {
  auto t = make_template("t.lvl", TemplateFlavor::UsNsit);
  t.id_info.level = TemplateLevel::VerticalGeneric;
  const auto report = validate_template(t);
  CHECK(std::any_of(report.violations.begin(), report.violations.end(), [](const std::string& v) {
    return v.find("level does not match flavor") != std::string::npos;
  }));
}

TEST_CASE("GN-NSIT sub-template cardinality: 1..8 legal, 0 and 9 illegal") {
  for (std::size_t n = 0; n <= 9; ++n) {
    auto gn = make_template("t.gn", TemplateFlavor::GnNsit);
    for (std::size_t i = 0; i < n; ++i) gn.sub_templates.push_back("t.gn.s" + std::to_string(i));
    const auto report = validate_template(gn);
    const bool legal = n >= 1 && n <= 8;
    INFO("n = ", n);
    CHECK(report.ok() == legal);
  }
}

TEST_CASE("sub_templates are rejected off a GN-NSIT") {
  auto t = make_template("t.us", TemplateFlavor::UsNsit);
  t.sub_templates.push_back("x");
  CHECK(!validate_template(t).ok());
}

TEST_CASE("GN-NSIT must not pin a service category") {
  auto gn = make_template("t.gn", TemplateFlavor::GnNsit);
  gn.sub_templates.push_back("t.gn.a");
  gn.service_category = ServiceCategory::uRLLC;
  CHECK(!validate_template(gn).ok());
}

TEST_CASE("negative resources, bad ranges and out-of-range percentages are violations") {
  auto t = make_template("t.bad", TemplateFlavor::UsNsit);
  t.resources[ResourceDim::Radio] = -1;
  CHECK(!validate_template(t).ok());

  auto r = make_template("t.bad2", TemplateFlavor::UsNsit);
  for (auto& a : r.attributes)
    if (a.name == "Latency") a.value = Range{50.0, 10.0, "ms"};
  CHECK(!validate_template(r).ok());

  auto p = make_template("t.bad3", TemplateFlavor::UsNsit);
  for (auto& a : p.attributes)
    if (a.name == "Reliability") a.value = Scalar{120.0, "%"};
  CHECK(!validate_template(p).ok());

  auto u = make_template("t.bad4", TemplateFlavor::UsNsit);
  for (auto& a : u.attributes)
    if (a.name == "Data rate") a.value = Scalar{10.0, "ms"};
  CHECK(!validate_template(u).ok());
}

static Vertical three_use_cases() {
  Vertical v;
  v.vertical_id = "vert-a";
  v.tenant_id = "tenant-a";
  v.use_cases.push_back({"fast", ServiceCategory::uRLLC, {}});
  v.use_cases.push_back({"wide", ServiceCategory::eMBB, {}});
  v.use_cases.push_back({"dense", ServiceCategory::mMTC, {}});
  return v;
}

TEST_CASE("derive_snsits: one S-NSIT per use case, ids and subset law") {
  auto gn = make_template("vert.gn", TemplateFlavor::GnNsit);
  gn.sub_templates.push_back("placeholder");
  const auto vertical = three_use_cases();
  const auto result = derive_snsits(gn, vertical);
  REQUIRE(!result.error.has_value());
  REQUIRE(result.snsits.size() == 3);
  std::set<std::string> parent_names;
  for (const auto& a : gn.attributes) parent_names.insert(a.name);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& s = result.snsits[i];
    CHECK(s.flavor == TemplateFlavor::SNsit);
    CHECK(s.id_info.level == TemplateLevel::Sub);
    CHECK(s.id_info.template_id == "vert.gn." + vertical.use_cases[i].use_case_id);
    CHECK(s.id_info.use_case_id == vertical.use_cases[i].use_case_id);
    CHECK(s.service_category == vertical.use_cases[i].service_category);
    CHECK(validate_template(s).ok());
    for (const auto& a : s.attributes) CHECK(parent_names.count(a.name) == 1);
  }
  // Deterministic: a second derivation is identical.
  const auto again = derive_snsits(gn, vertical);
  CHECK(again.snsits == result.snsits);
}

TEST_CASE("derive_snsits overrides tighten but never widen") {
  auto gn = make_template("vert.gn", TemplateFlavor::GnNsit);
  gn.sub_templates.push_back("placeholder");
  for (auto& a : gn.attributes)
    if (a.name == "Latency") a.value = Range{1.0, 100.0, "ms"};
  Vertical v = three_use_cases();
  v.use_cases.resize(1);
  v.use_cases[0].overrides.push_back(
      {"Latency", Category::Performance, Range{1.0, 10.0, "ms"}, Presence::Mandatory});
  auto tightened = derive_snsits(gn, v);
  REQUIRE(tightened.snsits.size() == 1);
  CHECK(*tightened.snsits[0].find_attribute("Latency") ==
        AttributeSpec{"Latency", Category::Performance, Range{1.0, 10.0, "ms"},
                      Presence::Mandatory});

  // A widening override is ignored and the parent value kept.
  v.use_cases[0].overrides[0].value = Range{1.0, 500.0, "ms"};
  auto widened = derive_snsits(gn, v);
  REQUIRE(widened.snsits.size() == 1);
  CHECK(std::get<Range>(widened.snsits[0].find_attribute("Latency")->value).upper == 100.0);

  // Override names absent from the parent are dropped (subset law).
  v.use_cases[0].overrides[0] = {"Custom knob", Category::Functional, TextValue{"x"},
                                 Presence::Mandatory};
  auto dropped = derive_snsits(gn, v);
  REQUIRE(dropped.snsits.size() == 1);
  CHECK(dropped.snsits[0].find_attribute("Custom knob") == nullptr);
}

TEST_CASE("derive_snsits error paths") {
  const auto us = make_template("t.us", TemplateFlavor::UsNsit);
  CHECK(derive_snsits(us, three_use_cases()).error == DeriveError::InvalidParent);

  auto gn = make_template("vert.gn", TemplateFlavor::GnNsit);
  gn.sub_templates.push_back("placeholder");
  Vertical big = three_use_cases();
  for (int i = 0; i < 7; ++i)
    big.use_cases.push_back({"uc" + std::to_string(i), ServiceCategory::mMTC, {}});
  CHECK(derive_snsits(gn, big).error == DeriveError::TooManyUseCases);

  auto broken = gn;
  broken.attributes.clear();
  CHECK(derive_snsits(broken, three_use_cases()).error == DeriveError::InvalidParent);
}

// Dimension-wise summation oracle: the three subnet templates must jointly
// account for every unit of the parent demand, with no dimension counted
// twice and each dimension landing on the right subnet.
TEST_CASE("derive_nssits conserves resources dimension-wise over random templates") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const auto flavor = trial % 2 == 0 ? TemplateFlavor::UsNsit : TemplateFlavor::SNsit;
    const auto parent = random_template(rng, "rt" + std::to_string(trial), flavor);
    REQUIRE(validate_template(parent).ok());
    const auto triple = derive_nssits(parent);
    REQUIRE(!triple.error.has_value());
    for (std::size_t d = 0; d < kResourceDims; ++d) {
      const auto dim = static_cast<ResourceDim>(d);
      const auto total =
          triple.core.resources[dim] + triple.ran.resources[dim] + triple.tn.resources[dim];
      CHECK(total == parent.resources[dim]);
      CHECK(triple.core.resources.sharing_of(dim) == parent.resources.sharing_of(dim));
    }
    CHECK(triple.core.resources[ResourceDim::Radio] == 0);
    CHECK(triple.core.resources[ResourceDim::Communication] == 0);
    CHECK(triple.ran.resources[ResourceDim::Computation] == 0);
    CHECK(triple.tn.resources[ResourceDim::Storage] == 0);
    CHECK(triple.core.flavor == TemplateFlavor::Nssit5GC);
    CHECK(triple.ran.flavor == TemplateFlavor::NssitNgRan);
    CHECK(triple.tn.flavor == TemplateFlavor::NssitTn);
    CHECK(triple.core.id_info.template_id == parent.id_info.template_id + ".5gc");
    CHECK(triple.ran.id_info.template_id == parent.id_info.template_id + ".ran");
    CHECK(triple.tn.id_info.template_id == parent.id_info.template_id + ".tn");
  }
}

TEST_CASE("derive_nssits rejects non-slice parents") {
  auto gn = make_template("t.gn", TemplateFlavor::GnNsit);
  gn.sub_templates.push_back("x");
  CHECK(derive_nssits(gn).error == DeriveError::InvalidParent);
  CHECK(derive_nssits(make_template("t.sub", TemplateFlavor::Nssit5GC)).error ==
        DeriveError::InvalidParent);
}

TEST_CASE("required_slice_count: n top-level for US, 1 + n sub for GN") {
  for (std::size_t n = 1; n <= 8; ++n) {
    Vertical v;
    v.vertical_id = "v";
    v.tenant_id = "t";
    for (std::size_t i = 0; i < n; ++i)
      v.use_cases.push_back({"uc" + std::to_string(i), ServiceCategory::eMBB, {}});
    CHECK(required_slice_count(v, ProvisioningMode::UseCaseSpecific) == SliceCardinality{n, 0});
    CHECK(required_slice_count(v, ProvisioningMode::SubNetworkSlicing) == SliceCardinality{1, n});
  }
}
