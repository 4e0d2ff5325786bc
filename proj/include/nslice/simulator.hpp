#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nslice/broker.hpp"
#include "nslice/catalogue.hpp"
#include "nslice/infrastructure.hpp"
#include "nslice/orchestration.hpp"

namespace nslice {

struct UeProfile {
  std::string ue_id;
  std::string vertical_id;
  std::vector<std::string> subscribed_use_cases;
  std::string mobility_tag;
  bool d2d_capable = false;
};

struct ScheduledEvent {
  std::int64_t time = 0;
  int seq = 0;
  std::string verb;
  std::vector<std::string> args;
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  std::int64_t horizon = 0;
  Substrate substrate;
  Catalogue catalogue;
  std::vector<Vertical> verticals;
  std::vector<UeProfile> ues;
  std::vector<ScheduledEvent> schedule;

  const Vertical* find_vertical(const std::string& id) const;
  std::vector<std::string> validate() const;  // schedule times <= horizon, refs resolve

  /// Loads a scenario document; substrate/catalogue paths resolve relative to
  /// the scenario file. Throws ParseError.
  static Scenario load(const std::string& path);
};

struct UeState {
  std::string ue_id;
  std::set<std::string> attached_slices;  // instance ids, <= 8
  std::string serving_gnb;
  std::optional<std::string> amf_binding;            // shared across all attachments
  std::map<std::string, std::string> smf_bindings;   // one per attached slice
};

enum class AttachError { TooManySlices, SliceNotActive };
const char* attach_error_name(AttachError e);

/// 3GPP cap: at most eight concurrent slices per UE, one common AMF binding,
/// one SMF binding per slice.
std::optional<AttachError> attach_ue(UeState& ue, const SliceInstance& slice,
                                     const std::string& gnb_id);
void detach_ue(UeState& ue, const std::string& slice_instance_id);

struct MetricsReport {
  ProvisioningMode mode = ProvisioningMode::UseCaseSpecific;
  std::size_t requests = 0;
  std::size_t requests_granted = 0;
  std::size_t slices_requested = 0;
  std::size_t slices_admitted = 0;
  std::size_t top_level_slices = 0;
  std::size_t sub_slices = 0;
  std::size_t sla_count = 0;
  std::size_t channel_count = 0;
  double admission_ratio = 1.0;
  std::array<double, kResourceDims> util_mean{};
  std::array<double, kResourceDims> util_peak{};
  std::size_t isolation_violations = 0;
  std::map<std::string, bool> qos_satisfied;  // slice instance -> static QoS check
  std::uint64_t digest = 0;

  std::string serialize(bool pretty) const;
};

struct RunResult {
  MetricsReport report;
  std::vector<std::string> event_log;
};

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic: identical (scenario, mode) gives a bit-identical report and
/// event log. Throws InvariantViolation on any internal consistency breach.
RunResult run(const Scenario& scenario, ProvisioningMode mode);

struct CompareResult {
  MetricsReport us;
  MetricsReport gn;
  struct Row {
    std::string name;
    std::string us_value;
    std::string gn_value;
    bool diverges = false;
  };
  std::vector<Row> rows;

  std::string serialize(bool pretty) const;
};

/// Runs both modes on the identical schedule and seed and tabulates deltas.
CompareResult compare_modes(const Scenario& scenario);

}  // namespace nslice
