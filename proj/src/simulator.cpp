#include "nslice/simulator.hpp"

#include <algorithm>
#include <iomanip>
#include <cstring>
#include <sstream>

#include "nslice/text_format.hpp"

namespace nslice {

const char* attach_error_name(AttachError e) {
  switch (e) {
    case AttachError::TooManySlices: return "TooManySlices";
    case AttachError::SliceNotActive: return "SliceNotActive";
  }
  return "?";
}

const Vertical* Scenario::find_vertical(const std::string& id) const {
  for (const auto& v : verticals)
    if (v.vertical_id == id) return &v;
  return nullptr;
}

static std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

static std::string dirname_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

Scenario Scenario::load(const std::string& path) {
  const Document doc = parse_document(read_file(path));
  const std::string base = dirname_of(path);
  Scenario sc;
  for (const auto& section : doc.sections) {
    if (section.name == "scenario") {
      if (const auto* e = section.find("name")) sc.name = e->value;
      if (const auto* e = section.find("seed")) sc.seed = std::stoull(e->value);
      sc.horizon = std::stoll(section.require("horizon"));
      sc.substrate = Substrate::parse(read_file(base + "/" + section.require("substrate")));
      sc.catalogue = Catalogue::load(read_file(base + "/" + section.require("catalogue")));
    } else if (section.name == "vertical") {
      Vertical v;
      v.vertical_id = section.arg;
      v.tenant_id = section.require("tenant");
      for (const auto& uc_spec : split_list(section.require("use_cases"))) {
        const auto colon = uc_spec.find(':');
        if (colon == std::string::npos)
          throw ParseError(section.line, "use case needs 'id:category': " + uc_spec);
        UseCase uc;
        uc.use_case_id = uc_spec.substr(0, colon);
        const auto cat = parse_category_token(uc_spec.substr(colon + 1));
        if (!cat) throw ParseError(section.line, "unknown service category in " + uc_spec);
        uc.service_category = *cat;
        v.use_cases.push_back(std::move(uc));
      }
      sc.verticals.push_back(std::move(v));
    } else if (section.name == "ue") {
      UeProfile ue;
      ue.ue_id = section.arg;
      ue.vertical_id = section.require("vertical");
      ue.subscribed_use_cases = split_list(section.require("subscribes"));
      if (const auto* e = section.find("mobility")) ue.mobility_tag = e->value;
      if (const auto* e = section.find("d2d")) ue.d2d_capable = e->value == "yes";
      sc.ues.push_back(std::move(ue));
    } else if (section.name == "events") {
      int seq = 0;
      for (const auto& line : section.raw) {
        std::istringstream in(line);
        ScheduledEvent ev;
        if (!(in >> ev.time >> ev.verb)) throw ParseError(section.line, "bad event line: " + line);
        std::string arg;
        while (in >> arg) ev.args.push_back(arg);
        ev.seq = seq++;
        sc.schedule.push_back(std::move(ev));
      }
    }
  }
  return sc;
}

std::vector<std::string> Scenario::validate() const {
  std::vector<std::string> problems;
  static const std::set<std::string> known_verbs = {
      "request", "start",  "stop",   "terminate", "deactivate", "activate",
      "attach",  "detach", "fault",  "perf",      "config"};
  std::set<std::string> vertical_ids, ue_ids;
  for (const auto& v : verticals) {
    if (!vertical_ids.insert(v.vertical_id).second)
      problems.push_back("duplicate vertical " + v.vertical_id);
    if (v.use_cases.empty()) problems.push_back("vertical " + v.vertical_id + " has no use cases");
    std::set<std::string> uc_ids;
    for (const auto& uc : v.use_cases)
      if (!uc_ids.insert(uc.use_case_id).second)
        problems.push_back("duplicate use case " + uc.use_case_id);
  }
  for (const auto& ue : ues) {
    if (!ue_ids.insert(ue.ue_id).second) problems.push_back("duplicate ue " + ue.ue_id);
    if (!find_vertical(ue.vertical_id))
      problems.push_back("ue " + ue.ue_id + " references unknown vertical " + ue.vertical_id);
  }
  for (const auto& ev : schedule) {
    if (ev.time > horizon)
      problems.push_back("event at t=" + std::to_string(ev.time) + " beyond horizon");
    if (!known_verbs.count(ev.verb)) problems.push_back("unknown event verb " + ev.verb);
    if ((ev.verb == "attach" || ev.verb == "detach") && ev.args.size() >= 1 &&
        !std::any_of(ues.begin(), ues.end(),
                     [&](const UeProfile& u) { return u.ue_id == ev.args[0]; }))
      problems.push_back(ev.verb + " references unknown ue " + ev.args[0]);
  }
  for (auto& p : substrate.validate()) problems.push_back("substrate: " + p);
  for (auto& p : catalogue.check_integrity()) problems.push_back("catalogue: " + p);
  return problems;
}

std::optional<AttachError> attach_ue(UeState& ue, const SliceInstance& slice,
                                     const std::string& gnb_id) {
  if (slice.phase != Phase::Running && slice.phase != Phase::Activated)
    return AttachError::SliceNotActive;
  if (ue.attached_slices.count(slice.instance_id)) return std::nullopt;  // already attached
  if (ue.attached_slices.size() >= kMaxSubSlices) return AttachError::TooManySlices;
  ue.attached_slices.insert(slice.instance_id);
  ue.serving_gnb = gnb_id;
  if (!ue.amf_binding) ue.amf_binding = "amf/" + ue.ue_id;
  ue.smf_bindings[slice.instance_id] = "smf/" + ue.ue_id + "/" + slice.instance_id;
  return std::nullopt;
}

void detach_ue(UeState& ue, const std::string& slice_instance_id) {
  ue.attached_slices.erase(slice_instance_id);
  ue.smf_bindings.erase(slice_instance_id);
}

std::string MetricsReport::serialize(bool pretty) const {
  std::ostringstream out;
  if (pretty) {
    out << "=== metrics (" << mode_token(mode) << ") ===\n";
    out << "  requests granted          " << requests_granted << "/" << requests << "\n";
    out << "  slices admitted           " << slices_admitted << "/" << slices_requested << "\n";
    out << "  top-level / sub slices    " << top_level_slices << " / " << sub_slices << "\n";
    out << "  SLAs / API channels       " << sla_count << " / " << channel_count << "\n";
    out << "  admission ratio           " << format_number(admission_ratio) << "\n";
    for (std::size_t d = 0; d < kResourceDims; ++d)
      out << "  util " << std::left << std::setw(14) << dim_name(static_cast<ResourceDim>(d))
          << " mean " << format_number(util_mean[d]) << " peak " << format_number(util_peak[d])
          << "\n";
    out << "  isolation violations      " << isolation_violations << "\n";
    out << "  digest                    " << std::hex << digest << std::dec << "\n";
    return out.str();
  }
  out << "[report]\n";
  out << "mode = " << mode_token(mode) << "\n";
  out << "requests = " << requests << "\n";
  out << "requests_granted = " << requests_granted << "\n";
  out << "slices_requested = " << slices_requested << "\n";
  out << "slices_admitted = " << slices_admitted << "\n";
  out << "top_level_slices = " << top_level_slices << "\n";
  out << "sub_slices = " << sub_slices << "\n";
  out << "sla_count = " << sla_count << "\n";
  out << "channel_count = " << channel_count << "\n";
  out << "admission_ratio = " << format_number(admission_ratio) << "\n";
  for (std::size_t d = 0; d < kResourceDims; ++d) {
    out << "util_mean_" << dim_name(static_cast<ResourceDim>(d)) << " = "
        << format_number(util_mean[d]) << "\n";
    out << "util_peak_" << dim_name(static_cast<ResourceDim>(d)) << " = "
        << format_number(util_peak[d]) << "\n";
  }
  out << "isolation_violations = " << isolation_violations << "\n";
  for (const auto& [slice, ok] : qos_satisfied)
    out << "qos " << slice << " = " << (ok ? "satisfied" : "unsatisfied") << "\n";
  out << "digest = " << std::hex << digest << std::dec << "\n";
  return out.str();
}

namespace {

class Engine {
 public:
  Engine(const Scenario& scenario, ProvisioningMode mode)
      : scenario_(scenario),
        mode_(mode),
        orch_(&scenario.catalogue, scenario.substrate),
        broker_(&orch_, &scenario.catalogue) {}

  RunResult execute();

 private:
  void apply(const ScheduledEvent& ev);
  void log_event(const ScheduledEvent& ev, const std::string& outcome);
  void sample_and_audit();
  int event_priority(const ScheduledEvent& ev) const;

  const SliceInstance* slice_for(const std::string& vertical_id, const std::string& use_case) const;
  std::vector<const SliceInstance*> top_level_of(const std::string& vertical_id) const;
  const ApiChannel* master_channel(const std::string& vertical_id) const;

  std::string do_request(const ScheduledEvent& ev);
  std::string do_start(const std::string& vertical_id);
  std::string do_stop(const std::string& vertical_id);
  std::string do_terminate(const std::string& vertical_id);
  std::string do_use_case_transition(const std::string& vertical_id, const std::string& use_case,
                                     LifecycleEvent event);
  std::string do_attach(const std::string& ue_id, const std::string& use_case);
  std::string do_detach(const std::string& ue_id, const std::string& use_case);
  std::string do_fcaps(FcapsKind kind, const std::string& component);

  const Scenario& scenario_;
  ProvisioningMode mode_;
  Orchestrator orch_;
  Broker broker_;
  std::map<std::string, UeState> ue_states_;
  UeDirectory ue_directory_;
  std::vector<std::string> event_log_;
  std::vector<std::array<double, kResourceDims>> util_samples_;
  std::size_t isolation_violations_ = 0;
  std::int64_t now_ = 0;
};

int Engine::event_priority(const ScheduledEvent& ev) const {
  // Tie-break between simultaneous events: the target use case's "Priority"
  // attribute, highest first.
  std::string vertical, use_case;
  if (ev.verb == "attach" || ev.verb == "detach") {
    for (const auto& ue : scenario_.ues)
      if (ue.ue_id == ev.args.at(0)) vertical = ue.vertical_id;
    if (ev.args.size() > 1) use_case = ev.args[1];
  } else if (ev.verb == "deactivate" || ev.verb == "activate") {
    vertical = ev.args.at(0);
    if (ev.args.size() > 1) use_case = ev.args[1];
  } else {
    return 0;
  }
  int best = 0;
  for (const auto& resolved : scenario_.catalogue.lookup(vertical, mode_)) {
    if (!use_case.empty() && resolved.tpl.id_info.use_case_id != use_case) continue;
    if (const auto* attr = resolved.tpl.find_attribute("Priority"))
      if (const auto* ord = std::get_if<OrdinalValue>(&attr->value))
        best = std::max(best, static_cast<int>(ord->level));
  }
  return best;
}

const SliceInstance* Engine::slice_for(const std::string& vertical_id,
                                       const std::string& use_case) const {
  const auto want = mode_ == ProvisioningMode::UseCaseSpecific ? InstanceKind::UsNsi
                                                               : InstanceKind::SNsi;
  for (const auto& [id, inst] : orch_.instances())
    if (inst.kind == want && inst.vertical_id == vertical_id && inst.use_case_id == use_case &&
        inst.phase != Phase::Terminated)
      return &inst;
  return nullptr;
}

std::vector<const SliceInstance*> Engine::top_level_of(const std::string& vertical_id) const {
  const auto want = mode_ == ProvisioningMode::UseCaseSpecific ? InstanceKind::UsNsi
                                                               : InstanceKind::GnNsi;
  std::vector<const SliceInstance*> out;
  for (const auto& [id, inst] : orch_.instances())
    if (inst.kind == want && inst.vertical_id == vertical_id) out.push_back(&inst);
  return out;
}

const ApiChannel* Engine::master_channel(const std::string& vertical_id) const {
  for (const auto& [id, ch] : broker_.channels()) {
    if (ch.role != ChannelRole::MasterScsAs) continue;
    const SliceInstance* inst = orch_.instance(ch.bound_slice);
    if (inst && inst->vertical_id == vertical_id) return &ch;
  }
  return nullptr;
}

std::string Engine::do_request(const ScheduledEvent& ev) {
  const std::string vertical_id = ev.args.at(0);
  const Vertical* vertical = scenario_.find_vertical(vertical_id);
  if (!vertical) return "unknown vertical";
  const bool independent =
      ev.args.size() > 1 && ev.args[1] == "independent" && mode_ == ProvisioningMode::UseCaseSpecific;

  const auto requirements = csmf_translate(*vertical, mode_, scenario_.catalogue);
  SliceRequest req;
  req.request_id = "req-" + vertical_id + "-" + std::to_string(ev.seq);
  req.tenant_id = vertical->tenant_id;
  req.mode = mode_;
  req.arrival_time = now_;
  req.atomic_batch = !independent;
  for (const auto& r : requirements) {
    if (r.create_new) return "Denied: template not in catalogue (CreateNew)";
    req.template_refs.push_back(*r.template_id);
  }
  const auto decision = broker_.nsb_admit(req);
  if (decision.outcome == AdmissionOutcome::Granted)
    return "Granted (" + std::to_string(decision.leases.size()) + " leases)" +
           (decision.reason.empty() ? "" : " " + decision.reason);
  return "Denied: " + decision.reason;
}

std::string Engine::do_start(const std::string& vertical_id) {
  std::size_t started = 0;
  for (const auto* inst : top_level_of(vertical_id)) {
    if (inst->phase != Phase::Prepared) continue;
    for (auto step : {LifecycleEvent::Instantiate, LifecycleEvent::Activate, LifecycleEvent::Run}) {
      const auto r = orch_.nsmf_transition(inst->instance_id, step);
      if (!r.ok) return "failed at " + std::string(lifecycle_event_name(step)) + ": " + r.detail;
    }
    ++started;
  }
  return std::to_string(started) + " slices running";
}

std::string Engine::do_stop(const std::string& vertical_id) {
  std::size_t stopped = 0;
  for (const auto* inst : top_level_of(vertical_id)) {
    if (inst->phase != Phase::Running) continue;
    const auto r = orch_.nsmf_transition(inst->instance_id, LifecycleEvent::Deactivate);
    if (!r.ok) return "failed: " + r.detail;
    ++stopped;
  }
  return std::to_string(stopped) + " slices deactivated";
}

std::string Engine::do_terminate(const std::string& vertical_id) {
  std::size_t done = 0;
  for (const auto* inst : top_level_of(vertical_id)) {
    if (inst->phase == Phase::Terminated) continue;
    if (inst->phase == Phase::Running) {
      const auto r = orch_.nsmf_transition(inst->instance_id, LifecycleEvent::Deactivate);
      if (!r.ok) return "failed: " + r.detail;
    }
    const auto r = orch_.nsmf_transition(inst->instance_id, LifecycleEvent::Terminate);
    if (!r.ok) return "failed: " + r.detail;
    // Terminated slices drop their UE attachments.
    auto drop = [&](const std::string& slice_id) {
      for (auto& [ue_id, ue] : ue_states_) detach_ue(ue, slice_id);
      ue_directory_.erase(slice_id);
    };
    drop(inst->instance_id);
    for (const auto& child : inst->children) drop(child);
    ++done;
  }
  return std::to_string(done) + " slices terminated";
}

std::string Engine::do_use_case_transition(const std::string& vertical_id,
                                           const std::string& use_case, LifecycleEvent event) {
  const SliceInstance* slice = slice_for(vertical_id, use_case);
  if (!slice) return "no live slice for use case " + use_case;
  if (mode_ == ProvisioningMode::SubNetworkSlicing) {
    const ApiChannel* master = master_channel(vertical_id);
    if (!master) return "no Master-SCS/AS channel";
    const auto routed = broker_.master_slave_route(master->channel_id, slice->instance_id, event);
    if (routed.outcome != RouteOutcome::Forwarded) return "RejectedDirection: " + routed.detail;
    return routed.transition.ok ? "applied via Master/Slave" : routed.detail;
  }
  const auto r = orch_.nsmf_transition(slice->instance_id, event);
  return r.ok ? "applied" : r.detail;
}

std::string Engine::do_attach(const std::string& ue_id, const std::string& use_case) {
  const UeProfile* profile = nullptr;
  for (const auto& ue : scenario_.ues)
    if (ue.ue_id == ue_id) profile = &ue;
  if (!profile) return "unknown ue";
  const SliceInstance* slice = slice_for(profile->vertical_id, use_case);
  if (!slice) return "no live slice for use case " + use_case;
  UeState& state = ue_states_[ue_id];
  state.ue_id = ue_id;
  std::string gnb;
  if (const auto it = orch_.state().allocations().find(slice->instance_id);
      it != orch_.state().allocations().end())
    gnb = it->second.placement.gnb_id;
  if (const auto err = attach_ue(state, *slice, gnb)) return attach_error_name(*err);
  ue_directory_[slice->instance_id].insert(ue_id);
  return "attached (" + std::to_string(state.attached_slices.size()) + " slices)";
}

std::string Engine::do_detach(const std::string& ue_id, const std::string& use_case) {
  const UeProfile* profile = nullptr;
  for (const auto& ue : scenario_.ues)
    if (ue.ue_id == ue_id) profile = &ue;
  if (!profile) return "unknown ue";
  const SliceInstance* slice = slice_for(profile->vertical_id, use_case);
  if (!slice) return "no live slice";
  const auto it = ue_states_.find(ue_id);
  if (it == ue_states_.end()) return "not attached";
  detach_ue(it->second, slice->instance_id);
  ue_directory_[slice->instance_id].erase(ue_id);
  return "detached";
}

std::string Engine::do_fcaps(FcapsKind kind, const std::string& component) {
  FcapsEvent event{kind, component, "", now_};
  const auto result = orch_.nfmf_handle(event);
  if (result.error) return "UnknownComponent";
  if (kind == FcapsKind::Fault && result.actions.size() > 1) {
    // Count degradations spilling across slices through a Shared grant on the
    // faulted element's capacity pool.
    for (const auto& action : result.actions) {
      const auto pos = action.description.find("mark ");
      if (pos != 0) continue;
      const std::string slice_id =
          action.description.substr(5, action.description.size() - 5 - std::strlen(" degraded"));
      const auto it = orch_.state().allocations().find(slice_id);
      if (it == orch_.state().allocations().end()) continue;
      for (const auto& grant : it->second.grants)
        if (grant.sharing == Sharing::Shared &&
            (grant.element_id == component ||
             // CU/DU/RU faults map to the owning gNB's radio pool.
             grant.element_id == it->second.placement.gnb_id))
          ++isolation_violations_;
    }
  }
  return std::string(fcaps_kind_name(kind)) + ": " + std::to_string(result.actions.size()) +
         " actions";
}

void Engine::apply(const ScheduledEvent& ev) {
  std::string outcome;
  try {
    if (ev.verb == "request") outcome = do_request(ev);
    else if (ev.verb == "start") outcome = do_start(ev.args.at(0));
    else if (ev.verb == "stop") outcome = do_stop(ev.args.at(0));
    else if (ev.verb == "terminate") outcome = do_terminate(ev.args.at(0));
    else if (ev.verb == "deactivate")
      outcome = do_use_case_transition(ev.args.at(0), ev.args.at(1), LifecycleEvent::Deactivate);
    else if (ev.verb == "activate")
      outcome = do_use_case_transition(ev.args.at(0), ev.args.at(1), LifecycleEvent::Activate);
    else if (ev.verb == "attach") outcome = do_attach(ev.args.at(0), ev.args.at(1));
    else if (ev.verb == "detach") outcome = do_detach(ev.args.at(0), ev.args.at(1));
    else if (ev.verb == "fault") outcome = do_fcaps(FcapsKind::Fault, ev.args.at(0));
    else if (ev.verb == "perf") outcome = do_fcaps(FcapsKind::Performance, ev.args.at(0));
    else if (ev.verb == "config") outcome = do_fcaps(FcapsKind::Configuration, ev.args.at(0));
    else outcome = "unknown verb";
  } catch (const std::out_of_range&) {
    outcome = "malformed event";
  }
  log_event(ev, outcome);
}

void Engine::log_event(const ScheduledEvent& ev, const std::string& outcome) {
  std::ostringstream line;
  line << "t=" << ev.time << " seq=" << ev.seq << " " << ev.verb;
  for (const auto& a : ev.args) line << " " << a;
  line << " -> " << outcome;
  event_log_.push_back(line.str());
}

void Engine::sample_and_audit() {
  const auto cap = orch_.state().total_capacity();
  const auto used = orch_.state().total_consumed();
  std::array<double, kResourceDims> util{};
  for (std::size_t d = 0; d < kResourceDims; ++d)
    util[d] = cap[d] > 0 ? static_cast<double>(used[d]) / static_cast<double>(cap[d]) : 0.0;
  util_samples_.push_back(util);

  auto problems = orch_.check_invariants();
  for (const auto& [ue_id, ue] : ue_states_) {
    if (ue.attached_slices.size() > kMaxSubSlices)
      problems.push_back("ue " + ue_id + " exceeds eight attached slices");
    if (!ue.attached_slices.empty() && !ue.amf_binding)
      problems.push_back("ue " + ue_id + " attached without AMF binding");
    for (const auto& slice : ue.attached_slices)
      if (!ue.smf_bindings.count(slice))
        problems.push_back("ue " + ue_id + " missing SMF binding for " + slice);
  }
  if (!problems.empty())
    throw InvariantViolation("invariant violated at t=" + std::to_string(now_) + ": " +
                             problems.front());
}

RunResult Engine::execute() {
  {
    const auto problems = scenario_.validate();
    if (!problems.empty()) throw ScenarioInvalid(problems.front());
  }

  auto schedule = scenario_.schedule;
  std::vector<std::pair<int, const ScheduledEvent*>> keyed;
  for (const auto& ev : schedule) keyed.emplace_back(event_priority(ev), &ev);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.second->time != b.second->time) return a.second->time < b.second->time;
    if (a.first != b.first) return a.first > b.first;  // higher priority first
    return a.second->seq < b.second->seq;
  });

  for (const auto& [prio, ev] : keyed) {
    now_ = ev->time;
    orch_.set_time(now_);
    apply(*ev);
    sample_and_audit();
  }

  RunResult result;
  MetricsReport& report = result.report;
  report.mode = mode_;
  for (const auto& d : broker_.decisions()) {
    ++report.requests;
    if (d.outcome == AdmissionOutcome::Granted) ++report.requests_granted;
    for (const auto& [ref, admitted] : d.per_slice) {
      ++report.slices_requested;
      if (admitted) ++report.slices_admitted;
    }
  }
  report.admission_ratio =
      report.slices_requested == 0
          ? 1.0
          : static_cast<double>(report.slices_admitted) / static_cast<double>(report.slices_requested);
  for (const auto& [id, inst] : orch_.instances()) {
    if (inst.kind == InstanceKind::SNsi)
      ++report.sub_slices;
    else
      ++report.top_level_slices;
    if (inst.kind != InstanceKind::GnNsi) {
      const SliceTemplate* tpl = scenario_.catalogue.get(inst.template_id);
      report.qos_satisfied[id] = tpl && validate_template(*tpl).ok() && !inst.degraded &&
                                 (inst.phase == Phase::Terminated || inst.has_allocation);
    }
  }
  report.sla_count = orch_.sla_count();
  report.channel_count = broker_.channels().size();
  if (!util_samples_.empty()) {
    for (std::size_t d = 0; d < kResourceDims; ++d) {
      double sum = 0.0;
      for (const auto& s : util_samples_) {
        sum += s[d];
        report.util_peak[d] = std::max(report.util_peak[d], s[d]);
      }
      report.util_mean[d] = sum / static_cast<double>(util_samples_.size());
    }
  }
  report.isolation_violations = isolation_violations_;

  std::uint64_t digest = fnv1a(0, &scenario_.seed, sizeof scenario_.seed);
  digest = fnv1a_str(digest, mode_token(mode_));
  for (const auto& line : event_log_) digest = fnv1a_str(digest, line);
  report.digest = digest;
  result.event_log = std::move(event_log_);
  return result;
}

}  // namespace

RunResult run(const Scenario& scenario, ProvisioningMode mode) {
  Engine engine(scenario, mode);
  return engine.execute();
}

std::string CompareResult::serialize(bool pretty) const {
  std::ostringstream out;
  if (pretty) {
    out << "=== mode comparison ===\n";
    out << std::left << std::setw(26) << "metric" << std::setw(18) << "UseCaseSpecific"
        << std::setw(18) << "SubNetworkSlicing" << "delta\n";
    for (const auto& row : rows)
      out << std::left << std::setw(26) << row.name << std::setw(18) << row.us_value
          << std::setw(18) << row.gn_value << (row.diverges ? "DIVERGES" : "-") << "\n";
    return out.str();
  }
  out << "[compare]\n";
  for (const auto& row : rows)
    out << row.name << " = " << row.us_value << " | " << row.gn_value << " | "
        << (row.diverges ? "diverges" : "same") << "\n";
  return out.str();
}

CompareResult compare_modes(const Scenario& scenario) {
  CompareResult result;
  result.us = run(scenario, ProvisioningMode::UseCaseSpecific).report;
  result.gn = run(scenario, ProvisioningMode::SubNetworkSlicing).report;

  auto add = [&](const std::string& name, const std::string& us, const std::string& gn) {
    result.rows.push_back({name, us, gn, us != gn});
  };
  auto num = [](auto v) { return std::to_string(v); };
  add("slices_admitted", num(result.us.slices_admitted), num(result.gn.slices_admitted));
  add("top_level_slices", num(result.us.top_level_slices), num(result.gn.top_level_slices));
  add("sub_slices", num(result.us.sub_slices), num(result.gn.sub_slices));
  add("sla_count", num(result.us.sla_count), num(result.gn.sla_count));
  add("channel_count", num(result.us.channel_count), num(result.gn.channel_count));
  add("admission_ratio", format_number(result.us.admission_ratio),
      format_number(result.gn.admission_ratio));
  add("isolation_violations", num(result.us.isolation_violations),
      num(result.gn.isolation_violations));
  for (std::size_t d = 0; d < kResourceDims; ++d)
    add(std::string("util_peak_") + dim_name(static_cast<ResourceDim>(d)),
        format_number(result.us.util_peak[d]), format_number(result.gn.util_peak[d]));
  // Partial-vs-atomic admission divergence: US-NSI independent submission may
  // admit a strict subset where the GN-NSI cluster is all-or-nothing.
  const std::string us_pattern =
      num(result.us.slices_admitted) + "/" + num(result.us.slices_requested);
  const std::string gn_pattern =
      num(result.gn.slices_admitted) + "/" + num(result.gn.slices_requested);
  result.rows.push_back({"grant_pattern", us_pattern, gn_pattern, us_pattern != gn_pattern});
  return result;
}

}  // namespace nslice
