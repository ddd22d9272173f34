#include "bohmslit/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <utility>

#include "bohmslit/errors.hpp"
#include "bohmslit/rng.hpp"
#include "bohmslit/version.hpp"
#include "json_io.hpp"

namespace bohmslit {

using nlohmann::ordered_json;

std::string_view to_string(Command c) {
  switch (c) {
    case Command::simulate_bqm: return "simulate-bqm";
    case Command::simulate_sqm: return "simulate-sqm";
    case Command::trajectories: return "trajectories";
    case Command::selective: return "selective";
    case Command::compare: return "compare";
    case Command::validate: return "validate";
  }
  return "unknown";
}

std::optional<Command> command_from_string(std::string_view name) {
  for (auto c : {Command::simulate_bqm, Command::simulate_sqm, Command::trajectories,
                 Command::selective, Command::compare, Command::validate}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const NumericalError*>(&e)) return 3;
  if (dynamic_cast<const IoError*>(&e)) return 4;
  return 1;
}

namespace {

// Pair count cap for the small ensembles that `validate` reports on.
constexpr std::size_t kValidateEnsemble = 1000;

std::string iso_utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json run_summary(const ArrivalSet& s) {
  ordered_json j;
  j["label"] = describe(s);
  j["seed"] = s.seed;
  j["n_total"] = s.n_total;
  j["n_accepted"] = s.pairs.size();
  j["n_aborted"] = s.n_aborted;
  j["n_proposed"] = s.n_proposed;
  j["flagged"] = s.flagged();
  j["same_side_count"] = s.same_side_count();
  if (s.theory == Theory::bqm) j["com_residual_max"] = s.com_residual_max;
  return j;
}

// Accumulates the state of one run: files, counts and report sections.
class Pipeline {
 public:
  Pipeline(Command cmd, const RunConfig& cfg)
      : cfg_(cfg),
        state_(cfg.physical),
        t0_(state_.detection_time()),
        binning_(JointBinning::for_state(state_, t0_, cfg.ensemble.joint_bins)),
        out_(cfg.output_dir) {
    manifest_.command = cmd;
    manifest_.config = cfg;
    manifest_.version = kVersion;
    manifest_.rng_algorithm = std::string(Philox4x32::kAlgorithm);
  }

  const EffectiveState& state() const { return state_; }
  const RunConfig& cfg() const { return cfg_; }
  RunManifest& manifest() { return manifest_; }

  ArrivalSet bqm(SourceMode mode, std::size_t n) {
    auto set = run_bqm_ensemble(state_, mode, n, cfg_.integrator, cfg_.ensemble.seed, cfg_.threads);
    tally(set);
    return set;
  }

  ArrivalSet sqm(std::size_t n) {
    auto set = run_sqm_ensemble(state_, n, cfg_.ensemble.seed, cfg_.threads);
    tally(set);
    return set;
  }

  void tally(const ArrivalSet& s) {
    manifest_.counts.proposed += s.n_proposed;
    manifest_.counts.accepted += s.pairs.size();
    manifest_.counts.aborted += s.n_aborted;
    manifest_.flagged = manifest_.flagged || s.flagged();
    runs_.push_back(run_summary(s));
  }

  ordered_json compare(const ArrivalSet& a, const ArrivalSet* b) const {
    return detail::to_json(compare_theories(state_, a, b, binning_));
  }

  void write_screen_files(const ArrivalSet& set) {
    out_.write("arrivals.csv", arrivals_csv(set));
    const double w = cfg_.physical.deltaQ;
    out_.write("histogram_right.csv", histogram_csv(make_histogram(set.right(), w)));
    out_.write("histogram_left.csv", histogram_csv(make_histogram(set.left(), w)));
  }

  void write_text(const std::string& name, const std::string& body) { out_.write(name, body); }

  void write_json(const std::string& name, const ordered_json& j) {
    out_.write(name, j.dump(2) + "\n");
  }

  /// report.json: the comparison fields at top level, plus run context.
  void write_report(ordered_json report) {
    report["command"] = to_string(manifest_.command);
    report["exchange_sign"] = to_string(cfg_.physical.exchange_sign);
    report["detection_time"] = t0_;
    report["runs"] = runs_;
    write_json("report.json", report);
  }

  RunManifest finish(double seconds, std::string started_at) {
    manifest_.files = out_.files();
    manifest_.wall_clock_seconds = seconds;
    manifest_.started_at = std::move(started_at);

    ordered_json j;
    j["artifact"] = "bohmslit";
    j["version"] = manifest_.version;
    j["command"] = to_string(manifest_.command);
    j["rng"] = manifest_.rng_algorithm;
    j["started_at"] = manifest_.started_at;
    j["wall_clock_seconds"] = manifest_.wall_clock_seconds;
    j["config"] = detail::config_to_json(cfg_);
    j["counts"] = {{"proposed", manifest_.counts.proposed},
                   {"accepted", manifest_.counts.accepted},
                   {"aborted", manifest_.counts.aborted}};
    j["flagged"] = manifest_.flagged;
    j["success"] = manifest_.success;
    ordered_json files = ordered_json::array();
    for (const auto& f : manifest_.files) {
      files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    }
    j["files"] = files;
    if (manifest_.command == Command::validate) {
      ordered_json checks = ordered_json::array();
      for (const auto& c : manifest_.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}});
      }
      j["checks"] = checks;
    }
    // The manifest lists the data files; it does not list itself.
    OutputDirectory(out_.path()).write("manifest.json", j.dump(2) + "\n");
    return manifest_;
  }

 private:
  RunConfig cfg_;
  EffectiveState state_;
  double t0_;
  JointBinning binning_;
  OutputDirectory out_;
  RunManifest manifest_;
  ordered_json runs_ = ordered_json::array();
};

SourceMode other(SourceMode m) {
  return m == SourceMode::constrained_com ? SourceMode::unconstrained_qeh
                                          : SourceMode::constrained_com;
}

void simulate_bqm(Pipeline& p) {
  const auto& en = p.cfg().ensemble;
  const auto bqm = p.bqm(en.mode, en.n);
  const auto sqm = p.sqm(en.n);
  p.write_screen_files(bqm);
  p.write_json("selective.json", detail::to_json(selective_detection(bqm, p.cfg().physical.deltaQ)));
  p.write_report(p.compare(bqm, &sqm));
}

void simulate_sqm(Pipeline& p) {
  const auto sqm = p.sqm(p.cfg().ensemble.n);
  p.write_screen_files(sqm);
  p.write_json("selective.json", detail::to_json(selective_detection(sqm, p.cfg().physical.deltaQ)));
  p.write_report(p.compare(sqm, nullptr));
}

void trajectories(Pipeline& p) {
  const auto& cfg = p.cfg();
  const auto trajs = run_trajectories(p.state(), cfg.ensemble.mode, cfg.ensemble.n_trajectories,
                                      cfg.integrator, cfg.ensemble.seed, cfg.threads);
  ArrivalSet set;
  set.theory = Theory::bqm;
  set.source_mode = cfg.ensemble.mode;
  set.n_total = trajs.size();
  set.seed = cfg.ensemble.seed;
  for (const auto& tr : trajs) {
    if (tr.status != TrajectoryStatus::completed) {
      ++set.n_aborted;
      continue;
    }
    const auto [r, l] = arrivals(tr);
    set.pairs.emplace_back(r, l);
    set.com_initial.push_back(tr.y_com_initial);
    set.com_residual_max = std::max(
        set.com_residual_max,
        std::abs(0.5 * (r + l) - com_closed_form(cfg.physical, tr.y_com_initial, tr.times.back())));
  }
  p.tally(set);
  p.write_text("trajectories.csv", trajectories_csv(trajs));
  if (set.pairs.empty()) throw IncompleteTrajectory("trajectories: every pair aborted at a node");
  p.write_screen_files(set);
  p.write_report(p.compare(set, nullptr));
}

void selective(Pipeline& p) {
  const auto& en = p.cfg().ensemble;
  const double w = p.cfg().physical.deltaQ;
  const auto bqm = p.bqm(en.mode, en.n);
  const auto sqm = p.sqm(en.n);
  p.write_screen_files(bqm);
  ordered_json sel;
  sel["bqm"] = detail::to_json(selective_detection(bqm, w));
  sel["sqm"] = detail::to_json(selective_detection(sqm, w));
  p.write_json("selective.json", sel);
  p.write_report(p.compare(bqm, &sqm));
}

void compare(Pipeline& p) {
  const auto& en = p.cfg().ensemble;
  const auto primary = p.bqm(en.mode, en.n);
  const auto secondary = p.bqm(other(en.mode), en.n);
  const auto sqm = p.sqm(en.n);
  p.write_screen_files(primary);
  auto report = p.compare(primary, &sqm);
  report["additional"] = ordered_json::array(
      {p.compare(secondary, &sqm), p.compare(primary, &secondary)});
  p.write_report(std::move(report));
}

void validate(Pipeline& p) {
  auto checks = run_validation_suite(p.cfg());
  bool ok = true;
  ordered_json jc = ordered_json::array();
  for (const auto& c : checks) {
    ok = ok && c.passed;
    jc.push_back({{"name", c.name},
                  {"passed", c.passed},
                  {"value", c.value},
                  {"threshold", c.threshold},
                  {"detail", c.detail}});
  }
  const auto& en = p.cfg().ensemble;
  const std::size_t n = std::min<std::size_t>(en.n, kValidateEnsemble);
  const auto bqm = p.bqm(en.mode, n);
  const auto sqm = p.sqm(n);
  p.write_screen_files(bqm);
  auto report = p.compare(bqm, &sqm);
  report["checks"] = jc;
  report["all_checks_passed"] = ok;
  p.write_report(std::move(report));
  p.manifest().checks = std::move(checks);
  p.manifest().success = ok;
}

}  // namespace

RunManifest run_command(Command cmd, const RunConfig& cfg) {
  cfg.validate();
  const auto started_at = iso_utc_now();
  const auto clock_start = std::chrono::steady_clock::now();
  Pipeline p(cmd, cfg);

  switch (cmd) {
    case Command::simulate_bqm: simulate_bqm(p); break;
    case Command::simulate_sqm: simulate_sqm(p); break;
    case Command::trajectories: trajectories(p); break;
    case Command::selective: selective(p); break;
    case Command::compare: compare(p); break;
    case Command::validate: validate(p); break;
  }

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - clock_start;
  return p.finish(elapsed.count(), started_at);
}

}  // namespace bohmslit
