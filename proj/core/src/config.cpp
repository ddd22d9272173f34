#include "bohmslit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "bohmslit/errors.hpp"
#include "json_io.hpp"

namespace bohmslit {

using nlohmann::json;
using nlohmann::ordered_json;

void EnsembleSettings::validate() const {
  if (n < 1) throw ValidationError("n", "must be >= 1");
  if (n_trajectories < 1) throw ValidationError("n_trajectories", "must be >= 1");
  if (joint_bins < 2) throw ValidationError("joint_bins", "must be >= 2");
}

void RunConfig::validate() const {
  physical.validate();
  integrator.validate();
  ensemble.validate();
  if (grid) grid->validate();
  if (output_dir.empty()) throw ValidationError("output_dir", "must not be empty");
}

namespace {

// Reads fields out of one JSON object, remembering which keys were consumed
// so leftovers can be rejected.
class Section {
 public:
  Section(const json& obj, std::string name) : obj_(obj), name_(std::move(name)) {
    if (!obj_.is_object()) throw ValidationError(name_, "expected an object");
  }

  void number(const char* key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) throw ValidationError(key, "expected a number");
      out = v->get<double>();
    }
  }

  template <class Int>
  void integer(const char* key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) throw ValidationError(key, "expected an integer");
      if constexpr (std::is_unsigned_v<Int>) {
        if (v->is_number_unsigned()) {
          out = static_cast<Int>(v->get<std::uint64_t>());
          return;
        }
        throw ValidationError(key, "must be >= 0");
      } else {
        out = static_cast<Int>(v->get<std::int64_t>());
      }
    }
  }

  template <class Fn>
  void text(const char* key, Fn&& assign) {
    if (const json* v = find(key)) {
      if (!v->is_string()) throw ValidationError(key, "expected a string");
      assign(v->get<std::string>());
    }
  }

  const json* object(const char* key) { return find(key); }

  void reject_unknown() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!seen_.count(key)) {
        throw ValidationError(name_.empty() ? key : name_ + "." + key, "unknown key");
      }
    }
  }

 private:
  const json* find(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& obj_;
  std::string name_;
  std::set<std::string> seen_;
};

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    doc = json::object();
  } else {
    try {
      doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed config: ") + e.what());
    }
  }

  RunConfig cfg;
  Section root(doc, "");

  if (const json* p = root.object("physical")) {
    Section s(*p, "physical");
    auto& ph = cfg.physical;
    s.number("hbar", ph.hbar);
    s.number("mass", ph.mass);
    s.number("sigma0", ph.sigma0);
    s.number("Y", ph.Y);
    s.number("d", ph.d);
    s.number("D", ph.D);
    s.number("kx", ph.kx);
    s.number("ky", ph.ky);
    s.number("deltaQ", ph.deltaQ);
    s.text("exchange_sign", [&](const std::string& v) { ph.exchange_sign = exchange_sign_from_string(v); });
    s.reject_unknown();
  }
  if (const json* p = root.object("integrator")) {
    Section s(*p, "integrator");
    auto& in = cfg.integrator;
    s.text("method", [&](const std::string& v) { in.method = integrator_method_from_string(v); });
    s.number("dt", in.dt);
    s.number("rel_tol", in.rel_tol);
    s.number("abs_tol", in.abs_tol);
    s.number("node_epsilon", in.node_epsilon);
    s.integer("max_steps", in.max_steps);
    s.integer("n_samples", in.n_samples);
    s.reject_unknown();
  }
  if (const json* p = root.object("ensemble")) {
    Section s(*p, "ensemble");
    auto& en = cfg.ensemble;
    s.integer("n", en.n);
    s.integer("n_trajectories", en.n_trajectories);
    s.text("mode", [&](const std::string& v) { en.mode = source_mode_from_string(v); });
    s.integer("seed", en.seed);
    s.integer("joint_bins", en.joint_bins);
    s.reject_unknown();
  }
  if (const json* p = root.object("grid")) {
    if (!p->is_null()) {
      Section s(*p, "grid");
      GridSpec g;
      s.number("y_min", g.y_min);
      s.number("y_max", g.y_max);
      s.integer("n_points", g.n_points);
      s.reject_unknown();
      cfg.grid = g;
    }
  }
  root.text("output_dir", [&](const std::string& v) { cfg.output_dir = v; });
  root.integer("threads", cfg.threads);
  root.reject_unknown();

  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace detail {

ordered_json config_to_json(const RunConfig& cfg) {
  const auto& ph = cfg.physical;
  const auto& in = cfg.integrator;
  const auto& en = cfg.ensemble;
  ordered_json j;
  j["physical"] = {{"hbar", ph.hbar},     {"mass", ph.mass}, {"sigma0", ph.sigma0},
                   {"Y", ph.Y},           {"d", ph.d},       {"D", ph.D},
                   {"kx", ph.kx},         {"ky", ph.ky},     {"deltaQ", ph.deltaQ},
                   {"exchange_sign", to_string(ph.exchange_sign)}};
  j["integrator"] = {{"method", to_string(in.method)}, {"dt", in.dt},
                     {"rel_tol", in.rel_tol},          {"abs_tol", in.abs_tol},
                     {"node_epsilon", in.node_epsilon}, {"max_steps", in.max_steps},
                     {"n_samples", in.n_samples}};
  j["ensemble"] = {{"n", en.n},
                   {"n_trajectories", en.n_trajectories},
                   {"mode", to_string(en.mode)},
                   {"seed", en.seed},
                   {"joint_bins", en.joint_bins}};
  if (cfg.grid) {
    j["grid"] = {{"y_min", cfg.grid->y_min},
                 {"y_max", cfg.grid->y_max},
                 {"n_points", cfg.grid->n_points}};
  } else {
    j["grid"] = nullptr;
  }
  j["output_dir"] = cfg.output_dir;
  j["threads"] = cfg.threads;
  return j;
}

}  // namespace detail

std::string serialize_config(const RunConfig& cfg) {
  return detail::config_to_json(cfg).dump(2) + "\n";
}

}  // namespace bohmslit
