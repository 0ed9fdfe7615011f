#include "ltlab/cli/config.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ltlab/sde/solver.hpp"
#include "ltlab/sde/vector_fields.hpp"

namespace ltlab::cli {

using nlohmann::json;

namespace {

const std::pair<Experiment, const char*> kExperiments[] = {
    {Experiment::simulate, "simulate"}, {Experiment::localtime, "localtime"},
    {Experiment::moments, "moments"},   {Experiment::scaling, "scaling"},
    {Experiment::chung, "chung"},       {Experiment::tails, "tails"},
    {Experiment::lnd, "lnd"},           {Experiment::charfn, "charfn"},
    {Experiment::analytics, "analytics"}, {Experiment::berman, "berman"},
    {Experiment::sde_convergence, "sde-convergence"}};

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ConfigError(path + ": " + msg); }

// Reads one object, records every consumed key into `out`, and rejects the rest.
class Section {
public:
  Section(const json& in, std::string path) : in_(in), path_(std::move(path)) {
    if (!in_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected a mapping");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return in_.contains(key) && !in_.at(key).is_null(); }

  double number(const std::string& key, std::optional<double> def = std::nullopt) {
    const json* v = get(key, def.has_value());
    double x = v ? as_number(*v, field(key)) : *def;
    out_[key] = x;
    return x;
  }

  std::int64_t integer(const std::string& key, std::optional<std::int64_t> def = std::nullopt) {
    const json* v = get(key, def.has_value());
    std::int64_t x = v ? as_integer(*v, field(key)) : *def;
    out_[key] = x;
    return x;
  }

  bool boolean(const std::string& key, bool def) {
    const json* v = get(key, true);
    if (v && !v->is_boolean()) fail(field(key), "expected true or false");
    bool x = v ? v->get<bool>() : def;
    out_[key] = x;
    return x;
  }

  std::string string(const std::string& key, std::optional<std::string> def = std::nullopt,
                     std::initializer_list<const char*> allowed = {}) {
    const json* v = get(key, def.has_value());
    if (v && !v->is_string()) fail(field(key), "expected a string");
    std::string x = v ? v->get<std::string>() : *def;
    if (allowed.size() && std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return x == a; })) {
      std::string list;
      for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
      fail(field(key), "unknown value '" + x + "' (allowed: " + list + ")");
    }
    out_[key] = x;
    return x;
  }

  std::vector<double> numbers(const std::string& key, std::optional<std::vector<double>> def = std::nullopt) {
    const json* v = get(key, def.has_value());
    std::vector<double> x;
    if (v) {
      if (!v->is_array()) fail(field(key), "expected a list of numbers");
      for (std::size_t i = 0; i < v->size(); ++i)
        x.push_back(as_number(v->at(i), field(key) + "[" + std::to_string(i) + "]"));
    } else {
      x = *def;
    }
    out_[key] = x;
    return x;
  }

  std::vector<std::int64_t> integers(const std::string& key,
                                     std::optional<std::vector<std::int64_t>> def = std::nullopt) {
    const json* v = get(key, def.has_value());
    std::vector<std::int64_t> x;
    if (v) {
      if (!v->is_array()) fail(field(key), "expected a list of integers");
      for (std::size_t i = 0; i < v->size(); ++i)
        x.push_back(as_integer(v->at(i), field(key) + "[" + std::to_string(i) + "]"));
    } else {
      x = *def;
    }
    out_[key] = x;
    return x;
  }

  const json& raw(const std::string& key) const { return in_.at(key); }
  void put(const std::string& key, json v) { out_[key] = std::move(v); }
  void mark(const std::string& key) { used_.insert(key); }

  /// Rejects unconsumed keys and returns the canonical object.
  json finish() {
    for (auto it = in_.begin(); it != in_.end(); ++it)
      if (!used_.count(it.key())) fail(field(it.key()), "unknown key");
    return out_;
  }

private:
  const json* get(const std::string& key, bool optional) {
    used_.insert(key);
    if (!has(key)) {
      if (!optional) fail(field(key), "required key missing");
      return nullptr;
    }
    return &in_.at(key);
  }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    double x = v.get<double>();
    if (!std::isfinite(x)) fail(where, "expected a finite number");
    return x;
  }

  static std::int64_t as_integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    return v.get<std::int64_t>();
  }

  const json& in_;
  std::string path_;
  std::set<std::string> used_;
  json out_ = json::object();
};

const json& child(const json& doc, const std::string& key) {
  static const json empty = json::object();
  return doc.contains(key) && !doc.at(key).is_null() ? doc.at(key) : empty;
}

void require(bool ok, const std::string& where, const std::string& msg) {
  if (!ok) fail(where, msg);
}

std::vector<double> powers_of_two(double base, int from, int to) {
  std::vector<double> out;
  for (int n = from; n <= to; ++n) out.push_back(base * std::ldexp(1.0, -n));
  return out;
}

ProcessSpec parse_process(Section& s, std::optional<std::string> default_class) {
  const std::string cls_name =
      s.string("class", default_class, {"fbm", "gaussian-quasi-helix", "rosenblatt", "fbm-sde"});
  const int d = static_cast<int>(s.integer("d", 1));
  require(d >= 1 && d <= 8, s.field("d"), "must lie in 1..8");
  const double hurst = s.number("hurst", 0.5);
  require(hurst > 0.0 && hurst < 1.0, s.field("hurst"), "must lie in (0,1)");
  ProcessSpec p = ProcessSpec::defaults(process_class_from_string(cls_name), d, hurst);
  p.alpha = s.number("alpha", p.alpha);
  p.theta = s.number("theta", p.theta);
  p.iota = s.number("iota", p.iota);
  if (p.cls == ProcessClass::quasi_helix) p.covariance = s.string("covariance", "fbm", {"fbm", "sub-fbm"});
  if (p.cls == ProcessClass::rosenblatt) {
    const auto rank = s.integer("rank", 512);
    require(rank >= 16 && rank <= 4096, s.field("rank"), "must lie in 16..4096");
    p.rank = static_cast<std::size_t>(rank);
  }
  if (p.cls == ProcessClass::fbm_sde) {
    const auto drifts = sde::drift_catalog();
    const auto diffs = sde::diffusion_catalog();
    p.drift = s.string("drift", "zero");
    require(std::find(drifts.begin(), drifts.end(), p.drift) != drifts.end(), s.field("drift"),
            "unknown vector field '" + p.drift + "'");
    p.diffusion = s.string("diffusion", "identity");
    require(std::find(diffs.begin(), diffs.end(), p.diffusion) != diffs.end(), s.field("diffusion"),
            "unknown vector field '" + p.diffusion + "'");
    p.x0 = s.numbers("x0", std::vector<double>(static_cast<std::size_t>(d), 0.0));
    require(p.x0.size() == static_cast<std::size_t>(d), s.field("x0"), "must have d entries");
    p.scheme = s.string("scheme", "euler-young", {"euler-young", "milstein-level2"});
    try {
      sde::require_scheme_supported(sde::scheme_from_string(p.scheme), hurst, sde::is_constant_diffusion(p.diffusion));
    } catch (const std::exception& e) {
      fail(s.field("scheme"), e.what());
    }
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    fail("process", e.what());
  }
  return p;
}

TimeGrid parse_grid(Section& s) {
  const double a = s.number("t_start", 0.0);
  const double b = s.number("t_end", 1.0);
  const auto n = s.integer("steps", 1024);
  require(b > a, s.field("t_end"), "must exceed t_start");
  require(a >= 0.0, s.field("t_start"), "must be >= 0");
  require(n >= 1 && n <= (std::int64_t{1} << 24), s.field("steps"), "must lie in 1..2^24");
  return TimeGrid(a, b, static_cast<std::size_t>(n));
}

EstimatorConfig parse_estimator(Section& s) {
  EstimatorConfig e;
  e.kind = s.string("kind", e.kind, {"histogram", "fourier"});
  e.bin_factor = s.number("bin_factor", e.bin_factor);
  require(e.bin_factor > 0.0, s.field("bin_factor"), "must be positive");
  e.bin_width = s.number("bin_width", e.bin_width);
  require(e.bin_width >= 0.0, s.field("bin_width"), "must be >= 0");
  e.resolution_clamp = s.boolean("resolution_clamp", e.resolution_clamp);
  e.cutoff = s.number("cutoff", e.cutoff);
  require(e.cutoff >= 0.0, s.field("cutoff"), "must be >= 0");
  e.freq_step = s.number("freq_step", e.freq_step);
  require(e.freq_step >= 0.0, s.field("freq_step"), "must be >= 0");
  return e;
}

void require_increasing(const std::vector<double>& v, const std::string& where) {
  for (std::size_t i = 1; i < v.size(); ++i) require(v[i] > v[i - 1], where, "must be strictly increasing");
}

void require_window(const std::vector<double>& w, const TimeGrid& g, const std::string& where) {
  require(w.size() == 2, where, "expected [s, t]");
  require(w[0] < w[1] && w[0] >= g.t_start() && w[1] <= g.t_end(), where, "must satisfy t_start <= s < t <= t_end");
}

json parse_params(Experiment e, const json& in, const ExperimentConfig& c) {
  Section s(in, "params");
  const std::size_t d = static_cast<std::size_t>(c.process.d);
  const std::vector<double> origin(d, 0.0);
  auto point = [&](const std::string& key) {
    auto x = s.numbers(key, origin);
    require(x.size() == d, s.field(key), "must have d entries");
  };
  const double a = c.grid.t_start(), b = c.grid.t_end(), span = c.grid.span();
  switch (e) {
    case Experiment::simulate: {
      const auto paths = s.integer("paths", 1);
      require(paths >= 1 && paths <= 64, s.field("paths"), "must lie in 1..64");
      s.string("method", "automatic", {"automatic", "cholesky", "circulant-embedding"});
      break;
    }
    case Experiment::localtime: {
      require_window(s.numbers("window", std::vector<double>{a, b}), c.grid, s.field("window"));
      const auto pts = s.has("points") ? s.raw("points") : json::array();
      s.mark("points");
      require(pts.is_array(), s.field("points"), "expected a list of points");
      json canon = json::array();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string where = s.field("points") + "[" + std::to_string(i) + "]";
        require(pts[i].is_array() && pts[i].size() == d, where, "expected a point with d coordinates");
        std::vector<double> x;
        for (const auto& v : pts[i]) {
          require(v.is_number(), where, "expected numbers");
          x.push_back(v.get<double>());
        }
        canon.push_back(x);
      }
      s.put("points", canon);
      break;
    }
    case Experiment::moments: {
      const std::string kind = s.string("kind", "moments", {"moments", "holder"});
      point("x");
      if (kind == "moments") {
        const auto n = s.integers("n", std::vector<std::int64_t>{1, 2});
        require(!n.empty(), s.field("n"), "must not be empty");
        for (auto k : n) require(k >= 1 && k <= 8, s.field("n"), "moment orders must lie in 1..8");
        s.string("mode", "fixed", {"fixed", "shifted"});
        const double start = s.number("start", a);
        require(start >= a && start < b, s.field("start"), "must lie in [t_start, t_end)");
        auto lags = s.numbers("lags", powers_of_two(b - start, 0, 6));
        require(lags.size() >= 3, s.field("lags"), "need at least three lags");
        for (double l : lags) require(l > 0.0 && start + l <= b + 1e-12, s.field("lags"), "lags must fit in the grid");
      } else {
        auto y = s.numbers("y", std::vector<double>{0.05, 0.1, 0.2, 0.4});
        require(y.size() >= 3, s.field("y"), "need at least three offsets");
        for (double v : y) require(v > 0.0, s.field("y"), "offsets must be positive");
        s.number("gamma", 0.1);
        require_window(s.numbers("window", std::vector<double>{a, b}), c.grid, s.field("window"));
      }
      break;
    }
    case Experiment::scaling: {
      const std::string kind = s.string("kind", "limsup", {"limsup", "modulus"});
      const auto levels = s.integers("levels", std::vector<std::int64_t>{2, 3, 4, 5, 6});
      require(levels.size() >= 3, s.field("levels"), "need at least three levels");
      for (auto n : levels) require(n >= 0 && n <= 40, s.field("levels"), "levels must lie in 0..40");
      if (kind == "limsup") {
        const double centre = s.number("s", a + 0.5 * span);
        require(centre > a && centre < b, s.field("s"), "must lie inside the grid");
      }
      break;
    }
    case Experiment::chung: {
      auto centres = s.numbers("centers", std::vector<double>{a + 0.5 * span});
      require(!centres.empty(), s.field("centers"), "must not be empty");
      for (double v : centres) require(v >= a && v <= b, s.field("centers"), "centres must lie in the grid");
      const auto levels = s.integers("levels", std::vector<std::int64_t>{3, 4, 5, 6, 7, 8});
      require(levels.size() >= 3, s.field("levels"), "need at least three levels");
      for (auto n : levels) require(n >= 0 && n <= 40, s.field("levels"), "levels must lie in 0..40");
      break;
    }
    case Experiment::tails: {
      require_window(s.numbers("interval", std::vector<double>{a, b}), c.grid, s.field("interval"));
      s.string("mode", "fixed", {"fixed", "shifted"});
      point("x");
      auto u = s.numbers("u", std::vector<double>{});
      require_increasing(u, s.field("u"));
      s.number("u_fit_min", 1.0);
      break;
    }
    case Experiment::lnd: {
      const auto m = s.integer("m_max", 6);
      require(m >= 1 && m <= 64, s.field("m_max"), "must lie in 1..64");
      const auto trials = s.integer("trials", 10000);
      require(trials >= 1, s.field("trials"), "must be positive");
      require(s.number("horizon", 1.0) > 0.0, s.field("horizon"), "must be positive");
      s.number("min_ratio_threshold", 0.0);
      break;
    }
    case Experiment::charfn: {
      auto xi = s.numbers("xi", std::vector<double>{0.5, 1.0, 2.0, 4.0, 8.0, 16.0});
      auto deltas = s.numbers("deltas", std::vector<double>{0.0625, 0.125, 0.25, 0.5, 1.0});
      const auto ks = s.integers("ks", std::vector<std::int64_t>{1, 2, 3, 4});
      require(!xi.empty() && !deltas.empty() && !ks.empty(), "params", "xi, deltas and ks must not be empty");
      for (double v : deltas) require(v > 0.0 && v <= span, s.field("deltas"), "must lie in (0, t_end - t_start]");
      for (auto k : ks) require(k >= 1 && k <= 32, s.field("ks"), "must lie in 1..32");
      auto freqs = s.numbers("frequencies", std::vector<double>{0.25, 0.5, 1.0, 2.0});
      for (double v : freqs) require(v > 0.0, s.field("frequencies"), "must be positive");
      const auto samples = s.integer("samples", 100000);
      require(samples >= 1000, s.field("samples"), "must be >= 1000");
      break;
    }
    case Experiment::analytics: {
      const auto k_max = s.integer("k_max", 12);
      require(k_max >= 1 && k_max <= 14, s.field("k_max"), "enumeration oracle supports 1..14");
      const auto bound_k = s.integer("bound_k", 30);
      require(bound_k >= 1 && bound_k <= 200, s.field("bound_k"), "must lie in 1..200");
      require(s.integer("beta_trials", 100) >= 1, s.field("beta_trials"), "must be positive");
      const auto n_max = s.integer("simplex_n_max", 4);
      require(n_max >= 1 && n_max <= 6, s.field("simplex_n_max"), "must lie in 1..6");
      require(s.integer("simplex_samples", 200000) >= 100, s.field("simplex_samples"), "must be >= 100");
      require(s.integer("gamma_n_max", 200) >= 3, s.field("gamma_n_max"), "must be >= 3");
      const double beta = s.number("gamma_beta", 0.5);
      require(beta > 0.0 && beta < 1.0, s.field("gamma_beta"), "must lie in (0,1)");
      const double delta = s.number("sharpness_delta", 0.5);
      require(delta > 0.0 && delta < 1.0, s.field("sharpness_delta"), "must lie in (0,1)");
      const auto ks = s.integers("sharpness_k", std::vector<std::int64_t>{10, 20, 40, 80, 160});
      for (auto k : ks) require(k >= 2 && k <= 400, s.field("sharpness_k"), "must lie in 2..400");
      break;
    }
    case Experiment::berman: {
      const auto levels = s.integer("levels", 12);
      require(levels >= 4 && levels <= 30, s.field("levels"), "must lie in 4..30");
      const auto nodes = s.integer("xi_nodes", 12);
      require(nodes >= 2 && nodes <= 64, s.field("xi_nodes"), "must lie in 2..64");
      const auto panels = s.integer("u_panels", 60);
      require(panels >= 4 && panels <= 200, s.field("u_panels"), "must lie in 4..200");
      require(s.number("horizon", 1.0) > 0.0, s.field("horizon"), "must be positive");
      break;
    }
    case Experiment::sde_convergence: {
      const auto levels = s.integers("levels", std::vector<std::int64_t>{64, 128, 256, 512, 1024, 2048});
      require(levels.size() >= 3, s.field("levels"), "need at least three levels");
      for (std::size_t i = 0; i < levels.size(); ++i) {
        require(levels[i] >= 1, s.field("levels"), "must be positive");
        if (i) require(levels[i] > levels[i - 1] && levels[i] % levels[i - 1] == 0, s.field("levels"),
                       "each level must be a multiple of the previous one");
      }
      s.string("exact", "none", {"none", "geometric", "additive"});
      break;
    }
  }
  return s.finish();
}

json yaml_to_json(const YAML::Node& n, const std::string& where) {
  switch (n.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Sequence: {
      json a = json::array();
      for (std::size_t i = 0; i < n.size(); ++i) a.push_back(yaml_to_json(n[i], where + "[" + std::to_string(i) + "]"));
      return a;
    }
    case YAML::NodeType::Map: {
      json o = json::object();
      for (const auto& kv : n) {
        const std::string key = kv.first.as<std::string>();
        if (o.contains(key)) fail(where.empty() ? key : where + "." + key, "duplicate key");
        o[key] = yaml_to_json(kv.second, where.empty() ? key : where + "." + key);
      }
      return o;
    }
    case YAML::NodeType::Scalar: {
      const std::string s = n.Scalar();
      if (n.Tag() == "!") return s;  // quoted
      if (s == "true" || s == "True") return true;
      if (s == "false" || s == "False") return false;
      if (s == "null" || s == "~") return nullptr;
      // Plain scalars that parse fully as numbers become numbers.
      try {
        std::size_t pos = 0;
        long long i = std::stoll(s, &pos);
        if (pos == s.size()) return i;
      } catch (const std::exception&) {
      }
      try {
        std::size_t pos = 0;
        double x = std::stod(s, &pos);
        if (pos == s.size()) return x;
      } catch (const std::exception&) {
      }
      return s;
    }
  }
  return nullptr;
}

}  // namespace

std::string to_string(Experiment e) {
  for (const auto& [k, name] : kExperiments)
    if (k == e) return name;
  return "unknown";
}

Experiment experiment_from_string(const std::string& name) {
  for (const auto& [k, n] : kExperiments)
    if (name == n) return k;
  std::string list;
  for (const auto& [k, n] : kExperiments) list += std::string(list.empty() ? "" : ", ") + n;
  fail("experiment", "unknown experiment '" + name + "' (allowed: " + list + ")");
}

nlohmann::json parse_config_text(const std::string& text, bool as_json) {
  if (as_json) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("<document>: invalid JSON: ") + e.what());
    }
  }
  try {
    return yaml_to_json(YAML::Load(text), "");
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("<document>: invalid YAML: ") + e.what());
  }
}

nlohmann::json load_config_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot read config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.extension() == ".json");
}

ExperimentConfig parse_config(nlohmann::json doc, std::optional<std::uint64_t> seed_override) {
  ExperimentConfig c;
  Section root(doc, "");
  c.experiment = experiment_from_string(root.string("experiment"));
  if (seed_override) {
    root.mark("seed");
    c.seed = *seed_override;
  } else {
    const auto seed = root.integer("seed", 0);
    require(seed >= 0, "seed", "must be >= 0");
    c.seed = static_cast<std::uint64_t>(seed);
  }
  root.put("seed", c.seed);
  const auto replicas = root.integer("replicas", 1);
  require(replicas >= 1 && replicas <= 100000000, "replicas", "must lie in 1..1e8");
  c.replicas = static_cast<std::size_t>(replicas);
  c.output = root.string("output", "out");

  root.mark("process");
  root.mark("grid");
  root.mark("estimator");
  root.mark("params");
  Section ps(child(doc, "process"), "process");
  // Analytics does not simulate anything; every other experiment names its process.
  const bool needs_process = c.experiment != Experiment::analytics;
  if (needs_process && !doc.contains("process")) fail("process", "required key missing");
  c.process = parse_process(ps, needs_process ? std::nullopt : std::optional<std::string>("fbm"));
  root.put("process", ps.finish());
  Section gs(child(doc, "grid"), "grid");
  c.grid = parse_grid(gs);
  root.put("grid", gs.finish());
  Section es(child(doc, "estimator"), "estimator");
  c.estimator = parse_estimator(es);
  root.put("estimator", es.finish());
  c.params = parse_params(c.experiment, child(doc, "params"), c);
  root.put("params", c.params);

  c.canonical = root.finish();
  c.canonical.erase("output");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  return parse_config(load_config_document(path), seed_override);
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string ExperimentConfig::hash() const { return sha256_hex(canonical.dump()); }

}  // namespace ltlab::cli
