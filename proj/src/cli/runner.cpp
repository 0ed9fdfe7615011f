#include "ltlab/cli/runner.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <iostream>

#include "ltlab/analytics/alpha_table.hpp"
#include "ltlab/analytics/integrals.hpp"
#include "ltlab/cli/records.hpp"
#include "ltlab/cli/serialize.hpp"
#include "ltlab/gaussian/charfn.hpp"
#include "ltlab/gaussian/lnd.hpp"
#include "ltlab/gaussian/sampler.hpp"
#include "ltlab/kernels/parallel.hpp"
#include "ltlab/laws/berman.hpp"
#include "ltlab/laws/moments.hpp"
#include "ltlab/laws/path_source.hpp"
#include "ltlab/laws/scaling.hpp"
#include "ltlab/laws/tails.hpp"
#include "ltlab/localtime/fourier.hpp"
#include "ltlab/localtime/histogram.hpp"
#include "ltlab/localtime/modulus.hpp"
#include "ltlab/rosenblatt/charfn.hpp"
#include "ltlab/rosenblatt/sampler.hpp"
#include "ltlab/sde/convergence.hpp"
#include "ltlab/sde/solver.hpp"
#include "ltlab/sde/vector_fields.hpp"

namespace ltlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr auto kExec = kernels::Execution::parallel;

struct Output {
  std::string name;
  std::string content;
};

// What an experiment hands back before anything is written.
struct Outcome {
  std::string statement;
  bool pass = false;
  std::string summary;
  json body = json::object();
  std::vector<Output> files;
};

template <class T>
std::vector<T> as_vec(const json& j) {
  return j.get<std::vector<T>>();
}

std::vector<int> as_ints(const json& j) {
  std::vector<int> out;
  for (const auto& v : j) out.push_back(v.get<int>());
  return out;
}

laws::EstimatorSettings settings(const ExperimentConfig& c) {
  laws::EstimatorSettings s;
  s.bin_factor = c.estimator.bin_factor;
  s.bin_width = c.estimator.bin_width;
  s.resolution_clamp = c.estimator.resolution_clamp;
  return s;
}

gaussian::CovarianceSpec gaussian_covariance(const ProcessSpec& p) {
  if (p.cls == ProcessClass::fbm) return gaussian::CovarianceSpec::fbm(p.hurst);
  if (p.cls == ProcessClass::quasi_helix) return gaussian::CovarianceSpec::from_catalog(p.covariance, p.hurst);
  throw std::invalid_argument("process class '" + to_string(p.cls) + "' is not Gaussian");
}

std::string fmt(double x) { return format_number(x); }

Outcome run_simulate(const ExperimentConfig& c, const RngStream& rng) {
  Outcome o;
  o.statement = "simulation";
  const auto paths = c.params.at("paths").get<std::size_t>();
  const std::string method = c.params.at("method").get<std::string>();
  std::unique_ptr<gaussian::GaussianSampler> direct;
  std::unique_ptr<laws::PathSource> source;
  const bool gaussian = c.process.cls == ProcessClass::fbm || c.process.cls == ProcessClass::quasi_helix;
  if (gaussian && method != "automatic") {
    const auto m = method == "cholesky" ? gaussian::SamplingMethod::cholesky
                                        : gaussian::SamplingMethod::circulant_embedding;
    direct = std::make_unique<gaussian::GaussianSampler>(gaussian_covariance(c.process), c.grid, m);
  } else {
    if (method != "automatic") throw std::invalid_argument("params.method applies to Gaussian processes only");
    source = std::make_unique<laws::PathSource>(c.process, c.grid);
  }
  json terminal = json::array();
  for (std::size_t i = 0; i < paths; ++i) {
    RngStream r = rng.replica(static_cast<std::uint32_t>(i));
    SamplePath p = direct ? direct->sample(c.process.d, r, c.process) : source->draw(r);
    char name[32];
    std::snprintf(name, sizeof name, "path-%03zu.csv", i);
    o.files.push_back({name, path_csv(p).str()});
    std::vector<double> end(p.at(p.size() - 1).begin(), p.at(p.size() - 1).end());
    terminal.push_back(end);
  }
  o.body = {{"paths", paths}, {"method", method}, {"terminal_values", terminal}};
  o.pass = true;
  o.summary = std::to_string(paths) + " path(s) written";
  return o;
}

double fourier_cutoff(const ExperimentConfig& c) {
  return c.estimator.cutoff > 0.0 ? c.estimator.cutoff : std::pow(c.grid.step(), -c.process.alpha);
}

Outcome run_localtime(const ExperimentConfig& c, const RngStream& rng) {
  c.process.require_local_time_regime();
  Outcome o;
  o.statement = "occupation-density";
  const auto w = as_vec<double>(c.params.at("window"));
  const localtime::TimeWindow window{w[0], w[1]};
  laws::PathSource src(c.process, c.grid);
  const double eps = c.estimator.bin_width > 0.0
                         ? c.estimator.bin_width
                         : localtime::default_bin_width(c.grid, c.process.alpha, c.estimator.bin_factor);
  const bool fourier = c.estimator.kind == "fourier";
  const double cutoff = fourier_cutoff(c);

  // Mass check on every replica, field output for replica 0.
  std::vector<double> mass_error(c.replicas), identity_error(c.replicas);
  std::vector<localtime::LocalTimeField> first(1);
  std::vector<std::vector<std::string>> warnings(c.replicas);
  auto g = [](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return std::exp(-0.5 * r2);
  };
  kernels::for_each_replica(c.replicas, kExec, [&](std::size_t i) {
    RngStream r = rng.replica(static_cast<std::uint32_t>(i));
    SamplePath p = src.draw(r);
    const localtime::SpatialBox box = localtime::SpatialBox::covering(p, window, eps);
    localtime::LocalTimeField f;
    if (fourier) {
      double step = c.estimator.freq_step;
      if (step <= 0.0) {
        step = cutoff / 16.0;
        // The alias-free step must hold for every cell centre; corners bound the reach.
        const int d = box.dim();
        for (int mask = 0; mask < (1 << d); ++mask) {
          std::vector<double> corner(static_cast<std::size_t>(d));
          for (int l = 0; l < d; ++l) corner[l] = (mask >> l) & 1 ? box.upper(l) : box.lower(l);
          step = std::min(step, localtime::default_freq_step(p, window, corner, cutoff));
        }
      }
      f = localtime::fourier_field(p, window, box, cutoff, step);
    } else {
      f = localtime::occupation_histogram(p, window, box);
    }
    mass_error[i] = std::abs(f.mass() - window.length()) / window.length();
    identity_error[i] = localtime::occupation_identity_check(p, f, g);
    warnings[i] = f.flags;
    if (i == 0) first[0] = std::move(f);
  });
  double worst_mass = 0.0, worst_identity = 0.0;
  for (std::size_t i = 0; i < c.replicas; ++i) {
    worst_mass = std::max(worst_mass, mass_error[i]);
    worst_identity = std::max(worst_identity, identity_error[i]);
  }
  const localtime::LocalTimeField& f = first[0];
  o.files.push_back({"field.csv", field_csv(f).str()});

  json points = json::array();
  {
    RngStream r = rng.replica(0);
    SamplePath p = src.draw(r);
    for (const auto& pt : c.params.at("points")) {
      const auto x = as_vec<double>(pt);
      const double hist = localtime::occupation_at(p, window, x, eps);
      const double step = c.estimator.freq_step > 0.0 ? c.estimator.freq_step
                                                      : localtime::default_freq_step(p, window, x, cutoff);
      const auto fe = localtime::fourier_localtime(p, window, x, cutoff, step);
      points.push_back({{"x", x},
                        {"histogram", hist},
                        {"fourier", fe.value},
                        {"cutoff", cutoff},
                        {"freq_step", step},
                        {"warnings", fe.warnings}});
    }
  }
  // The histogram conserves mass exactly; the Fourier field only approximately.
  const double tol = fourier ? 0.05 : 1e-9;
  o.pass = worst_mass <= tol;
  o.body = {{"estimator", c.estimator.kind},
            {"window", w},
            {"bin_width", eps},
            {"cells", f.values.size()},
            {"max_value", f.max_value()},
            {"mass_tolerance", tol},
            {"max_relative_mass_error", worst_mass},
            {"max_occupation_identity_error", worst_identity},
            {"replicas", c.replicas},
            {"flags", f.flags},
            {"points", points}};
  if (fourier) {
    o.body["cutoff"] = f.cutoff;
    o.body["freq_step"] = f.freq_step;
  }
  o.summary = "max relative mass error " + fmt(worst_mass);
  return o;
}

Outcome run_moments(const ExperimentConfig& c, const RngStream& rng) {
  c.process.require_local_time_regime();
  Outcome o;
  const auto& p = c.params;
  const auto x = as_vec<double>(p.at("x"));
  laws::MomentReport rep;
  if (p.at("kind") == "moments") {
    rep = laws::moment_scan(c.process, c.grid, x, as_ints(p.at("n")), as_vec<double>(p.at("lags")), c.replicas, rng,
                            laws::location_mode_from_string(p.at("mode").get<std::string>()),
                            p.at("start").get<double>(), settings(c), kExec);
  } else {
    const auto w = as_vec<double>(p.at("window"));
    rep = laws::holder_increment_scan(c.process, c.grid, x, as_vec<double>(p.at("y")), p.at("gamma").get<double>(),
                                      w[0], w[1], c.replicas, rng, settings(c), kExec);
  }
  o.statement = rep.statement;
  o.pass = rep.pass;
  o.body = to_json(rep);
  o.files.push_back({"moments.csv", moments_csv(rep).str()});
  std::string s;
  for (std::size_t i = 0; i < rep.fits.size(); ++i)
    s += (i ? ", " : "") + std::string("slope ") + fmt(rep.fits[i].slope) + " vs " + fmt(rep.target_slopes[i]);
  o.summary = s;
  return o;
}

Outcome run_scaling(const ExperimentConfig& c, const RngStream& rng) {
  c.process.require_local_time_regime();
  Outcome o;
  const auto levels = as_ints(c.params.at("levels"));
  if (c.params.at("kind") == "limsup") {
    const auto res = laws::limsup_ratio_scan(c.process, c.grid, c.params.at("s").get<double>(), levels, c.replicas,
                                             rng, settings(c), kExec);
    o.statement = res.fixed.statement;
    o.pass = res.fixed.pass;
    o.body = {{"fixed", to_json(res.fixed)}, {"uniform", to_json(res.uniform)}, {"bin_width", res.bin_width}};
    o.files.push_back({"levels.csv", levels_csv(res.fixed).str()});
    o.files.push_back({"levels-uniform.csv", levels_csv(res.uniform).str()});
    o.summary = "slope " + fmt(res.fixed.fit.slope) + " vs " + fmt(res.fixed.target_slope);
    return o;
  }
  const std::size_t points = c.grid.n_points() * static_cast<std::size_t>(c.process.d);
  if (points * c.replicas > (std::size_t{1} << 27))
    throw std::invalid_argument("modulus scan keeps every path in memory; reduce replicas or grid.steps");
  laws::PathSource src(c.process, c.grid);
  std::vector<std::optional<SamplePath>> drawn(c.replicas);
  kernels::for_each_replica(c.replicas, kExec, [&](std::size_t i) {
    RngStream r = rng.replica(static_cast<std::uint32_t>(i));
    drawn[i].emplace(src.draw(r));
  });
  std::vector<SamplePath> paths;
  for (auto& p : drawn) paths.push_back(std::move(*p));
  std::vector<double> h;
  for (int n : levels) h.push_back(c.grid.span() * std::ldexp(1.0, -n));
  const auto rep = localtime::modulus_of_continuity(paths, h, c.process.alpha, c.process.iota);
  o.statement = rep.statement;
  o.pass = rep.pass;
  o.body = to_json(rep);
  o.files.push_back({"levels.csv", levels_csv(rep).str()});
  o.summary = "normalized slope " + fmt(rep.normalized_fit.slope) + " vs " + fmt(rep.target_slope);
  return o;
}

Outcome run_chung(const ExperimentConfig& c, const RngStream& rng) {
  c.process.require_local_time_regime();
  Outcome o;
  const auto rep = laws::chung_ratio_scan(c.process, c.grid, as_vec<double>(c.params.at("centers")),
                                          as_ints(c.params.at("levels")), c.replicas, rng, kExec);
  o.statement = rep.statement;
  o.pass = rep.pass;
  o.body = to_json(rep);
  o.files.push_back({"levels.csv", levels_csv(rep).str()});
  o.summary = "slope " + fmt(rep.fit.slope) + " vs " + fmt(rep.target_slope) + ", ratio floor " + fmt(rep.ratio_floor);
  return o;
}

Outcome run_tails(const ExperimentConfig& c, const RngStream& rng) {
  c.process.require_local_time_regime();
  Outcome o;
  const auto& p = c.params;
  const auto iv = as_vec<double>(p.at("interval"));
  const auto rep = laws::tail_probe(c.process, c.grid, iv[0], iv[1],
                                    laws::location_mode_from_string(p.at("mode").get<std::string>()),
                                    as_vec<double>(p.at("x")), as_vec<double>(p.at("u")), c.replicas, rng,
                                    p.at("u_fit_min").get<double>(), settings(c), kExec);
  o.statement = rep.statement;
  o.pass = rep.pass;
  o.body = to_json(rep);
  o.files.push_back({"tail.csv", tail_csv(rep).str()});
  o.summary = "rate " + fmt(rep.rate) + " [" + fmt(rep.rate_ci_low) + ", " + fmt(rep.rate_ci_high) + "]";
  return o;
}

Outcome run_lnd(const ExperimentConfig& c, const RngStream& rng) {
  Outcome o;
  o.statement = "gaussian-local-nondeterminism";
  RngStream r = rng;
  const auto rep = gaussian::check_lnd(gaussian_covariance(c.process), c.process.d, c.params.at("m_max").get<int>(),
                                       c.params.at("trials").get<std::size_t>(), r,
                                       c.params.at("horizon").get<double>());
  const double threshold = c.params.at("min_ratio_threshold").get<double>();
  o.pass = rep.min_ratio > threshold;
  o.body = to_json(rep);
  o.body["min_ratio_threshold"] = threshold;
  o.summary = "min ratio " + fmt(rep.min_ratio);
  return o;
}

Outcome run_charfn(const ExperimentConfig& c, const RngStream& rng) {
  Outcome o;
  o.statement = "increment-charfn-decay";
  const auto& p = c.params;
  const auto xi = as_vec<double>(p.at("xi"));
  const auto deltas = as_vec<double>(p.at("deltas"));
  const auto ks = as_ints(p.at("ks"));
  if (c.process.cls == ProcessClass::rosenblatt) {
    if (c.grid.t_start() != 0.0) throw std::invalid_argument("charfn: rosenblatt grid must start at 0");
    const auto kernel = rosenblatt::ChaosKernel::build(c.process.hurst, c.grid, c.process.rank);
    const auto decay = rosenblatt::check_rosenblatt_decay(kernel, xi, deltas, ks);
    const auto samples = rosenblatt::sample_terminal(kernel, rng, p.at("samples").get<std::size_t>(), kExec);
    const auto cmp = rosenblatt::compare_empirical_charfn(kernel.matrix_at_index(c.grid.n_steps()), samples,
                                                          as_vec<double>(p.at("frequencies")));
    CsvTable t({"xi", "empirical", "std_error", "eigen_product", "z_score"});
    double worst = 0.0;
    for (const auto& e : cmp) {
      t.add_row(std::vector<double>{e.xi, e.empirical, e.std_error, e.eigen_product, e.z_score});
      worst = std::max(worst, std::abs(e.z_score));
    }
    o.files.push_back({"charfn.csv", t.str()});
    o.pass = decay.holds && worst <= 3.0;
    o.body = {{"decay",
               {{"constant", decay.constant},
                {"points", decay.points},
                {"max_excess", decay.max_excess},
                {"holds", decay.holds}}},
              {"samples", samples.size()},
              {"max_abs_z", worst},
              {"variance_terminal", kernel.variance(c.grid.t_end())}};
    o.summary = "decay " + std::string(decay.holds ? "holds" : "violated") + ", max |z| " + fmt(worst);
    return o;
  }
  const auto decay = gaussian::check_gaussian_decay(gaussian_covariance(c.process), xi, deltas, ks,
                                                    c.grid.t_start());
  o.pass = decay.holds;
  o.body = {{"decay",
             {{"constant", decay.constant},
              {"ks", decay.ks},
              {"points", decay.points},
              {"max_excess", decay.max_excess},
              {"holds", decay.holds}}}};
  o.summary = "decay " + std::string(decay.holds ? "holds" : "violated");
  return o;
}

Outcome run_analytics(const ExperimentConfig& c, const RngStream& rng) {
  Outcome o;
  o.statement = "alpha-recursion-bound";
  const auto& p = c.params;
  const auto k_max = p.at("k_max").get<std::size_t>();
  const auto bound_k = p.at("bound_k").get<std::size_t>();
  const analytics::AlphaTable table(std::max(k_max, bound_k));
  const auto counts = analytics::partition_counts_by_enumeration(k_max);
  std::size_t compared = 0, mismatches = 0;
  CsvTable alpha({"k", "h", "alpha", "enumerated"});
  for (std::size_t k = 1; k <= k_max; ++k)
    for (std::size_t h = 1; h <= k; ++h) {
      ++compared;
      const bool eq = table.at(h, k) == analytics::BigInt(counts[k][h]);
      if (!eq) ++mismatches;
      alpha.add_row(std::vector<std::string>{std::to_string(k), std::to_string(h), table.at(h, k).str(),
                                             std::to_string(counts[k][h])});
    }
  const bool bound = table.bound_holds(bound_k);
  CsvTable consts({"k", "minimal_constant"});
  double worst_const = 0.0;
  for (std::size_t k = 1; k <= bound_k; ++k) {
    const double cst = table.minimal_constant(k);
    worst_const = std::max(worst_const, cst);
    consts.add_row(std::vector<double>{static_cast<double>(k), cst});
  }

  RngStream r = rng.replica(0);
  const auto beta_trials = p.at("beta_trials").get<std::size_t>();
  double beta_worst = 0.0;
  for (std::size_t i = 0; i < beta_trials; ++i) {
    const double t1 = -0.9 + 2.4 * r.uniform(), t2 = -0.9 + 2.4 * r.uniform(), t = 0.1 + 4.9 * r.uniform();
    beta_worst = std::max(beta_worst, analytics::beta_identity_check(t1, t2, t).relative_difference);
  }

  RngStream rs = rng.replica(1);
  const auto n_max = p.at("simplex_n_max").get<std::size_t>();
  const auto mc = p.at("simplex_samples").get<std::size_t>();
  json simplex = json::array();
  double simplex_worst = 0.0;
  for (std::size_t n = 1; n <= n_max; ++n) {
    // Exponents above −1/2 keep the Monte Carlo variance finite.
    std::vector<double> th(n);
    for (double& v : th) v = -0.4 + 1.4 * rs.uniform();
    const double u = rs.uniform(), U = u + 0.5 + rs.uniform();
    const auto chk = analytics::simplex_integral_check(th, u, U, mc, rs);
    simplex_worst = std::max(simplex_worst, std::abs(chk.z_score));
    simplex.push_back({{"thetas", th},
                       {"u", u},
                       {"U", U},
                       {"closed_form", chk.closed_form},
                       {"gamma_form", chk.gamma_form},
                       {"mc_estimate", chk.mc_estimate},
                       {"mc_std_error", chk.mc_std_error},
                       {"z_score", chk.z_score}});
  }

  std::vector<std::size_t> ns;
  for (std::size_t n = 1; n <= p.at("gamma_n_max").get<std::size_t>(); ++n) ns.push_back(n);
  const auto gamma = analytics::gamma_ratio_bound_check(ns, p.at("gamma_beta").get<double>());
  CsvTable gt({"n", "constant"});
  for (const auto& row : gamma.rows) gt.add_row(std::vector<double>{static_cast<double>(row.n), row.constant});

  std::vector<std::size_t> sk;
  for (const auto& v : p.at("sharpness_k")) sk.push_back(v.get<std::size_t>());
  const auto sharp = analytics::alpha_sharpness_probe(sk, p.at("sharpness_delta").get<double>());
  json sharp_rows = json::array();
  for (const auto& row : sharp.rows)
    sharp_rows.push_back({{"k", row.k}, {"j", row.j}, {"lower_bound_holds", row.lower_bound_holds},
                          {"log_ratio", row.log_ratio}});

  const bool oracle_ok = mismatches == 0;
  const bool beta_ok = beta_worst <= 1e-8;
  const bool simplex_ok = simplex_worst <= 3.0;
  o.pass = oracle_ok && bound && beta_ok && simplex_ok && gamma.bounded && sharp.all_hold;
  o.body = {{"oracle", {{"compared", compared}, {"mismatches", mismatches}, {"pass", oracle_ok}}},
            {"bound", {{"k_max", bound_k}, {"holds", bound}, {"largest_minimal_constant", worst_const}}},
            {"beta_identity", {{"trials", beta_trials}, {"max_relative_difference", beta_worst}, {"pass", beta_ok}}},
            {"simplex", {{"cases", simplex}, {"max_abs_z", simplex_worst}, {"pass", simplex_ok}}},
            {"gamma_ratio",
             {{"beta", gamma.beta},
              {"sup", gamma.sup},
              {"tail_non_increasing", gamma.tail_non_increasing},
              {"bounded", gamma.bounded}}},
            {"sharpness",
             {{"delta", sharp.delta}, {"rows", sharp_rows}, {"all_hold", sharp.all_hold},
              {"increasing", sharp.increasing}}}};
  o.files.push_back({"alpha.csv", alpha.str()});
  o.files.push_back({"minimal-constants.csv", consts.str()});
  o.files.push_back({"gamma-ratio.csv", gt.str()});
  o.summary = std::to_string(mismatches) + " oracle mismatches in " + std::to_string(compared) + " entries";
  return o;
}

Outcome run_berman(const ExperimentConfig& c, const RngStream&) {
  Outcome o;
  const auto& p = c.params;
  IncrementCharfn provider;
  std::optional<rosenblatt::ChaosKernel> kernel;
  if (c.process.cls == ProcessClass::rosenblatt) {
    kernel.emplace(rosenblatt::ChaosKernel::build(c.process.hurst, c.grid, c.process.rank));
    provider = rosenblatt::rosenblatt_increment_charfn(*kernel);
  } else {
    provider = gaussian::gaussian_increment_charfn(gaussian_covariance(c.process), c.process.d);
  }
  const auto rep = laws::berman_criterion(provider, c.process.alpha, p.at("horizon").get<double>(),
                                          p.at("levels").get<int>(), p.at("xi_nodes").get<std::size_t>(),
                                          p.at("u_panels").get<std::size_t>());
  const double ad = c.process.alpha * c.process.d;
  const laws::BermanVerdict expected = ad < 1.0 ? laws::BermanVerdict::converges
                                       : ad > 1.0 ? laws::BermanVerdict::diverges
                                                  : laws::BermanVerdict::inconclusive;
  o.statement = rep.statement;
  o.pass = rep.verdict == expected && expected != laws::BermanVerdict::inconclusive;
  o.body = to_json(rep);
  o.body["expected_verdict"] = laws::to_string(expected);
  o.files.push_back({"shells.csv", berman_csv(rep).str()});
  o.summary = "verdict " + laws::to_string(rep.verdict) + " (expected " + laws::to_string(expected) + "), tail ratio " +
              fmt(rep.tail_ratio);
  return o;
}

Outcome run_sde(const ExperimentConfig& c, const RngStream& rng) {
  Outcome o;
  if (c.process.cls != ProcessClass::fbm_sde) throw std::invalid_argument("sde-convergence needs process.class fbm-sde");
  if (c.grid.t_start() != 0.0) throw std::invalid_argument("sde-convergence: grid must start at 0");
  const auto& p = c.params;
  const auto fields = sde::make_vector_fields(c.process.drift, c.process.diffusion, c.process.d);
  Eigen::VectorXd x0(c.process.d);
  for (int l = 0; l < c.process.d; ++l) x0(l) = c.process.x0[static_cast<std::size_t>(l)];
  const std::string exact_name = p.at("exact").get<std::string>();
  sde::ExactSolution exact;
  if (exact_name == "geometric") {
    if (c.process.drift != "zero" || c.process.diffusion != "linear")
      throw std::invalid_argument("params.exact=geometric needs drift zero and diffusion linear");
    exact = [](const Eigen::VectorXd& x, std::span<const double> b) {
      Eigen::VectorXd out(x.size());
      for (Eigen::Index l = 0; l < x.size(); ++l) out(l) = x(l) * std::exp(b[static_cast<std::size_t>(l)]);
      return out;
    };
  } else if (exact_name == "additive") {
    if (c.process.drift != "zero" || c.process.diffusion != "identity")
      throw std::invalid_argument("params.exact=additive needs drift zero and diffusion identity");
    exact = [](const Eigen::VectorXd& x, std::span<const double> b) {
      Eigen::VectorXd out(x.size());
      for (Eigen::Index l = 0; l < x.size(); ++l) out(l) = x(l) + b[static_cast<std::size_t>(l)];
      return out;
    };
  }
  std::vector<std::size_t> levels;
  for (const auto& v : p.at("levels")) levels.push_back(v.get<std::size_t>());
  const auto res = sde::convergence_study(fields, x0, c.process.hurst, levels, c.replicas, rng,
                                          sde::scheme_from_string(c.process.scheme), exact, c.grid.t_end(), kExec);
  o.statement = res.self.statement;
  o.pass = res.self.pass && (res.exact.levels.empty() || res.exact.pass);
  o.body = to_json(res);
  o.files.push_back({"self-convergence.csv", levels_csv(res.self).str()});
  if (!res.exact.levels.empty()) o.files.push_back({"exact-error.csv", levels_csv(res.exact).str()});
  o.summary = "self-convergence rate " + fmt(res.self.fit.slope);
  return o;
}

Outcome dispatch(const ExperimentConfig& c, const RngStream& rng) {
  switch (c.experiment) {
    case Experiment::simulate: return run_simulate(c, rng);
    case Experiment::localtime: return run_localtime(c, rng);
    case Experiment::moments: return run_moments(c, rng);
    case Experiment::scaling: return run_scaling(c, rng);
    case Experiment::chung: return run_chung(c, rng);
    case Experiment::tails: return run_tails(c, rng);
    case Experiment::lnd: return run_lnd(c, rng);
    case Experiment::charfn: return run_charfn(c, rng);
    case Experiment::analytics: return run_analytics(c, rng);
    case Experiment::berman: return run_berman(c, rng);
    case Experiment::sde_convergence: return run_sde(c, rng);
  }
  throw std::logic_error("unhandled experiment");
}

}  // namespace

std::string output_directory_name(const ExperimentConfig& config) {
  return to_string(config.experiment) + "-" + config.hash().substr(0, 8);
}

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  RunResult res;
  const fs::path root = options.out_root ? *options.out_root : fs::path(config.output);
  const std::string hash = config.hash();
  const std::string name = output_directory_name(config);
  res.directory = root / name;
  if (options.threads > 0) kernels::set_thread_count(options.threads);

  RunRecord record;
  record.config_hash = hash;
  record.experiment = to_string(config.experiment);
  record.seed = config.seed;
  record.started_at = utc_timestamp();
  if (options.verbose)
    std::cerr << "[ltlab] " << record.experiment << " config " << hash.substr(0, 12) << " seed " << config.seed
              << " threads " << kernels::thread_count() << "\n";

  const std::string context = "experiment '" + record.experiment + "': ";
  try {
    const RngStream rng(config.seed, {static_cast<std::uint32_t>(config.experiment) + 1u, 0u});
    Outcome out = dispatch(config, rng);
    json report = {{"experiment", record.experiment},
                   {"statement", out.statement},
                   {"config_hash", hash},
                   {"artifact_version", kArtifactVersion},
                   {"seed", config.seed},
                   {"pass", out.pass},
                   {"summary", out.summary},
                   {"config", config.canonical},
                   {"result", out.body}};
    std::vector<std::string> files;
    for (const auto& f : out.files) {
      write_atomic(res.directory / f.name, f.content);
      files.push_back((fs::path(name) / f.name).generic_string());
    }
    report["files"] = files;
    write_atomic(res.directory / "report.json", report.dump(2) + "\n");
    files.push_back((fs::path(name) / "report.json").generic_string());
    res.pass = out.pass;
    res.exit_code = out.pass ? kSuccess : kExperimentFailure;
    res.message = out.summary;
    res.outputs = files;
    res.report = std::move(report);
  } catch (const HypothesisViolation& e) {
    res.exit_code = kConfigError;
    res.message = context + e.what();
  } catch (const std::invalid_argument& e) {
    res.exit_code = kConfigError;
    res.message = context + e.what();
  } catch (const std::exception& e) {
    res.exit_code = kInternalError;
    res.message = context + e.what();
  }
  if (options.verbose) std::cerr << "[ltlab] " << res.message << "\n";

  record.finished_at = utc_timestamp();
  record.outputs = res.outputs;
  record.pass = res.pass;
  record.exit_code = res.exit_code;
  record.summary = res.message;
  if (options.write_record) {
    try {
      res.record = append_run_record(root, record);
    } catch (const std::exception& e) {
      if (res.exit_code == kSuccess) res.exit_code = kInternalError;
      res.message += std::string("; run record not written: ") + e.what();
    }
  }
  return res;
}

}  // namespace ltlab::cli
