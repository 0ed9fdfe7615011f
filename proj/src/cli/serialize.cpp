#include "ltlab/cli/serialize.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace ltlab::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  if (res.ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> s;
  s.reserve(row.size());
  for (double x : row) s.push_back(format_number(x));
  add_row(std::move(s));
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::invalid_argument("csv: row width does not match header");
  rows_.push_back(std::move(row));
}

namespace {
void put_field(std::string& out, const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) {
    out += f;
    return;
  }
  out += '"';
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void put_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ',';
    put_field(out, row[i]);
  }
  out += '\n';
}

// JSON cannot carry NaN or infinities; they become strings.
nlohmann::json num(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

nlohmann::json nums(const std::vector<double>& xs) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : xs) a.push_back(num(x));
  return a;
}
}  // namespace

std::string CsvTable::str() const {
  std::string out;
  put_row(out, header_);
  for (const auto& r : rows_) put_row(out, r);
  return out;
}

nlohmann::json to_json(const LinearFit& fit) {
  return {{"slope", num(fit.slope)},     {"intercept", num(fit.intercept)}, {"slope_se", num(fit.slope_se)},
          {"ci_low", num(fit.ci_low)},   {"ci_high", num(fit.ci_high)},     {"n", fit.n}};
}

nlohmann::json to_json(const ScalingReport& rep) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : rep.levels)
    levels.push_back({{"scale", num(l.scale)},
                      {"mean", num(l.mean)},
                      {"std_error", num(l.std_error)},
                      {"mean_log", num(l.mean_log)},
                      {"normalizer", num(l.normalizer)},
                      {"ratio_mean", num(l.ratio_mean)},
                      {"ratio_median", num(l.ratio_median)},
                      {"ratio_q90", num(l.ratio_q90)},
                      {"ratio_max", num(l.ratio_max)},
                      {"ratio_min", num(l.ratio_min)},
                      {"samples", l.samples}});
  return {{"statement", rep.statement},
          {"quantity", rep.quantity},
          {"levels", levels},
          {"fit", to_json(rep.fit)},
          {"normalized_fit", to_json(rep.normalized_fit)},
          {"target_slope", num(rep.target_slope)},
          {"tolerance", num(rep.tolerance)},
          {"trend_p_value", num(rep.trend_p_value)},
          {"ratio_floor", num(rep.ratio_floor)},
          {"replica_ratio_max", num(rep.replica_ratio_max)},
          {"pass", rep.pass},
          {"failures", rep.failures},
          {"flags", rep.flags}};
}

nlohmann::json to_json(const laws::MomentReport& rep) {
  nlohmann::json est = nlohmann::json::array();
  for (const auto& e : rep.estimates)
    est.push_back({{"n", e.n},
                   {"scale", num(e.scale)},
                   {"mean", num(e.mean)},
                   {"std_error", num(e.std_error)},
                   {"resolution_flag", e.resolution_flag}});
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& f : rep.fits) fits.push_back(to_json(f));
  nlohmann::json pass_n = nlohmann::json::array();
  for (bool b : rep.pass_per_n) pass_n.push_back(b);
  return {{"statement", rep.statement},   {"mode", rep.mode},
          {"x", nums(rep.x)},             {"n", rep.n_list},
          {"scales", nums(rep.scales)},   {"estimates", est},
          {"fits", fits},                 {"target_slopes", nums(rep.target_slopes)},
          {"pass_per_n", pass_n},         {"tolerance_per_n", num(rep.tolerance)},
          {"bin_width", num(rep.bin_width)}, {"replicas", rep.replicas},
          {"failures", rep.failures},     {"pass", rep.pass},
          {"flags", rep.flags}};
}

nlohmann::json to_json(const laws::TailReport& rep) {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : rep.levels)
    levels.push_back({{"u", num(l.u)},
                      {"threshold", num(l.threshold)},
                      {"exceedances", l.exceedances},
                      {"probability", num(l.probability)},
                      {"log_probability", num(l.log_probability)},
                      {"se_log", num(l.se_log)},
                      {"in_fit", l.in_fit}});
  return {{"statement", rep.statement},
          {"interval", {num(rep.a), num(rep.b)}},
          {"mode", rep.mode},
          {"x", nums(rep.x)},
          {"exponent", num(rep.exponent)},
          {"scale", num(rep.scale)},
          {"bin_width", num(rep.bin_width)},
          {"replicas", rep.replicas},
          {"levels", levels},
          {"truncated", rep.truncated},
          {"fit", to_json(rep.fit)},
          {"rate", num(rep.rate)},
          {"rate_ci", {num(rep.rate_ci_low), num(rep.rate_ci_high)}},
          {"decreasing", rep.decreasing},
          {"convex", rep.convex},
          {"pass", rep.pass},
          {"flags", rep.flags}};
}

nlohmann::json to_json(const gaussian::LndReport& rep) {
  return {{"d", rep.d},
          {"m_max", rep.m_max},
          {"trials", rep.trials},
          {"horizon", num(rep.horizon)},
          {"min_ratio", num(rep.min_ratio)},
          {"min_random", num(rep.min_random)},
          {"min_adversarial", num(rep.min_adversarial)},
          {"min_worst_direction", num(rep.min_worst_direction)},
          {"worst_case",
           {{"family", rep.worst_case.family},
            {"ratio", num(rep.worst_case.ratio)},
            {"partition", nums(rep.worst_case.partition)},
            {"xi", nums(rep.worst_case.xi)}}}};
}

nlohmann::json to_json(const laws::BermanReport& rep) {
  return {{"statement", rep.statement},
          {"d", rep.d},
          {"alpha", num(rep.alpha)},
          {"horizon", num(rep.horizon)},
          {"cutoffs", nums(rep.cutoffs)},
          {"shells", nums(rep.shells)},
          {"partial_sums", nums(rep.partial_sums)},
          {"ratios", nums(rep.ratios)},
          {"tail_ratio", num(rep.tail_ratio)},
          {"predicted_ratio", num(rep.predicted_ratio)},
          {"extrapolated", num(rep.extrapolated)},
          {"verdict", laws::to_string(rep.verdict)}};
}

nlohmann::json to_json(const sde::ConvergenceResult& res) {
  nlohmann::json j = {{"self", to_json(res.self)}, {"refinement_factors", nums(res.refinement_factors)}};
  if (!res.exact.levels.empty()) j["exact"] = to_json(res.exact);
  return j;
}

CsvTable levels_csv(const ScalingReport& rep) {
  CsvTable t({"scale", "mean", "std_error", "mean_log", "normalizer", "ratio_mean", "ratio_median", "ratio_q90",
              "ratio_max", "ratio_min", "samples"});
  for (const auto& l : rep.levels)
    t.add_row(std::vector<double>{l.scale, l.mean, l.std_error, l.mean_log, l.normalizer, l.ratio_mean,
                                  l.ratio_median, l.ratio_q90, l.ratio_max, l.ratio_min,
                                  static_cast<double>(l.samples)});
  return t;
}

CsvTable moments_csv(const laws::MomentReport& rep) {
  CsvTable t({"n", "scale", "mean", "std_error", "resolution_flag"});
  for (const auto& e : rep.estimates)
    t.add_row(std::vector<double>{static_cast<double>(e.n), e.scale, e.mean, e.std_error,
                                  e.resolution_flag ? 1.0 : 0.0});
  return t;
}

CsvTable tail_csv(const laws::TailReport& rep) {
  CsvTable t({"u", "threshold", "exceedances", "probability", "log_probability", "se_log", "in_fit"});
  for (const auto& l : rep.levels)
    t.add_row(std::vector<double>{l.u, l.threshold, static_cast<double>(l.exceedances), l.probability,
                                  l.log_probability, l.se_log, l.in_fit ? 1.0 : 0.0});
  return t;
}

CsvTable berman_csv(const laws::BermanReport& rep) {
  CsvTable t({"cutoff", "shell", "partial_sum"});
  for (std::size_t k = 0; k < rep.shells.size(); ++k)
    t.add_row(std::vector<double>{rep.cutoffs[k], rep.shells[k], rep.partial_sums[k]});
  return t;
}

CsvTable field_csv(const localtime::LocalTimeField& field) {
  std::vector<std::string> header;
  for (int l = 0; l < field.box.dim(); ++l) header.push_back("x" + std::to_string(l + 1));
  header.push_back("value");
  CsvTable t(header);
  for (std::size_t c = 0; c < field.values.size(); ++c) {
    std::vector<double> row = field.box.cell_center(c);
    row.push_back(field.values[c]);
    t.add_row(row);
  }
  return t;
}

CsvTable path_csv(const SamplePath& path) {
  std::vector<std::string> header{"t"};
  for (int l = 0; l < path.dim(); ++l) header.push_back("x" + std::to_string(l + 1));
  CsvTable t(header);
  for (std::size_t k = 0; k < path.size(); ++k) {
    std::vector<double> row{path.grid().point(k)};
    for (double v : path.at(k)) row.push_back(v);
    t.add_row(row);
  }
  return t;
}

}  // namespace ltlab::cli
