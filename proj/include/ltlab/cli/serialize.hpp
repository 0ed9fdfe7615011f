#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "ltlab/core/report.hpp"
#include "ltlab/core/stats.hpp"
#include "ltlab/gaussian/lnd.hpp"
#include "ltlab/laws/berman.hpp"
#include "ltlab/laws/moments.hpp"
#include "ltlab/laws/tails.hpp"
#include "ltlab/localtime/box.hpp"
#include "ltlab/sde/convergence.hpp"

namespace ltlab::cli {

/// Shortest decimal string that parses back to the same double ("nan", "inf", "-inf" otherwise).
std::string format_number(double x);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Header plus rows, emitted as RFC 4180 CSV with '\n' line ends.
class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(const std::vector<double>& row);
  void add_row(std::vector<std::string> row);
  std::size_t rows() const { return rows_.size(); }
  std::string str() const;

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

nlohmann::json to_json(const LinearFit& fit);
nlohmann::json to_json(const ScalingReport& rep);
nlohmann::json to_json(const laws::MomentReport& rep);
nlohmann::json to_json(const laws::TailReport& rep);
nlohmann::json to_json(const gaussian::LndReport& rep);
nlohmann::json to_json(const laws::BermanReport& rep);
nlohmann::json to_json(const sde::ConvergenceResult& res);

CsvTable levels_csv(const ScalingReport& rep);
CsvTable moments_csv(const laws::MomentReport& rep);
CsvTable tail_csv(const laws::TailReport& rep);
CsvTable berman_csv(const laws::BermanReport& rep);
/// Cell centre coordinates x_1..x_d and the value.
CsvTable field_csv(const localtime::LocalTimeField& field);
/// t, x_1..x_d.
CsvTable path_csv(const SamplePath& path);

}  // namespace ltlab::cli
