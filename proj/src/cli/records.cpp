#include "ltlab/cli/records.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ltlab/cli/serialize.hpp"

namespace ltlab::cli {

namespace fs = std::filesystem;

nlohmann::json to_json(const RunRecord& r) {
  return {{"config_hash", r.config_hash}, {"artifact_version", r.artifact_version},
          {"experiment", r.experiment},   {"started_at", r.started_at},
          {"finished_at", r.finished_at}, {"seed", r.seed},
          {"outputs", r.outputs},         {"pass", r.pass},
          {"exit_code", r.exit_code},     {"summary", r.summary}};
}

RunRecord run_record_from_json(const nlohmann::json& j) {
  RunRecord r;
  r.config_hash = j.at("config_hash").get<std::string>();
  r.artifact_version = j.at("artifact_version").get<std::string>();
  r.experiment = j.at("experiment").get<std::string>();
  r.started_at = j.at("started_at").get<std::string>();
  r.finished_at = j.at("finished_at").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.outputs = j.at("outputs").get<std::vector<std::string>>();
  r.pass = j.at("pass").get<bool>();
  r.exit_code = j.at("exit_code").get<int>();
  r.summary = j.at("summary").get<std::string>();
  return r;
}

namespace {
// "NNNN-xxxxxxxx.json" → NNNN, or 0 when the name does not match.
std::size_t sequence_of(const fs::path& p) {
  const std::string name = p.filename().string();
  std::size_t seq = 0, i = 0;
  while (i < name.size() && name[i] >= '0' && name[i] <= '9') seq = seq * 10 + static_cast<std::size_t>(name[i++] - '0');
  if (i == 0 || i >= name.size() || name[i] != '-' || p.extension() != ".json") return 0;
  return seq;
}
}  // namespace

fs::path append_run_record(const fs::path& root, const RunRecord& record) {
  const fs::path dir = root / "runs";
  fs::create_directories(dir);
  std::size_t next = 1;
  for (const auto& e : fs::directory_iterator(dir)) next = std::max(next, sequence_of(e.path()) + 1);
  char name[64];
  std::snprintf(name, sizeof name, "%04zu-%s.json", next, record.config_hash.substr(0, 8).c_str());
  fs::path path = dir / name;
  // Never overwrite: if another writer took the slot, move on.
  while (fs::exists(path)) {
    std::snprintf(name, sizeof name, "%04zu-%s.json", ++next, record.config_hash.substr(0, 8).c_str());
    path = dir / name;
  }
  write_atomic(path, to_json(record).dump(2) + "\n");
  return path;
}

std::vector<RunIndexEntry> list_runs(const fs::path& root) {
  if (!fs::is_directory(root)) throw std::runtime_error("list_runs: directory '" + root.string() + "' does not exist");
  std::vector<RunIndexEntry> out;
  const fs::path dir = root / "runs";
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::size_t seq = sequence_of(e.path());
    if (seq == 0) continue;
    RunIndexEntry entry;
    entry.file = e.path();
    entry.sequence = seq;
    try {
      std::ifstream in(e.path(), std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      entry.record = run_record_from_json(nlohmann::json::parse(ss.str()));
    } catch (const std::exception& ex) {
      entry.corrupted = true;
      entry.warning = std::string("unreadable run record: ") + ex.what();
      entry.record = RunRecord{};
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.sequence < b.sequence; });
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace ltlab::cli
