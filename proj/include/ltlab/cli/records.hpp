#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace ltlab::cli {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// One completed (or failed) run. Stored as runs/NNNN-<hash8>.json under the
/// output root; existing records are never rewritten.
struct RunRecord {
  std::string config_hash;
  std::string artifact_version = kArtifactVersion;
  std::string experiment;
  std::string started_at;   // UTC, ISO 8601
  std::string finished_at;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;  // paths relative to the output root
  bool pass = false;
  int exit_code = 0;
  std::string summary;
};

nlohmann::json to_json(const RunRecord& r);
RunRecord run_record_from_json(const nlohmann::json& j);

/// Writes the record with the next free sequence number; returns its path.
std::filesystem::path append_run_record(const std::filesystem::path& root, const RunRecord& record);

struct RunIndexEntry {
  std::filesystem::path file;
  std::size_t sequence = 0;
  bool corrupted = false;
  std::string warning;
  RunRecord record;  // default-constructed when corrupted
};

/// Records under root/runs in sequence order. Throws std::runtime_error when
/// root is missing; a root without a runs directory yields an empty index.
std::vector<RunIndexEntry> list_runs(const std::filesystem::path& root);

std::string utc_timestamp();

}  // namespace ltlab::cli
