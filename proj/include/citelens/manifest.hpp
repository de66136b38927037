#pragma once

// Reproducibility sidecar for CLI runs: what was run, on which inputs
// (content digests), with which tool version and seed. Written atomically
// and only after every other output landed, so a manifest on disk means the
// run completed.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace citelens::manifest {

struct RunManifest {
  std::string command_line;
  std::string config_hash;  // digest of the resolved parameter set
  std::map<std::string, std::string> input_digests;  // path -> sha256, sorted
  std::string tool_version;
  std::optional<std::uint64_t> seed;
  std::string started;   // ISO-8601 UTC
  std::string finished;
};

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);  // DataError on IO failure

std::string iso8601_utc_now();

// Serializes to JSON next to the other outputs; temp file + rename.
void write_manifest_atomic(const std::filesystem::path& path, const RunManifest& m);

}  // namespace citelens::manifest
