#include "citelens/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <json.hpp>

#include "citelens/error.hpp"

namespace citelens::manifest {

namespace {

std::string hex(const unsigned char* digest, unsigned len) {
  static const char* alphabet = "0123456789abcdef";
  std::string out(2 * len, '0');
  for (unsigned i = 0; i < len; ++i) {
    out[2 * i] = alphabet[digest[i] >> 4];
    out[2 * i + 1] = alphabet[digest[i] & 0xf];
  }
  return out;
}

struct Sha256 {
  EVP_MD_CTX* ctx;
  Sha256() : ctx(EVP_MD_CTX_new()) {
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1)
      throw DataError("sha256: init failed");
  }
  ~Sha256() { EVP_MD_CTX_free(ctx); }
  void update(const void* data, std::size_t len) {
    if (EVP_DigestUpdate(ctx, data, len) != 1) throw DataError("sha256: update failed");
  }
  std::string finish() {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (EVP_DigestFinal_ex(ctx, digest, &len) != 1) throw DataError("sha256: final failed");
    return hex(digest, len);
  }
};

}  // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.finish();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  Sha256 h;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    h.update(buf, static_cast<std::size_t>(in.gcount()));
  return h.finish();
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest_atomic(const std::filesystem::path& path, const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command_line"] = m.command_line;
  j["config_hash"] = m.config_hash;
  j["input_digests"] = nlohmann::ordered_json::object();
  for (const auto& [file, digest] : m.input_digests) j["input_digests"][file] = digest;
  j["tool_version"] = m.tool_version;
  if (m.seed)
    j["seed"] = *m.seed;
  else
    j["seed"] = nullptr;
  j["started"] = m.started;
  j["finished"] = m.finished;

  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp);
    out << j.dump(2) << '\n';
    if (!out.flush()) throw DataError("cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw DataError("cannot move manifest into place: " + ec.message());
  }
}

}  // namespace citelens::manifest
