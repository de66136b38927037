#pragma once

// The G1 hand-fixture: 7 documents, 8 edges, month numbers in comments.
// Every hand-derived expectation in the tests traces back to these two
// strings, so they are the single source of truth.
//
//   B   1800-01 (0)    cited by R1, R2, G2, H
//   X   1800-06 (5)    cited by R2
//   R1  1800-07 (6)    cites B;     cited by G1d, H
//   R2  1801-07 (18)   cites B, X;  cited by G2
//   G1d 1802-07 (30)   cites R1
//   G2  1802-11 (34)   cites R2, B
//   H   1803-05 (40)   cites B, R1

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

#include "citelens/corpus.hpp"

namespace fixtures {

inline constexpr std::string_view kG1Documents =
    "doc_id,pub_date\n"
    "B,1800-01\n"
    "X,1800-06\n"
    "R1,1800-07\n"
    "R2,1801-07\n"
    "G1d,1802-07\n"
    "G2,1802-11\n"
    "H,1803-05\n";

inline constexpr std::string_view kG1Citations =
    "citing_id,cited_id\n"
    "R1,B\n"
    "R2,B\n"
    "R2,X\n"
    "G1d,R1\n"
    "G2,R2\n"
    "G2,B\n"
    "H,B\n"
    "H,R1\n";

inline citelens::corpus::CitationGraph g1(
    std::optional<citelens::corpus::MonthIndex> horizon = std::nullopt) {
  std::istringstream docs{std::string(kG1Documents)};
  std::istringstream cits{std::string(kG1Citations)};
  return citelens::corpus::ingest(docs, cits, citelens::corpus::AnomalyPolicy::drop, horizon)
      .graph;
}

// Self-deleting unique directory under the system temp dir.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    std::random_device rd;
    path_ = base / (tag + "-" + std::to_string(rd()) + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name, std::string_view contents) const {
    auto p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << contents;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace fixtures
