#pragma once

// Immutable timestamped citation graph.
//
// Design notes:
//  - Time is an integer month index (months since 1800-01); publication dates
//    are parsed from YYYY-MM or YYYY-MM-DD (the day is dropped).
//  - Documents live in one canonical order, sorted by (pub_month, id); a
//    document's index in that order is its handle everywhere else. Because
//    the order is pub_month-major, any index-sorted adjacency list is also
//    sorted by (month, id), which makes window queries two binary searches.
//  - Edges point citing -> cited and carry no payload; the edge month is the
//    citing document's pub_month. At most one edge per (citing, cited) pair,
//    never a self-loop. Forward-in-time edges (cited after citing) are
//    anomalies handled by policy: drop them, keep them, or fail ingest.
//  - Graphs are built through GraphBuilder (or ingest()) and never mutated
//    afterwards.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace citelens::corpus {

using DocId = std::string;
using MonthIndex = std::int32_t;
using DocIndex = std::uint32_t;

// "YYYY-MM" or "YYYY-MM-DD" -> months since 1800-01. Throws DataError.
MonthIndex parse_pub_date(std::string_view text);
std::string format_pub_month(MonthIndex month);

struct Document {
  DocId id;
  MonthIndex pub_month = 0;
  std::string kind;  // optional free-form label; empty = none
};

enum class AnomalyPolicy { drop, keep, fail };

struct IngestReport {
  std::size_t documents = 0;
  std::size_t edges = 0;
  std::size_t dropped_unknown_edges = 0;   // endpoint id not in the corpus
  std::size_t dropped_self_citations = 0;
  std::size_t dropped_duplicate_edges = 0;
  std::size_t dropped_anomalies = 0;       // forward-in-time, policy=drop
  std::size_t kept_anomalies = 0;          // forward-in-time, policy=keep
};

// Optional predicate over documents (kind and/or publication window).
struct CohortFilter {
  std::optional<std::string> kind;
  std::optional<MonthIndex> pub_from;  // inclusive
  std::optional<MonthIndex> pub_to;    // exclusive
  bool matches(const Document& d) const {
    if (kind && d.kind != *kind) return false;
    if (pub_from && d.pub_month < *pub_from) return false;
    if (pub_to && d.pub_month >= *pub_to) return false;
    return true;
  }
  bool is_everything() const { return !kind && !pub_from && !pub_to; }
};

class CitationGraph {
 public:
  std::size_t num_documents() const { return docs_.size(); }
  std::size_t num_edges() const { return out_targets_.size(); }

  const Document& document(DocIndex i) const { return docs_[i]; }
  std::optional<DocIndex> find(std::string_view id) const;
  DocIndex require(std::string_view id) const;  // DataError if unknown

  // End of the observation period; >= max pub_month. Defaults to max
  // pub_month unless overridden at build time or via with_horizon().
  MonthIndex horizon_month() const { return horizon_; }
  MonthIndex min_pub_month() const { return min_pub_; }
  MonthIndex max_pub_month() const { return max_pub_; }
  std::size_t anomaly_count() const { return kept_anomalies_; }

  // Documents cited by `doc`, sorted by (pub_month, id).
  std::span<const DocIndex> references(DocIndex doc) const;
  // Documents citing `doc`, sorted by (pub_month, id).
  std::span<const DocIndex> citations(DocIndex doc) const;
  // Citing documents with pub_month in [from, to); subspan of citations().
  std::span<const DocIndex> citations_in_window(DocIndex doc, MonthIndex from,
                                                MonthIndex to) const;

  CitationGraph with_horizon(MonthIndex horizon) const;  // DataError if < max pub

  // Canonical exports: documents by (pub_month, id); citations by citing
  // then cited, both in canonical document order. Byte-stable.
  void write_documents_csv(std::ostream& out) const;
  void write_citations_csv(std::ostream& out) const;

  bool operator==(const CitationGraph& other) const;

 private:
  friend class GraphBuilder;
  std::vector<Document> docs_;  // canonical (pub_month, id) order
  std::unordered_map<std::string, DocIndex> index_;
  std::vector<std::size_t> out_offsets_;  // CSR, size docs+1
  std::vector<DocIndex> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<DocIndex> in_sources_;
  MonthIndex horizon_ = 0;
  MonthIndex min_pub_ = 0;
  MonthIndex max_pub_ = 0;
  std::size_t kept_anomalies_ = 0;
  bool has_kind_ = false;
};

class GraphBuilder {
 public:
  // Throws DataError on duplicate id or empty id.
  void add_document(Document doc);
  // Ids are resolved at build time; unknown endpoints drop the edge.
  void add_citation(std::string citing, std::string cited);

  // Consumes the builder. Horizon defaults to max pub_month (0 for an empty
  // graph). policy=fail throws DataError naming the first forward edge.
  CitationGraph build(AnomalyPolicy policy = AnomalyPolicy::drop,
                      IngestReport* report = nullptr,
                      std::optional<MonthIndex> horizon = std::nullopt);

 private:
  std::vector<Document> docs_;
  std::unordered_map<std::string, std::size_t> seen_;
  std::vector<std::pair<std::string, std::string>> edges_;
};

struct IngestResult {
  CitationGraph graph;
  IngestReport report;
};

// documents CSV: header doc_id,pub_date[,kind]; citations CSV: header
// citing_id,cited_id. Errors name the stream and 1-based line.
IngestResult ingest(std::istream& documents_csv, std::istream& citations_csv,
                    AnomalyPolicy policy = AnomalyPolicy::drop,
                    std::optional<MonthIndex> horizon = std::nullopt,
                    std::string documents_name = "documents.csv",
                    std::string citations_name = "citations.csv");

// Id-facing conveniences (the CLI surface speaks ids, not indices).
std::vector<DocId> citations_in_window(const CitationGraph& g, std::string_view id,
                                       MonthIndex from, MonthIndex to);
std::vector<DocId> references_of(const CitationGraph& g, std::string_view id);

}  // namespace citelens::corpus
