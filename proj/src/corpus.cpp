#include "citelens/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "citelens/csv.hpp"
#include "citelens/error.hpp"

namespace citelens::corpus {

namespace {

int parse_int_exact(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DataError("bad integer '" + std::string(s) + "'");
  }
  return v;
}

// floor division, correct for negative month indices (years before 1800)
std::int32_t floor_div(std::int32_t a, std::int32_t b) {
  std::int32_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

MonthIndex parse_pub_date(std::string_view text) {
  // YYYY-MM or YYYY-MM-DD; the day, if present, is validated and dropped.
  if (text.size() < 7 || text[4] != '-') {
    throw DataError("bad date '" + std::string(text) + "' (want YYYY-MM or YYYY-MM-DD)");
  }
  int year = parse_int_exact(text.substr(0, 4));
  int month = parse_int_exact(text.substr(5, 2));
  if (month < 1 || month > 12) {
    throw DataError("bad month in date '" + std::string(text) + "'");
  }
  if (text.size() == 7) {
    // fine
  } else if (text.size() == 10 && text[7] == '-') {
    int day = parse_int_exact(text.substr(8, 2));
    if (day < 1 || day > 31) {
      throw DataError("bad day in date '" + std::string(text) + "'");
    }
  } else {
    throw DataError("bad date '" + std::string(text) + "' (want YYYY-MM or YYYY-MM-DD)");
  }
  return static_cast<MonthIndex>((year - 1800) * 12 + (month - 1));
}

std::string format_pub_month(MonthIndex m) {
  std::int32_t y = 1800 + floor_div(m, 12);
  std::int32_t mo = m - 12 * floor_div(m, 12) + 1;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d", y, mo);
  return buf;
}

std::optional<DocIndex> CitationGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

DocIndex CitationGraph::require(std::string_view id) const {
  auto idx = find(id);
  if (!idx) throw DataError("unknown document id '" + std::string(id) + "'");
  return *idx;
}

std::span<const DocIndex> CitationGraph::references(DocIndex doc) const {
  return {out_targets_.data() + out_offsets_[doc],
          out_offsets_[doc + 1] - out_offsets_[doc]};
}

std::span<const DocIndex> CitationGraph::citations(DocIndex doc) const {
  return {in_sources_.data() + in_offsets_[doc],
          in_offsets_[doc + 1] - in_offsets_[doc]};
}

std::span<const DocIndex> CitationGraph::citations_in_window(DocIndex doc,
                                                             MonthIndex from,
                                                             MonthIndex to) const {
  if (from > to) throw DataError("citation window has from > to");
  auto all = citations(doc);
  // canonical index order is pub_month-major, so pub_month is monotone here
  auto lo = std::lower_bound(all.begin(), all.end(), from,
                             [&](DocIndex i, MonthIndex m) { return docs_[i].pub_month < m; });
  auto hi = std::lower_bound(lo, all.end(), to,
                             [&](DocIndex i, MonthIndex m) { return docs_[i].pub_month < m; });
  return {lo, static_cast<std::size_t>(hi - lo)};
}

CitationGraph CitationGraph::with_horizon(MonthIndex horizon) const {
  if (num_documents() > 0 && horizon < max_pub_) {
    throw DataError("horizon " + std::to_string(horizon) +
                    " precedes latest publication month " + std::to_string(max_pub_));
  }
  CitationGraph g = *this;
  g.horizon_ = horizon;
  return g;
}

void CitationGraph::write_documents_csv(std::ostream& out) const {
  std::vector<std::string> row;
  if (has_kind_) {
    csv::write_row(out, std::vector<std::string>{"doc_id", "pub_date", "kind"});
  } else {
    csv::write_row(out, std::vector<std::string>{"doc_id", "pub_date"});
  }
  for (const auto& d : docs_) {
    row = {d.id, format_pub_month(d.pub_month)};
    if (has_kind_) row.push_back(d.kind);
    csv::write_row(out, row);
  }
}

void CitationGraph::write_citations_csv(std::ostream& out) const {
  csv::write_row(out, std::vector<std::string>{"citing_id", "cited_id"});
  for (DocIndex i = 0; i < docs_.size(); ++i) {
    for (DocIndex t : references(i)) {
      csv::write_row(out, std::vector<std::string>{docs_[i].id, docs_[t].id});
    }
  }
}

bool CitationGraph::operator==(const CitationGraph& other) const {
  auto key = [](const Document& d) { return std::tie(d.id, d.pub_month, d.kind); };
  if (docs_.size() != other.docs_.size()) return false;
  for (std::size_t i = 0; i < docs_.size(); ++i) {
    if (key(docs_[i]) != key(other.docs_[i])) return false;
  }
  return out_offsets_ == other.out_offsets_ && out_targets_ == other.out_targets_ &&
         horizon_ == other.horizon_;
}

void GraphBuilder::add_document(Document doc) {
  if (doc.id.empty()) throw DataError("document with empty id");
  auto [it, inserted] = seen_.emplace(doc.id, docs_.size());
  if (!inserted) throw DataError("duplicate document id '" + doc.id + "'");
  docs_.push_back(std::move(doc));
}

void GraphBuilder::add_citation(std::string citing, std::string cited) {
  edges_.emplace_back(std::move(citing), std::move(cited));
}

CitationGraph GraphBuilder::build(AnomalyPolicy policy, IngestReport* report,
                                  std::optional<MonthIndex> horizon) {
  CitationGraph g;
  IngestReport local;
  IngestReport& rep = report ? *report : local;

  g.docs_ = std::move(docs_);
  std::sort(g.docs_.begin(), g.docs_.end(), [](const Document& a, const Document& b) {
    if (a.pub_month != b.pub_month) return a.pub_month < b.pub_month;
    return a.id < b.id;
  });
  g.index_.reserve(g.docs_.size());
  for (DocIndex i = 0; i < g.docs_.size(); ++i) {
    g.index_.emplace(g.docs_[i].id, i);
    if (!g.docs_[i].kind.empty()) g.has_kind_ = true;
  }
  if (!g.docs_.empty()) {
    g.min_pub_ = g.docs_.front().pub_month;
    g.max_pub_ = g.docs_.back().pub_month;
  }
  g.horizon_ = horizon.value_or(g.max_pub_);
  if (!g.docs_.empty() && g.horizon_ < g.max_pub_) {
    throw DataError("horizon " + std::to_string(g.horizon_) +
                    " precedes latest publication month " + std::to_string(g.max_pub_));
  }

  // Resolve, filter and dedupe edges.
  std::vector<std::pair<DocIndex, DocIndex>> edges;
  edges.reserve(edges_.size());
  for (const auto& [citing, cited] : edges_) {
    auto a = g.find(citing);
    auto b = g.find(cited);
    if (!a || !b) {
      // Real corpora cite outside their own universe, so unknown endpoints
      // are reported rather than fatal -- except under the strict policy.
      if (policy == AnomalyPolicy::fail) {
        throw DataError("citation " + citing + " -> " + cited + " references unknown document '" +
                        (!a ? citing : cited) + "'");
      }
      ++rep.dropped_unknown_edges;
      continue;
    }
    if (*a == *b) {
      ++rep.dropped_self_citations;
      continue;
    }
    const MonthIndex edge_month = g.docs_[*a].pub_month;
    if (edge_month < g.docs_[*b].pub_month) {
      switch (policy) {
        case AnomalyPolicy::fail:
          throw DataError("forward-in-time citation " + citing + " -> " + cited +
                          " (" + format_pub_month(edge_month) + " cites " +
                          format_pub_month(g.docs_[*b].pub_month) + ")");
        case AnomalyPolicy::drop:
          ++rep.dropped_anomalies;
          continue;
        case AnomalyPolicy::keep:
          ++rep.kept_anomalies;
          break;
      }
    }
    edges.emplace_back(*a, *b);
  }
  std::sort(edges.begin(), edges.end());
  std::size_t before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  rep.dropped_duplicate_edges += before - edges.size();

  const std::size_t n = g.docs_.size();
  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (auto [a, b] : edges) {
    ++g.out_offsets_[a + 1];
    ++g.in_offsets_[b + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.in_offsets_[i + 1] += g.in_offsets_[i];
  }
  g.out_targets_.resize(edges.size());
  g.in_sources_.resize(edges.size());
  std::vector<std::size_t> ocur(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
  std::vector<std::size_t> icur(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  // edges are sorted by (citing, cited): out lists come out target-sorted
  for (auto [a, b] : edges) g.out_targets_[ocur[a]++] = b;
  // second pass sorted by (cited, citing) for index-sorted in lists
  std::sort(edges.begin(), edges.end(), [](auto x, auto y) {
    return std::pair(x.second, x.first) < std::pair(y.second, y.first);
  });
  for (auto [a, b] : edges) g.in_sources_[icur[b]++] = a;

  g.kept_anomalies_ = rep.kept_anomalies;
  rep.documents = n;
  rep.edges = edges.size();

  seen_.clear();
  edges_.clear();
  return g;
}

namespace {

std::size_t column_of(const std::vector<std::string>& header, std::string_view name,
                      const std::string& stream_name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw DataError(stream_name + ":1: missing required column '" + std::string(name) + "'");
}

}  // namespace

IngestResult ingest(std::istream& documents_csv, std::istream& citations_csv,
                    AnomalyPolicy policy, std::optional<MonthIndex> horizon,
                    std::string documents_name, std::string citations_name) {
  GraphBuilder builder;

  csv::Reader docs(documents_csv, documents_name);
  auto header = docs.next();
  if (!header) throw DataError(documents_name + ": empty file");
  std::size_t id_col = column_of(header->fields, "doc_id", documents_name);
  std::size_t date_col = column_of(header->fields, "pub_date", documents_name);
  std::optional<std::size_t> kind_col;
  for (std::size_t i = 0; i < header->fields.size(); ++i) {
    if (header->fields[i] == "kind") kind_col = i;
  }
  while (auto row = docs.next()) {
    if (row->fields.size() == 1 && row->fields[0].empty()) continue;  // blank line
    if (row->fields.size() < header->fields.size()) {
      throw DataError(documents_name + ":" + std::to_string(row->line) +
                      ": expected " + std::to_string(header->fields.size()) +
                      " fields, got " + std::to_string(row->fields.size()));
    }
    Document d;
    d.id = row->fields[id_col];
    try {
      d.pub_month = parse_pub_date(row->fields[date_col]);
    } catch (const DataError& e) {
      throw DataError(documents_name + ":" + std::to_string(row->line) + ": " + e.what());
    }
    if (kind_col && *kind_col < row->fields.size()) d.kind = row->fields[*kind_col];
    try {
      builder.add_document(std::move(d));
    } catch (const DataError& e) {
      throw DataError(documents_name + ":" + std::to_string(row->line) + ": " + e.what());
    }
  }

  csv::Reader cits(citations_csv, citations_name);
  auto cheader = cits.next();
  if (!cheader) throw DataError(citations_name + ": empty file");
  std::size_t citing_col = column_of(cheader->fields, "citing_id", citations_name);
  std::size_t cited_col = column_of(cheader->fields, "cited_id", citations_name);
  while (auto row = cits.next()) {
    if (row->fields.size() == 1 && row->fields[0].empty()) continue;
    if (row->fields.size() < cheader->fields.size()) {
      throw DataError(citations_name + ":" + std::to_string(row->line) +
                      ": expected " + std::to_string(cheader->fields.size()) +
                      " fields, got " + std::to_string(row->fields.size()));
    }
    builder.add_citation(row->fields[citing_col], row->fields[cited_col]);
  }

  IngestResult result{CitationGraph{}, IngestReport{}};
  result.graph = builder.build(policy, &result.report, horizon);
  return result;
}

std::vector<DocId> citations_in_window(const CitationGraph& g, std::string_view id,
                                       MonthIndex from, MonthIndex to) {
  std::vector<DocId> out;
  for (DocIndex i : g.citations_in_window(g.require(id), from, to)) {
    out.push_back(g.document(i).id);
  }
  return out;
}

std::vector<DocId> references_of(const CitationGraph& g, std::string_view id) {
  std::vector<DocId> out;
  for (DocIndex i : g.references(g.require(id))) out.push_back(g.document(i).id);
  return out;
}

}  // namespace citelens::corpus
