#include <doctest.h>

#include <sstream>

#include "citelens/corpus.hpp"
#include "citelens/error.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace citelens;

TEST_CASE("pub date parsing: months since 1800-01") {
  CHECK(corpus::parse_pub_date("1800-01") == 0);
  CHECK(corpus::parse_pub_date("1800-06") == 5);
  CHECK(corpus::parse_pub_date("1803-05") == 40);
  CHECK(corpus::parse_pub_date("1799-12") == -1);
  CHECK(corpus::parse_pub_date("1795-01") == -60);
  SUBCASE("day-level dates truncate to the month") {
    CHECK(corpus::parse_pub_date("1800-01-31") == 0);
    CHECK(corpus::parse_pub_date("2001-07-04") == corpus::parse_pub_date("2001-07"));
  }
  SUBCASE("malformed dates throw") {
    CHECK_THROWS_AS(corpus::parse_pub_date("1800"), DataError);
    CHECK_THROWS_AS(corpus::parse_pub_date("1800-13"), DataError);
    CHECK_THROWS_AS(corpus::parse_pub_date("1800-00"), DataError);
    CHECK_THROWS_AS(corpus::parse_pub_date("180O-01"), DataError);
    CHECK_THROWS_AS(corpus::parse_pub_date(""), DataError);
    CHECK_THROWS_AS(corpus::parse_pub_date("1800-01-32"), DataError);
  }
}

TEST_CASE("format_pub_month round trips, including pre-epoch months") {
  for (int m : {0, 5, 40, -1, -60, 2400, -241}) {
    CHECK(corpus::parse_pub_date(corpus::format_pub_month(m)) == m);
  }
  CHECK(corpus::format_pub_month(0) == "1800-01");
  CHECK(corpus::format_pub_month(-1) == "1799-12");
  CHECK(corpus::format_pub_month(40) == "1803-05");
}

TEST_CASE("G1 hand counts") {
  auto g = fixtures::g1();
  CHECK(g.num_documents() == 7);
  CHECK(g.num_edges() == 8);
  CHECK(g.min_pub_month() == 0);
  CHECK(g.max_pub_month() == 40);
  CHECK(g.horizon_month() == 40);  // defaults to last pub month

  CHECK(g.citations(g.require("B")).size() == 4);
  CHECK(g.citations(g.require("X")).size() == 1);
  CHECK(g.citations(g.require("R1")).size() == 2);
  CHECK(g.citations(g.require("R2")).size() == 1);
  CHECK(g.citations(g.require("G1d")).size() == 0);
  CHECK(g.references(g.require("H")).size() == 2);

  // in-degree total == out-degree total == edges
  std::size_t in = 0, out = 0;
  for (corpus::DocIndex i = 0; i < g.num_documents(); ++i) {
    in += g.citations(i).size();
    out += g.references(i).size();
  }
  CHECK(in == 8);
  CHECK(out == 8);
}

TEST_CASE("G1 window queries") {
  auto g = fixtures::g1();
  CHECK(corpus::citations_in_window(g, "B", 0, 24) == std::vector<corpus::DocId>{"R1", "R2"});
  CHECK(corpus::citations_in_window(g, "B", 24, 48) == std::vector<corpus::DocId>{"G2", "H"});
  CHECK(corpus::citations_in_window(g, "B", 7, 7).empty());
  CHECK(corpus::references_of(g, "R2") == std::vector<corpus::DocId>{"B", "X"});
  CHECK(corpus::references_of(g, "R1") == std::vector<corpus::DocId>{"B"});
  CHECK(corpus::references_of(g, "B").empty());
  CHECK_THROWS_AS(corpus::references_of(g, "nope"), DataError);
  CHECK(!g.find("nope").has_value());
}

TEST_CASE("window union property on random graphs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto raw = oracle::random_graph(seed, 30, 120);
    corpus::GraphBuilder b;
    for (const auto& [id, month] : raw.docs)
      b.add_document({id, static_cast<corpus::MonthIndex>(month), ""});
    for (const auto& [citing, cited] : raw.edges) b.add_citation(citing, cited);
    auto g = b.build();

    for (const auto& [id, month] : raw.docs) {
      (void)month;
      auto whole = corpus::citations_in_window(g, id, 0, 60);
      for (int split : {0, 7, 30, 59, 60}) {
        auto left = corpus::citations_in_window(g, id, 0, split);
        auto right = corpus::citations_in_window(g, id, split, 60);
        left.insert(left.end(), right.begin(), right.end());
        CHECK(left == whole);
      }
      CHECK(whole == oracle::citers_in_window(raw, id, 0, 60));
    }
  }
}

TEST_CASE("canonical export round trips to an identical graph") {
  auto g = fixtures::g1();
  std::ostringstream docs, cits;
  g.write_documents_csv(docs);
  g.write_citations_csv(cits);

  std::istringstream docs_in(docs.str()), cits_in(cits.str());
  auto again = corpus::ingest(docs_in, cits_in).graph;
  CHECK(g == again);

  // exporting the re-ingested graph is byte-identical (canonical form)
  std::ostringstream docs2, cits2;
  again.write_documents_csv(docs2);
  again.write_citations_csv(cits2);
  CHECK(docs.str() == docs2.str());
  CHECK(cits.str() == cits2.str());
}

TEST_CASE("kind column survives ingest, filtering and export") {
  std::istringstream docs(
      "doc_id,pub_date,kind\n"
      "p1,1900-01,paper\n"
      "p2,1900-02,patent\n"
      "p3,1900-03,paper\n");
  std::istringstream cits("citing_id,cited_id\np3,p1\n");
  auto g = corpus::ingest(docs, cits).graph;
  CHECK(g.document(g.require("p2")).kind == "patent");

  corpus::CohortFilter f;
  f.kind = "paper";
  CHECK(f.matches(g.document(g.require("p1"))));
  CHECK(!f.matches(g.document(g.require("p2"))));
  f.pub_from = corpus::parse_pub_date("1900-02");
  CHECK(!f.matches(g.document(g.require("p1"))));
  CHECK(f.matches(g.document(g.require("p3"))));

  std::ostringstream out;
  g.write_documents_csv(out);
  CHECK(out.str() ==
        "doc_id,pub_date,kind\n"
        "p1,1900-01,paper\n"
        "p2,1900-02,patent\n"
        "p3,1900-03,paper\n");
}

TEST_CASE("anomaly policies") {
  const std::string docs_text =
      "doc_id,pub_date\n"
      "early,1900-01\n"
      "late,1900-05\n";
  const std::string cits_text = "citing_id,cited_id\nearly,late\n";  // forward in time

  SUBCASE("drop removes the edge and reports it") {
    std::istringstream d(docs_text), c(cits_text);
    auto r = corpus::ingest(d, c, corpus::AnomalyPolicy::drop);
    CHECK(r.graph.num_edges() == 0);
    CHECK(r.report.dropped_anomalies == 1);
    CHECK(r.graph.anomaly_count() == 0);
  }
  SUBCASE("keep retains the edge and counts it") {
    std::istringstream d(docs_text), c(cits_text);
    auto r = corpus::ingest(d, c, corpus::AnomalyPolicy::keep);
    CHECK(r.graph.num_edges() == 1);
    CHECK(r.report.kept_anomalies == 1);
    CHECK(r.graph.anomaly_count() == 1);
  }
  SUBCASE("fail names the offending edge") {
    std::istringstream d(docs_text), c(cits_text);
    CHECK_THROWS_WITH_AS(corpus::ingest(d, c, corpus::AnomalyPolicy::fail),
                         "forward-in-time citation early -> late (1900-01 cites 1900-05)",
                         DataError);
  }
  SUBCASE("fail also rejects unknown endpoints, naming the edge") {
    std::istringstream d(docs_text), c("citing_id,cited_id\nlate,ghost\n");
    CHECK_THROWS_WITH_AS(corpus::ingest(d, c, corpus::AnomalyPolicy::fail),
                         "citation late -> ghost references unknown document 'ghost'", DataError);
  }
}

TEST_CASE("unknown endpoints, self-citations and duplicates are reported") {
  std::istringstream docs(
      "doc_id,pub_date\n"
      "a,1900-01\n"
      "b,1900-02\n");
  std::istringstream cits(
      "citing_id,cited_id\n"
      "b,a\n"
      "b,a\n"      // duplicate
      "b,b\n"      // self-citation
      "b,ghost\n"  // unknown target
      "ghost,a\n"  // unknown source
  );
  auto r = corpus::ingest(docs, cits);
  CHECK(r.graph.num_edges() == 1);
  CHECK(r.report.dropped_duplicate_edges == 1);
  CHECK(r.report.dropped_self_citations == 1);
  CHECK(r.report.dropped_unknown_edges == 2);
  CHECK(r.report.edges == 1);
  CHECK(r.report.documents == 2);
}

TEST_CASE("same-month citation is not an anomaly") {
  std::istringstream docs(
      "doc_id,pub_date\n"
      "a,1900-01\n"
      "b,1900-01\n");
  std::istringstream cits("citing_id,cited_id\nb,a\n");
  auto r = corpus::ingest(docs, cits, corpus::AnomalyPolicy::fail);
  CHECK(r.graph.num_edges() == 1);
}

TEST_CASE("horizon handling") {
  auto g = fixtures::g1();
  CHECK_THROWS_AS(g.with_horizon(39), DataError);  // precedes last pub month
  auto g48 = g.with_horizon(48);
  CHECK(g48.horizon_month() == 48);
  CHECK(g48.num_edges() == g.num_edges());

  auto direct = fixtures::g1(48);
  CHECK(direct.horizon_month() == 48);
  CHECK(g48 == direct);

  std::istringstream docs{std::string(fixtures::kG1Documents)};
  std::istringstream cits{std::string(fixtures::kG1Citations)};
  CHECK_THROWS_AS(corpus::ingest(docs, cits, corpus::AnomalyPolicy::drop,
                                 corpus::MonthIndex{12}),
                  DataError);
}

TEST_CASE("ingest errors name the file and line") {
  SUBCASE("missing required column") {
    std::istringstream docs("identifier,pub_date\na,1900-01\n");
    std::istringstream cits("citing_id,cited_id\n");
    CHECK_THROWS_AS(corpus::ingest(docs, cits), DataError);
  }
  SUBCASE("wrong field count points at the record") {
    std::istringstream docs("doc_id,pub_date\na,1900-01\nb\n");
    std::istringstream cits("citing_id,cited_id\n");
    try {
      corpus::ingest(docs, cits);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("documents.csv:3") != std::string::npos);
    }
  }
  SUBCASE("bad date points at the record") {
    std::istringstream docs("doc_id,pub_date\na,19000-1\n");
    std::istringstream cits("citing_id,cited_id\n");
    CHECK_THROWS_AS(corpus::ingest(docs, cits), DataError);
  }
  SUBCASE("duplicate document id") {
    std::istringstream docs("doc_id,pub_date\na,1900-01\na,1900-02\n");
    std::istringstream cits("citing_id,cited_id\n");
    CHECK_THROWS_AS(corpus::ingest(docs, cits), DataError);
  }
  SUBCASE("empty document id") {
    std::istringstream docs("doc_id,pub_date\n,1900-01\n");
    std::istringstream cits("citing_id,cited_id\n");
    CHECK_THROWS_AS(corpus::ingest(docs, cits), DataError);
  }
}

TEST_CASE("canonical order is (pub_month, id) with index-sorted adjacency") {
  // insertion order deliberately scrambled; ties on month broken by id
  corpus::GraphBuilder b;
  b.add_document({"z", 5, ""});
  b.add_document({"a", 5, ""});
  b.add_document({"m", 2, ""});
  b.add_document({"q", 9, ""});
  b.add_citation("q", "z");
  b.add_citation("q", "m");
  b.add_citation("q", "a");
  auto g = b.build();
  CHECK(g.document(0).id == "m");
  CHECK(g.document(1).id == "a");
  CHECK(g.document(2).id == "z");
  CHECK(g.document(3).id == "q");
  auto refs = g.references(g.require("q"));
  REQUIRE(refs.size() == 3);
  CHECK(g.document(refs[0]).id == "m");  // month 2 first
  CHECK(g.document(refs[1]).id == "a");  // month 5, 'a' < 'z'
  CHECK(g.document(refs[2]).id == "z");
}
