// Loopback tests for the live literature client.

#include "simcrew/crews/literature.hpp"
#include "simcrew/error.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <thread>

using namespace simcrew;
using namespace simcrew::crews;
using nlohmann::json;

namespace {

class Graph {
 public:
  explicit Graph(httplib::Server::Handler handler) {
    server_.Get(R"(/graph/v1/paper/.*)", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~Graph() {
    server_.stop();
    thread_.join();
  }
  std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST(SemanticScholar, SearchSendsQueryAndPrefersDoi) {
  httplib::Params seen;
  std::string key;
  Graph g([&](const httplib::Request& req, httplib::Response& res) {
    seen = req.params;
    key = req.get_header_value("x-api-key");
    json body = {{"data",
                  {{{"paperId", "abc123"}, {"title", "T1"}, {"abstract", "A1"}, {"externalIds", {{"DOI", "10.1/x"}}}},
                   {{"paperId", "def456"}, {"title", "T2"}, {"abstract", nullptr}}}}};
    res.set_content(body.dump(), "application/json");
  });
  SemanticScholarClient c({g.endpoint(), "k-1"});
  auto hits = c.search("co2 zeolite", 5);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].id, "10.1/x");
  EXPECT_EQ(hits[1].id, "def456");
  EXPECT_EQ(hits[1].abstract, "");
  EXPECT_EQ(key, "k-1");
  EXPECT_EQ(seen.find("query")->second, "co2 zeolite");
  EXPECT_EQ(seen.find("limit")->second, "5");
  EXPECT_EQ(c.search("co2", 1).size(), 1u);
}

TEST(SemanticScholar, DownloadByDoiIsStored) {
  std::string path;
  Graph g([&](const httplib::Request& req, httplib::Response& res) {
    path = req.path;
    res.set_content(json{{"title", "T"}, {"abstract", "Charges of 0.65 e."}}.dump(), "application/json");
  });
  simcrew::testing::TempDir dir;
  SemanticScholarClient c({g.endpoint(), "", dir.path()});
  auto r = c.download("10.1/X");
  EXPECT_EQ(path, "/graph/v1/paper/DOI:10.1/X");
  EXPECT_EQ(r.source, PaperSource::downloaded);
  ASSERT_EQ(r.sections.size(), 1u);
  EXPECT_EQ(read_section(r, "abstract"), "Charges of 0.65 e.");
  FixtureCorpus stored(dir.path());
  EXPECT_EQ(stored.download("10.1/x").title, "T");
  c.download("abc123");
  EXPECT_EQ(path, "/graph/v1/paper/abc123");
}

TEST(SemanticScholar, StatusMapping) {
  int status = 404;
  Graph g([&](const httplib::Request&, httplib::Response& res) {
    res.status = status;
    if (status == 429) res.set_header("Retry-After", "3");
    res.set_content("{}", "application/json");
  });
  SemanticScholarClient c({g.endpoint()});
  try {
    c.download("missing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_found);
  }
  for (int s : {429, 503, 400}) {
    status = s;
    try {
      c.search("co2", 3);
      FAIL();
    } catch (const ProviderError& e) {
      EXPECT_EQ(e.retry().http_status, s);
      EXPECT_EQ(e.retry().retryable, s != 400);
      if (s == 429) EXPECT_EQ(e.retry().retry_after_seconds, 3);
    }
  }
}

TEST(SemanticScholar, RefusedConnectionIsRetryable) {
  int port;
  {
    httplib::Server s;
    port = s.bind_to_any_port("127.0.0.1");
  }
  SemanticScholarClient c({"http://127.0.0.1:" + std::to_string(port), "", {}, std::chrono::seconds(2)});
  try {
    c.search("co2", 3);
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_TRUE(e.retry().retryable);
    EXPECT_EQ(e.retry().http_status, 0);
  }
}
