#include "simcrew/crews/literature.hpp"

#include "simcrew/agentcore/provider.hpp"
#include "simcrew/error.hpp"
#include "simcrew/io.hpp"
#include "simcrew/text.hpp"

#include <fmt/core.h>
#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <set>

namespace simcrew::crews {
namespace {

using nlohmann::json;

std::string field(const json& j, const char* key) {
  auto it = j.find(key);
  return it != j.end() && it->is_string() ? it->get<std::string>() : std::string{};
}

std::string excerpt(std::string_view s) { return std::string(s.substr(0, 200)); }

}  // namespace

std::string_view to_string(PaperSource s) noexcept {
  return s == PaperSource::fixture ? "fixture" : "downloaded";
}

std::vector<PaperSection> parse_sections(std::string_view markdown) {
  std::vector<PaperSection> out;
  std::map<std::string, int> seen;
  std::string* body = nullptr;
  for (const auto& line : text::split_lines(markdown)) {
    auto t = text::trim(line);
    if (!t.empty() && t.front() == '#') {
      auto hashes = std::min(t.find_first_not_of('#'), t.size());
      auto header = std::string(text::trim(t.substr(hashes)));
      int n = ++seen[header];
      if (n > 1) header += fmt::format(" ({})", n);
      out.push_back({std::move(header), {}});
      body = &out.back().body;
      continue;
    }
    if (!body) continue;
    *body += line;
    *body += '\n';
  }
  for (auto& s : out) {
    // trim surrounding blank lines so read_section returns the paragraph text as written
    auto first = s.body.find_first_not_of('\n');
    if (first == std::string::npos) {
      s.body.clear();
      continue;
    }
    auto last = s.body.find_last_not_of('\n');
    s.body = s.body.substr(first, last - first + 1);
  }
  return out;
}

std::vector<std::string> read_headers(const PaperRecord& record) {
  std::vector<std::string> out;
  for (const auto& s : record.sections) out.push_back(s.header);
  return out;
}

const std::string& read_section(const PaperRecord& record, std::string_view header) {
  for (const auto& s : record.sections) {
    if (s.header == header) return s.body;
  }
  for (const auto& s : record.sections) {
    if (text::iequals(s.header, header)) return s.body;
  }
  throw Error(Errc::not_found, fmt::format("paper {} has no section '{}'; available: {}", record.id, header,
                                           text::join(read_headers(record), ", ")));
}

std::vector<std::string> query_tokens(std::string_view s) {
  std::set<std::string> tokens;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      tokens.insert(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.insert(std::move(cur));
  return {tokens.begin(), tokens.end()};
}

std::string sanitize_id(std::string_view id) {
  std::string out;
  for (char c : id) {
    auto lc = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    bool ok = std::isalnum(static_cast<unsigned char>(lc)) || lc == '.' || lc == '-' || lc == '_';
    out += ok ? lc : '_';
  }
  return out;
}

FixtureCorpus::FixtureCorpus(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec))
    throw Error(Errc::io, fmt::format("literature corpus {} is not a directory", root.string()));
  for (const auto& e : fs::directory_iterator(root)) {
    if (!e.is_directory() || !fs::exists(e.path() / "meta")) continue;
    auto meta = json::parse(io::read_file(e.path() / "meta"), nullptr, false);
    if (meta.is_discarded() || !meta.is_object())
      throw Error(Errc::format, fmt::format("{}: meta is not a JSON object", e.path().string()));
    Entry p{field(meta, "id"), field(meta, "doi"), field(meta, "title"), field(meta, "abstract"), e.path()};
    if (p.id.empty()) p.id = e.path().filename().string();
    papers_.push_back(std::move(p));
  }
  std::sort(papers_.begin(), papers_.end(), [](const Entry& a, const Entry& b) { return a.id < b.id; });
}

std::vector<PaperHit> FixtureCorpus::search(std::string_view query, int limit) {
  auto q = query_tokens(query);
  if (q.empty()) throw Error(Errc::precondition, "search query is empty");
  std::vector<std::pair<int, const Entry*>> scored;
  for (const auto& p : papers_) {
    auto doc = query_tokens(p.title + " " + p.abstract);
    int score = 0;
    for (const auto& t : q) score += std::binary_search(doc.begin(), doc.end(), t) ? 1 : 0;
    if (score > 0) scored.emplace_back(score, &p);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<PaperHit> out;
  for (const auto& [score, p] : scored) {
    if (static_cast<int>(out.size()) >= limit) break;
    out.push_back({p->id, p->title, p->abstract});
  }
  return out;
}

PaperRecord FixtureCorpus::download(std::string_view id) {
  for (const auto& p : papers_) {
    if (p.id != id && (p.doi.empty() || !text::iequals(p.doi, id))) continue;
    PaperRecord r{p.id, p.title, p.abstract, {}, PaperSource::fixture};
    r.sections = parse_sections(io::read_file(p.dir / "body"));
    return r;
  }
  throw Error(Errc::not_found, fmt::format("no paper with identifier '{}' in the corpus", id));
}

void store_record(const PaperRecord& record, const fs::path& dir, std::string_view doi) {
  json meta = {{"id", record.id}, {"doi", std::string(doi)}, {"title", record.title}, {"abstract", record.abstract}};
  std::string body;
  for (const auto& s : record.sections) body += fmt::format("# {}\n\n{}\n\n", s.header, s.body);
  io::write_file(dir / "meta", meta.dump(2) + "\n");
  io::write_file(dir / "body", body);
}

SemanticScholarClient::SemanticScholarClient(SemanticScholarConfig config) : config_(std::move(config)) {
  agentcore::split_url(config_.endpoint);
}

json SemanticScholarClient::get(const std::string& path,
                                const std::vector<std::pair<std::string, std::string>>& params) {
  auto url = agentcore::split_url(config_.endpoint);
  httplib::Client client(url.scheme_host_port);
  if (!client.is_valid())
    throw Error(Errc::config, fmt::format("cannot create an HTTP client for {}", url.scheme_host_port));
  auto timeout = static_cast<time_t>(config_.timeout.count());
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  httplib::Params query(params.begin(), params.end());
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("x-api-key", config_.api_key);
  auto res = client.Get(url.path + path, query, headers);
  if (!res)
    throw ProviderError(fmt::format("literature request to {} failed: {}", config_.endpoint,
                                    httplib::to_string(res.error())),
                        RetryInfo{true, 0, std::nullopt});
  if (res->status == 404) throw Error(Errc::not_found, fmt::format("literature service has no {}", path));
  if (res->status != 200) {
    RetryInfo retry{res->status == 429 || res->status >= 500, res->status, std::nullopt};
    if (res->has_header("Retry-After")) {
      if (auto s = text::parse_int(res->get_header_value("Retry-After"))) retry.retry_after_seconds = static_cast<int>(*s);
    }
    throw ProviderError(fmt::format("literature service returned HTTP {}: {}", res->status, excerpt(res->body)),
                        retry);
  }
  auto body = json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.is_object())
    throw ProviderError(fmt::format("literature service returned an unexpected document: {}", excerpt(res->body)));
  return body;
}

std::vector<PaperHit> SemanticScholarClient::search(std::string_view query, int limit) {
  if (query_tokens(query).empty()) throw Error(Errc::precondition, "search query is empty");
  auto body = get("/graph/v1/paper/search", {{"query", std::string(query)},
                                             {"limit", std::to_string(std::max(limit, 1))},
                                             {"fields", "title,abstract,externalIds"}});
  std::vector<PaperHit> out;
  auto data = body.find("data");
  if (data == body.end() || !data->is_array()) return out;
  for (const auto& p : *data) {
    if (static_cast<int>(out.size()) >= limit) break;
    std::string id = field(p, "paperId");
    if (auto ext = p.find("externalIds"); ext != p.end() && ext->is_object()) {
      if (auto doi = field(*ext, "DOI"); !doi.empty()) id = doi;
    }
    out.push_back({id, field(p, "title"), field(p, "abstract")});
  }
  return out;
}

PaperRecord SemanticScholarClient::download(std::string_view id) {
  std::lock_guard lock(download_mu_);
  bool is_doi = id.find('/') != std::string_view::npos;
  auto path = fmt::format("/graph/v1/paper/{}{}", is_doi ? "DOI:" : "", id);
  auto body = get(path, {{"fields", "title,abstract,externalIds"}});
  PaperRecord r{std::string(id), field(body, "title"), field(body, "abstract"), {}, PaperSource::downloaded};
  r.sections.push_back({"Abstract", r.abstract});
  if (!config_.store.empty()) store_record(r, config_.store / sanitize_id(id), is_doi ? id : std::string_view{});
  return r;
}

}  // namespace simcrew::crews
