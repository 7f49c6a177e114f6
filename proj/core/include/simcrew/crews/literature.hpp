#pragma once

#include <nlohmann/json.hpp>

#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace simcrew::crews {

namespace fs = std::filesystem;

enum class PaperSource { fixture, downloaded };

std::string_view to_string(PaperSource s) noexcept;

struct PaperSection {
  std::string header;
  std::string body;

  bool operator==(const PaperSection&) const = default;
};

struct PaperRecord {
  std::string id;  // DOI or corpus id
  std::string title;
  std::string abstract;
  std::vector<PaperSection> sections;
  PaperSource source = PaperSource::fixture;
};

/// Splits markdown on '#' header lines (any depth). Text before the first
/// header is dropped; a repeated header gets a " (2)", " (3)" ... suffix.
std::vector<PaperSection> parse_sections(std::string_view markdown);

std::vector<std::string> read_headers(const PaperRecord& record);
/// Throws Error(not_found) listing the available headers.
const std::string& read_section(const PaperRecord& record, std::string_view header);

struct PaperHit {
  std::string id;
  std::string title;
  std::string abstract;
};

class LiteratureStore {
 public:
  virtual ~LiteratureStore() = default;

  /// Throws Error(precondition) for a blank query.
  virtual std::vector<PaperHit> search(std::string_view query, int limit) = 0;
  /// Throws Error(not_found) for an unknown identifier.
  virtual PaperRecord download(std::string_view id) = 0;
};

/// Lower-cased alphanumeric tokens, deduplicated.
std::vector<std::string> query_tokens(std::string_view text);

/// Local corpus: corpus/<id>/meta (JSON: id, doi, title, abstract) and
/// corpus/<id>/body (markdown). Papers resolve by id or DOI.
class FixtureCorpus : public LiteratureStore {
 public:
  explicit FixtureCorpus(const fs::path& root);

  /// Ranked by the number of query tokens present in title + abstract; ties
  /// by id; papers sharing no token are left out.
  std::vector<PaperHit> search(std::string_view query, int limit) override;
  PaperRecord download(std::string_view id) override;

  std::size_t size() const noexcept { return papers_.size(); }

 private:
  struct Entry {
    std::string id;
    std::string doi;
    std::string title;
    std::string abstract;
    fs::path dir;
  };
  std::vector<Entry> papers_;
};

struct SemanticScholarConfig {
  std::string endpoint = "https://api.semanticscholar.org";
  std::string api_key;
  fs::path store;  // where downloaded records are written
  std::chrono::seconds timeout{30};
};

/// Live client for a Semantic Scholar compatible graph API. Network failures
/// raise retryable ProviderError. Only title and abstract are available over
/// the API, so a downloaded record carries a single "Abstract" section.
class SemanticScholarClient : public LiteratureStore {
 public:
  explicit SemanticScholarClient(SemanticScholarConfig config);

  std::vector<PaperHit> search(std::string_view query, int limit) override;
  PaperRecord download(std::string_view id) override;

 private:
  nlohmann::json get(const std::string& path, const std::vector<std::pair<std::string, std::string>>& params);

  SemanticScholarConfig config_;
  std::mutex download_mu_;
};

/// Writes corpus-layout files for a record (used to persist downloads).
void store_record(const PaperRecord& record, const fs::path& dir, std::string_view doi = {});

/// File-system safe identifier: [a-z0-9._-], everything else becomes '_'.
std::string sanitize_id(std::string_view id);

}  // namespace simcrew::crews
