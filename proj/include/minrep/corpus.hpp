#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "minrep/families.hpp"

namespace minrep {

using Json = nlohmann::ordered_json;

struct CorpusEntry {
  std::string id;
  int degree = 0;
  std::vector<std::vector<int>> generators;  // 0-based image lists
  Json expected;  // optional asserted invariants: order, rdim, family
};

std::vector<CorpusEntry> load_corpus(const std::string& path);
std::vector<CorpusEntry> parse_corpus(const Json& doc, const std::string& origin);
Json corpus_to_json(const std::vector<CorpusEntry>& entries);

// Realizes the group by its regular permutation action on a greedy minimal
// generating sequence (degree = order).  One such round trip is a fixed
// point: re-exporting the rebuilt group reproduces the same entry.
CorpusEntry entry_from_group(const Group& g, const std::string& id);
Group group_from_entry(const CorpusEntry& entry);

// The bundled corpus: all groups of order <= 16, all of orders 18, 20, 21,
// 24, 27, and order-32 spot checks.  Ids are stable.
std::vector<CorpusEntry> bundled_corpus();

// --- serialization ---
Json cyclotomic_to_json(const Cyclotomic& v);        // length-conductor coeffs
Json character_table_to_json(const CharacterTable& t);
Json certificate_to_json(const RdimCertificate& c);
Json minimality_to_json(const MinimalityReport& r);
Json verdict_to_json(const ClassificationVerdict& v);
Json results_to_json(const std::vector<ClassificationVerdict>& verdicts, int degree);
void save_results(const std::string& path, const std::vector<ClassificationVerdict>& verdicts,
                  int degree);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// One JSON record per content hash in a directory; records are pure
// functions of the multiplication table, so concurrent writers are benign.
class InvariantCache {
 public:
  explicit InvariantCache(std::string dir);
  std::optional<Json> load(const Group& g) const;
  void store(const Group& g, const Json& record) const;

 private:
  std::string dir_;
};

// content_hash, order, class_count, irreducible_degrees, rdim + witness
// degrees, minimality verdict, family tag: everything classify needs.
Json compute_cache_record(const Group& g);
Json cache_record(const Group& g, const InvariantCache* cache);
ClassificationVerdict verdict_from_record(const Json& record, int degree, const std::string& id);

// classify pipeline used by the CLI: per-entry records (cached when a cache
// is given), jobs > 1 parallelizes across entries without changing output.
std::vector<ClassificationVerdict> classify_corpus(const std::vector<CorpusEntry>& entries,
                                                   int degree, const InvariantCache* cache,
                                                   int jobs);

}  // namespace minrep
