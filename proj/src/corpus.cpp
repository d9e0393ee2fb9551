#include "minrep/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "minrep/repmodel.hpp"

namespace minrep {
namespace {

std::string to_hex(uint64_t h) {
  std::ostringstream out;
  out << std::hex << std::setfill('0') << std::setw(16) << h;
  return out.str();
}

uint64_t from_hex(const std::string& s) {
  return std::stoull(s, nullptr, 16);
}

}  // namespace

// ---------------------------------------------------------------------------
// corpus schema

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::vector<CorpusEntry> parse_corpus(const Json& doc, const std::string& origin) {
  if (!doc.is_object() || !doc.contains("groups") || !doc.at("groups").is_array())
    throw ParseError(origin + ": expected an object with a \"groups\" array");
  std::vector<CorpusEntry> entries;
  std::set<std::string> seen;
  int pos = 0;
  for (const Json& e : doc.at("groups")) {
    std::string where = origin + ", entry #" + std::to_string(pos++);
    if (!e.is_object()) throw ParseError(where + ": entry is not an object");
    if (!e.contains("id") || !e.at("id").is_string() || e.at("id").get<std::string>().empty())
      throw ParseError(where + ": missing or empty \"id\"");
    CorpusEntry entry;
    entry.id = e.at("id").get<std::string>();
    where = origin + ", entry \"" + entry.id + "\"";
    if (!seen.insert(entry.id).second) throw ParseError(where + ": duplicate id");
    if (!e.contains("degree") || !e.at("degree").is_number_integer() ||
        e.at("degree").get<int>() < 1)
      throw ParseError(where + ": \"degree\" must be a positive integer");
    entry.degree = e.at("degree").get<int>();
    if (!e.contains("generators") || !e.at("generators").is_array())
      throw ParseError(where + ": \"generators\" must be an array");
    for (const Json& gen : e.at("generators")) {
      if (!gen.is_array()) throw ParseError(where + ": each generator must be an array");
      std::vector<int> images;
      for (const Json& v : gen) {
        if (!v.is_number_integer())
          throw ParseError(where + ": generator images must be integers");
        images.push_back(v.get<int>());
      }
      entry.generators.push_back(std::move(images));
    }
    if (e.contains("expected")) {
      if (!e.at("expected").is_object()) throw ParseError(where + ": \"expected\" must be an object");
      entry.expected = e.at("expected");
    } else {
      entry.expected = Json::object();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::string text = read_text_file(path);
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_corpus(doc, path);
}

Json corpus_to_json(const std::vector<CorpusEntry>& entries) {
  Json groups = Json::array();
  for (const CorpusEntry& e : entries) {
    Json j;
    j["id"] = e.id;
    j["degree"] = e.degree;
    j["generators"] = e.generators;
    j["expected"] = e.expected.is_null() ? Json::object() : e.expected;
    groups.push_back(std::move(j));
  }
  Json doc;
  doc["groups"] = std::move(groups);
  return doc;
}

CorpusEntry entry_from_group(const Group& g, const std::string& id) {
  // Relabel by breadth-first order over right multiplication by the greedy
  // generating sequence; the rebuild below then reproduces this labelling
  // exactly, which makes export(rebuild(export(g))) == export(g).
  std::vector<int> gens = minimal_generating_sequence(g);
  std::vector<int> order{0};
  std::vector<int> pos(g.order(), -1);
  pos[0] = 0;
  for (size_t head = 0; head < order.size(); ++head)
    for (int s : gens) {
      int w = g.mul(order[head], s);
      if (pos[w] < 0) {
        pos[w] = static_cast<int>(order.size());
        order.push_back(w);
      }
    }
  if (static_cast<int>(order.size()) != g.order())
    throw InternalVerificationFailed("generating sequence does not reach every element");

  CorpusEntry entry;
  entry.id = id;
  entry.degree = g.order();
  for (int s : gens) {
    std::vector<int> perm(g.order());
    for (int i = 0; i < g.order(); ++i) perm[i] = pos[g.mul(s, order[i])];
    entry.generators.push_back(std::move(perm));
  }
  entry.expected = Json::object();
  entry.expected["order"] = g.order();
  return entry;
}

Group group_from_entry(const CorpusEntry& entry) {
  Group g = group_from_permutations(entry.degree, entry.generators);
  if (entry.expected.is_object() && entry.expected.contains("order")) {
    int want = entry.expected.at("order").get<int>();
    if (g.order() != want)
      throw PostconditionFailed("corpus entry \"" + entry.id + "\": expected order " +
                                std::to_string(want) + " but realized " +
                                std::to_string(g.order()));
  }
  return g;
}

// ---------------------------------------------------------------------------
// bundled corpus

namespace {

Group a4_from_permutations() {
  return group_from_permutations(4, {{1, 2, 0, 3}, {0, 2, 3, 1}});
}

Group s4_from_permutations() {
  return group_from_permutations(4, {{1, 0, 2, 3}, {1, 2, 3, 0}});
}

Group cyc_semidirect(int n, int h, int image) {
  AutomorphismAction act;
  act.h_generators = {1};
  act.images = {{{1, image}}};
  return semidirect_product(cyclic(n), cyclic(h), act);
}

Group sl_2_3() {
  // Q8 : C3 rotating the three quaternion axes: A -> B -> AB -> A
  AutomorphismAction act;
  act.h_generators = {1};
  act.images = {{{1, 4}, {4, 5}}};
  return semidirect_product(quaternion8(), cyclic(3), act);
}

Group c3_semidirect_d8() {
  // D8 acting on C3; the rotation inverts, the least reflection fixes
  AutomorphismAction act;
  act.h_generators = {1, 4};
  act.images = {{{1, 2}}, {{1, 1}}};
  return semidirect_product(cyclic(3), dihedral(8), act);
}

Group e9_semidirect_c2() {
  AutomorphismAction act;
  act.h_generators = {1};
  act.images = {{{3, 6}, {1, 2}}};  // invert both C3 coordinates
  return semidirect_product(direct_product(cyclic(3), cyclic(3)), cyclic(2), act);
}

Group e4_semidirect_c4() {
  AutomorphismAction act;
  act.h_generators = {1};
  act.images = {{{2, 1}, {1, 2}}};  // swap the two C2 coordinates
  return semidirect_product(direct_product(cyclic(2), cyclic(2)), cyclic(4), act);
}

Group pauli_16() {
  // central product D8 . C4 realized by its defining 2x2 model
  CycloMatrix x = CycloMatrix::zero(2);
  x.at(0, 1) = Cyclotomic(1);
  x.at(1, 0) = Cyclotomic(1);
  CycloMatrix z = CycloMatrix::diagonal({Cyclotomic(1), Cyclotomic(-1)});
  Cyclotomic i4 = Cyclotomic::root_of_unity(4, 1);
  CycloMatrix si = CycloMatrix::diagonal({i4, i4});
  return group_from_matrix_generators({x, z, si}).group;
}

}  // namespace

std::vector<CorpusEntry> bundled_corpus() {
  std::vector<CorpusEntry> entries;
  auto add = [&entries](const std::string& id, const Group& g) {
    entries.push_back(entry_from_group(g, id));
  };

  add("c1", Group::trivial());
  add("c2", cyclic(2));
  add("c3", cyclic(3));
  add("c4", cyclic(4));
  add("c2xc2", direct_product(cyclic(2), cyclic(2)));
  add("c5", cyclic(5));
  add("c6", cyclic(6));
  add("s3", dihedral(6));
  add("c7", cyclic(7));

  add("c8", cyclic(8));
  add("c4xc2", direct_product(cyclic(4), cyclic(2)));
  add("c2xc2xc2", direct_product(cyclic(2), direct_product(cyclic(2), cyclic(2))));
  add("d8", dihedral(8));
  add("q8", quaternion8());
  add("c9", cyclic(9));
  add("c3xc3", direct_product(cyclic(3), cyclic(3)));
  add("c10", cyclic(10));
  add("d10", dihedral(10));
  add("c11", cyclic(11));

  add("c12", cyclic(12));
  add("c6xc2", direct_product(cyclic(6), cyclic(2)));
  add("a4", a4_from_permutations());
  add("d12", dihedral(12));
  add("dic3", dicyclic(12));
  add("c13", cyclic(13));
  add("c14", cyclic(14));
  add("d14", dihedral(14));
  add("c15", cyclic(15));

  add("c16", cyclic(16));
  add("c8xc2", direct_product(cyclic(8), cyclic(2)));
  add("c4xc4", direct_product(cyclic(4), cyclic(4)));
  add("c4xc2xc2", direct_product(cyclic(4), direct_product(cyclic(2), cyclic(2))));
  add("c2xc2xc2xc2",
      direct_product(direct_product(cyclic(2), cyclic(2)),
                     direct_product(cyclic(2), cyclic(2))));
  add("d16", dihedral(16));
  add("q16", dicyclic(16));
  add("sd16", cyc_semidirect(8, 2, 3));
  add("m16", cyc_semidirect(8, 2, 5));
  add("d8xc2", direct_product(dihedral(8), cyclic(2)));
  add("q8xc2", direct_product(quaternion8(), cyclic(2)));
  add("c4:c4", cyc_semidirect(4, 4, 3));
  add("e4:c4", e4_semidirect_c4());
  add("d8oc4", pauli_16());

  add("c18", cyclic(18));
  add("c3xc6", direct_product(cyclic(3), cyclic(6)));
  add("d18", dihedral(18));
  add("c3xs3", direct_product(cyclic(3), dihedral(6)));
  add("e9:c2", e9_semidirect_c2());

  add("c20", cyclic(20));
  add("c10xc2", direct_product(cyclic(10), cyclic(2)));
  add("d20", dihedral(20));
  add("dic5", dicyclic(20));
  add("f20", cyc_semidirect(5, 4, 2));

  add("c21", cyclic(21));
  add("c7:c3", cyc_semidirect(7, 3, 2));

  add("c24", cyclic(24));
  add("c12xc2", direct_product(cyclic(12), cyclic(2)));
  add("c6xc2xc2", direct_product(cyclic(6), direct_product(cyclic(2), cyclic(2))));
  add("c3:c8", cyc_semidirect(3, 8, 2));
  add("sl23", sl_2_3());
  add("dic6", dicyclic(24));
  add("s3xc4", direct_product(dihedral(6), cyclic(4)));
  add("d24", dihedral(24));
  add("c2xdic3", direct_product(cyclic(2), dicyclic(12)));
  add("c3:d8", c3_semidirect_d8());
  add("c3xd8", direct_product(cyclic(3), dihedral(8)));
  add("c3xq8", direct_product(cyclic(3), quaternion8()));
  add("s4", s4_from_permutations());
  add("a4xc2", direct_product(a4_from_permutations(), cyclic(2)));
  add("d12xc2", direct_product(dihedral(12), cyclic(2)));

  add("c27", cyclic(27));
  add("c3xc9", direct_product(cyclic(3), cyclic(9)));
  add("c3xc3xc3", direct_product(direct_product(cyclic(3), cyclic(3)), cyclic(3)));
  add("he27", heisenberg27());
  add("m27", cyc_semidirect(9, 3, 4));

  add("c8:c4", cyc_semidirect(8, 4, 5));
  add("q8xc4", direct_product(quaternion8(), cyclic(4)));

  static const std::map<std::string, int> known_rdim = {
      {"c1", 0},   {"c2", 1},     {"c3", 1},   {"c4", 1},    {"c2xc2", 2},
      {"c5", 1},   {"c6", 1},     {"s3", 2},   {"c7", 1},    {"c8", 1},
      {"c4xc2", 2}, {"c2xc2xc2", 3}, {"d8", 2}, {"q8", 2},   {"c9", 1},
      {"c3xc3", 2}, {"c10", 1},   {"d10", 2},  {"c11", 1},   {"c12", 1},
      {"c6xc2", 2}, {"a4", 3},    {"d12", 2},  {"dic3", 2}};
  for (CorpusEntry& e : entries) {
    auto it = known_rdim.find(e.id);
    if (it != known_rdim.end()) e.expected["rdim"] = it->second;
  }
  return entries;
}

// ---------------------------------------------------------------------------
// serialization

Json cyclotomic_to_json(const Cyclotomic& v) {
  Json j;
  j["conductor"] = v.conductor();
  Json coeffs = Json::array();
  for (const Rat& c : v.coeffs()) coeffs.push_back(rat_to_string(c));
  for (int i = static_cast<int>(v.coeffs().size()); i < v.conductor(); ++i)
    coeffs.push_back("0");
  j["coeffs"] = std::move(coeffs);
  return j;
}

Json character_table_to_json(const CharacterTable& t) {
  Json j;
  j["group_hash"] = to_hex(t.group_hash);
  j["class_representatives"] = t.partition.representatives;
  Json sizes = Json::array();
  for (const auto& cls : t.partition.classes) sizes.push_back(cls.size());
  j["class_sizes"] = std::move(sizes);
  Json irr = Json::array();
  for (const Character& chi : t.irreducibles) {
    Json c;
    c["degree"] = chi.degree();
    Json values = Json::array();
    for (const Cyclotomic& v : chi.values) values.push_back(cyclotomic_to_json(v));
    c["values"] = std::move(values);
    irr.push_back(std::move(c));
  }
  j["irreducibles"] = std::move(irr);
  return j;
}

Json certificate_to_json(const RdimCertificate& c) {
  Json j;
  j["group_hash"] = to_hex(c.group_hash);
  j["rdim"] = c.value;
  j["witness"] = c.witness;
  return j;
}

Json minimality_to_json(const MinimalityReport& r) {
  Json j;
  j["group_hash"] = to_hex(r.group_hash);
  j["rdim"] = r.rdim_g;
  Json subs = Json::array();
  for (const auto& [order, rd] : r.max_subgroup_rdims) subs.push_back(Json::array({order, rd}));
  j["max_subgroup_rdims"] = std::move(subs);
  j["is_minimally_faithful"] = r.is_minimally_faithful;
  j["degree"] = r.degree;
  return j;
}

Json verdict_to_json(const ClassificationVerdict& v) {
  Json j;
  j["id"] = v.id;
  j["group_hash"] = to_hex(v.group_hash);
  j["rdim"] = v.rdim_value;
  j["minimally_faithful"] = v.minimally_faithful;
  if (v.matched_family)
    j["family"] = family_spec_to_string(*v.matched_family);
  else
    j["family"] = nullptr;
  j["matched"] = v.matched;
  j["consistent"] = v.consistent;
  return j;
}

Json results_to_json(const std::vector<ClassificationVerdict>& verdicts, int degree) {
  Json j;
  j["degree"] = degree;
  j["count"] = verdicts.size();
  bool all = true;
  for (const ClassificationVerdict& v : verdicts) all = all && v.consistent;
  j["all_consistent"] = all;
  Json list = Json::array();
  for (const ClassificationVerdict& v : verdicts) list.push_back(verdict_to_json(v));
  j["verdicts"] = std::move(list);
  return j;
}

void save_results(const std::string& path, const std::vector<ClassificationVerdict>& verdicts,
                  int degree) {
  write_text_file(path, results_to_json(verdicts, degree).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// invariant cache

InvariantCache::InvariantCache(std::string dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create cache directory " + dir_ + ": " + ec.message());
}

std::optional<Json> InvariantCache::load(const Group& g) const {
  std::string path = dir_ + "/" + g.content_hash_hex() + ".json";
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  Json rec;
  try {
    rec = Json::parse(buf.str());
  } catch (const Json::parse_error&) {
    return std::nullopt;  // treat damage as a miss; the record is recomputable
  }
  if (!rec.is_object() || !rec.contains("content_hash") ||
      rec.at("content_hash") != g.content_hash_hex())
    return std::nullopt;
  return rec;
}

void InvariantCache::store(const Group& g, const Json& record) const {
  std::string path = dir_ + "/" + g.content_hash_hex() + ".json";
  std::string tmp = path + ".tmp";
  write_text_file(tmp, record.dump(2) + "\n");
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw IoError("cannot move cache record into place: " + path);
}

// ---------------------------------------------------------------------------
// classification records

Json compute_cache_record(const Group& g) {
  const CharacterTable& table = character_table_cached(g);
  const RdimCertificate& cert = rdim_cached(g);
  const MinimalityReport& report = is_minimally_faithful_cached(g);

  Json rec;
  rec["content_hash"] = g.content_hash_hex();
  rec["order"] = g.order();
  rec["class_count"] = table.partition.count();
  Json degrees = Json::array();
  for (const Character& chi : table.irreducibles) degrees.push_back(chi.degree());
  rec["irreducible_degrees"] = std::move(degrees);
  rec["rdim"] = cert.value;
  rec["witness"] = cert.witness;
  rec["minimally_faithful"] = report.is_minimally_faithful;
  Json subs = Json::array();
  for (const auto& [order, rd] : report.max_subgroup_rdims)
    subs.push_back(Json::array({order, rd}));
  rec["max_subgroup_rdims"] = std::move(subs);

  std::optional<FamilySpec> family = identify_family(g);
  if (family) {
    Json f;
    f["tag"] = family_tag_name(family->tag);
    f["params"] = family->params;
    rec["family"] = std::move(f);
  } else {
    rec["family"] = nullptr;
  }
  bool rank2 = false;
  if (g.is_abelian()) {
    std::vector<int> inv = abelian_invariant_factors(g);
    rank2 = inv.size() == 2 && inv[0] == inv[1] && is_prime(inv[0]);
  }
  rec["abelian_prime_rank2"] = rank2;
  return rec;
}

Json cache_record(const Group& g, const InvariantCache* cache) {
  if (cache) {
    std::optional<Json> found = cache->load(g);
    if (found && found->contains("order") && found->at("order") == g.order()) return *found;
  }
  Json rec = compute_cache_record(g);
  if (cache) cache->store(g, rec);
  return rec;
}

ClassificationVerdict verdict_from_record(const Json& record, int degree, const std::string& id) {
  if (degree != 2 && degree != 3) throw BadParameter("classified degrees are 2 and 3");
  for (const char* key : {"content_hash", "order", "rdim", "minimally_faithful", "family",
                          "abelian_prime_rank2"})
    if (!record.is_object() || !record.contains(key))
      throw ParseError("cache record is missing \"" + std::string(key) + "\"");

  ClassificationVerdict v;
  v.id = id;
  v.group_hash = from_hex(record.at("content_hash").get<std::string>());
  v.rdim_value = record.at("rdim").get<int>();
  v.minimally_faithful =
      record.at("minimally_faithful").get<bool>() && v.rdim_value == degree;
  const Json& family = record.at("family");
  if (!family.is_null()) {
    if (!family.is_object() || !family.contains("tag"))
      throw ParseError("cache record has a malformed \"family\"");
    std::optional<FamilyTag> tag = family_tag_from_name(family.at("tag").get<std::string>());
    if (!tag) throw ParseError("cache record names an unknown family tag");
    if (family_degree(*tag) == degree) {
      FamilySpec spec;
      spec.tag = *tag;
      if (family.contains("params"))
        for (const auto& [key, value] : family.at("params").items())
          spec.params[key] = value.get<int>();
      v.matched_family = std::move(spec);
      v.matched = true;
    }
  }
  if (degree == 2 && record.at("abelian_prime_rank2").get<bool>()) v.matched = true;
  v.consistent = (v.minimally_faithful == v.matched);
  return v;
}

std::vector<ClassificationVerdict> classify_corpus(const std::vector<CorpusEntry>& entries,
                                                   int degree, const InvariantCache* cache,
                                                   int jobs) {
  if (degree != 2 && degree != 3) throw BadParameter("classified degrees are 2 and 3");
  if (jobs < 1) throw BadParameter("jobs must be at least 1");
  std::vector<ClassificationVerdict> results(entries.size());
  std::atomic<size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mtx;

  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= entries.size()) return;
      try {
        Group g = group_from_entry(entries[i]);
        Json rec = cache_record(g, cache);
        results[i] = verdict_from_record(rec, degree, entries[i].id);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mtx);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace minrep
