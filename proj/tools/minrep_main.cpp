// minrep: exact minimal-faithful-representation toolkit, command-line surface.
//
// Subcommands: construct, invariants, chartab, rdim, minimal, classify.
// All output is deterministic JSON; --out writes a file instead of stdout.
// Exit codes: 0 ok, 1 inconsistency finding, 2 usage, 3 cap exceeded, 4 I/O.

#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "minrep/corpus.hpp"

namespace {

using minrep::Group;
using minrep::Json;

// Shared "--in FILE | --family TAG [--p ...]" group source for the
// single-group subcommands.  Exactly one of the two must be given.
struct GroupSource {
  std::string in_path;
  std::string family;
  int p = 0, q = 0, k = 0, m = 0, n = 0;
  CLI::Option* in_opt = nullptr;
  CLI::Option* family_opt = nullptr;
  CLI::Option* p_opt = nullptr;
  CLI::Option* q_opt = nullptr;
  CLI::Option* k_opt = nullptr;
  CLI::Option* m_opt = nullptr;
  CLI::Option* n_opt = nullptr;

  void attach(CLI::App* cmd, bool family_only = false) {
    if (!family_only)
      in_opt = cmd->add_option("--in", in_path, "corpus file holding exactly one group");
    family_opt = cmd->add_option("--family", family, "family tag (deg2.q8, deg2.p-cyc2m, a..k)");
    p_opt = cmd->add_option("--p", p, "family parameter p");
    q_opt = cmd->add_option("--q", q, "family parameter q");
    k_opt = cmd->add_option("--k", k, "family parameter k");
    m_opt = cmd->add_option("--m", m, "family parameter m");
    n_opt = cmd->add_option("--n", n, "family parameter n");
  }

  minrep::FamilySpec family_spec() const {
    auto tag = minrep::family_tag_from_name(family);
    if (!tag) throw minrep::BadParameter("unknown family tag: " + family);
    minrep::FamilySpec spec;
    spec.tag = *tag;
    if (p_opt->count()) spec.params["p"] = p;
    if (q_opt->count()) spec.params["q"] = q;
    if (k_opt->count()) spec.params["k"] = k;
    if (m_opt->count()) spec.params["m"] = m;
    if (n_opt->count()) spec.params["n"] = n;
    return spec;
  }

  // Returns the group plus a stable id (corpus id or family spec string).
  std::pair<Group, std::string> resolve() const {
    bool from_file = in_opt != nullptr && in_opt->count() > 0;
    bool from_family = family_opt->count() > 0;
    if (from_file == from_family)
      throw minrep::BadParameter("give exactly one of --in and --family");
    if (from_file) {
      auto entries = minrep::load_corpus(in_path);
      if (entries.size() != 1)
        throw minrep::BadParameter("input file must hold exactly one group, found " +
                                   std::to_string(entries.size()));
      return {minrep::group_from_entry(entries[0]), entries[0].id};
    }
    minrep::FamilySpec spec = family_spec();
    return {minrep::construct_family(spec), minrep::family_spec_to_string(spec)};
  }
};

void emit(const Json& doc, const std::string& out_path) {
  std::string text = doc.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    minrep::write_text_file(out_path, text);
}

int run_construct(const GroupSource& src, const std::string& out_path) {
  minrep::FamilySpec spec = src.family_spec();
  Group g = minrep::construct_family(spec);
  minrep::CorpusEntry entry = minrep::entry_from_group(g, minrep::family_spec_to_string(spec));
  entry.expected["family"] = minrep::family_spec_to_string(spec);
  emit(minrep::corpus_to_json({entry}), out_path);
  return 0;
}

int run_invariants(const GroupSource& src, const std::string& out_path) {
  auto [g, id] = src.resolve();
  minrep::Subgroup z = minrep::center(g);
  std::vector<int> series_orders;
  for (const minrep::Subgroup& s : minrep::derived_series(g))
    series_orders.push_back(s.order());
  const minrep::CharacterTable& table = minrep::character_table_cached(g);
  std::vector<int> degrees;
  for (const minrep::Character& chi : table.irreducibles) degrees.push_back(chi.degree());

  Json doc;
  doc["id"] = id;
  doc["content_hash"] = g.content_hash_hex();
  doc["order"] = g.order();
  doc["abelian"] = g.is_abelian();
  doc["exponent"] = g.exponent();
  doc["center_invariant_factors"] =
      minrep::abelian_invariant_factors(minrep::subgroup_as_group(g, z));
  doc["derived_series_orders"] = series_orders;
  doc["class_count"] = table.partition.count();
  doc["irreducible_degrees"] = degrees;
  emit(doc, out_path);
  return 0;
}

int run_chartab(const GroupSource& src, const std::string& out_path) {
  auto [g, id] = src.resolve();
  Json doc = minrep::character_table_to_json(minrep::character_table_cached(g));
  doc["id"] = id;
  emit(doc, out_path);
  return 0;
}

int run_rdim(const GroupSource& src, bool oracle, const std::string& out_path) {
  auto [g, id] = src.resolve();
  minrep::RdimCertificate cert = minrep::rdim(g);
  Json doc = minrep::certificate_to_json(cert);
  doc["id"] = id;
  if (oracle) {
    minrep::RdimCertificate brute = minrep::rdim_bruteforce(g);
    if (brute.value != cert.value || brute.witness != cert.witness)
      throw minrep::InternalVerificationFailed(
          "solver and exhaustive oracle disagree on " + id + ": " +
          std::to_string(cert.value) + " vs " + std::to_string(brute.value));
    doc["oracle_agreement"] = true;
  }
  emit(doc, out_path);
  return 0;
}

int run_minimal(const GroupSource& src, const std::string& out_path) {
  auto [g, id] = src.resolve();
  Json doc = minrep::minimality_to_json(minrep::is_minimally_faithful(g));
  doc["id"] = id;
  emit(doc, out_path);
  return 0;
}

int run_classify(const std::string& corpus_path, int degree, int jobs,
                 const std::string& cache_dir, const std::string& out_path) {
  std::vector<minrep::CorpusEntry> entries = minrep::load_corpus(corpus_path);
  std::unique_ptr<minrep::InvariantCache> cache;
  if (!cache_dir.empty()) cache = std::make_unique<minrep::InvariantCache>(cache_dir);
  std::vector<minrep::ClassificationVerdict> verdicts =
      minrep::classify_corpus(entries, degree, cache.get(), jobs);
  emit(minrep::results_to_json(verdicts, degree), out_path);
  for (const auto& v : verdicts)
    if (!v.consistent) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact minimal faithful representation dimensions for finite groups"};
  app.require_subcommand(1);
  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir,
                 "enable the persistent invariant cache in this directory");

  GroupSource construct_src, invariants_src, chartab_src, rdim_src, minimal_src;
  std::string construct_out, invariants_out, chartab_out, rdim_out, minimal_out;
  std::string classify_corpus_path, classify_out;
  bool rdim_oracle = false;
  int classify_degree = 0;
  int classify_jobs = 1;

  CLI::App* construct = app.add_subcommand("construct", "emit a family member as a corpus entry");
  construct_src.attach(construct, /*family_only=*/true);
  construct_src.family_opt->required();
  construct->add_option("--out", construct_out, "write to this file instead of stdout");

  CLI::App* invariants = app.add_subcommand("invariants", "structural invariants of one group");
  invariants_src.attach(invariants);
  invariants->add_option("--out", invariants_out, "write to this file instead of stdout");

  CLI::App* chartab = app.add_subcommand("chartab", "exact character table of one group");
  chartab_src.attach(chartab);
  chartab->add_option("--out", chartab_out, "write to this file instead of stdout");

  CLI::App* rdim_cmd = app.add_subcommand("rdim", "minimal faithful representation dimension");
  rdim_src.attach(rdim_cmd);
  rdim_cmd->add_flag("--oracle", rdim_oracle, "also run the exhaustive oracle and compare");
  rdim_cmd->add_option("--out", rdim_out, "write to this file instead of stdout");

  CLI::App* minimal = app.add_subcommand("minimal", "minimal-faithfulness report for one group");
  minimal_src.attach(minimal);
  minimal->add_option("--out", minimal_out, "write to this file instead of stdout");

  CLI::App* classify = app.add_subcommand("classify", "scan a corpus for a classified degree");
  classify->add_option("--corpus", classify_corpus_path, "corpus file")->required();
  classify->add_option("--degree", classify_degree, "classification degree (2 or 3)")->required();
  classify->add_option("--jobs", classify_jobs, "worker threads (never changes output bytes)");
  classify->add_option("--out", classify_out, "write to this file instead of stdout");

  for (CLI::App* sub : {construct, invariants, chartab, rdim_cmd, minimal, classify})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) return run_construct(construct_src, construct_out);
    if (invariants->parsed()) return run_invariants(invariants_src, invariants_out);
    if (chartab->parsed()) return run_chartab(chartab_src, chartab_out);
    if (rdim_cmd->parsed()) return run_rdim(rdim_src, rdim_oracle, rdim_out);
    if (minimal->parsed()) return run_minimal(minimal_src, minimal_out);
    if (classify->parsed())
      return run_classify(classify_corpus_path, classify_degree, classify_jobs, cache_dir,
                          classify_out);
  } catch (const minrep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
