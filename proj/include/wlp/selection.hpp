#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wlp/tptp.hpp"

namespace wlp {

// Multiset of string features. Keys carry a kind prefix:
//   s:<symbol>         symbol occurrence
//   w:<a>/<b>[/<c>]    top-down walk over adjacent symbols, VAR for variables
//   t:<skeleton>       subterm with variables as VAR and skolems as SK<arity>
using FeatureBag = std::map<std::string, std::uint32_t>;

struct FeatureOptions {
  bool three_node_walks = false;
};

FeatureBag extract_features(std::span<const Clause> clauses, const Signature& sig, FeatureOptions options = {});
FeatureBag extract_features(std::span<const Clause* const> clauses, const Signature& sig,
                            FeatureOptions options = {});

// Features of the negated conjecture, or of all clauses when there is none.
FeatureBag conjecture_features(const Problem& problem, FeatureOptions options = {});

struct ProofCorpusEntry {
  std::string name;
  FeatureBag conjecture;
  // Alpha-normalized literal text of each proof clause, in proof order; the
  // empty clause is "$false".
  std::vector<std::string> proof_clauses;
  // Sources whose watchlists guided clauses of this proof, sorted.
  std::vector<std::string> matched_proofs;

  bool solved() const { return !proof_clauses.empty(); }
};

class KnnModel {
 public:
  KnnModel() = default;
  explicit KnnModel(std::vector<ProofCorpusEntry> entries);

  const std::vector<ProofCorpusEntry>& entries() const { return entries_; }
  // ln(N / df); 0 for features no entry has.
  double idf(const std::string& feature) const;
  double similarity(const FeatureBag& query, const ProofCorpusEntry& entry) const;

 private:
  std::vector<ProofCorpusEntry> entries_;
  std::map<std::string, double> idf_;
};

// At most k entry names by similarity descending, ties by name ascending.
std::vector<std::string> knn_suggest(const KnnModel& model, const FeatureBag& query, std::size_t k);

// Round two: walk the neighbours in similarity order and collect the proofs
// that guided them (the neighbour itself when it has no provenance), without
// repeats, until k names are gathered.
std::vector<std::string> knn_suggest_round2(const KnnModel& model, const FeatureBag& query, std::size_t k);

enum class SelectionMethod { art, freq, knn_st, knn_dyn };
std::string_view to_string(SelectionMethod m);
// Throws std::invalid_argument on an unknown name.
SelectionMethod parse_selection_method(std::string_view s);

struct SelectionParams {
  std::size_t k = 16;
  std::size_t max_clauses = 1000;
  bool round2 = false;
  FeatureOptions features;
};

struct WatchlistFile {
  std::string name;  // file stem
  std::vector<std::string> clauses;

  std::string to_tptp() const;
};

// Name prefix before the last `_<digits>` segment; empty if there is none.
std::string family_of(std::string_view problem_name);

// Entries named like the target are skipped. Warnings are appended to
// `warnings` when given.
std::vector<WatchlistFile> build_watchlists(SelectionMethod method, const std::string& target_name,
                                            const FeatureBag& target_features,
                                            std::span<const ProofCorpusEntry> corpus, const SelectionParams& params,
                                            std::vector<std::string>* warnings = nullptr);

// Writes `<dir>/<name>.p` per file and returns the paths in order.
std::vector<std::filesystem::path> write_watchlist_files(std::span<const WatchlistFile> files,
                                                         const std::filesystem::path& dir);

// Watchlist names matched by clauses of one proof, as recorded in its
// provenance (proof clause name -> matched watchlist names).
struct Provenance {
  std::string problem;
  std::string strategy;
  std::vector<std::string> watchlists;
  std::map<std::string, std::vector<std::pair<std::string, ClauseId>>> matches;
  std::vector<std::string> matched_proofs;
};

// Sets matched_proofs to the distinct watchlist names appearing in `matches`.
void mine_round2(Provenance& provenance);

Provenance read_provenance(const std::filesystem::path& path);
void write_provenance(const Provenance& p, const std::filesystem::path& path);

// Reads `<dir>/<name>/{problem.p,proof.p,provenance.json}`. Entries without a
// proof are kept with empty proof_clauses.
std::vector<ProofCorpusEntry> load_corpus(const std::filesystem::path& dir, FeatureOptions options = {});

// Problem directories of a corpus in name order.
std::vector<std::filesystem::path> corpus_problems(const std::filesystem::path& dir);

}  // namespace wlp
