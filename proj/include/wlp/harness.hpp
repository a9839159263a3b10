#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wlp/saturation.hpp"
#include "wlp/selection.hpp"

namespace wlp {

struct NamedStrategy {
  std::string label;
  Strategy strategy;
};

// One strategy per line, optionally prefixed by `label:`; blank lines and
// lines starting with `#` are skipped. Unlabelled lines use the strategy text.
std::vector<NamedStrategy> parse_strategy_list(std::string_view text);
std::vector<NamedStrategy> read_strategy_list(const std::filesystem::path& path);

// Where the watchlists of a corpus run come from.
struct GuidanceConfig {
  // Fixed directory of watchlist files, loaded for every problem.
  std::filesystem::path watchlist_dir;
  // Or: watchlists selected per problem from the proofs of a corpus,
  // excluding the problem itself.
  std::optional<SelectionMethod> method;
  std::filesystem::path proof_corpus;
  SelectionParams params;

  bool enabled() const { return !watchlist_dir.empty() || method.has_value(); }
};

struct ResultRow {
  RunStats stats;
  std::string error;  // empty unless the run failed

  bool solved() const { return error.empty() && stats.result == Outcome::proof; }
  // "proof", "saturated", "budget-exhausted" or "error".
  std::string result_text() const;
};

struct CorpusOptions {
  Budget budget;
  GuidanceConfig guidance;
  // Store proof.p and provenance.json beside each problem solved by the
  // first strategy.
  bool write_proofs = false;
  // Results file, rewritten after every run; empty for none.
  std::filesystem::path results;
  // Called after every run.
  std::function<void(const ResultRow&)> on_row;
};

// Guidance for one problem as configured; nullopt when guidance is off.
// The selected watchlist names are appended to `names` when given.
std::optional<WatchlistGuidance> make_guidance(const GuidanceConfig& config, const Problem& problem,
                                               const Strategy& strategy,
                                               const std::vector<ProofCorpusEntry>* corpus = nullptr);

// Watchlists held in memory, one list per file (joined in static mode).
WatchlistGuidance guidance_from_files(std::span<const WatchlistFile> files, TermBankPtr bank,
                                      GuidanceOptions options);

// One run; errors are caught and reported in the row.
ResultRow run_one(const std::filesystem::path& problem_file, const NamedStrategy& strategy,
                  const CorpusOptions& options, const std::vector<ProofCorpusEntry>* corpus = nullptr,
                  std::optional<SaturationResult>* full = nullptr);

// Every problem of `dir` under every strategy, problems in name order and
// strategies in list order. Budgets are validated up front.
std::vector<ResultRow> run_corpus(const std::filesystem::path& dir, const std::vector<NamedStrategy>& strategies,
                                  const CorpusOptions& options);

// Results file: a `# wlp-results v1` header line, then one JSON object per
// row with the keys, in order: problem, strategy, result, loops, generated,
// processed, elapsed_seconds, pps, watchlist_matches, proof_matches,
// proof_length, progress, error.
inline constexpr std::string_view kResultsHeader = "# wlp-results v1";
std::string result_line(const ResultRow& row);
void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
std::vector<ResultRow> parse_results(std::string_view text);
std::vector<ResultRow> read_results(const std::filesystem::path& path);

using SolvedSets = std::map<std::string, std::set<std::string>>;
SolvedSets solved_sets(const std::vector<ResultRow>& rows);

struct CoverPick {
  std::string strategy;
  std::size_t added = 0;
  bool operator==(const CoverPick&) const = default;
};

// Repeatedly picks the strategy adding the most unsolved problems, ties by
// name; stops after k picks or when no strategy is left.
std::vector<CoverPick> greedy_cover(const SolvedSets& solved, std::size_t k);

struct StrategySummary {
  std::string strategy;
  std::size_t runs = 0;
  std::size_t solved = 0;
  std::size_t errors = 0;
  double mean_pps = 0.0;
};

struct GuidanceRatio {
  std::string problem;
  std::string strategy;
  std::uint64_t guided = 0;
  std::uint64_t length = 0;
  double ratio() const { return length ? static_cast<double>(guided) / length : 0.0; }
};

struct Report {
  std::vector<StrategySummary> strategies;
  std::size_t union_solved = 0;
  std::vector<CoverPick> cover;
  std::vector<GuidanceRatio> guidance;

  std::string text() const;
};

Report report(const std::vector<ResultRow>& rows, std::size_t cover_k = 5);

}  // namespace wlp
