#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "wlp/feature_index.hpp"
#include "wlp/strategy.hpp"

namespace wlp {

struct WatchlistClause {
  ClauseId clause_id = 0;
  std::uint32_t entry = 0;  // WatchlistIndex entry
  bool encountered = false;
};

struct Watchlist {
  WatchlistId id = 0;
  std::string name;  // source proof, i.e. the file stem
  std::vector<WatchlistClause> clauses;
  std::uint32_t progress = 0;

  std::size_t size() const { return clauses.size(); }
  double completion() const { return clauses.empty() ? 0.0 : static_cast<double>(progress) / clauses.size(); }
};

struct MatchEvent {
  ClauseId clause = 0;
  std::vector<std::pair<WatchlistId, ClauseId>> matched;
  double relevance0 = 0.0;
};

struct GuidanceOptions {
  RelevanceMode mode = RelevanceMode::static_list;
  bool no_remove = false;
  bool ska = false;
  bool use_index = true;
  // Keep every MatchEvent, with a copy of the generated clause, for auditing.
  bool keep_event_log = false;

  static GuidanceOptions from(const Strategy& s);
};

struct LoggedEvent {
  MatchEvent event;
  Clause clause;
};

class WatchlistGuidance {
 public:
  WatchlistGuidance(TermBankPtr bank, GuidanceOptions options);

  // Adds one watchlist (in static mode, appends to the single list). Empty
  // inputs are dropped. Returns the number of clauses added.
  std::size_t add(const std::string& name, const std::vector<Clause>& clauses);

  // Match a freshly generated clause against all alive watchlist clauses and
  // update the progress counters. Call exactly once per generated clause.
  MatchEvent record_generated(const Clause& c);

  // Max completion ratio over the given watchlists (0 when empty).
  double relevance0(std::span<const WatchlistId> matched) const;
  std::vector<double> progress_vector() const;
  bool any_complete() const;

  const std::vector<Watchlist>& watchlists() const { return lists_; }
  const Watchlist& watchlist(WatchlistId id) const { return lists_[id]; }
  const WatchlistIndex& index() const { return index_; }
  const GuidanceOptions& options() const { return options_; }
  const TermBankPtr& bank() const { return bank_; }
  bool empty() const { return lists_.empty(); }
  std::size_t clause_count() const { return index_.size(); }

  const std::vector<LoggedEvent>& event_log() const { return log_; }
  std::uint64_t matched_events() const { return matched_events_; }

 private:
  TermBankPtr bank_;
  GuidanceOptions options_;
  WatchlistIndex index_;
  std::vector<Watchlist> lists_;
  std::vector<std::uint32_t> entry_slot_;  // index entry -> position in its list
  std::vector<LoggedEvent> log_;
  std::uint64_t matched_events_ = 0;
};

// One watchlist per file (file stem = watchlist name); in static mode all
// files are concatenated into one list. Parse errors name the file.
WatchlistGuidance load_watchlists(std::span<const std::filesystem::path> paths, TermBankPtr bank,
                                  GuidanceOptions options);

// All `.p` files of a directory in name order.
std::vector<std::filesystem::path> watchlist_files(const std::filesystem::path& dir);

double relevance1(double own_relevance0, std::span<const double> parent_relevance1, double delta);

// Ratio rounded to three decimals, e.g. "0.438".
std::string format_ratio(double r);

}  // namespace wlp
