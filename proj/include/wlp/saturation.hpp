#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "wlp/feature_index.hpp"
#include "wlp/proof.hpp"
#include "wlp/strategy.hpp"
#include "wlp/tptp.hpp"
#include "wlp/watchlist.hpp"

namespace wlp {

struct Budget {
  std::uint64_t max_given = 10000;
  double max_seconds = 60.0;

  // Throws std::invalid_argument unless both limits are positive.
  void validate() const;
};

enum class Outcome { proof, saturated, budget_exhausted };
std::string_view to_string(Outcome o);
Outcome parse_outcome(std::string_view s);

struct RunStats {
  std::string problem;
  std::string strategy;
  Outcome result = Outcome::budget_exhausted;
  std::uint64_t loops = 0;
  std::uint64_t generated = 0;
  std::uint64_t processed = 0;
  double elapsed_seconds = 0.0;
  std::uint64_t watchlist_matches = 0;
  std::uint64_t proof_matches = 0;
  std::uint64_t proof_length = 0;
  std::vector<double> progress;

  double pps() const { return elapsed_seconds > 0 ? static_cast<double>(processed) / elapsed_seconds : 0.0; }
};

struct SaturationResult {
  Outcome outcome = Outcome::budget_exhausted;
  std::optional<ProofRecord> proof;
  RunStats stats;
  std::vector<ClauseId> given_sequence;
};

class SearchState;

struct SaturationOptions {
  bool record_given_sequence = false;
  // Called once with the final search state.
  std::function<void(const SearchState&)> inspect;
};

// The proof state of the given-clause loop: processed clauses P, queued
// clauses U (one priority queue per clause evaluation function), and the
// indexes both need. Single-threaded; owns nothing shared with other runs
// except the term bank of the problem it was built from.
class SearchState {
 public:
  enum class Status : std::uint8_t { queued, processed, removed, discarded };

  struct Record {
    Clause clause;
    GuidanceInfo info;
    std::vector<std::pair<WatchlistId, ClauseId>> matched;
    ClauseFeatureVector features;
    Status status = Status::queued;
  };

  SearchState(const Problem& problem, Strategy strategy, WatchlistGuidance* guidance);

  // Inserts a new clause: assigns its id, matches it against the watchlists,
  // computes its relevance and queues it unless it is redundant. A queued
  // unit that resolves with a processed unit yields the empty clause at once.
  // Returns the assigned id; `proof_found()` turns true on the empty clause.
  ClauseId add_new(Clause c);

  // Weighted round-robin pick of the next queued clause; nullopt if U is empty.
  std::optional<ClauseId> select_given();

  bool forward_subsumed(const Clause& c) const;
  // Removes every processed clause subsumed by `g`; returns their ids.
  std::vector<ClauseId> backward_simplify(const Clause& g);
  void add_processed(ClauseId id);
  // All inferences between the processed clause `id` and P (including itself).
  std::vector<Clause> generate(ClauseId id);

  const Record& record(ClauseId id) const;
  bool has_record(ClauseId id) const;
  std::vector<ClauseId> processed_ids() const;
  std::size_t processed_count() const { return processed_count_; }
  std::size_t queued_count() const { return queued_; }
  std::uint64_t generated_count() const { return next_id_ - 1; }

  bool proof_found() const { return empty_clause_.has_value(); }
  ProofRecord extract_proof() const;

  const Strategy& strategy() const { return strategy_; }
  const Problem& problem() const { return problem_; }
  TermBank& bank() { return *problem_.bank; }

 private:
  struct QueueItem {
    Evaluation eval;
    std::uint32_t slot;
    bool operator>(const QueueItem& o) const { return eval > o.eval; }
  };
  using Queue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<QueueItem>>;

  struct LiteralRef {
    std::uint32_t slot;
    std::uint32_t literal;
  };

  Record& rec(std::uint32_t slot) { return records_[slot]; }
  std::uint32_t slot_of(ClauseId id) const;
  void index_processed(std::uint32_t slot);
  // Resolves a freshly queued unit against complementary processed units.
  void unit_conflict(std::uint32_t slot);

  const Problem& problem_;
  Strategy strategy_;
  WatchlistGuidance* guidance_;

  std::deque<Record> records_;
  std::unordered_map<ClauseId, std::uint32_t> slots_;
  ClauseId next_id_ = 1;

  std::vector<Queue> queues_;
  std::size_t cef_cursor_ = 0;
  std::uint32_t cef_used_ = 0;
  std::size_t queued_ = 0;

  FeatureIndex processed_index_;
  std::unordered_map<std::uint64_t, std::vector<LiteralRef>> literal_index_;
  std::vector<std::uint32_t> processed_order_;
  std::size_t processed_count_ = 0;

  std::optional<Clause> empty_clause_;
  std::vector<std::pair<WatchlistId, ClauseId>> empty_clause_matches_;
};

// Discard verdict for a clause about to be processed.
enum class Verdict { keep, discard };
Verdict forward_simplify(const Clause& c, std::span<const Clause* const> processed, const Signature& sig);

SaturationResult saturate(const Problem& problem, const Strategy& strategy, WatchlistGuidance* guidance,
                          const Budget& budget, const SaturationOptions& options = {});

}  // namespace wlp
