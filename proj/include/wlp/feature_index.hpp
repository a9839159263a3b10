#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "wlp/clause.hpp"

namespace wlp {

// Per-clause numeric features, each monotone under subsumption: if C
// subsumes D then every component of C is <= the matching component of D.
// Symbol occurrence counts are folded into a few buckets per polarity, which
// keeps the vector fixed-length while preserving that property.
struct ClauseFeatureVector {
  static constexpr std::size_t kBuckets = 6;
  static constexpr std::size_t kSize = 4 + 2 * kBuckets;
  // [pos literals, neg literals, symbol count, max depth, pos buckets..., neg buckets...]
  std::array<std::uint16_t, kSize> values{};

  bool operator==(const ClauseFeatureVector&) const = default;
  bool dominated_by(const ClauseFeatureVector& other) const;
};

// With `merge_skolems` every skolem symbol counts toward its arity class,
// so the vector stays compatible with skolem-abstracted subsumption.
ClauseFeatureVector clause_features(const Clause& c, const Signature& sig, bool merge_skolems);

// Trie over feature vectors. Stores opaque entry ids; retrieval returns a
// superset of the entries related to the query by subsumption.
class FeatureIndex {
 public:
  using EntryId = std::uint32_t;

  void insert(EntryId id, const ClauseFeatureVector& fv);
  // Returns false if the entry was not stored under `fv`.
  bool remove(EntryId id, const ClauseFeatureVector& fv);

  // Entries whose vectors dominate `q` (candidates subsumed by the query).
  void subsumed_candidates(const ClauseFeatureVector& q, std::vector<EntryId>& out) const;
  // Entries whose vectors are dominated by `q` (candidates subsuming the query).
  void subsuming_candidates(const ClauseFeatureVector& q, std::vector<EntryId>& out) const;

  std::size_t size() const { return size_; }

 private:
  struct Node {
    std::vector<std::pair<std::uint16_t, std::uint32_t>> children;  // sorted by key
    std::vector<EntryId> entries;                                    // leaves only
  };

  template <bool Upward>
  void collect(std::uint32_t node, std::size_t depth, const ClauseFeatureVector& q,
               std::vector<EntryId>& out) const;

  std::vector<Node> nodes_{Node{}};
  std::size_t size_ = 0;
};

using WatchlistId = std::uint32_t;

// The watchlist clauses of a run, indexed for retrieval of entries subsumed
// by newly generated clauses.
class WatchlistIndex {
 public:
  struct Entry {
    WatchlistId watchlist;
    ClauseId clause_id;
    Clause clause;
    ClauseFeatureVector features;
    bool alive = true;
  };
  struct Hit {
    WatchlistId watchlist;
    ClauseId clause_id;
    std::uint32_t entry;
    bool operator==(const Hit&) const = default;
  };

  // `use_index = false` answers every query with a linear scan.
  explicit WatchlistIndex(const Signature& sig, bool use_index = true);

  // Throws std::invalid_argument on a duplicate (watchlist, clause id).
  std::uint32_t insert(WatchlistId wid, const Clause& c);
  void kill(std::uint32_t entry);

  // Alive entries subsumed by `c`, in insertion order.
  std::vector<Hit> find_subsumed(const Clause& c, bool ska) const;
  // Candidate entries before the subsumption check (alive only).
  std::vector<std::uint32_t> candidates(const Clause& c) const;

  const Entry& entry(std::uint32_t e) const { return entries_[e]; }
  std::size_t size() const { return entries_.size(); }
  std::size_t alive_count() const { return alive_; }
  bool uses_index() const { return use_index_; }

 private:
  const Signature& sig_;
  bool use_index_;
  std::vector<Entry> entries_;
  FeatureIndex index_;
  std::unordered_map<WatchlistId, std::unordered_map<ClauseId, std::uint32_t>> keys_;
  std::size_t alive_ = 0;
};

}  // namespace wlp
