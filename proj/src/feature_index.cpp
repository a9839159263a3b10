#include "wlp/feature_index.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "wlp/subsumption.hpp"

namespace wlp {

namespace {

std::uint16_t saturate16(std::uint32_t v) {
  return static_cast<std::uint16_t>(std::min<std::uint32_t>(v, std::numeric_limits<std::uint16_t>::max()));
}

void count_symbols(const Term* t, const Signature& sig, bool merge, std::array<std::uint32_t, ClauseFeatureVector::kBuckets>& b) {
  if (t->is_var()) return;
  SymbolId s = merge ? sig.ska_class(t->symbol()) : t->symbol();
  b[(static_cast<std::uint64_t>(s) * 2654435761u >> 7) % ClauseFeatureVector::kBuckets] += 1;
  for (const Term* a : t->args()) count_symbols(a, sig, merge, b);
}

}  // namespace

bool ClauseFeatureVector::dominated_by(const ClauseFeatureVector& other) const {
  for (std::size_t i = 0; i < kSize; ++i)
    if (values[i] > other.values[i]) return false;
  return true;
}

ClauseFeatureVector clause_features(const Clause& c, const Signature& sig, bool merge_skolems) {
  std::uint32_t pos = 0, neg = 0, len = 0, depth = 0;
  std::array<std::uint32_t, ClauseFeatureVector::kBuckets> pb{}, nb{};
  for (const Literal& l : c.literals) {
    (l.positive ? pos : neg) += 1;
    len += l.atom->size();
    depth = std::max(depth, l.atom->depth());
    count_symbols(l.atom, sig, merge_skolems, l.positive ? pb : nb);
  }
  ClauseFeatureVector fv;
  fv.values[0] = saturate16(pos);
  fv.values[1] = saturate16(neg);
  fv.values[2] = saturate16(len);
  fv.values[3] = saturate16(depth);
  for (std::size_t i = 0; i < ClauseFeatureVector::kBuckets; ++i) {
    fv.values[4 + i] = saturate16(pb[i]);
    fv.values[4 + ClauseFeatureVector::kBuckets + i] = saturate16(nb[i]);
  }
  return fv;
}

void FeatureIndex::insert(EntryId id, const ClauseFeatureVector& fv) {
  std::uint32_t node = 0;
  for (std::uint16_t key : fv.values) {
    auto& ch = nodes_[node].children;
    auto it = std::lower_bound(ch.begin(), ch.end(), key,
                               [](const auto& p, std::uint16_t k) { return p.first < k; });
    if (it != ch.end() && it->first == key) {
      node = it->second;
    } else {
      auto child = static_cast<std::uint32_t>(nodes_.size());
      ch.insert(it, {key, child});
      nodes_.emplace_back();
      node = child;
    }
  }
  nodes_[node].entries.push_back(id);
  ++size_;
}

bool FeatureIndex::remove(EntryId id, const ClauseFeatureVector& fv) {
  std::uint32_t node = 0;
  for (std::uint16_t key : fv.values) {
    const auto& ch = nodes_[node].children;
    auto it = std::lower_bound(ch.begin(), ch.end(), key,
                               [](const auto& p, std::uint16_t k) { return p.first < k; });
    if (it == ch.end() || it->first != key) return false;
    node = it->second;
  }
  auto& e = nodes_[node].entries;
  auto it = std::find(e.begin(), e.end(), id);
  if (it == e.end()) return false;
  e.erase(it);
  --size_;
  return true;
}

template <bool Upward>
void FeatureIndex::collect(std::uint32_t node, std::size_t depth, const ClauseFeatureVector& q,
                           std::vector<EntryId>& out) const {
  const Node& n = nodes_[node];
  if (depth == ClauseFeatureVector::kSize) {
    out.insert(out.end(), n.entries.begin(), n.entries.end());
    return;
  }
  const std::uint16_t bound = q.values[depth];
  if constexpr (Upward) {
    auto it = std::lower_bound(n.children.begin(), n.children.end(), bound,
                               [](const auto& p, std::uint16_t k) { return p.first < k; });
    for (; it != n.children.end(); ++it) collect<Upward>(it->second, depth + 1, q, out);
  } else {
    for (const auto& [key, child] : n.children) {
      if (key > bound) break;
      collect<Upward>(child, depth + 1, q, out);
    }
  }
}

void FeatureIndex::subsumed_candidates(const ClauseFeatureVector& q, std::vector<EntryId>& out) const {
  collect<true>(0, 0, q, out);
}

void FeatureIndex::subsuming_candidates(const ClauseFeatureVector& q, std::vector<EntryId>& out) const {
  collect<false>(0, 0, q, out);
}

WatchlistIndex::WatchlistIndex(const Signature& sig, bool use_index) : sig_(sig), use_index_(use_index) {}

std::uint32_t WatchlistIndex::insert(WatchlistId wid, const Clause& c) {
  auto& per_list = keys_[wid];
  auto e = static_cast<std::uint32_t>(entries_.size());
  if (!per_list.emplace(c.id, e).second)
    throw std::invalid_argument("duplicate watchlist entry (" + std::to_string(wid) + ", " + std::to_string(c.id) + ")");
  // Skolems are always merged so one index answers both subsumption variants.
  entries_.push_back({wid, c.id, c, clause_features(c, sig_, true), true});
  index_.insert(e, entries_.back().features);
  ++alive_;
  return e;
}

void WatchlistIndex::kill(std::uint32_t e) {
  Entry& entry = entries_.at(e);
  if (!entry.alive) return;
  entry.alive = false;
  index_.remove(e, entry.features);
  --alive_;
}

std::vector<std::uint32_t> WatchlistIndex::candidates(const Clause& c) const {
  std::vector<std::uint32_t> out;
  if (!use_index_) {
    for (std::uint32_t e = 0; e < entries_.size(); ++e)
      if (entries_[e].alive) out.push_back(e);
    return out;
  }
  index_.subsumed_candidates(clause_features(c, sig_, true), out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WatchlistIndex::Hit> WatchlistIndex::find_subsumed(const Clause& c, bool ska) const {
  std::vector<Hit> hits;
  if (alive_ == 0) return hits;
  for (std::uint32_t e : candidates(c)) {
    const Entry& entry = entries_[e];
    if (subsumes(c, entry.clause, sig_, ska)) hits.push_back({entry.watchlist, entry.clause_id, e});
  }
  return hits;
}

}  // namespace wlp
