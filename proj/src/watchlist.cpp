#include "wlp/watchlist.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "wlp/tptp.hpp"

namespace wlp {

GuidanceOptions GuidanceOptions::from(const Strategy& s) {
  GuidanceOptions o;
  o.mode = s.relevance.mode;
  o.no_remove = s.no_remove;
  o.ska = s.ska;
  return o;
}

WatchlistGuidance::WatchlistGuidance(TermBankPtr bank, GuidanceOptions options)
    : bank_(std::move(bank)), options_(options), index_(bank_->signature(), options.use_index) {}

std::size_t WatchlistGuidance::add(const std::string& name, const std::vector<Clause>& clauses) {
  if (clauses.empty()) return 0;
  Watchlist* list = nullptr;
  if (options_.mode == RelevanceMode::static_list && !lists_.empty()) {
    list = &lists_.front();
    list->name += "+" + name;
  } else {
    lists_.push_back(Watchlist{static_cast<WatchlistId>(lists_.size()), name, {}, 0});
    list = &lists_.back();
  }
  for (const Clause& c : clauses) {
    Clause copy = c;
    copy.id = list->clauses.size() + 1;
    std::uint32_t e = index_.insert(list->id, copy);
    if (entry_slot_.size() <= e) entry_slot_.resize(e + 1);
    entry_slot_[e] = static_cast<std::uint32_t>(list->clauses.size());
    list->clauses.push_back({copy.id, e, false});
  }
  return clauses.size();
}

MatchEvent WatchlistGuidance::record_generated(const Clause& c) {
  MatchEvent ev;
  ev.clause = c.id;
  std::vector<WatchlistId> matched_lists;
  if (!lists_.empty()) {
    for (const auto& hit : index_.find_subsumed(c, options_.ska)) {
      Watchlist& list = lists_[hit.watchlist];
      WatchlistClause& wc = list.clauses[entry_slot_[hit.entry]];
      if (!wc.encountered) {
        wc.encountered = true;
        ++list.progress;
      }
      if (!options_.no_remove) index_.kill(hit.entry);
      ev.matched.emplace_back(hit.watchlist, hit.clause_id);
      matched_lists.push_back(hit.watchlist);
    }
  }
  std::sort(matched_lists.begin(), matched_lists.end());
  matched_lists.erase(std::unique(matched_lists.begin(), matched_lists.end()), matched_lists.end());
  ev.relevance0 = relevance0(matched_lists);
  if (!ev.matched.empty()) ++matched_events_;
  if (options_.keep_event_log) log_.push_back({ev, c});
  return ev;
}

double WatchlistGuidance::relevance0(std::span<const WatchlistId> matched) const {
  double best = 0.0;
  for (WatchlistId w : matched) best = std::max(best, lists_[w].completion());
  return best;
}

std::vector<double> WatchlistGuidance::progress_vector() const {
  std::vector<double> out;
  out.reserve(lists_.size());
  for (const Watchlist& w : lists_) out.push_back(w.completion());
  return out;
}

bool WatchlistGuidance::any_complete() const {
  return std::any_of(lists_.begin(), lists_.end(),
                     [](const Watchlist& w) { return !w.clauses.empty() && w.progress == w.size(); });
}

WatchlistGuidance load_watchlists(std::span<const std::filesystem::path> paths, TermBankPtr bank,
                                  GuidanceOptions options) {
  WatchlistGuidance g(bank, options);
  for (const auto& path : paths) {
    Problem p = parse_cnf_file(path, bank);
    g.add(path.stem().string(), p.clauses);
  }
  return g;
}

std::vector<std::filesystem::path> watchlist_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".p") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

double relevance1(double own_relevance0, std::span<const double> parent_relevance1, double delta) {
  if (parent_relevance1.empty()) return own_relevance0;
  double sum = std::accumulate(parent_relevance1.begin(), parent_relevance1.end(), 0.0);
  return own_relevance0 + delta * (sum / static_cast<double>(parent_relevance1.size()));
}

std::string format_ratio(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

}  // namespace wlp
