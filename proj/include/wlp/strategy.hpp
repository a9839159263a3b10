#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wlp/clause.hpp"

namespace wlp {

enum class WeightFunction { clauseweight, fifo };
enum class PriorityFunction {
  const_prio,
  prefer_watchlist,
  defer_watchlist,
  prefer_watchlist_relevant,
  defer_watchlist_relevant,
};

// How watchlists are loaded and how relevance is derived.
//   static: all watchlist files form one list
//   dyn:    one list per file, relevance0
//   dyndec: one list per file, relevance0 with inheritance and thresholds
enum class RelevanceMode { static_list, dyn, dyndec };

std::string_view to_string(WeightFunction w);
std::string_view to_string(PriorityFunction p);
std::string_view to_string(RelevanceMode m);

// Clause evaluation function: a weight function with its priority function,
// consulted `frequency` times per round-robin cycle.
struct Cef {
  std::uint32_t frequency = 1;
  WeightFunction weight = WeightFunction::fifo;
  PriorityFunction priority = PriorityFunction::const_prio;
  // Clauseweight parameters.
  double function_weight = 1.0;
  double variable_weight = 1.0;
  double positive_multiplier = 1.0;

  bool operator==(const Cef&) const = default;
};

struct RelevanceParams {
  RelevanceMode mode = RelevanceMode::static_list;
  double delta = 0.1;
  double alpha = 0.03;
  double beta = 0.009;

  bool operator==(const RelevanceParams&) const = default;
};

struct Strategy {
  std::string name;
  std::vector<Cef> cefs;
  bool uwl = false;
  bool no_remove = false;
  bool ska = false;
  bool paramod = false;
  RelevanceParams relevance;

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;
  std::string to_text() const;
  bool operator==(const Strategy&) const = default;
};

class StrategyError : public std::invalid_argument {
 public:
  StrategyError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar:
//   [--uwl] [--no-remove] [--ska] [--paramod] [--mode=static|dyn|dyndec]
//   [--delta=D] [--alpha=A] [--beta=B] [-tKBO] -H(w*WF(PF[,args]),...)
// Ignored tokens (-tKBO and the DeferSoS priority) are reported in `warnings`.
Strategy parse_strategy(std::string_view text, std::vector<std::string>* warnings = nullptr);

enum class Mode { pref, const_prio, uwl, ska, dyn, dyndec, evo };
Mode parse_mode(std::string_view name);
std::string_view to_string(Mode m);

Strategy apply_mode(const Strategy& base, Mode mode);

// Built-in heuristics, also accepted by name wherever a strategy is expected.
Strategy fifo_strategy();
Strategy pure_watchlist_strategy();
// Ten of every eleven picks from a PreferWatchlist queue, the eleventh FIFO.
Strategy interleaved_watchlist_strategy();
// Fixed stand-in for the evolved watchlist heuristic.
Strategy evo_strategy();
// Accepts a built-in name (fifo, pure-watchlist, interleaved, evo) or text.
Strategy strategy_from_spec(std::string_view spec, std::vector<std::string>* warnings = nullptr);

// Given-clause ranking: smaller is better.
struct Evaluation {
  std::int64_t priority = 0;
  double weight = 0.0;
  ClauseId serial = 0;

  auto operator<=>(const Evaluation&) const = default;
};

// Watchlist facts about a clause, fixed when it was generated.
struct GuidanceInfo {
  bool matched = false;
  double relevance0 = 0.0;
  double relevance1 = 0.0;
};

double relevance2(double r1, std::uint32_t length, double alpha, double beta);

double clause_weight(const Clause& c, const Cef& cef, const Signature& sig);
std::int64_t clause_priority(const Clause& c, const Cef& cef, const GuidanceInfo& info,
                             const Strategy& strategy);
Evaluation evaluate(const Clause& c, const Cef& cef, const GuidanceInfo& info, const Strategy& strategy,
                    const Signature& sig);

// Priority given to watchlist-matching clauses under the uwl flag; below
// every priority the other functions produce.
inline constexpr std::int64_t kUwlPriority = -1;

}  // namespace wlp
