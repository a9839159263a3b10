#include "wlp/strategy.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace wlp {

std::string_view to_string(WeightFunction w) {
  switch (w) {
    case WeightFunction::clauseweight: return "Clauseweight";
    case WeightFunction::fifo: return "FIFOWeight";
  }
  return "?";
}

std::string_view to_string(PriorityFunction p) {
  switch (p) {
    case PriorityFunction::const_prio: return "ConstPrio";
    case PriorityFunction::prefer_watchlist: return "PreferWatchlist";
    case PriorityFunction::defer_watchlist: return "DeferWatchlist";
    case PriorityFunction::prefer_watchlist_relevant: return "PreferWatchlistRelevant";
    case PriorityFunction::defer_watchlist_relevant: return "DeferWatchlistRelevant";
  }
  return "?";
}

std::string_view to_string(RelevanceMode m) {
  switch (m) {
    case RelevanceMode::static_list: return "static";
    case RelevanceMode::dyn: return "dyn";
    case RelevanceMode::dyndec: return "dyndec";
  }
  return "?";
}

StrategyError::StrategyError(const std::string& message, std::size_t position)
    : std::invalid_argument("strategy: " + message + " at position " + std::to_string(position)),
      position_(position) {}

void Strategy::validate() const {
  if (cefs.empty()) throw std::invalid_argument("strategy needs at least one clause evaluation function");
  for (const Cef& c : cefs)
    if (c.frequency < 1) throw std::invalid_argument("frequency weights must be >= 1");
  if (!(relevance.delta < 1.0)) throw std::invalid_argument("decay delta must be < 1");
  if (relevance.alpha < 0 || relevance.beta < 0) throw std::invalid_argument("alpha and beta must be >= 0");
}

namespace {

std::string format_number(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

class StrategyParser {
 public:
  StrategyParser(std::string_view text, std::vector<std::string>* warnings) : s_(text), warnings_(warnings) {}

  Strategy parse() {
    Strategy st;
    bool have_h = false;
    skip_ws();
    while (pos_ < s_.size()) {
      std::size_t start = pos_;
      if (s_.substr(pos_, 3) == "-H(") {
        if (have_h) throw StrategyError("duplicate -H", start);
        pos_ += 3;
        parse_cefs(st);
        have_h = true;
      } else {
        std::string_view tok = token();
        parse_flag(tok, start, st);
      }
      skip_ws();
    }
    if (!have_h) throw StrategyError("missing -H(...)", pos_);
    try {
      st.validate();
    } catch (const std::invalid_argument& e) {
      throw StrategyError(e.what(), 0);
    }
    return st;
  }

 private:
  void warn(std::string msg) {
    if (warnings_) warnings_->push_back(std::move(msg));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view token() {
    std::size_t b = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  double number_value(std::string_view v, std::size_t at) {
    double out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty())
      throw StrategyError("invalid number '" + std::string(v) + "'", at);
    return out;
  }

  void parse_flag(std::string_view tok, std::size_t at, Strategy& st) {
    auto value_of = [&](std::string_view prefix) { return tok.substr(prefix.size()); };
    if (tok == "--uwl") st.uwl = true;
    else if (tok == "--no-remove") st.no_remove = true;
    else if (tok == "--ska") st.ska = true;
    else if (tok == "--paramod") st.paramod = true;
    else if (tok.starts_with("--mode=")) {
      auto m = value_of("--mode=");
      if (m == "static") st.relevance.mode = RelevanceMode::static_list;
      else if (m == "dyn") st.relevance.mode = RelevanceMode::dyn;
      else if (m == "dyndec") st.relevance.mode = RelevanceMode::dyndec;
      else throw StrategyError("unknown mode '" + std::string(m) + "'", at);
    } else if (tok.starts_with("--delta=")) st.relevance.delta = number_value(value_of("--delta="), at + 8);
    else if (tok.starts_with("--alpha=")) st.relevance.alpha = number_value(value_of("--alpha="), at + 8);
    else if (tok.starts_with("--beta=")) st.relevance.beta = number_value(value_of("--beta="), at + 7);
    else if (tok.starts_with("-t")) warn("term ordering '" + std::string(tok) + "' ignored");
    else throw StrategyError("unknown flag '" + std::string(tok) + "'", at);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void expect(char c) {
    skip_ws();
    if (peek() != c) throw StrategyError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view ident() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (b == pos_) throw StrategyError("expected a name", b);
    return s_.substr(b, pos_ - b);
  }

  std::pair<std::string_view, std::size_t> number_token() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                s_[pos_] == '-' || s_[pos_] == '+' || s_[pos_] == 'e'))
      ++pos_;
    return {s_.substr(b, pos_ - b), b};
  }

  void parse_cefs(Strategy& st) {
    while (true) {
      st.cefs.push_back(parse_cef());
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      expect(')');
      return;
    }
  }

  Cef parse_cef() {
    Cef cef;
    auto [freq_text, freq_at] = number_token();
    double freq = number_value(freq_text, freq_at);
    if (freq < 1 || freq != std::floor(freq)) throw StrategyError("frequency must be a positive integer", freq_at);
    cef.frequency = static_cast<std::uint32_t>(freq);
    expect('*');
    std::size_t name_at = pos_;
    std::string_view name = ident();
    if (name == "Clauseweight") cef.weight = WeightFunction::clauseweight;
    else if (name == "FIFOWeight") cef.weight = WeightFunction::fifo;
    else throw StrategyError("unknown weight function '" + std::string(name) + "'", name_at);
    expect('(');
    skip_ws();
    std::size_t prio_at = pos_;
    std::string_view prio = ident();
    if (prio == "ConstPrio") cef.priority = PriorityFunction::const_prio;
    else if (prio == "PreferWatchlist") cef.priority = PriorityFunction::prefer_watchlist;
    else if (prio == "DeferWatchlist") cef.priority = PriorityFunction::defer_watchlist;
    else if (prio == "PreferWatchlistRelevant") cef.priority = PriorityFunction::prefer_watchlist_relevant;
    else if (prio == "DeferWatchlistRelevant") cef.priority = PriorityFunction::defer_watchlist_relevant;
    else if (prio == "DeferSoS") {
      cef.priority = PriorityFunction::const_prio;
      warn("priority function DeferSoS ignored (treated as ConstPrio)");
    } else {
      throw StrategyError("unknown priority function '" + std::string(prio) + "'", prio_at);
    }
    std::vector<double> args;
    skip_ws();
    while (peek() == ',') {
      ++pos_;
      auto [t, at] = number_token();
      args.push_back(number_value(t, at));
      skip_ws();
    }
    expect(')');
    if (cef.weight == WeightFunction::clauseweight) {
      if (!args.empty() && args.size() != 3)
        throw StrategyError("Clauseweight takes (prio, fweight, vweight, pos_mult)", name_at);
      if (args.size() == 3) {
        cef.function_weight = args[0];
        cef.variable_weight = args[1];
        cef.positive_multiplier = args[2];
      }
    } else if (!args.empty()) {
      throw StrategyError("FIFOWeight takes only a priority function", name_at);
    }
    return cef;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::string>* warnings_;
};

}  // namespace

std::string Strategy::to_text() const {
  std::string out;
  if (uwl) out += "--uwl ";
  if (no_remove) out += "--no-remove ";
  if (ska) out += "--ska ";
  if (paramod) out += "--paramod ";
  if (relevance.mode != RelevanceMode::static_list) {
    out += "--mode=";
    out += to_string(relevance.mode);
    out += ' ';
  }
  RelevanceParams defaults;
  if (relevance.delta != defaults.delta) out += "--delta=" + format_number(relevance.delta) + " ";
  if (relevance.alpha != defaults.alpha) out += "--alpha=" + format_number(relevance.alpha) + " ";
  if (relevance.beta != defaults.beta) out += "--beta=" + format_number(relevance.beta) + " ";
  out += "-H(";
  for (std::size_t i = 0; i < cefs.size(); ++i) {
    const Cef& c = cefs[i];
    if (i) out += ',';
    out += std::to_string(c.frequency) + "*";
    out += to_string(c.weight);
    out += "(";
    out += to_string(c.priority);
    if (c.weight == WeightFunction::clauseweight)
      out += "," + format_number(c.function_weight) + "," + format_number(c.variable_weight) + "," +
             format_number(c.positive_multiplier);
    out += ")";
  }
  out += ")";
  return out;
}

Strategy parse_strategy(std::string_view text, std::vector<std::string>* warnings) {
  Strategy st = StrategyParser(text, warnings).parse();
  st.name = std::string(text);
  return st;
}

Mode parse_mode(std::string_view name) {
  if (name == "pref") return Mode::pref;
  if (name == "const") return Mode::const_prio;
  if (name == "uwl") return Mode::uwl;
  if (name == "ska") return Mode::ska;
  if (name == "dyn") return Mode::dyn;
  if (name == "dyndec") return Mode::dyndec;
  if (name == "evo") return Mode::evo;
  throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::pref: return "pref";
    case Mode::const_prio: return "const";
    case Mode::uwl: return "uwl";
    case Mode::ska: return "ska";
    case Mode::dyn: return "dyn";
    case Mode::dyndec: return "dyndec";
    case Mode::evo: return "evo";
  }
  return "?";
}

namespace {

Strategy with_priority(Strategy s, PriorityFunction p) {
  for (Cef& c : s.cefs) c.priority = p;
  return s;
}

}  // namespace

Strategy apply_mode(const Strategy& base, Mode mode) {
  Strategy out;
  switch (mode) {
    case Mode::pref:
      out = with_priority(base, PriorityFunction::prefer_watchlist);
      out.relevance.mode = RelevanceMode::static_list;
      break;
    case Mode::const_prio:
      out = with_priority(base, PriorityFunction::const_prio);
      out.relevance.mode = RelevanceMode::static_list;
      break;
    case Mode::uwl:
      out = base;
      out.uwl = true;
      out.relevance.mode = RelevanceMode::static_list;
      break;
    case Mode::ska:
      out = apply_mode(base, Mode::pref);
      out.ska = true;
      break;
    case Mode::dyn:
      out = with_priority(base, PriorityFunction::prefer_watchlist_relevant);
      out.relevance.mode = RelevanceMode::dyn;
      break;
    case Mode::dyndec:
      out = apply_mode(base, Mode::dyn);
      out.relevance = RelevanceParams{RelevanceMode::dyndec, 0.1, 0.03, 0.009};
      break;
    case Mode::evo:
      out = evo_strategy();
      out.paramod = base.paramod;
      out.no_remove = base.no_remove;
      break;
  }
  out.name = std::string(to_string(mode)) + "(" + (base.name.empty() ? base.to_text() : base.name) + ")";
  return out;
}

Strategy fifo_strategy() {
  Strategy s = parse_strategy("-H(1*FIFOWeight(ConstPrio))");
  s.name = "fifo";
  return s;
}

Strategy pure_watchlist_strategy() {
  Strategy s = parse_strategy("-H(1*FIFOWeight(PreferWatchlist))");
  s.name = "pure-watchlist";
  return s;
}

Strategy interleaved_watchlist_strategy() {
  Strategy s = parse_strategy("-H(10*Clauseweight(PreferWatchlist,1,1,1),1*FIFOWeight(ConstPrio))");
  s.name = "interleaved";
  return s;
}

Strategy evo_strategy() {
  Strategy s = parse_strategy(
      "-H(8*Clauseweight(PreferWatchlist,1,1,1),8*Clauseweight(PreferWatchlist,2,1,1),"
      "1*FIFOWeight(ConstPrio),1*Clauseweight(ConstPrio,3,1,1))");
  s.name = "evo";
  return s;
}

Strategy strategy_from_spec(std::string_view spec, std::vector<std::string>* warnings) {
  if (spec == "fifo") return fifo_strategy();
  if (spec == "pure-watchlist") return pure_watchlist_strategy();
  if (spec == "interleaved") return interleaved_watchlist_strategy();
  if (spec == "evo") return evo_strategy();
  return parse_strategy(spec, warnings);
}

double relevance2(double r1, std::uint32_t length, double alpha, double beta) {
  if (r1 < alpha && r1 / static_cast<double>(length) < beta) return 0.0;
  return r1;
}

double clause_weight(const Clause& c, const Cef& cef, const Signature&) {
  if (cef.weight == WeightFunction::fifo) return static_cast<double>(c.id);
  double total = 0.0;
  for (const Literal& l : c.literals) {
    std::uint32_t vars = 0, funs = 0;
    std::vector<const Term*> stack{l.atom};
    while (!stack.empty()) {
      const Term* t = stack.back();
      stack.pop_back();
      if (t->is_var()) {
        ++vars;
        continue;
      }
      ++funs;
      for (const Term* a : t->args()) stack.push_back(a);
    }
    double w = cef.function_weight * funs + cef.variable_weight * vars;
    total += l.positive ? w * cef.positive_multiplier : w;
  }
  return total;
}

std::int64_t clause_priority(const Clause& c, const Cef& cef, const GuidanceInfo& info, const Strategy& strategy) {
  if (strategy.uwl && info.matched) return kUwlPriority;
  auto relevance = [&]() {
    if (strategy.relevance.mode == RelevanceMode::dyndec)
      return relevance2(info.relevance1, std::max<std::uint32_t>(c.length(), 1), strategy.relevance.alpha,
                        strategy.relevance.beta);
    return info.relevance0;
  };
  switch (cef.priority) {
    case PriorityFunction::const_prio: return 0;
    case PriorityFunction::prefer_watchlist: return info.matched ? 0 : 1;
    case PriorityFunction::defer_watchlist: return info.matched ? 1 : 0;
    case PriorityFunction::prefer_watchlist_relevant: return std::llround(1000.0 * (1.0 - relevance()));
    case PriorityFunction::defer_watchlist_relevant: return std::llround(1000.0 * relevance());
  }
  return 0;
}

Evaluation evaluate(const Clause& c, const Cef& cef, const GuidanceInfo& info, const Strategy& strategy,
                    const Signature& sig) {
  return {clause_priority(c, cef, info, strategy), clause_weight(c, cef, sig), c.id};
}

}  // namespace wlp
