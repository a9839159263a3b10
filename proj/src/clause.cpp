#include "wlp/clause.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace wlp {

std::string_view origin_name(Origin o) {
  switch (o) {
    case Origin::axiom: return "axiom";
    case Origin::negated_conjecture: return "negated_conjecture";
    case Origin::derived: return "derived";
  }
  return "derived";
}

std::uint32_t Clause::length() const {
  std::uint32_t n = 0;
  for (const Literal& l : literals) n += l.atom->size();
  return n;
}

std::uint32_t Clause::var_bound() const {
  std::uint32_t n = 0;
  for (const Literal& l : literals) n = std::max(n, l.atom->var_bound());
  return n;
}

std::uint32_t Clause::max_depth() const {
  std::uint32_t n = 0;
  for (const Literal& l : literals) n = std::max(n, l.atom->depth());
  return n;
}

bool is_tautology(const Clause& c, const Signature& sig) {
  const auto& lits = c.literals;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    const Literal& l = lits[i];
    if (l.positive && l.atom->symbol() == sig.equality() && l.atom->arg(0) == l.atom->arg(1)) return true;
    for (std::size_t j = i + 1; j < lits.size(); ++j)
      if (lits[j].atom == l.atom && lits[j].positive != l.positive) return true;
  }
  return false;
}

void remove_duplicate_literals(std::vector<Literal>& lits) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < out; ++j)
      if (lits[j] == lits[i]) {
        dup = true;
        break;
      }
    if (!dup) lits[out++] = lits[i];
  }
  lits.resize(out);
}

namespace {

constexpr std::uint32_t kUnmapped = ~0u;

const Term* rename(const Term* t, const std::vector<std::uint32_t>& map, TermBank& bank) {
  if (t->ground()) return t;
  if (t->is_var()) return bank.var(map[t->var_index()]);
  std::vector<const Term*> args;
  args.reserve(t->arity());
  for (const Term* a : t->args()) args.push_back(rename(a, map, bank));
  return bank.app(t->symbol(), args);
}

void collect_order(const Term* t, std::vector<std::uint32_t>& map, std::uint32_t& next) {
  if (t->ground()) return;
  if (t->is_var()) {
    if (map[t->var_index()] == kUnmapped) map[t->var_index()] = next++;
    return;
  }
  for (const Term* a : t->args()) collect_order(a, map, next);
}

// Prints with variables renamed through `map`; unmapped variables print "_".
void print_mapped(const Term* t, const Signature& sig, const std::vector<std::uint32_t>* map,
                  std::string& out) {
  if (t->is_var()) {
    if (map == nullptr || (*map)[t->var_index()] == kUnmapped) {
      out += '_';
    } else {
      out += 'X';
      out += std::to_string((*map)[t->var_index()]);
    }
    return;
  }
  out += sig.name(t->symbol());
  if (t->arity() == 0) return;
  out += '(';
  for (std::uint32_t i = 0; i < t->arity(); ++i) {
    if (i) out += ',';
    print_mapped(t->arg(i), sig, map, out);
  }
  out += ')';
}

struct SortKey {
  int polarity;  // positive literals first
  std::string predicate;
  std::string atom;
  auto operator<=>(const SortKey&) const = default;
};

SortKey key_of(const Literal& l, const Signature& sig, const std::vector<std::uint32_t>* map) {
  SortKey k{l.positive ? 0 : 1, sig.name(l.atom->symbol()), {}};
  print_mapped(l.atom, sig, map, k.atom);
  return k;
}

constexpr std::size_t kMaxCandidateOrders = 5040;

}  // namespace

void renumber_variables(Clause& c, TermBank& bank) {
  std::uint32_t vb = c.var_bound();
  if (vb == 0) return;
  std::vector<std::uint32_t> map(vb, kUnmapped);
  std::uint32_t next = 0;
  for (const Literal& l : c.literals) collect_order(l.atom, map, next);
  bool identity = true;
  for (std::uint32_t i = 0; i < vb && identity; ++i) identity = map[i] == i || map[i] == kUnmapped;
  if (identity) return;
  for (Literal& l : c.literals) l.atom = rename(l.atom, map, bank);
}

Clause alpha_normalize(const Clause& c, TermBank& bank) {
  const Signature& sig = bank.signature();
  const std::size_t n = c.literals.size();
  Clause out = c;
  if (n == 0) return out;

  // Order literals by a variable-blind key; only ties need exploring.
  std::vector<SortKey> blind(n);
  for (std::size_t i = 0; i < n; ++i) blind[i] = key_of(c.literals[i], sig, nullptr);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return blind[a] < blind[b]; });

  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) in order
  std::size_t combos = 1;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && blind[order[j]] == blind[order[i]]) ++j;
    if (j - i > 1) {
      groups.emplace_back(i, j);
      for (std::size_t f = 2; f <= j - i && combos <= kMaxCandidateOrders; ++f) combos *= f;
    }
    i = j;
  }
  bool explore = combos <= kMaxCandidateOrders;

  const std::uint32_t vb = c.var_bound();
  std::string best_text;
  std::vector<std::uint32_t> best_map;
  std::vector<std::size_t> best_lits;
  bool have_best = false;

  auto evaluate = [&]() {
    std::vector<std::uint32_t> map(vb, kUnmapped);
    std::uint32_t next = 0;
    for (std::size_t idx : order) collect_order(c.literals[idx].atom, map, next);
    std::vector<std::pair<SortKey, std::size_t>> keyed;
    keyed.reserve(n);
    for (std::size_t idx : order) keyed.emplace_back(key_of(c.literals[idx], sig, &map), idx);
    std::sort(keyed.begin(), keyed.end());
    std::string text;
    for (const auto& [k, idx] : keyed) {
      text += k.polarity ? '~' : '+';
      text += k.atom;
      text += '|';
    }
    if (!have_best || text < best_text) {
      have_best = true;
      best_text = std::move(text);
      best_map = std::move(map);
      best_lits.clear();
      for (const auto& kv : keyed) best_lits.push_back(kv.second);
    }
  };

  if (!explore || groups.empty()) {
    evaluate();
  } else {
    for (auto [b, e] : groups) std::sort(order.begin() + b, order.begin() + e);
    // Odometer over the permutations of every tied group.
    while (true) {
      evaluate();
      std::size_t g = 0;
      for (; g < groups.size(); ++g) {
        auto [b, e] = groups[g];
        if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
      }
      if (g == groups.size()) break;
    }
  }

  out.literals.clear();
  for (std::size_t idx : best_lits) {
    Literal l = c.literals[idx];
    l.atom = vb ? rename(l.atom, best_map, bank) : l.atom;
    out.literals.push_back(l);
  }
  return out;
}

std::string literal_to_string(const Literal& l, const Signature& sig) {
  const Term* a = l.atom;
  if (a->symbol() == sig.equality() && a->arity() == 2) {
    return to_string(a->arg(0), sig) + (l.positive ? " = " : " != ") + to_string(a->arg(1), sig);
  }
  return (l.positive ? "" : "~") + to_string(a, sig);
}

std::string literals_to_string(const Clause& c, const Signature& sig) {
  if (c.literals.empty()) return "$false";
  std::string out;
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i) out += " | ";
    out += literal_to_string(c.literals[i], sig);
  }
  return out;
}

std::string canonical_text(const Clause& c, TermBank& bank) {
  return literals_to_string(alpha_normalize(c, bank), bank.signature());
}

Clause import_clause(const Clause& c, const TermBank& from, TermBank& to) {
  Clause out = c;
  for (Literal& l : out.literals) l.atom = to.import(l.atom, from);
  return out;
}

}  // namespace wlp
