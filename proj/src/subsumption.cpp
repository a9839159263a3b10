#include "wlp/subsumption.hpp"

#include <algorithm>
#include <numeric>

namespace wlp {

namespace {

struct Matcher {
  const Signature& sig;
  bool ska;
  std::vector<const Term*>& bindings;
  std::vector<std::uint32_t>& trail;

  bool same_symbol(SymbolId a, SymbolId b) const {
    return a == b || (ska && sig.ska_class(a) == sig.ska_class(b));
  }

  bool equal(const Term* a, const Term* b) const {
    if (a == b) return true;
    if (!ska) return false;
    return ska_equal(a, b, sig);
  }

  bool match(const Term* p, const Term* t) {
    if (p->is_var()) {
      const Term*& slot = bindings[p->var_index()];
      if (slot != nullptr) return equal(slot, t);
      slot = t;
      trail.push_back(p->var_index());
      return true;
    }
    if (t->is_var() || p->arity() != t->arity() || !same_symbol(p->symbol(), t->symbol())) return false;
    if (p->ground() && !ska) return p == t;
    if (p->size() > t->size()) return false;
    for (std::uint32_t i = 0; i < p->arity(); ++i)
      if (!match(p->arg(i), t->arg(i))) return false;
    return true;
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      bindings[trail.back()] = nullptr;
      trail.pop_back();
    }
  }
};

struct LiteralSearch {
  const Clause& c;
  const Clause& d;
  Matcher& m;
  const std::uint32_t* order;  // literals of c, most constrained first
  char* used;

  bool run(std::size_t k) {
    if (k == c.literals.size()) return true;
    const Literal& lc = c.literals[order[k]];
    for (std::size_t j = 0; j < d.literals.size(); ++j) {
      if (used[j]) continue;
      const Literal& ld = d.literals[j];
      if (ld.positive != lc.positive || !m.same_symbol(ld.atom->symbol(), lc.atom->symbol())) continue;
      std::size_t mark = m.trail.size();
      if (m.match(lc.atom, ld.atom)) {
        used[j] = 1;
        if (run(k + 1)) return true;
        used[j] = 0;
      }
      m.undo(mark);
    }
    return false;
  }
};

// Per-thread buffers reused across calls.
struct Scratch {
  std::vector<const Term*> bindings;
  std::vector<std::uint32_t> trail;
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> partners;
  std::vector<char> used;
};

Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

bool ska_equal(const Term* a, const Term* b, const Signature& sig) {
  if (a == b) return true;
  if (a->is_var() || b->is_var()) return false;
  if (a->arity() != b->arity() || a->size() != b->size()) return false;
  if (sig.ska_class(a->symbol()) != sig.ska_class(b->symbol())) return false;
  for (std::uint32_t i = 0; i < a->arity(); ++i)
    if (!ska_equal(a->arg(i), b->arg(i), sig)) return false;
  return true;
}

bool match_term(const Term* pattern, const Term* target, std::vector<const Term*>& bindings,
                const Signature& sig, bool ska) {
  if (bindings.size() < pattern->var_bound()) bindings.resize(pattern->var_bound(), nullptr);
  std::vector<std::uint32_t> trail;
  Matcher m{sig, ska, bindings, trail};
  if (m.match(pattern, target)) return true;
  m.undo(0);
  return false;
}

bool subsumes(const Clause& c, const Clause& d, const Signature& sig, bool ska) {
  const std::size_t nc = c.literals.size(), nd = d.literals.size();
  if (nc > nd) return false;
  if (nc == 0) return true;
  if (c.length() > d.length()) return false;

  Scratch& sc = scratch();
  sc.bindings.assign(c.var_bound(), nullptr);
  sc.trail.clear();
  Matcher m{sig, ska, sc.bindings, sc.trail};

  // Every literal of c needs a matching partner; the partner count orders the search.
  sc.partners.assign(nc, 0);
  for (std::size_t i = 0; i < nc; ++i) {
    const Literal& lc = c.literals[i];
    for (const Literal& ld : d.literals) {
      if (ld.positive != lc.positive || !m.same_symbol(ld.atom->symbol(), lc.atom->symbol())) continue;
      if (m.match(lc.atom, ld.atom)) ++sc.partners[i];
      m.undo(0);
    }
    if (sc.partners[i] == 0) return false;
  }
  if (nc == 1) return true;

  sc.order.resize(nc);
  std::iota(sc.order.begin(), sc.order.end(), 0u);
  std::stable_sort(sc.order.begin(), sc.order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (sc.partners[a] != sc.partners[b]) return sc.partners[a] < sc.partners[b];
    return c.literals[a].atom->size() > c.literals[b].atom->size();
  });
  sc.used.assign(nd, 0);
  LiteralSearch search{c, d, m, sc.order.data(), sc.used.data()};
  return search.run(0);
}

}  // namespace wlp
