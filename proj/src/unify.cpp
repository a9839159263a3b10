#include "wlp/unify.hpp"

namespace wlp {

namespace {
constexpr std::uint32_t kFresh = ~0u;
}

Unifier::Unifier(std::uint32_t vars0, std::uint32_t vars1) {
  bind_[0].resize(vars0);
  bind_[1].resize(vars1);
  rename_[0].assign(vars0, kFresh);
  rename_[1].assign(vars1, kFresh);
}

Unifier::Bound Unifier::deref(const Term* t, int side) const {
  while (t->is_var()) {
    const Bound& b = bind_[side][t->var_index()];
    if (b.term == nullptr) break;
    t = b.term;
    side = b.side;
  }
  return {t, side};
}

bool Unifier::occurs(std::uint32_t var, int var_side, const Term* t, int side) const {
  Bound d = deref(t, side);
  if (d.term->is_var()) return d.side == var_side && d.term->var_index() == var;
  if (d.term->ground()) return false;
  for (const Term* a : d.term->args())
    if (occurs(var, var_side, a, d.side)) return true;
  return false;
}

bool Unifier::unify(const Term* a, int side_a, const Term* b, int side_b) {
  std::vector<std::pair<Bound, Bound>> todo;
  todo.push_back({{a, side_a}, {b, side_b}});
  while (!todo.empty()) {
    auto [x, y] = todo.back();
    todo.pop_back();
    x = deref(x.term, x.side);
    y = deref(y.term, y.side);
    if (x.term == y.term && (x.side == y.side || x.term->ground())) continue;
    if (!x.term->is_var() && y.term->is_var()) std::swap(x, y);
    if (x.term->is_var()) {
      if (y.term->is_var() && y.term->var_index() == x.term->var_index() && y.side == x.side) continue;
      if (occurs(x.term->var_index(), x.side, y.term, y.side)) return false;
      bind_[x.side][x.term->var_index()] = y;
      trail_.emplace_back(x.side, x.term->var_index());
      continue;
    }
    if (x.term->symbol() != y.term->symbol() || x.term->arity() != y.term->arity()) return false;
    for (std::uint32_t i = 0; i < x.term->arity(); ++i)
      todo.push_back({{x.term->arg(i), x.side}, {y.term->arg(i), y.side}});
  }
  return true;
}

void Unifier::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    auto [side, v] = trail_.back();
    bind_[side][v] = {};
    trail_.pop_back();
  }
}

void Unifier::reset_renaming() {
  std::fill(rename_[0].begin(), rename_[0].end(), kFresh);
  std::fill(rename_[1].begin(), rename_[1].end(), kFresh);
  next_var_ = 0;
}

const Term* Unifier::apply(const Term* t, int side, TermBank& bank) {
  if (t->ground()) return t;
  Bound d = deref(t, side);
  if (d.term->is_var()) {
    std::uint32_t& r = rename_[d.side][d.term->var_index()];
    if (r == kFresh) r = next_var_++;
    return bank.var(r);
  }
  if (d.term->ground()) return d.term;
  std::vector<const Term*> args;
  args.reserve(d.term->arity());
  for (const Term* a : d.term->args()) args.push_back(apply(a, d.side, bank));
  return bank.app(d.term->symbol(), args);
}

const Term* Unifier::apply_replacing(const Term* t, int side, std::span<const std::uint32_t> path,
                                     const Term* replacement, int rep_side, TermBank& bank) {
  if (path.empty()) return apply(replacement, rep_side, bank);
  std::vector<const Term*> args;
  args.reserve(t->arity());
  for (std::uint32_t i = 0; i < t->arity(); ++i) {
    if (i == path[0])
      args.push_back(apply_replacing(t->arg(i), side, path.subspan(1), replacement, rep_side, bank));
    else
      args.push_back(apply(t->arg(i), side, bank));
  }
  return bank.app(t->symbol(), args);
}

}  // namespace wlp
