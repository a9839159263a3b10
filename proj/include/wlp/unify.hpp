#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wlp/term.hpp"

namespace wlp {

// Syntactic unification over two variable-disjoint "sides". A premise
// clause is placed on side 0 or 1; equal variable indices on different
// sides are different variables, so no renaming is needed before unifying.
class Unifier {
 public:
  Unifier(std::uint32_t vars0, std::uint32_t vars1);

  bool unify(const Term* a, int side_a, const Term* b, int side_b);

  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t mark);

  // Output variables are numbered 0, 1, ... in order of first use across
  // successive apply calls; call reset_renaming() between result clauses.
  const Term* apply(const Term* t, int side, TermBank& bank);
  // Applies the substitution to `t`, replacing the subterm at `path` (argument
  // positions from the root) with `replacement` from side `rep_side`.
  const Term* apply_replacing(const Term* t, int side, std::span<const std::uint32_t> path,
                              const Term* replacement, int rep_side, TermBank& bank);
  void reset_renaming();

 private:
  struct Bound {
    const Term* term = nullptr;
    int side = 0;
  };
  Bound deref(const Term* t, int side) const;
  bool occurs(std::uint32_t var, int var_side, const Term* t, int side) const;

  std::vector<Bound> bind_[2];
  std::vector<std::pair<int, std::uint32_t>> trail_;
  std::vector<std::uint32_t> rename_[2];
  std::uint32_t next_var_ = 0;
};

}  // namespace wlp
