#pragma once

#include <cstdint>
#include <vector>

#include "wlp/clause.hpp"

namespace wlp {

// Multiset subsumption: true iff some substitution maps the literals of `c`
// injectively onto literals of `d` with equal polarity and atoms. With `ska`
// all skolem symbols of one arity compare equal. Variables of `d` behave as
// constants, so `c` and `d` may share variable indices.
bool subsumes(const Clause& c, const Clause& d, const Signature& sig, bool ska = false);

// One-way matching of `pattern` onto `target`, extending `bindings` (indexed
// by pattern variable). Bindings added by a failed match are rolled back.
bool match_term(const Term* pattern, const Term* target, std::vector<const Term*>& bindings,
                const Signature& sig, bool ska = false);

// Structural equality modulo the skolem abstraction.
bool ska_equal(const Term* a, const Term* b, const Signature& sig);

}  // namespace wlp
