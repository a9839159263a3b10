#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wlp {

using SymbolId = std::uint32_t;

struct SymbolInfo {
  std::string name;
  std::uint32_t arity = 0;
  bool skolem = false;
};

// Function and predicate symbols, keyed by (name, arity). Two files may use
// one name at different arities; a single parse rejects that (see tptp.hpp).
class Signature {
 public:
  explicit Signature(std::string skolem_prefix = "sk");

  SymbolId intern(std::string_view name, std::uint32_t arity);
  std::optional<SymbolId> find(std::string_view name, std::uint32_t arity) const;

  const SymbolInfo& info(SymbolId id) const { return symbols_[id]; }
  const std::string& name(SymbolId id) const { return symbols_[id].name; }
  std::uint32_t arity(SymbolId id) const { return symbols_[id].arity; }
  bool is_skolem(SymbolId id) const { return symbols_[id].skolem; }
  std::size_t size() const { return symbols_.size(); }

  // The distinguished equality predicate `=`/2.
  SymbolId equality() const { return equality_; }

  // All skolem symbols of one arity share a representative; every other
  // symbol is its own representative.
  SymbolId ska_class(SymbolId id) const { return ska_class_[id]; }

  const std::string& skolem_prefix() const { return skolem_prefix_; }
  bool looks_like_skolem(std::string_view name) const;

 private:
  struct Key {
    std::string name;
    std::uint32_t arity;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::string skolem_prefix_;
  std::vector<SymbolInfo> symbols_;
  std::vector<SymbolId> ska_class_;
  std::unordered_map<Key, SymbolId, KeyHash> ids_;
  std::unordered_map<std::uint32_t, SymbolId> skolem_rep_by_arity_;
  SymbolId equality_ = 0;
};

// A hash-consed first-order term. Instances live in a TermBank and are
// compared by address: two structurally equal terms of one bank are the same
// object.
class Term {
 public:
  bool is_var() const { return var_; }
  std::uint32_t var_index() const { return head_; }
  SymbolId symbol() const { return head_; }
  std::uint32_t arity() const { return arity_; }
  std::span<const Term* const> args() const { return {args_, arity_}; }
  const Term* arg(std::size_t i) const { return args_[i]; }

  // Symbol occurrences including variables.
  std::uint32_t size() const { return size_; }
  std::uint32_t depth() const { return depth_; }
  bool ground() const { return var_bound_ == 0; }
  // One past the largest variable index occurring in the term.
  std::uint32_t var_bound() const { return var_bound_; }
  std::size_t hash() const { return hash_; }

 private:
  friend class TermBank;
  Term() = default;

  std::uint32_t head_ = 0;
  std::uint32_t arity_ = 0;
  std::uint32_t size_ = 1;
  std::uint32_t depth_ = 1;
  std::uint32_t var_bound_ = 0;
  bool var_ = false;
  std::size_t hash_ = 0;
  const Term* const* args_ = nullptr;
};

// Owns terms and the signature they are built over. Not thread-safe: one
// bank per saturation run.
class TermBank {
 public:
  explicit TermBank(std::string skolem_prefix = "sk");
  TermBank(const TermBank&) = delete;
  TermBank& operator=(const TermBank&) = delete;
  ~TermBank();

  Signature& signature() { return sig_; }
  const Signature& signature() const { return sig_; }

  const Term* var(std::uint32_t index);
  const Term* app(SymbolId symbol, std::span<const Term* const> args);
  const Term* constant(SymbolId symbol) { return app(symbol, {}); }
  // Convenience for tests and generators: interns the symbol by name.
  const Term* app(std::string_view name, std::span<const Term* const> args);

  // Rebuilds `t` (owned by `from`) inside this bank, mapping symbols by name.
  const Term* import(const Term* t, const TermBank& from);

  std::size_t term_count() const { return count_; }

 private:
  const Term** alloc_args(std::size_t n);
  void grow_table();

  Signature sig_;
  std::vector<const Term*> vars_;
  std::vector<std::unique_ptr<Term[]>> term_blocks_;
  std::size_t term_block_used_ = 0;
  std::vector<std::unique_ptr<const Term*[]>> arg_blocks_;
  std::size_t arg_block_used_ = 0;
  std::size_t arg_block_cap_ = 0;
  std::vector<const Term*> table_;
  std::size_t count_ = 0;
};

using TermBankPtr = std::shared_ptr<TermBank>;

std::string to_string(const Term* t, const Signature& sig);

}  // namespace wlp
