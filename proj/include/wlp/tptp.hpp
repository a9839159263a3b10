#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wlp/clause.hpp"

namespace wlp {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column, std::string source = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& source() const { return source_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string source_;
};

struct Problem {
  std::string name;
  std::vector<Clause> clauses;
  TermBankPtr bank;

  std::vector<const Clause*> conjecture_clauses() const;
};

// Parses the `cnf(name, role, clause[, annotation]).` subset of TPTP. Clause
// ids are assigned 1..n in file order. Terms are interned into `bank`.
Problem parse_cnf(std::string_view text, TermBankPtr bank, std::string name = "problem",
                  std::string source = {});

Problem parse_cnf_file(const std::filesystem::path& path, TermBankPtr bank);

std::string role_name(Origin o);

// `cnf(<name>, <role>, <literals>).` in canonical literal order. With an
// empty name the clause prints as `c<id>`.
std::string print_clause(const Clause& c, TermBank& bank, std::string_view annotation = {});

std::string read_file(const std::filesystem::path& path);

}  // namespace wlp
