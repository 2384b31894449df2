// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <variant>

#include "metriq/theories.hpp"

namespace metriq {

// Parsed theory file: at most one theory plus named auxiliary objects.
// Identifiers in term position resolve against the operations declared so
// far; anything undeclared is a variable.
struct TheoryFile {
  Theory theory;
  std::vector<std::pair<std::string, Arity>> arities;  // named arity declarations
  std::vector<std::pair<std::string, FinMetric>> spaces;
  std::vector<std::pair<std::string, TermPtr>> terms;
  std::vector<std::pair<std::string, Sequent>> sequents;
  bool operator==(const TheoryFile &o) const;
};

struct ParseError {
  size_t line = 0, col = 0;
  std::string expectation;
  std::string str() const;
};

std::variant<TheoryFile, ParseError> parse_theory(const std::string &source);

// Inverse of parse_theory: parse(print_theory(f)) is structurally equal to
// f whenever f itself came out of the parser.
std::string print_theory(const TheoryFile &f);

// Fragment parsers for command-line arguments.  Throw std::invalid_argument
// carrying the positioned error text.
TermPtr parse_term_in(const Signature &sig, const std::string &text);
Context parse_context_in(const Signature &sig, const std::string &text);
Sequent parse_sequent_in(const Signature &sig, const std::string &text);

}  // namespace metriq
