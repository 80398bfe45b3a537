#ifndef FOSG_ERRORS_HPP
#define FOSG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fosg {

// Base class for everything thrown by the library.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Lexical or grammatical error with a 1-based source position.
class parse_error : public error {
public:
  parse_error(const std::string& what, int line, int col)
      : error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line(line), col(col) {}
  int line, col;
};

// Well-formedness violation (arity mismatch, unknown predicate, owner rules, ...).
class semantic_error : public error {
public:
  using error::error;
};

// A configured resource limit was exceeded (CNF clauses, ground atoms, positions).
class budget_error : public error {
public:
  using error::error;
};

// Input left the decidable fragment a procedure requires.
class fragment_error : public error {
public:
  using error::error;
};

} // namespace fosg

#endif
