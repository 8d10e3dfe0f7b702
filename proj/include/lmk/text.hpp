#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lmk/substitution.hpp"
#include "lmk/syntax.hpp"
#include "lmk/typing.hpp"

namespace lmk {

// Concrete syntax.
//
//   term  := lam | app
//   lam   := ("\" | "λ") var "." term
//   app   := atom { atom }
//   atom  := var | const | "(" term ")"
//   var   := "v" digits
//   const := "0" | "S" | "Rec"          (System T alphabet only)
//
//   type  := atomT [ "->" type ]
//   atomT := "nat" | "(" type ")"

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column,
             std::vector<std::string> expected, std::string found);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept {
    return expected_;
  }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

template <ConstAlphabet C>
Term<C> parse_term(std::string_view text);

SimpleType parse_type(std::string_view text);

/// Comma separated "v0:TYPE" bindings in search order.
Context parse_context(std::string_view text);

/// Comma separated "v0:=TERM" overrides.
template <ConstAlphabet C>
Subst<C> parse_subst(std::string_view text);

/// Minimal parentheses: the function of an application is parenthesised only
/// when it is an abstraction, an argument only when it is not an atom.
template <ConstAlphabet C>
std::string print_term(const Term<C>& m);

inline std::string print_type(const SimpleType& t) { return to_string(t); }

/// "[v0 := M, v3 := N]"; the identity prints as "[]".
template <ConstAlphabet C>
std::string print_subst(const Subst<C>& sigma);

}  // namespace lmk
