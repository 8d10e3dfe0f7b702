#pragma once

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lmk/syntax.hpp"

namespace lmk {

/// Simple types over one base type (printed "nat"), optionally containing
/// numbered metavariables ?0, ?1, ... during inference. A type without
/// metavariables is ground.
class SimpleType {
 public:
  enum class Kind : std::uint8_t { Base, Arrow, Meta };

  static SimpleType base();
  static SimpleType arrow(SimpleType dom, SimpleType cod);
  static SimpleType meta(std::uint32_t index);

  Kind kind() const noexcept;
  bool is_base() const noexcept { return kind() == Kind::Base; }
  bool is_arrow() const noexcept { return kind() == Kind::Arrow; }
  bool is_meta() const noexcept { return kind() == Kind::Meta; }

  const SimpleType& dom() const noexcept;
  const SimpleType& cod() const noexcept;
  std::uint32_t meta_index() const noexcept;

  bool is_ground() const noexcept;

  friend bool operator==(const SimpleType& a, const SimpleType& b);

 private:
  struct Node;

  SimpleType() = default;
  explicit SimpleType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

struct SimpleType::Node {
  Kind kind = Kind::Base;
  SimpleType dom;
  SimpleType cod;
  std::uint32_t meta = 0;
  bool ground = true;
};

inline SimpleType::Kind SimpleType::kind() const noexcept { return node_->kind; }
inline const SimpleType& SimpleType::dom() const noexcept { return node_->dom; }
inline const SimpleType& SimpleType::cod() const noexcept { return node_->cod; }
inline std::uint32_t SimpleType::meta_index() const noexcept {
  return node_->meta;
}
inline bool SimpleType::is_ground() const noexcept { return node_->ground; }

/// Right-nested arrow: arrows({a, b, c}) is a -> b -> c.
SimpleType arrows(std::initializer_list<SimpleType> parts);

/// "nat", "?3", "a -> b"; the domain is parenthesised when it is an arrow.
std::string to_string(const SimpleType& t);

/// Replaces every metavariable by `with`.
SimpleType instantiate_metas(const SimpleType& t, const SimpleType& with);

/// Variable contexts with first-match lookup. Bindings are listed in search
/// order: the first binding of x is the one lookup returns.
class Context {
 public:
  using Binding = std::pair<Var, SimpleType>;

  Context() = default;
  Context(std::initializer_list<Binding> search_order);

  /// Context with (x, t) searched before every existing binding.
  Context extend(Var x, SimpleType t) const;

  std::optional<SimpleType> lookup(Var x) const;

  /// Bindings in search order.
  std::vector<Binding> bindings() const;

  bool empty() const noexcept { return reversed_.empty(); }

 private:
  std::vector<Binding> reversed_;  // most recent last
};

inline std::optional<SimpleType> lookup(const Context& ctx, Var x) {
  return ctx.lookup(x);
}

/// A type for a constant, schematic in metavariables ?0 .. ?(schematic-1).
struct TypeScheme {
  std::uint32_t schematic = 0;
  SimpleType body = SimpleType::base();
};

template <ConstAlphabet C>
class ConstSignature {
 public:
  void declare(C c, TypeScheme scheme);
  /// Throws std::out_of_range for an undeclared constant.
  const TypeScheme& scheme_of(C c) const;

 private:
  std::vector<std::pair<C, TypeScheme>> entries_;
};

/// 0 : nat,  S : nat -> nat,  Rec : a -> (nat -> a -> a) -> nat -> a.
ConstSignature<TConst> systemt_signature();

/// The signature a calculus ships with: empty for pure terms, System T's for
/// TConst.
template <ConstAlphabet C>
ConstSignature<C> default_signature();

class TypeError : public std::runtime_error {
 public:
  enum class Kind : std::uint8_t { UnboundVariable, UnificationClash, OccursCheck };

  TypeError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Principal type of m under ctx. Metavariables left unsolved are numbered
/// by first appearance. Throws TypeError.
template <ConstAlphabet C>
SimpleType infer(const ConstSignature<C>& sig, const Context& ctx,
                 const Term<C>& m);

struct CheckResult {
  bool derivable = false;
  std::optional<TypeError> error;

  explicit operator bool() const noexcept { return derivable; }
};

/// Whether ctx |- m : a is derivable, for ground a.
template <ConstAlphabet C>
CheckResult check(const ConstSignature<C>& sig, const Context& ctx,
                  const Term<C>& m, const SimpleType& a);

/// True iff a and b have a common instance.
bool unifiable(const SimpleType& a, const SimpleType& b);

/// A typing derivation, one node per rule application.
template <ConstAlphabet C>
struct Derivation {
  enum class Rule : std::uint8_t { Const, Var, Abs, App };

  Rule rule;
  Term<C> term;
  SimpleType type;
  std::vector<Derivation> premises;
};

/// The derivation behind infer's answer; types may contain metavariables.
template <ConstAlphabet C>
Derivation<C> infer_derivation(const ConstSignature<C>& sig,
                               const Context& ctx, const Term<C>& m);

template <ConstAlphabet C>
Derivation<C> instantiate_metas(const Derivation<C>& d, const SimpleType& with);

/// Replays every rule of d locally, without unification. A constant's type
/// must be an instance of its scheme.
template <ConstAlphabet C>
bool verify_derivation(const ConstSignature<C>& sig, const Context& ctx,
                       const Derivation<C>& d);

}  // namespace lmk
