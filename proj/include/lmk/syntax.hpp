#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmk/alphabet.hpp"

namespace lmk {

/// A variable name. Names are natural numbers and are written v0, v1, ...
struct Var {
  std::uint32_t index = 0;

  constexpr Var() = default;
  constexpr explicit Var(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(Var, Var) = default;
};

std::string to_string(Var x);

/// Immutable first-order lambda term over the constant alphabet C.
///
/// Terms are shared, reference counted trees. Equality is syntactic: it does
/// not identify alpha-convertible terms. Each node caches its size, a
/// structural hash and a bitmap of the free variables with index below 64.
template <ConstAlphabet C>
class Term {
 public:
  enum class Kind : std::uint8_t { Const, Var, Abs, App };

  static Term constant(C c);
  static Term variable(Var x);
  static Term abs(Var x, Term body);
  static Term app(Term fun, Term arg);

  Kind kind() const noexcept { return node_->kind; }
  bool is_const() const noexcept { return kind() == Kind::Const; }
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_abs() const noexcept { return kind() == Kind::Abs; }
  bool is_app() const noexcept { return kind() == Kind::App; }

  /// Payload of a constant.
  C symbol() const noexcept { return node_->symbol; }
  /// The variable of a VarRef, or the binder of an Abs.
  Var var() const noexcept { return node_->var; }
  const Term& body() const noexcept { return node_->left; }
  const Term& fun() const noexcept { return node_->left; }
  const Term& arg() const noexcept { return node_->right; }

  /// Number of constructors in the term.
  std::size_t size() const noexcept { return node_->size; }
  std::size_t hash() const noexcept { return node_->hash; }

  // Bit i is set iff v_i is free, exact for i < 64.
  std::uint64_t free_bits() const noexcept { return node_->free_bits; }
  // Conservative: false guarantees no free variable has index >= 64.
  bool may_have_wide_free() const noexcept { return node_->wide_free; }

  bool is_constant(C c) const noexcept { return is_const() && symbol() == c; }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size()) return false;
    return deep_equal(a, b);
  }

 private:
  struct Node;

  Term() = default;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static bool deep_equal(const Term& a, const Term& b);

  std::shared_ptr<const Node> node_;
};

template <ConstAlphabet C>
struct Term<C>::Node {
  Kind kind{};
  C symbol{};
  Var var{};
  Term left;
  Term right;
  std::uint32_t size = 1;
  std::size_t hash = 0;
  std::uint64_t free_bits = 0;
  bool wide_free = false;
};

namespace detail {

inline std::size_t mix(std::size_t h, std::size_t v) noexcept {
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z ^= z >> 31;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  return static_cast<std::size_t>(z);
}

inline std::uint64_t bit_of(Var x) noexcept {
  return x.index < 64 ? (std::uint64_t{1} << x.index) : 0;
}

}  // namespace detail

template <ConstAlphabet C>
Term<C> Term<C>::constant(C c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->symbol = c;
  n->hash = detail::mix(1, static_cast<std::size_t>(c));
  return Term(std::move(n));
}

template <ConstAlphabet C>
Term<C> Term<C>::variable(Var x) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = x;
  n->hash = detail::mix(2, x.index);
  n->free_bits = detail::bit_of(x);
  n->wide_free = x.index >= 64;
  return Term(std::move(n));
}

template <ConstAlphabet C>
Term<C> Term<C>::abs(Var x, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->var = x;
  n->size = static_cast<std::uint32_t>(1 + body.size());
  n->hash = detail::mix(detail::mix(3, x.index), body.hash());
  n->free_bits = body.free_bits() & ~detail::bit_of(x);
  n->wide_free = body.may_have_wide_free();
  n->left = std::move(body);
  return Term(std::move(n));
}

template <ConstAlphabet C>
Term<C> Term<C>::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->size = static_cast<std::uint32_t>(1 + fun.size() + arg.size());
  n->hash = detail::mix(detail::mix(4, fun.hash()), arg.hash());
  n->free_bits = fun.free_bits() | arg.free_bits();
  n->wide_free = fun.may_have_wide_free() || arg.may_have_wide_free();
  n->left = std::move(fun);
  n->right = std::move(arg);
  return Term(std::move(n));
}

template <ConstAlphabet C>
bool Term<C>::deep_equal(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.hash() != b.hash() || a.size() != b.size())
    return false;
  switch (a.kind()) {
    case Kind::Const:
      return a.symbol() == b.symbol();
    case Kind::Var:
      return a.var() == b.var();
    case Kind::Abs:
      return a.var() == b.var() && deep_equal(a.body(), b.body());
    case Kind::App:
      return deep_equal(a.fun(), b.fun()) && deep_equal(a.arg(), b.arg());
  }
  return false;
}

struct TermHash {
  template <ConstAlphabet C>
  std::size_t operator()(const Term<C>& t) const noexcept {
    return t.hash();
  }
};

/// Free variables in order of first free occurrence, left to right, without
/// duplicates.
template <ConstAlphabet C>
std::vector<Var> free_vars(const Term<C>& m);

template <ConstAlphabet C>
bool occurs_free(Var x, const Term<C>& m);

template <ConstAlphabet C>
bool is_fresh(Var x, const Term<C>& m) {
  return !occurs_free(x, m);
}

template <ConstAlphabet C>
bool is_closed(const Term<C>& m) {
  if (m.free_bits() != 0) return false;
  return !m.may_have_wide_free() || free_vars(m).empty();
}

template <ConstAlphabet C>
std::size_t term_size(const Term<C>& m) noexcept {
  return m.size();
}

/// Head and arguments of an application spine: m = head a1 ... an.
template <ConstAlphabet C>
struct Spine {
  Term<C> head;
  std::vector<Term<C>> args;
};

template <ConstAlphabet C>
Spine<C> spine(const Term<C>& m);

/// Left-associated application of head to args.
template <ConstAlphabet C>
Term<C> apply_spine(Term<C> head, std::span<const Term<C>> args);

template <ConstAlphabet C>
Term<C> apply_spine(Term<C> head, std::initializer_list<Term<C>> args) {
  return apply_spine(std::move(head),
                     std::span<const Term<C>>(args.begin(), args.size()));
}

// Implementations ----------------------------------------------------------

namespace detail {

template <ConstAlphabet C>
void collect_free(const Term<C>& m, std::vector<Var>& bound,
                  std::vector<Var>& out) {
  using K = typename Term<C>::Kind;
  switch (m.kind()) {
    case K::Const:
      return;
    case K::Var: {
      const Var x = m.var();
      for (Var b : bound)
        if (b == x) return;
      for (Var o : out)
        if (o == x) return;
      out.push_back(x);
      return;
    }
    case K::Abs:
      bound.push_back(m.var());
      collect_free(m.body(), bound, out);
      bound.pop_back();
      return;
    case K::App:
      collect_free(m.fun(), bound, out);
      collect_free(m.arg(), bound, out);
      return;
  }
}

template <ConstAlphabet C>
bool occurs_free_slow(Var x, const Term<C>& m) {
  using K = typename Term<C>::Kind;
  switch (m.kind()) {
    case K::Const:
      return false;
    case K::Var:
      return m.var() == x;
    case K::Abs:
      return m.var() != x && occurs_free_slow(x, m.body());
    case K::App:
      return occurs_free_slow(x, m.fun()) || occurs_free_slow(x, m.arg());
  }
  return false;
}

}  // namespace detail

template <ConstAlphabet C>
std::vector<Var> free_vars(const Term<C>& m) {
  std::vector<Var> out;
  if (m.free_bits() == 0 && !m.may_have_wide_free()) return out;
  std::vector<Var> bound;
  detail::collect_free(m, bound, out);
  return out;
}

template <ConstAlphabet C>
bool occurs_free(Var x, const Term<C>& m) {
  if (x.index < 64) return (m.free_bits() >> x.index) & 1U;
  return m.may_have_wide_free() && detail::occurs_free_slow(x, m);
}

template <ConstAlphabet C>
Spine<C> spine(const Term<C>& m) {
  Spine<C> s{m, {}};
  while (s.head.is_app()) {
    s.args.push_back(s.head.arg());
    Term<C> next = s.head.fun();
    s.head = std::move(next);
  }
  std::reverse(s.args.begin(), s.args.end());
  return s;
}

template <ConstAlphabet C>
Term<C> apply_spine(Term<C> head, std::span<const Term<C>> args) {
  for (const auto& a : args) head = Term<C>::app(std::move(head), a);
  return head;
}

}  // namespace lmk

template <lmk::ConstAlphabet C>
struct std::hash<lmk::Term<C>> {
  std::size_t operator()(const lmk::Term<C>& t) const noexcept {
    return t.hash();
  }
};
