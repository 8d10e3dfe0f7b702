#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lmk/syntax.hpp"

namespace lmk {

/// Multiple substitution: a total map from variables to terms that is the
/// identity everywhere except on finitely many overrides.
///
/// An override x := VarRef(x) is allowed and behaves exactly like no override.
template <ConstAlphabet C>
class Subst {
 public:
  using Binding = std::pair<Var, Term<C>>;

  Subst() = default;

  /// The image of x.
  Term<C> operator()(Var x) const;

  /// The substitution that maps x to m and every other y to (*this)(y).
  Subst update(Var x, Term<C> m) const;

  /// Overrides sorted by variable.
  std::span<const Binding> overrides() const noexcept { return overrides_; }

  /// The override for x, or nullptr when x maps to itself by default.
  const Term<C>* find_override(Var x) const noexcept;

 private:
  std::vector<Binding> overrides_;
};

template <ConstAlphabet C>
Subst<C> identity() {
  return Subst<C>{};
}

template <ConstAlphabet C>
Subst<C> update(const Subst<C>& sigma, Var x, Term<C> m) {
  return sigma.update(x, std::move(m));
}

template <ConstAlphabet C>
Term<C> apply_var(const Subst<C>& sigma, Var x) {
  return sigma(x);
}

/// Smallest variable not listed in xs.
Var fresh_not_in(std::span<const Var> xs);

/// The fresh-name choice for the restriction (sigma, m): the first name that
/// does not occur free in any image sigma(y) for y free in m.
template <ConstAlphabet C>
Var choose_fresh(const Subst<C>& sigma, const Term<C>& m);

/// y is fresh in sigma(x) for every x free in m.
template <ConstAlphabet C>
bool restriction_fresh(Var y, const Subst<C>& sigma, const Term<C>& m);

/// Capture-avoiding action of sigma on m. Every binder is renamed to the
/// name that choose_fresh picks for it, so even m . identity can differ from m.
template <ConstAlphabet C>
Term<C> subst(const Term<C>& m, const Subst<C>& sigma);

/// m[n/x].
template <ConstAlphabet C>
Term<C> subst1(const Term<C>& m, const Term<C>& n, Var x) {
  return subst(m, identity<C>().update(x, n));
}

/// True when both substitutions send every listed variable to the same term.
template <ConstAlphabet C>
bool agree_on(const Subst<C>& a, const Subst<C>& b, std::span<const Var> xs) {
  for (Var x : xs)
    if (!(a(x) == b(x))) return false;
  return true;
}

}  // namespace lmk
