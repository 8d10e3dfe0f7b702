#include "lmk/substitution.hpp"

#include <algorithm>
#include <bit>

namespace lmk {

template <ConstAlphabet C>
const Term<C>* Subst<C>::find_override(Var x) const noexcept {
  auto it = std::lower_bound(
      overrides_.begin(), overrides_.end(), x,
      [](const Binding& b, Var v) { return b.first < v; });
  if (it == overrides_.end() || it->first != x) return nullptr;
  return &it->second;
}

template <ConstAlphabet C>
Term<C> Subst<C>::operator()(Var x) const {
  if (const Term<C>* t = find_override(x)) return *t;
  return Term<C>::variable(x);
}

template <ConstAlphabet C>
Subst<C> Subst<C>::update(Var x, Term<C> m) const {
  Subst out;
  out.overrides_.reserve(overrides_.size() + 1);
  auto it = std::lower_bound(
      overrides_.begin(), overrides_.end(), x,
      [](const Binding& b, Var v) { return b.first < v; });
  out.overrides_.insert(out.overrides_.end(), overrides_.begin(), it);
  out.overrides_.emplace_back(x, std::move(m));
  if (it != overrides_.end() && it->first == x) ++it;
  out.overrides_.insert(out.overrides_.end(), it, overrides_.end());
  return out;
}

Var fresh_not_in(std::span<const Var> xs) {
  std::vector<bool> taken(xs.size() + 1, false);
  for (Var x : xs)
    if (x.index < taken.size()) taken[x.index] = true;
  std::uint32_t i = 0;
  while (taken[i]) ++i;
  return Var(i);
}

namespace {

template <ConstAlphabet C>
bool image_free_bits(const Subst<C>& sigma, Var y, std::uint64_t& bits) {
  if (const Term<C>* t = sigma.find_override(y)) {
    if (t->may_have_wide_free()) return false;
    bits |= t->free_bits();
    return true;
  }
  if (y.index >= 64) return false;
  bits |= std::uint64_t{1} << y.index;
  return true;
}

}  // namespace

template <ConstAlphabet C>
Var choose_fresh(const Subst<C>& sigma, const Term<C>& m) {
  // Every name involved is below 64: the avoid list fits in a bitmap.
  if (!m.may_have_wide_free()) {
    std::uint64_t avoid = 0;
    bool exact = true;
    for (std::uint64_t bits = m.free_bits(); bits != 0 && exact;
         bits &= bits - 1) {
      exact = image_free_bits(
          sigma, Var(static_cast<std::uint32_t>(std::countr_zero(bits))),
          avoid);
    }
    if (exact && avoid != ~std::uint64_t{0})
      return Var(static_cast<std::uint32_t>(std::countr_one(avoid)));
  }
  std::vector<Var> avoid;
  for (Var y : free_vars(m)) {
    auto fv = free_vars(sigma(y));
    avoid.insert(avoid.end(), fv.begin(), fv.end());
  }
  return fresh_not_in(avoid);
}

template <ConstAlphabet C>
bool restriction_fresh(Var y, const Subst<C>& sigma, const Term<C>& m) {
  for (Var x : free_vars(m))
    if (!is_fresh(y, sigma(x))) return false;
  return true;
}

template <ConstAlphabet C>
Term<C> subst(const Term<C>& m, const Subst<C>& sigma) {
  using K = typename Term<C>::Kind;
  switch (m.kind()) {
    case K::Const:
      return m;
    case K::Var:
      return sigma(m.var());
    case K::App:
      return Term<C>::app(subst(m.fun(), sigma), subst(m.arg(), sigma));
    case K::Abs: {
      const Var y = choose_fresh(sigma, m);
      return Term<C>::abs(
          y, subst(m.body(), sigma.update(m.var(), Term<C>::variable(y))));
    }
  }
  return m;
}

#define LMK_INSTANTIATE(C)                                                 \
  template class Subst<C>;                                                 \
  template Var choose_fresh<C>(const Subst<C>&, const Term<C>&);           \
  template bool restriction_fresh<C>(Var, const Subst<C>&, const Term<C>&); \
  template Term<C> subst<C>(const Term<C>&, const Subst<C>&);

LMK_INSTANTIATE(EmptyConst)
LMK_INSTANTIATE(TConst)

#undef LMK_INSTANTIATE

}  // namespace lmk
