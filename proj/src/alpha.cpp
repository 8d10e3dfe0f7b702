#include "lmk/alpha.hpp"

#include "lmk/substitution.hpp"

namespace lmk {

template <ConstAlphabet C>
bool alpha_eq(const Term<C>& m, const Term<C>& n) {
  using K = typename Term<C>::Kind;
  if (m.kind() != n.kind()) return false;
  switch (m.kind()) {
    case K::Const:
      return m.symbol() == n.symbol();
    case K::Var:
      return m.var() == n.var();
    case K::App:
      return alpha_eq(m.fun(), n.fun()) && alpha_eq(m.arg(), n.arg());
    case K::Abs: {
      auto avoid = free_vars(m);
      auto rhs = free_vars(n);
      avoid.insert(avoid.end(), rhs.begin(), rhs.end());
      const auto y = Term<C>::variable(fresh_not_in(avoid));
      return alpha_eq(subst1(m.body(), y, m.var()),
                      subst1(n.body(), y, n.var()));
    }
  }
  return false;
}

template bool alpha_eq<EmptyConst>(const Term<EmptyConst>&,
                                   const Term<EmptyConst>&);
template bool alpha_eq<TConst>(const Term<TConst>&, const Term<TConst>&);

}  // namespace lmk
