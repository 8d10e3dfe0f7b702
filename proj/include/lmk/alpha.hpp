#pragma once

#include "lmk/syntax.hpp"

namespace lmk {

/// Decides the symmetric alpha-conversion relation.
///
/// Two abstractions are related when their bodies are related after both
/// binders are renamed to a common name, the first one free in neither
/// abstraction.
template <ConstAlphabet C>
bool alpha_eq(const Term<C>& m, const Term<C>& n);

}  // namespace lmk
