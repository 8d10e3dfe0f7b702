#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lmk/substitution.hpp"
#include "lmk/syntax.hpp"

namespace lmk {

enum class RuleTag : std::uint8_t { Beta, Rec0, RecS };

std::string_view tag_name(RuleTag tag) noexcept;

/// One move from a node to a child: the body of an abstraction, or the
/// function or argument side of an application.
enum class Move : std::uint8_t { IntoBody, IntoFun, IntoArg };

using Path = std::vector<Move>;

/// "B", "L" and "R" per move; the empty path prints as "ε".
std::string path_string(const Path& p);

template <ConstAlphabet C>
struct Contractum {
  Term<C> term;
  RuleTag tag;
};

/// A contraction relation given by its root contracta: every term the
/// argument contracts to when viewed as a redex at the root.
template <ConstAlphabet C>
struct RuleSet {
  std::string name;
  std::function<std::vector<Contractum<C>>(const Term<C>&)> contract;
};

/// (\x. b) n contracts to b[n/x].
template <ConstAlphabet C>
RuleSet<C> beta_rules();

/// Beta plus the two recursor rules:
///   Rec g h 0     contracts to g
///   Rec g h (S n) contracts to h n (Rec g h n)
RuleSet<TConst> systemt_rules();

template <ConstAlphabet C>
std::vector<Contractum<C>> root_contracta(const RuleSet<C>& rules,
                                          const Term<C>& m) {
  return rules.contract(m);
}

/// A single contraction inside `source` at `path`.
template <ConstAlphabet C>
struct Step {
  Term<C> source;
  Term<C> target;
  RuleTag tag;
  Path path;
};

/// Every one-step reduct of m under the compatible closure of `rules`.
/// Ordering: root contracta, then reducts inside the body or function
/// position, then reducts inside the argument position.
template <ConstAlphabet C>
std::vector<Step<C>> one_step_reducts(const RuleSet<C>& rules,
                                      const Term<C>& m);

/// Subterm at path; throws std::out_of_range when the path leaves the term.
template <ConstAlphabet C>
Term<C> subterm_at(const Term<C>& m, const Path& path);

/// m with the subterm at path replaced; throws std::out_of_range.
template <ConstAlphabet C>
Term<C> replace_at(const Term<C>& m, const Path& path, const Term<C>& n);

/// The step reassembles: source with its redex at path contracted by a rule
/// tagged `tag` gives target.
template <ConstAlphabet C>
bool step_is_sound(const RuleSet<C>& rules, const Step<C>& s);

/// Witness P with subst(source, sigma) reducing to P and P alpha-equivalent
/// to subst(target, sigma).
template <ConstAlphabet C>
std::optional<Term<C>> check_compat_subst(const RuleSet<C>& rules,
                                          const Step<C>& s,
                                          const Subst<C>& sigma);

/// Witness Q with m reducing to Q and Q alpha-equivalent to s.target, where
/// m is alpha-equivalent to s.source.
template <ConstAlphabet C>
std::optional<Term<C>> check_comm_alpha(const RuleSet<C>& rules,
                                        const Term<C>& m, const Step<C>& s);

/// The step does not make x free: x fresh in the source implies x fresh in
/// the target.
template <ConstAlphabet C>
bool check_preserves_fresh(Var x, const Step<C>& s) {
  return !is_fresh(x, s.source) || is_fresh(x, s.target);
}

/// A variable-headed spine has no root contractum.
template <ConstAlphabet C>
bool neutral_head_check(const RuleSet<C>& rules, const Term<C>& m);

}  // namespace lmk
