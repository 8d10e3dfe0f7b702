#include "lmk/reduction.hpp"

#include <stdexcept>

#include "lmk/alpha.hpp"

namespace lmk {

std::string_view tag_name(RuleTag tag) noexcept {
  switch (tag) {
    case RuleTag::Beta:
      return "beta";
    case RuleTag::Rec0:
      return "rec0";
    case RuleTag::RecS:
      return "recS";
  }
  return "?";
}

std::string path_string(const Path& p) {
  if (p.empty()) return "ε";
  std::string s;
  s.reserve(p.size());
  for (Move m : p) {
    switch (m) {
      case Move::IntoBody:
        s += 'B';
        break;
      case Move::IntoFun:
        s += 'L';
        break;
      case Move::IntoArg:
        s += 'R';
        break;
    }
  }
  return s;
}

namespace {

template <ConstAlphabet C>
void contract_beta(const Term<C>& m, std::vector<Contractum<C>>& out) {
  if (m.is_app() && m.fun().is_abs()) {
    const Term<C>& lam = m.fun();
    out.push_back({subst1(lam.body(), m.arg(), lam.var()), RuleTag::Beta});
  }
}

template <ConstAlphabet C>
struct Partial {
  Term<C> target;
  RuleTag tag;
  Path path;
};

// Reducts of m with paths relative to m.
template <ConstAlphabet C>
void collect(const RuleSet<C>& rules, const Term<C>& m,
             std::vector<Partial<C>>& out) {
  for (auto& c : rules.contract(m))
    out.push_back({std::move(c.term), c.tag, {}});
  if (m.is_abs()) {
    std::vector<Partial<C>> inner;
    collect(rules, m.body(), inner);
    for (auto& p : inner) {
      p.path.insert(p.path.begin(), Move::IntoBody);
      out.push_back({Term<C>::abs(m.var(), std::move(p.target)), p.tag,
                     std::move(p.path)});
    }
  } else if (m.is_app()) {
    std::vector<Partial<C>> inner;
    collect(rules, m.fun(), inner);
    for (auto& p : inner) {
      p.path.insert(p.path.begin(), Move::IntoFun);
      out.push_back({Term<C>::app(std::move(p.target), m.arg()), p.tag,
                     std::move(p.path)});
    }
    inner.clear();
    collect(rules, m.arg(), inner);
    for (auto& p : inner) {
      p.path.insert(p.path.begin(), Move::IntoArg);
      out.push_back({Term<C>::app(m.fun(), std::move(p.target)), p.tag,
                     std::move(p.path)});
    }
  }
}

}  // namespace

template <ConstAlphabet C>
RuleSet<C> beta_rules() {
  return {"beta", [](const Term<C>& m) {
            std::vector<Contractum<C>> out;
            contract_beta(m, out);
            return out;
          }};
}

RuleSet<TConst> systemt_rules() {
  using T = Term<TConst>;
  return {"systemt", [](const T& m) {
            std::vector<Contractum<TConst>> out;
            contract_beta(m, out);
            // Rec g h n
            if (m.is_app() && m.fun().is_app() && m.fun().fun().is_app() &&
                m.fun().fun().fun().is_constant(TConst::Rec)) {
              const T& rec = m.fun().fun().fun();
              const T& g = m.fun().fun().arg();
              const T& h = m.fun().arg();
              const T& n = m.arg();
              if (n.is_constant(TConst::Zero)) {
                out.push_back({g, RuleTag::Rec0});
              } else if (n.is_app() && n.fun().is_constant(TConst::Succ)) {
                const T& pred = n.arg();
                T again = apply_spine(rec, {g, h, pred});
                out.push_back(
                    {T::app(T::app(h, pred), std::move(again)), RuleTag::RecS});
              }
            }
            return out;
          }};
}

template <ConstAlphabet C>
std::vector<Step<C>> one_step_reducts(const RuleSet<C>& rules,
                                      const Term<C>& m) {
  std::vector<Partial<C>> parts;
  collect(rules, m, parts);
  std::vector<Step<C>> steps;
  steps.reserve(parts.size());
  for (auto& p : parts)
    steps.push_back({m, std::move(p.target), p.tag, std::move(p.path)});
  return steps;
}

template <ConstAlphabet C>
Term<C> subterm_at(const Term<C>& m, const Path& path) {
  Term<C> cur = m;
  for (Move mv : path) {
    if (mv == Move::IntoBody && cur.is_abs()) {
      Term<C> next = cur.body();
      cur = std::move(next);
    } else if (mv == Move::IntoFun && cur.is_app()) {
      Term<C> next = cur.fun();
      cur = std::move(next);
    } else if (mv == Move::IntoArg && cur.is_app()) {
      Term<C> next = cur.arg();
      cur = std::move(next);
    } else {
      throw std::out_of_range("path " + path_string(path) +
                              " does not address a subterm");
    }
  }
  return cur;
}

namespace {

template <ConstAlphabet C>
Term<C> replace_from(const Term<C>& m, const Path& path, std::size_t i,
                     const Term<C>& n) {
  if (i == path.size()) return n;
  switch (path[i]) {
    case Move::IntoBody:
      if (m.is_abs())
        return Term<C>::abs(m.var(), replace_from(m.body(), path, i + 1, n));
      break;
    case Move::IntoFun:
      if (m.is_app())
        return Term<C>::app(replace_from(m.fun(), path, i + 1, n), m.arg());
      break;
    case Move::IntoArg:
      if (m.is_app())
        return Term<C>::app(m.fun(), replace_from(m.arg(), path, i + 1, n));
      break;
  }
  throw std::out_of_range("path " + path_string(path) +
                          " does not address a subterm");
}

}  // namespace

template <ConstAlphabet C>
Term<C> replace_at(const Term<C>& m, const Path& path, const Term<C>& n) {
  return replace_from(m, path, 0, n);
}

template <ConstAlphabet C>
bool step_is_sound(const RuleSet<C>& rules, const Step<C>& s) {
  Term<C> redex = s.source;
  try {
    redex = subterm_at(s.source, s.path);
  } catch (const std::out_of_range&) {
    return false;
  }
  for (const auto& c : rules.contract(redex))
    if (c.tag == s.tag && replace_at(s.source, s.path, c.term) == s.target)
      return true;
  return false;
}

template <ConstAlphabet C>
std::optional<Term<C>> check_compat_subst(const RuleSet<C>& rules,
                                          const Step<C>& s,
                                          const Subst<C>& sigma) {
  const Term<C> expected = subst(s.target, sigma);
  for (auto& r : one_step_reducts(rules, subst(s.source, sigma)))
    if (alpha_eq(r.target, expected)) return std::move(r.target);
  return std::nullopt;
}

template <ConstAlphabet C>
std::optional<Term<C>> check_comm_alpha(const RuleSet<C>& rules,
                                        const Term<C>& m, const Step<C>& s) {
  for (auto& r : one_step_reducts(rules, m))
    if (alpha_eq(r.target, s.target)) return std::move(r.target);
  return std::nullopt;
}

template <ConstAlphabet C>
bool neutral_head_check(const RuleSet<C>& rules, const Term<C>& m) {
  const Term<C>* head = &m;
  while (head->is_app()) head = &head->fun();
  return !head->is_var() || rules.contract(m).empty();
}

#define LMK_INSTANTIATE(C)                                                    \
  template RuleSet<C> beta_rules<C>();                                        \
  template std::vector<Step<C>> one_step_reducts<C>(const RuleSet<C>&,        \
                                                    const Term<C>&);          \
  template Term<C> subterm_at<C>(const Term<C>&, const Path&);                \
  template Term<C> replace_at<C>(const Term<C>&, const Path&, const Term<C>&); \
  template bool step_is_sound<C>(const RuleSet<C>&, const Step<C>&);          \
  template std::optional<Term<C>> check_compat_subst<C>(                      \
      const RuleSet<C>&, const Step<C>&, const Subst<C>&);                    \
  template std::optional<Term<C>> check_comm_alpha<C>(                        \
      const RuleSet<C>&, const Term<C>&, const Step<C>&);                     \
  template bool neutral_head_check<C>(const RuleSet<C>&, const Term<C>&);

LMK_INSTANTIATE(EmptyConst)
LMK_INSTANTIATE(TConst)

#undef LMK_INSTANTIATE

}  // namespace lmk
