#include "lmk/typing.hpp"

#include <algorithm>
#include <unordered_map>

namespace lmk {

SimpleType SimpleType::base() {
  static const SimpleType b(std::make_shared<const Node>());
  return b;
}

SimpleType SimpleType::arrow(SimpleType dom, SimpleType cod) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Arrow;
  n->ground = dom.is_ground() && cod.is_ground();
  n->dom = std::move(dom);
  n->cod = std::move(cod);
  return SimpleType(std::move(n));
}

SimpleType SimpleType::meta(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Meta;
  n->meta = index;
  n->ground = false;
  return SimpleType(std::move(n));
}

bool operator==(const SimpleType& a, const SimpleType& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case SimpleType::Kind::Base:
      return true;
    case SimpleType::Kind::Meta:
      return a.meta_index() == b.meta_index();
    case SimpleType::Kind::Arrow:
      return a.dom() == b.dom() && a.cod() == b.cod();
  }
  return false;
}

SimpleType arrows(std::initializer_list<SimpleType> parts) {
  std::vector<SimpleType> v(parts);
  if (v.empty()) throw std::invalid_argument("arrows: no types");
  SimpleType t = v.back();
  for (auto it = v.rbegin() + 1; it != v.rend(); ++it)
    t = SimpleType::arrow(*it, t);
  return t;
}

std::string to_string(const SimpleType& t) {
  switch (t.kind()) {
    case SimpleType::Kind::Base:
      return "nat";
    case SimpleType::Kind::Meta:
      return "?" + std::to_string(t.meta_index());
    case SimpleType::Kind::Arrow: {
      std::string d = to_string(t.dom());
      if (t.dom().is_arrow()) d = "(" + d + ")";
      return d + " -> " + to_string(t.cod());
    }
  }
  return "?";
}

SimpleType instantiate_metas(const SimpleType& t, const SimpleType& with) {
  if (t.is_ground()) return t;
  if (t.is_meta()) return with;
  return SimpleType::arrow(instantiate_metas(t.dom(), with),
                           instantiate_metas(t.cod(), with));
}

Context::Context(std::initializer_list<Binding> search_order)
    : reversed_(search_order.begin(), search_order.end()) {
  std::reverse(reversed_.begin(), reversed_.end());
}

Context Context::extend(Var x, SimpleType t) const {
  Context out = *this;
  out.reversed_.emplace_back(x, std::move(t));
  return out;
}

std::optional<SimpleType> Context::lookup(Var x) const {
  for (auto it = reversed_.rbegin(); it != reversed_.rend(); ++it)
    if (it->first == x) return it->second;
  return std::nullopt;
}

std::vector<Context::Binding> Context::bindings() const {
  return {reversed_.rbegin(), reversed_.rend()};
}

template <ConstAlphabet C>
void ConstSignature<C>::declare(C c, TypeScheme scheme) {
  for (auto& e : entries_) {
    if (e.first == c) {
      e.second = std::move(scheme);
      return;
    }
  }
  entries_.emplace_back(c, std::move(scheme));
}

template <ConstAlphabet C>
const TypeScheme& ConstSignature<C>::scheme_of(C c) const {
  for (const auto& e : entries_)
    if (e.first == c) return e.second;
  throw std::out_of_range("constant " + std::string(Alphabet<C>::spelling(c)) +
                          " has no declared type");
}

ConstSignature<TConst> systemt_signature() {
  const auto nat = SimpleType::base();
  const auto a = SimpleType::meta(0);
  ConstSignature<TConst> sig;
  sig.declare(TConst::Zero, {0, nat});
  sig.declare(TConst::Succ, {0, SimpleType::arrow(nat, nat)});
  sig.declare(TConst::Rec, {1, arrows({a, arrows({nat, a, a}), nat, a})});
  return sig;
}

template <>
ConstSignature<EmptyConst> default_signature<EmptyConst>() {
  return {};
}

template <>
ConstSignature<TConst> default_signature<TConst>() {
  return systemt_signature();
}

namespace {

class Unifier {
 public:
  SimpleType fresh() {
    bindings_.emplace_back();
    return SimpleType::meta(static_cast<std::uint32_t>(bindings_.size() - 1));
  }

  // Makes the metavariables of an externally built type known.
  void adopt(const SimpleType& t) {
    if (t.is_meta() && t.meta_index() >= bindings_.size())
      bindings_.resize(t.meta_index() + 1);
    if (t.is_arrow()) {
      adopt(t.dom());
      adopt(t.cod());
    }
  }

  SimpleType resolve(const SimpleType& t) const {
    SimpleType w = walk(t);
    if (!w.is_arrow() || w.is_ground()) return w;
    return SimpleType::arrow(resolve(w.dom()), resolve(w.cod()));
  }

  void unify(const SimpleType& a, const SimpleType& b) {
    SimpleType x = walk(a);
    SimpleType y = walk(b);
    if (x.is_meta() && y.is_meta() && x.meta_index() == y.meta_index()) return;
    if (x.is_meta()) return bind(x.meta_index(), y);
    if (y.is_meta()) return bind(y.meta_index(), x);
    if (x.is_base() && y.is_base()) return;
    if (x.is_arrow() && y.is_arrow()) {
      unify(x.dom(), y.dom());
      unify(x.cod(), y.cod());
      return;
    }
    throw TypeError(TypeError::Kind::UnificationClash,
                    "cannot unify " + to_string(resolve(x)) + " with " +
                        to_string(resolve(y)));
  }

 private:
  SimpleType walk(SimpleType t) const {
    while (t.is_meta() && bindings_[t.meta_index()]) {
      SimpleType next = *bindings_[t.meta_index()];
      t = std::move(next);
    }
    return t;
  }

  bool occurs(std::uint32_t m, const SimpleType& t) const {
    SimpleType w = walk(t);
    if (w.is_meta()) return w.meta_index() == m;
    if (w.is_arrow()) return occurs(m, w.dom()) || occurs(m, w.cod());
    return false;
  }

  void bind(std::uint32_t m, const SimpleType& t) {
    if (occurs(m, t))
      throw TypeError(TypeError::Kind::OccursCheck,
                      "occurs check: ?" + std::to_string(m) + " in " +
                          to_string(resolve(t)));
    bindings_[m] = t;
  }

  std::vector<std::optional<SimpleType>> bindings_;
};

SimpleType rename_schematic(const SimpleType& t,
                            const std::vector<SimpleType>& fresh) {
  if (t.is_ground()) return t;
  if (t.is_meta()) return fresh.at(t.meta_index());
  return SimpleType::arrow(rename_schematic(t.dom(), fresh),
                           rename_schematic(t.cod(), fresh));
}

template <ConstAlphabet C>
class Inferencer {
 public:
  Inferencer(const ConstSignature<C>& sig, const Context& ctx) : sig_(sig) {
    auto b = ctx.bindings();
    scope_.assign(b.rbegin(), b.rend());
    for (const auto& [x, t] : scope_) unifier_.adopt(t);
  }

  SimpleType run(const Term<C>& m, Derivation<C>* out) {
    using K = typename Term<C>::Kind;
    switch (m.kind()) {
      case K::Const: {
        const TypeScheme& s = sig_.scheme_of(m.symbol());
        std::vector<SimpleType> fresh;
        for (std::uint32_t i = 0; i < s.schematic; ++i)
          fresh.push_back(unifier_.fresh());
        SimpleType t = rename_schematic(s.body, fresh);
        if (out) *out = {Derivation<C>::Rule::Const, m, t, {}};
        return t;
      }
      case K::Var: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
          if (it->first == m.var()) {
            if (out) *out = {Derivation<C>::Rule::Var, m, it->second, {}};
            return it->second;
          }
        }
        throw TypeError(TypeError::Kind::UnboundVariable,
                        "unbound variable " + to_string(m.var()));
      }
      case K::Abs: {
        SimpleType dom = unifier_.fresh();
        scope_.emplace_back(m.var(), dom);
        Derivation<C>* inner = nullptr;
        if (out) {
          *out = {Derivation<C>::Rule::Abs, m, dom, {}};
          out->premises.resize(1, *out);
          inner = &out->premises[0];
        }
        SimpleType cod = run(m.body(), inner);
        scope_.pop_back();
        SimpleType t = SimpleType::arrow(std::move(dom), std::move(cod));
        if (out) out->type = t;
        return t;
      }
      case K::App: {
        Derivation<C>* fd = nullptr;
        Derivation<C>* ad = nullptr;
        if (out) {
          *out = {Derivation<C>::Rule::App, m, SimpleType::base(), {}};
          out->premises.resize(2, *out);
          fd = &out->premises[0];
          ad = &out->premises[1];
        }
        SimpleType f = run(m.fun(), fd);
        SimpleType a = run(m.arg(), ad);
        SimpleType r = unifier_.fresh();
        unifier_.unify(f, SimpleType::arrow(std::move(a), r));
        if (out) out->type = r;
        return r;
      }
    }
    throw std::logic_error("unreachable");
  }

  const Unifier& unifier() const { return unifier_; }

 private:
  const ConstSignature<C>& sig_;
  std::vector<Context::Binding> scope_;
  Unifier unifier_;
};

// Resolves metavariables and numbers the unsolved ones by first appearance.
class Renumbering {
 public:
  explicit Renumbering(const Unifier& u) : u_(u) {}

  SimpleType apply(const SimpleType& t) { return rename(u_.resolve(t)); }

 private:
  SimpleType rename(const SimpleType& t) {
    if (t.is_ground()) return t;
    if (t.is_meta()) {
      auto [it, added] = map_.try_emplace(
          t.meta_index(), static_cast<std::uint32_t>(map_.size()));
      return SimpleType::meta(it->second);
    }
    SimpleType d = rename(t.dom());
    return SimpleType::arrow(std::move(d), rename(t.cod()));
  }

  const Unifier& u_;
  std::unordered_map<std::uint32_t, std::uint32_t> map_;
};

template <ConstAlphabet C>
void renumber(Derivation<C>& d, Renumbering& r) {
  d.type = r.apply(d.type);
  for (auto& p : d.premises) renumber(p, r);
}

// One-way matching of a scheme body against a concrete type.
bool match_scheme(const SimpleType& pattern, const SimpleType& t,
                  std::vector<std::optional<SimpleType>>& binding) {
  switch (pattern.kind()) {
    case SimpleType::Kind::Base:
      return t.is_base();
    case SimpleType::Kind::Meta: {
      auto& slot = binding.at(pattern.meta_index());
      if (!slot) {
        slot = t;
        return true;
      }
      return *slot == t;
    }
    case SimpleType::Kind::Arrow:
      return t.is_arrow() && match_scheme(pattern.dom(), t.dom(), binding) &&
             match_scheme(pattern.cod(), t.cod(), binding);
  }
  return false;
}

}  // namespace

bool unifiable(const SimpleType& a, const SimpleType& b) {
  Unifier u;
  u.adopt(a);
  u.adopt(b);
  try {
    u.unify(a, b);
    return true;
  } catch (const TypeError&) {
    return false;
  }
}

template <ConstAlphabet C>
SimpleType infer(const ConstSignature<C>& sig, const Context& ctx,
                 const Term<C>& m) {
  Inferencer<C> inf(sig, ctx);
  SimpleType t = inf.run(m, nullptr);
  Renumbering r(inf.unifier());
  return r.apply(t);
}

template <ConstAlphabet C>
CheckResult check(const ConstSignature<C>& sig, const Context& ctx,
                  const Term<C>& m, const SimpleType& a) {
  try {
    SimpleType t = infer(sig, ctx, m);
    if (unifiable(t, a)) return {true, std::nullopt};
    return {false, TypeError(TypeError::Kind::UnificationClash,
                             "inferred " + to_string(t) +
                                 " has no instance " + to_string(a))};
  } catch (const TypeError& e) {
    return {false, e};
  }
}

template <ConstAlphabet C>
Derivation<C> infer_derivation(const ConstSignature<C>& sig,
                               const Context& ctx, const Term<C>& m) {
  Inferencer<C> inf(sig, ctx);
  Derivation<C> d{Derivation<C>::Rule::Const, m, SimpleType::base(), {}};
  inf.run(m, &d);
  Renumbering r(inf.unifier());
  renumber(d, r);
  return d;
}

template <ConstAlphabet C>
Derivation<C> instantiate_metas(const Derivation<C>& d,
                                const SimpleType& with) {
  Derivation<C> out{d.rule, d.term, instantiate_metas(d.type, with), {}};
  out.premises.reserve(d.premises.size());
  for (const auto& p : d.premises)
    out.premises.push_back(instantiate_metas(p, with));
  return out;
}

template <ConstAlphabet C>
bool verify_derivation(const ConstSignature<C>& sig, const Context& ctx,
                       const Derivation<C>& d) {
  using Rule = typename Derivation<C>::Rule;
  const Term<C>& m = d.term;
  switch (d.rule) {
    case Rule::Const: {
      if (!m.is_const() || !d.premises.empty()) return false;
      const TypeScheme& s = sig.scheme_of(m.symbol());
      std::vector<std::optional<SimpleType>> binding(s.schematic);
      return match_scheme(s.body, d.type, binding);
    }
    case Rule::Var: {
      if (!m.is_var() || !d.premises.empty()) return false;
      auto t = ctx.lookup(m.var());
      return t && *t == d.type;
    }
    case Rule::Abs: {
      if (!m.is_abs() || d.premises.size() != 1 || !d.type.is_arrow())
        return false;
      const auto& body = d.premises[0];
      return body.term == m.body() && body.type == d.type.cod() &&
             verify_derivation(sig, ctx.extend(m.var(), d.type.dom()), body);
    }
    case Rule::App: {
      if (!m.is_app() || d.premises.size() != 2) return false;
      const auto& f = d.premises[0];
      const auto& a = d.premises[1];
      return f.term == m.fun() && a.term == m.arg() &&
             f.type == SimpleType::arrow(a.type, d.type) &&
             verify_derivation(sig, ctx, f) && verify_derivation(sig, ctx, a);
    }
  }
  return false;
}

#define LMK_INSTANTIATE(C)                                                     \
  template class ConstSignature<C>;                                            \
  template SimpleType infer<C>(const ConstSignature<C>&, const Context&,       \
                               const Term<C>&);                                \
  template CheckResult check<C>(const ConstSignature<C>&, const Context&,      \
                                const Term<C>&, const SimpleType&);            \
  template Derivation<C> infer_derivation<C>(const ConstSignature<C>&,         \
                                             const Context&, const Term<C>&);  \
  template Derivation<C> instantiate_metas<C>(const Derivation<C>&,            \
                                              const SimpleType&);              \
  template bool verify_derivation<C>(const ConstSignature<C>&, const Context&, \
                                     const Derivation<C>&);

LMK_INSTANTIATE(EmptyConst)
LMK_INSTANTIATE(TConst)

#undef LMK_INSTANTIATE

}  // namespace lmk
