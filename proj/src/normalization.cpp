#include "lmk/normalization.hpp"

#include <algorithm>
#include <stdexcept>

#include "lmk/text.hpp"

namespace lmk {

std::string_view status_name(ExploreStatus s) noexcept {
  switch (s) {
    case ExploreStatus::Finite:
      return "finite";
    case ExploreStatus::CycleFound:
      return "cycle";
    case ExploreStatus::BudgetExhausted:
      return "budget-exhausted";
  }
  return "?";
}

template <ConstAlphabet C>
Normalization<C> normalize(const RuleSet<C>& rules, const Term<C>& m,
                           std::size_t fuel) {
  Normalization<C> out{m, {}, false};
  for (;;) {
    auto reducts = one_step_reducts(rules, out.term);
    if (reducts.empty()) return out;
    if (out.steps.size() == fuel) {
      out.fuel_exhausted = true;
      return out;
    }
    out.term = reducts.front().target;
    out.steps.push_back(std::move(reducts.front()));
  }
}

template <ConstAlphabet C>
std::optional<std::size_t> ReductionGraph<C>::find(const Term<C>& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

template <ConstAlphabet C>
std::size_t ReductionGraph<C>::height(std::size_t i) const {
  if (!finite())
    throw std::logic_error("height is only defined on finite graphs");
  return heights_.at(i);
}

template <ConstAlphabet C>
ReductionGraph<C> explore(const RuleSet<C>& rules, const Term<C>& m,
                          std::size_t node_budget) {
  enum : std::uint8_t { Fresh, Open, Done };

  ReductionGraph<C> g;
  std::vector<std::uint8_t> state;
  std::vector<std::vector<std::size_t>> out;  // edge indices per node

  auto add_node = [&](const Term<C>& t) -> std::optional<std::size_t> {
    if (auto it = g.index_.find(t); it != g.index_.end()) return it->second;
    if (g.nodes_.size() >= node_budget) return std::nullopt;
    const std::size_t id = g.nodes_.size();
    g.nodes_.push_back(t);
    g.index_.emplace(t, id);
    state.push_back(Fresh);
    out.emplace_back();
    return id;
  };

  auto expand = [&](std::size_t n) -> bool {
    state[n] = Open;
    const Term<C> source = g.nodes_[n];
    for (auto& s : one_step_reducts(rules, source)) {
      auto to = add_node(s.target);
      if (!to) return false;
      out[n].push_back(g.edges_.size());
      g.edges_.push_back({n, *to, s.tag, std::move(s.path)});
    }
    return true;
  };

  add_node(m);
  g.heights_.assign(1, 0);
  if (node_budget == 0 || !expand(0)) {
    g.status_ = ExploreStatus::BudgetExhausted;
    return g;
  }

  struct Frame {
    std::size_t node;
    std::size_t next = 0;
  };
  std::vector<Frame> stack{{0, 0}};

  while (!stack.empty()) {
    Frame& f = stack.back();
    const std::size_t n = f.node;
    if (f.next < out[n].size()) {
      const std::size_t t = g.edges_[out[n][f.next++]].to;
      if (state[t] == Open) {
        auto at = std::find_if(stack.begin(), stack.end(),
                               [t](const Frame& fr) { return fr.node == t; });
        for (auto it = at; it != stack.end(); ++it) g.cycle_.push_back(it->node);
        g.cycle_.push_back(t);
        g.status_ = ExploreStatus::CycleFound;
        return g;
      }
      if (state[t] == Fresh) {
        if (!expand(t)) {
          g.status_ = ExploreStatus::BudgetExhausted;
          return g;
        }
        stack.push_back({t, 0});
      }
      continue;
    }
    std::size_t h = 0;
    for (std::size_t e : out[n])
      h = std::max(h, 1 + g.heights_[g.edges_[e].to]);
    if (g.heights_.size() < g.nodes_.size()) g.heights_.resize(g.nodes_.size());
    g.heights_[n] = h;
    state[n] = Done;
    stack.pop_back();
  }
  g.heights_.resize(g.nodes_.size());
  g.status_ = ExploreStatus::Finite;
  return g;
}

template <ConstAlphabet C>
std::size_t height_v(const ReductionGraph<C>& g, const Term<C>& m) {
  if (!g.finite())
    throw std::logic_error("height is only defined on finite graphs");
  auto i = g.find(m);
  if (!i) throw std::out_of_range("term is not a node of the graph");
  return g.height(*i);
}

template <ConstAlphabet C>
std::size_t count_const(const Term<C>& m, C c) {
  switch (m.kind()) {
    case Term<C>::Kind::Const:
      return m.symbol() == c ? 1 : 0;
    case Term<C>::Kind::Var:
      return 0;
    case Term<C>::Kind::Abs:
      return count_const(m.body(), c);
    case Term<C>::Kind::App:
      return count_const(m.fun(), c) + count_const(m.arg(), c);
  }
  return 0;
}

Term<TConst> numeral(std::size_t n) {
  using T = Term<TConst>;
  static const T succ = T::constant(TConst::Succ);
  T t = T::constant(TConst::Zero);
  for (std::size_t i = 0; i < n; ++i) t = T::app(succ, std::move(t));
  return t;
}

std::optional<std::size_t> denumeral(const Term<TConst>& m) {
  std::size_t n = 0;
  const Term<TConst>* cur = &m;
  while (cur->is_app() && cur->fun().is_constant(TConst::Succ)) {
    ++n;
    cur = &cur->arg();
  }
  if (!cur->is_constant(TConst::Zero)) return std::nullopt;
  return n;
}

namespace {

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    if (ch == '\\' || ch == '"') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

template <ConstAlphabet C>
void write_dot(std::ostream& os, const ReductionGraph<C>& g) {
  os << "digraph reductions {\n";
  os << "  // status: " << status_name(g.status()) << "\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    os << "  n" << i << " [label=\"" << dot_escape(print_term(g.nodes()[i]))
       << "\\nv=";
    if (g.finite())
      os << g.height(i);
    else
      os << "?";
    os << "\"];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\""
       << tag_name(e.tag) << "@" << path_string(e.path) << "\"];\n";
  }
  os << "}\n";
}

#define LMK_INSTANTIATE(C)                                                    \
  template Normalization<C> normalize<C>(const RuleSet<C>&, const Term<C>&,   \
                                         std::size_t);                        \
  template class ReductionGraph<C>;                                           \
  template ReductionGraph<C> explore<C>(const RuleSet<C>&, const Term<C>&,    \
                                        std::size_t);                         \
  template std::size_t height_v<C>(const ReductionGraph<C>&, const Term<C>&); \
  template std::size_t count_const<C>(const Term<C>&, C);                     \
  template void write_dot<C>(std::ostream&, const ReductionGraph<C>&);

LMK_INSTANTIATE(EmptyConst)
LMK_INSTANTIATE(TConst)

#undef LMK_INSTANTIATE

}  // namespace lmk
