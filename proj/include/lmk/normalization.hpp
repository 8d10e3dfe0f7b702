#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "lmk/reduction.hpp"
#include "lmk/syntax.hpp"

namespace lmk {

template <ConstAlphabet C>
struct Normalization {
  Term<C> term;  // the normal form, or the last term reached
  std::vector<Step<C>> steps;
  bool fuel_exhausted = false;
};

/// Contracts the first one-step reduct until none is left, taking at most
/// `fuel` steps.
template <ConstAlphabet C>
Normalization<C> normalize(const RuleSet<C>& rules, const Term<C>& m,
                           std::size_t fuel);

enum class ExploreStatus : std::uint8_t { Finite, CycleFound, BudgetExhausted };

std::string_view status_name(ExploreStatus s) noexcept;

/// All many-step reducts of a root term. Nodes are distinct up to syntactic
/// equality; node 0 is the root.
template <ConstAlphabet C>
class ReductionGraph {
 public:
  struct Edge {
    std::size_t from;
    std::size_t to;
    RuleTag tag;
    Path path;
  };

  ExploreStatus status() const noexcept { return status_; }
  bool finite() const noexcept { return status_ == ExploreStatus::Finite; }

  const Term<C>& root() const { return nodes_.front(); }
  const std::vector<Term<C>>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<std::size_t> find(const Term<C>& m) const;

  /// Longest reduction length from node i; requires a finite graph.
  std::size_t height(std::size_t i) const;

  /// For CycleFound: node indices n0 -> n1 -> ... -> n0 (first repeated at
  /// the end).
  const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

  /// Rebuilds a Step from an edge.
  Step<C> step(const Edge& e) const {
    return {nodes_[e.from], nodes_[e.to], e.tag, e.path};
  }

 private:
  template <ConstAlphabet D>
  friend ReductionGraph<D> explore(const RuleSet<D>&, const Term<D>&,
                                   std::size_t);

  ExploreStatus status_ = ExploreStatus::BudgetExhausted;
  std::vector<Term<C>> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> heights_;
  std::vector<std::size_t> cycle_;
  std::unordered_map<Term<C>, std::size_t> index_;
};

/// Exhaustive, memoised exploration of the reducts of m. Stops at the first
/// cycle (which refutes strong normalization) or once the graph would
/// exceed node_budget nodes.
template <ConstAlphabet C>
ReductionGraph<C> explore(const RuleSet<C>& rules, const Term<C>& m,
                          std::size_t node_budget);

/// Longest reduction length from m. Throws std::logic_error unless g is
/// finite, std::out_of_range when m is not a node of g.
template <ConstAlphabet C>
std::size_t height_v(const ReductionGraph<C>& g, const Term<C>& m);

template <ConstAlphabet C>
std::size_t count_const(const Term<C>& m, C c);

inline std::size_t count_succ(const Term<TConst>& m) {
  return count_const(m, TConst::Succ);
}

/// S (S ... (S 0)).
Term<TConst> numeral(std::size_t n);

std::optional<std::size_t> denumeral(const Term<TConst>& m);

/// Graphviz rendering: nodes labelled with the printed term and its height,
/// edges labelled "tag@path".
template <ConstAlphabet C>
void write_dot(std::ostream& os, const ReductionGraph<C>& g);

}  // namespace lmk
