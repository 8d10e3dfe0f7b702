#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "lmk/harness.hpp"
#include "lmk/normalization.hpp"
#include "lmk/text.hpp"
#include "oracles.hpp"

using namespace lmk;
using T = Term<TConst>;

namespace {
T t(std::string_view s) { return parse_term<TConst>(s); }
const auto beta = beta_rules<TConst>();
const auto sys = systemt_rules();
const T omega_t = omega<TConst>();
}  // namespace

TEST_CASE("numerals") {
  CHECK(numeral(0) == t("0"));
  CHECK(numeral(1) == t("S 0"));
  CHECK(print_term(numeral(2)) == "S (S 0)");
  for (std::size_t n = 0; n <= 10; ++n) {
    CHECK(count_succ(numeral(n)) == n);
    CHECK(denumeral(numeral(n)) == std::optional{n});
  }
  CHECK_FALSE(denumeral(t("v0")).has_value());
  CHECK_FALSE(denumeral(t("S")).has_value());
  CHECK_FALSE(denumeral(t("S (S v0)")).has_value());
  CHECK(count_succ(t("\\v0. S v0")) == 1);
  CHECK(count_succ(t("0")) == 0);
}

TEST_CASE("normalize") {
  const auto r = normalize(sys, t("Rec 0 (\\v0. \\v1. S v1) (S (S 0))"), 100);
  CHECK_FALSE(r.fuel_exhausted);
  CHECK(r.term == numeral(2));
  CHECK(r.steps.size() == 7);

  const auto id = normalize(beta, t("(\\v0. v0) 0"), 10);
  CHECK(id.term == t("0"));
  REQUIRE(id.steps.size() == 1);
  CHECK(id.steps[0].tag == RuleTag::Beta);

  const auto w = normalize(beta, omega_t, 1000);
  CHECK(w.fuel_exhausted);
  CHECK(w.steps.size() == 1000);
  CHECK(w.term == omega_t);

  const auto zero = normalize(sys, t("S (S v0)"), 0);
  CHECK_FALSE(zero.fuel_exhausted);
  CHECK(normalize(sys, t("(\\v0. v0) 0"), 0).fuel_exhausted);
}

TEST_CASE("explore statuses") {
  auto g = explore(sys, t("0"), 10);
  CHECK(g.status() == ExploreStatus::Finite);
  CHECK(g.nodes().size() == 1);
  CHECK(g.height(0) == 0);

  g = explore(beta, omega_t, 10);
  CHECK(g.status() == ExploreStatus::CycleFound);
  CHECK(g.cycle() == std::vector<std::size_t>{0, 0});
  CHECK_THROWS_AS(g.height(0), std::logic_error);

  g = explore(beta, t("(\\v0. v0) 0"), 10);
  CHECK(g.finite());
  CHECK(g.height(0) == 1);
  CHECK(height_v(g, t("(\\v0. v0) 0")) == 1);
  CHECK(height_v(g, t("0")) == 0);
  CHECK_THROWS_AS(height_v(g, t("S")), std::out_of_range);

  // Three redexes in a row need more than three nodes.
  const T big = t("(\\v0. v0) ((\\v0. v0) ((\\v0. v0) 0))");
  CHECK(explore(beta, big, 3).status() == ExploreStatus::BudgetExhausted);
  CHECK(explore(beta, big, 0).status() == ExploreStatus::BudgetExhausted);
  CHECK(explore(beta, big, 100).height(0) == 3);
}

TEST_CASE("reported cycle follows graph edges") {
  // Reduces to omega, which then loops.
  const T m = t("(\\v1. v1 v1) (\\v0. v0 v0)");
  const auto g = explore(beta, m, 100);
  REQUIRE(g.status() == ExploreStatus::CycleFound);
  const auto& c = g.cycle();
  REQUIRE(c.size() >= 2);
  CHECK(c.front() == c.back());
  CHECK(g.nodes()[c.front()] == omega_t);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    bool edge = false;
    for (const auto& e : g.edges()) edge |= e.from == c[i] && e.to == c[i + 1];
    CHECK(edge);
  }
}

TEST_CASE("heights match plain recursion on typed closed terms") {
  CorpusConfig cfg;
  cfg.max_term_size = 6;
  std::size_t n = 0, bad = 0;
  for_each_typed_closed<TConst>(cfg, [&](const T& m, const SimpleType&) {
    const auto g = explore(sys, m, 100000);
    ++n;
    if (!g.finite() || g.height(0) != oracle::longest(sys, m)) ++bad;
    for (std::size_t i = 0; i < g.nodes().size(); ++i)
      if (g.height(i) != oracle::longest(sys, g.nodes()[i])) ++bad;
  });
  CHECK(n > 0);
  CHECK(bad == 0);
}

TEST_CASE("successor does not change the height") {
  for (const char* s : {"0", "(\\v0. v0) 0", "Rec 0 (\\v0. \\v1. S v1) (S 0)",
                        "(\\v0. S v0) ((\\v1. v1) 0)"}) {
    const T n = t(s);
    const T sn = T::app(T::constant(TConst::Succ), n);
    CHECK(explore(sys, n, 1000).height(0) == explore(sys, sn, 1000).height(0));
  }
}

TEST_CASE("graph export") {
  const auto g = explore(sys, t("S ((\\v0. v0) 0)"), 10);
  std::ostringstream os;
  write_dot(os, g);
  CHECK(os.str() ==
        "digraph reductions {\n"
        "  // status: finite\n"
        "  node [shape=box, fontname=\"monospace\"];\n"
        "  n0 [label=\"S ((\\\\v0. v0) 0)\\nv=1\"];\n"
        "  n1 [label=\"S 0\\nv=0\"];\n"
        "  n0 -> n1 [label=\"beta@R\"];\n"
        "}\n");
  std::ostringstream cyc;
  write_dot(cyc, explore(beta, omega_t, 10));
  CHECK(cyc.str().find("// status: cycle") != std::string::npos);
  CHECK(cyc.str().find("v=?") != std::string::npos);
  CHECK(cyc.str().find("n0 -> n0 [label=\"beta@ε\"]") != std::string::npos);
}

TEST_CASE("every graph edge is a real step") {
  const auto g = explore(sys, t("Rec ((\\v0. v0) 0) (\\v0. \\v1. S v1) (S (S 0))"),
                         10000);
  REQUIRE(g.finite());
  for (const auto& e : g.edges()) {
    const auto s = g.step(e);
    CHECK(step_is_sound(sys, s));
    CHECK(g.height(e.from) > g.height(e.to));
  }
}
