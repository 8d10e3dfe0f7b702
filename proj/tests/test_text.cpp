#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "lmk/harness.hpp"
#include "lmk/text.hpp"
#include "oracles.hpp"

using namespace lmk;
using T = Term<TConst>;
using P = Term<EmptyConst>;

namespace {
T v(std::uint32_t i) { return T::variable(Var(i)); }

template <class F>
ParseError parse_error(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, {}, "");
}
}  // namespace

TEST_CASE("terms parse per the grammar") {
  CHECK(parse_term<TConst>("\\v0. v0 v1") == T::abs(Var(0), T::app(v(0), v(1))));
  CHECK(parse_term<TConst>("Rec v0 v1 0") ==
        apply_spine(T::constant(TConst::Rec), {v(0), v(1), T::constant(TConst::Zero)}));
  CHECK(parse_term<TConst>("λv0. v0") == T::abs(Var(0), v(0)));
  CHECK(parse_term<TConst>("  ( ( v12 ) )  ") == v(12));
  CHECK(parse_term<TConst>("v0 (\\v1. v1) v2") ==
        T::app(T::app(v(0), T::abs(Var(1), v(1))), v(2)));
  CHECK(parse_term<TConst>("\\v0. \\v1. v0 v1 v0") ==
        T::abs(Var(0), T::abs(Var(1), T::app(T::app(v(0), v(1)), v(0)))));
}

TEST_CASE("term parse errors") {
  auto e = parse_error([] { parse_term<TConst>("v0 -> v1"); });
  CHECK(e.line() == 1);
  CHECK(e.column() == 4);

  e = parse_error([] { parse_term<TConst>("(v0"); });
  CHECK(std::find(e.expected().begin(), e.expected().end(), "')'") !=
        e.expected().end());

  parse_error([] { parse_term<TConst>(""); });
  parse_error([] { parse_term<TConst>("x"); });
  parse_error([] { parse_term<TConst>("v"); });
  parse_error([] { parse_term<TConst>("\\v0 v0"); });
  parse_error([] { parse_term<TConst>("v0 \\v1. v1"); });
  parse_error([] { parse_term<EmptyConst>("S 0"); });

  e = parse_error([] { parse_term<TConst>("v0\n  v1 )"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 6);
}

TEST_CASE("types") {
  const auto nat = SimpleType::base();
  CHECK(parse_type("nat -> nat -> nat") ==
        SimpleType::arrow(nat, SimpleType::arrow(nat, nat)));
  CHECK(parse_type("(nat -> nat) -> nat") ==
        SimpleType::arrow(SimpleType::arrow(nat, nat), nat));
  parse_error([] { parse_type("natt"); });
  parse_error([] { parse_type("nat ->"); });
  CHECK(print_type(parse_type("((nat -> nat) -> nat) -> nat")) ==
        "((nat -> nat) -> nat) -> nat");
}

TEST_CASE("contexts and substitutions") {
  const Context c = parse_context("v0:nat -> nat, v0:nat, v2:nat");
  CHECK(c.lookup(Var(0)) == std::optional{parse_type("nat -> nat")});
  CHECK(c.lookup(Var(2)) == std::optional{SimpleType::base()});
  CHECK(parse_context("").empty());
  parse_error([] { parse_context("v0 nat"); });

  const auto s = parse_subst<TConst>("v1:=S 0, v0:=\\v3. v3");
  CHECK(s(Var(1)) == parse_term<TConst>("S 0"));
  CHECK(s(Var(0)) == parse_term<TConst>("\\v3. v3"));
  CHECK(print_subst(s) == "[v0 := \\v3. v3, v1 := S 0]");
  CHECK(print_subst(identity<TConst>()) == "[]");
}

TEST_CASE("printing uses minimal parentheses") {
  const P m = P::abs(
      Var(1), P::abs(Var(2), P::abs(Var(3), parse_term<EmptyConst>("v3 v0 v2 v1"))));
  CHECK(print_term(m) == "\\v1. \\v2. \\v3. v3 v0 v2 v1");
  CHECK(print_term(parse_term<TConst>("(\\v0. v0) (\\v1. v1)")) ==
        "(\\v0. v0) (\\v1. v1)");
  CHECK(print_term(parse_term<TConst>("v0 (v1 v2)")) == "v0 (v1 v2)");
  CHECK(print_term(parse_term<TConst>("(v0 v1) v2")) == "v0 v1 v2");
  CHECK(print_term(parse_term<TConst>("S (S 0)")) == "S (S 0)");
}

TEST_CASE("print then parse is the identity on the corpus") {
  CorpusConfig cfg;
  cfg.max_term_size = 6;
  cfg.variable_pool = {Var(0), Var(1), Var(10)};
  std::size_t bad = 0, n = 0;
  for_each_term<TConst>(cfg, [&](const T& m) {
    ++n;
    const auto back = parse_term<TConst>(print_term(m));
    if (oracle::shape(back) != oracle::shape(m)) ++bad;
  });
  CHECK(n > 0);
  CHECK(bad == 0);
}
