#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unordered_map>

#include "doctest.h"
#include "lmk/alpha.hpp"
#include "lmk/harness.hpp"
#include "lmk/text.hpp"
#include "oracles.hpp"

using namespace lmk;
using T = Term<TConst>;

namespace {
T t(std::string_view s) { return parse_term<TConst>(s); }
}  // namespace

TEST_CASE("alpha_eq examples") {
  CHECK(alpha_eq(t("\\v0. v0"), t("\\v1. v1")));
  CHECK_FALSE(alpha_eq(t("\\v0. v1"), t("\\v1. v1")));
  CHECK(alpha_eq(t("\\v0. \\v1. v0 v1"), t("\\v1. \\v0. v1 v0")));
  CHECK_FALSE(alpha_eq(t("\\v0. \\v1. v0 v1"), t("\\v0. \\v1. v1 v0")));
  CHECK(alpha_eq(t("\\v0. \\v0. v0"), t("\\v1. \\v0. v0")));
  CHECK_FALSE(alpha_eq(t("\\v0. \\v0. v0"), t("\\v0. \\v1. v0")));
  CHECK_FALSE(alpha_eq(t("v0"), t("v1")));
  CHECK_FALSE(alpha_eq(t("0"), t("S")));
  CHECK_FALSE(alpha_eq(t("\\v0. v0"), t("v0 v0")));
  CHECK(alpha_eq(t("Rec 0 (\\v0. \\v1. S v1)"), t("Rec 0 (\\v2. \\v0. S v0)")));
}

TEST_CASE("binders with names far above the pool") {
  CHECK(alpha_eq(t("\\v0. v1"), t("\\v90. v1")));
  CHECK_FALSE(alpha_eq(t("\\v0. v90"), t("\\v90. v90")));
}

TEST_CASE("alpha_eq decides the nameless equality on the corpus") {
  CorpusConfig cfg;
  cfg.max_term_size = 5;
  const auto corpus = enumerate_terms<TConst>(cfg);
  std::unordered_map<std::string, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    classes[oracle::debruijn(corpus[i])].push_back(i);

  std::size_t bad = 0, cases = 0;
  // All pairs inside each class, and each term against the next term in
  // enumeration order.
  for (const auto& [key, ids] : classes)
    for (std::size_t a : ids)
      for (std::size_t b : ids) {
        ++cases;
        if (!alpha_eq(corpus[a], corpus[b])) ++bad;
      }
  for (std::size_t i = 0; i + 1 < corpus.size(); ++i) {
    ++cases;
    if (alpha_eq(corpus[i], corpus[i + 1]) !=
        oracle::alpha(corpus[i], corpus[i + 1]))
      ++bad;
  }
  CHECK(cases > corpus.size());
  CHECK(bad == 0);
}

TEST_CASE("alpha_eq is an equivalence: reflexive, symmetric, transitive") {
  CorpusConfig cfg;
  cfg.max_term_size = 4;
  const auto corpus = enumerate_terms<TConst>(cfg);
  std::size_t bad = 0;
  for (const auto& a : corpus) {
    if (!alpha_eq(a, a)) ++bad;
    for (const auto& b : corpus) {
      if (a.size() != b.size()) continue;
      const bool ab = alpha_eq(a, b);
      if (ab != alpha_eq(b, a)) ++bad;
      if (ab && free_vars(a).size() != free_vars(b).size()) ++bad;
    }
  }
  CHECK(bad == 0);

  const auto vs = alpha_variants(t("\\v0. \\v1. v1 (\\v0. v0 v2)"));
  REQUIRE(vs.size() == 2);
  CHECK(alpha_eq(vs[0], vs[1]));
  CHECK(alpha_eq(t("\\v0. \\v1. v1 (\\v0. v0 v2)"), vs[1]));
}
