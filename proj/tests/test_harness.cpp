#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lmk/alpha.hpp"
#include "lmk/harness.hpp"
#include "lmk/normalization.hpp"
#include "lmk/typing.hpp"
#include "lmk/text.hpp"
#include "oracles.hpp"

using namespace lmk;
using T = Term<TConst>;
using P = Term<EmptyConst>;

namespace {
CorpusConfig small(std::size_t size) {
  CorpusConfig cfg;
  cfg.max_term_size = size;
  cfg.substitution_pool_size = 12;
  return cfg;
}

std::string strip_millis(const SuiteReport& r) {
  std::ostringstream os;
  for (const auto& l : r.lemmas) {
    os << l.name << " " << l.cases << " " << l.failure_count;
    for (const auto& f : l.failures) os << " " << f.case_index << f.reproducer;
    os << "\n";
  }
  return os.str();
}
}  // namespace

TEST_CASE("enumeration on a single variable") {
  CorpusConfig cfg;
  cfg.variable_pool = {Var(0)};
  cfg.alphabet = AlphabetChoice::Empty;
  cfg.max_term_size = 1;
  CHECK(enumerate_terms<EmptyConst>(cfg) == std::vector<P>{P::variable(Var(0))});
  cfg.max_term_size = 2;
  CHECK(enumerate_terms<EmptyConst>(cfg) ==
        std::vector<P>{P::variable(Var(0)), P::abs(Var(0), P::variable(Var(0)))});
  cfg.max_term_size = 3;
  const auto three = enumerate_terms<EmptyConst>(cfg);
  CHECK(three.size() == 4);
  CHECK(three.size() == oracle::brute_corpus<EmptyConst>(3, {Var(0)}, {}).size());
  CHECK(three[2] == parse_term<EmptyConst>("\\v0. \\v0. v0"));
  CHECK(three[3] == parse_term<EmptyConst>("v0 v0"));
}

TEST_CASE("corpus sizes follow the counting recurrence") {
  for (std::size_t max = 1; max <= 6; ++max) {
    const auto cfg = small(max);
    const auto terms = enumerate_terms<TConst>(cfg);
    const auto counts = oracle::size_counts(max, 3, 3);
    std::vector<std::uint64_t> got(max + 1, 0);
    for (const auto& m : terms) ++got.at(term_size(m));
    CHECK(got == counts);
    for (std::size_t i = 1; i < terms.size(); ++i)
      CHECK(term_size(terms[i - 1]) <= term_size(terms[i]));
  }
  const auto counts = oracle::size_counts(9, 3, 3);
  CHECK(counts == std::vector<std::uint64_t>{0, 6, 18, 90, 486, 2862, 17658,
                                             112914, 741150, 4965462});
}

TEST_CASE("enumeration matches closure iteration without duplicates") {
  for (std::size_t max = 1; max <= 4; ++max) {
    const auto terms = enumerate_terms<TConst>(small(max));
    std::set<std::string> keys;
    for (const auto& m : terms) keys.insert(oracle::shape(m));
    CHECK(keys.size() == terms.size());
    CHECK(keys == oracle::brute_corpus<TConst>(
                      max, {Var(0), Var(1), Var(2)},
                      {TConst::Zero, TConst::Succ, TConst::Rec}));
  }
}

TEST_CASE("typed closed enumeration") {
  const auto typed = enumerate_typed_closed<TConst>(small(5));
  auto has = [&](std::string_view m, std::string_view a) {
    const T tm = parse_term<TConst>(m);
    for (const auto& [u, ty] : typed)
      if (u == tm) return ty == parse_type(a);
    return false;
  };
  CHECK(has("\\v0. v0", "nat -> nat"));
  CHECK(has("0", "nat"));
  CHECK(has("Rec", "nat -> (nat -> nat -> nat) -> nat -> nat"));
  CHECK_FALSE(has("0 0", "nat"));
  for (const auto& [u, ty] : typed) {
    CHECK(is_closed(u));
    CHECK(ty.is_ground());
  }
  const auto pure = enumerate_typed_closed<EmptyConst>(small(4));
  CHECK_FALSE(pure.empty());
}

TEST_CASE("random substitutions") {
  const auto cfg = small(4);
  const std::vector<Var> dom{Var(0), Var(1), Var(2)};
  const auto a = random_substitutions<TConst>(cfg, dom);
  const auto b = random_substitutions<TConst>(cfg, dom);
  REQUIRE(a.size() == cfg.substitution_pool_size);
  CHECK(a[0].overrides().empty());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(print_subst(a[i]) == print_subst(b[i]));
    for (const auto& [x, m] : a[i].overrides()) {
      CHECK(term_size(m) <= cfg.max_term_size);
      CHECK(std::find(dom.begin(), dom.end(), x) != dom.end());
    }
  }
  auto other = cfg;
  other.seed = 99;
  const auto c = random_substitutions<TConst>(other, dom);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    differs |= print_subst(a[i]) != print_subst(c[i]);
  CHECK(differs);
}

TEST_CASE("config validation") {
  CorpusConfig cfg;
  cfg.variable_pool.clear();
  CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
  cfg = CorpusConfig{};
  cfg.max_term_size = 0;
  CHECK_THROWS_AS(enumerate_terms<TConst>(cfg), std::invalid_argument);
  cfg = CorpusConfig{};
  cfg.variable_pool = {Var(1), Var(1)};
  CHECK_THROWS_AS(enumerate_terms<TConst>(cfg), std::invalid_argument);
}

TEST_CASE("nameless keys and alpha variants") {
  const T m = parse_term<TConst>("\\v0. \\v1. v1 v0 v2");
  CHECK_FALSE(nameless_key(m) ==
              nameless_key(parse_term<TConst>("\\v2. \\v0. v0 v2 v2")));
  CHECK(nameless_key(m) == nameless_key(parse_term<TConst>("\\v3. \\v0. v0 v3 v2")));
  for (const auto& v : alpha_variants(m)) CHECK(oracle::alpha(v, m));
  const auto renamed = alpha_variants(m)[1];
  for (Var x : {Var(0), Var(1), Var(2)})
    CHECK_FALSE(renamed.var() == x);
}

TEST_CASE("suite passes on a small corpus for both calculi") {
  auto cfg = small(5);
  const auto t = run_suite(cfg);
  CHECK(t.ok());
  for (const auto& l : t.lemmas) CHECK_MESSAGE(l.failure_count == 0, l.name);
  CHECK(t.find(lemma::reduct_completeness + std::string("/systemt")) != nullptr);
  CHECK(t.find(lemma::divergence_witness)->cases == 1);

  cfg.alphabet = AlphabetChoice::Empty;
  const auto p = run_suite(cfg);
  CHECK(p.ok());
  CHECK(p.find(lemma::rec_lexicographic) == nullptr);
  CHECK(p.find(lemma::typed_sn)->cases > 0);
}

TEST_CASE("suite reports are reproducible") {
  const auto cfg = small(4);
  CHECK(strip_millis(run_suite(cfg)) == strip_millis(run_suite(cfg)));
}

TEST_CASE("a substitution that skips binder renaming is caught") {
  auto broken = SubstitutionKernel<TConst>::standard();
  broken.choose_fresh = [](const Subst<TConst>&, const T& m) {
    return m.is_abs() ? m.var() : Var(0);
  };
  std::function<T(const T&, const Subst<TConst>&)> naive =
      [&naive](const T& m, const Subst<TConst>& s) -> T {
    switch (m.kind()) {
      case T::Kind::Const:
        return m;
      case T::Kind::Var:
        return s(m.var());
      case T::Kind::App:
        return T::app(naive(m.fun(), s), naive(m.arg(), s));
      case T::Kind::Abs:
        return T::abs(m.var(), naive(m.body(), s.update(m.var(), T::variable(m.var()))));
    }
    return m;
  };
  broken.subst = naive;

  SuiteSelection sel{true, false, false, false, false, false};
  const auto r = run_suite_for<TConst>(small(4), broken, sel);
  CHECK_FALSE(r.ok());
  for (const char* name : {lemma::fresh_choice, lemma::capture_avoidance,
                           lemma::subst_free_vars}) {
    const auto* l = r.find(name);
    REQUIRE(l != nullptr);
    CHECK(l->failure_count > 0);
    REQUIRE_FALSE(l->failures.empty());
    CHECK(l->failures.size() <= LemmaReport::kept_failures);
    CHECK(l->failures[0].reproducer.find("sigma = [") != std::string::npos);
  }
  // Identity never needs renaming to stay alpha-equivalent.
  CHECK(r.find(lemma::identity_alpha)->failure_count == 0);
}

TEST_CASE("divergent terms are explored as cycles and rejected by typing") {
  const auto om = omega<TConst>();
  const auto g = explore(systemt_rules(), om, 1000);
  CHECK(g.status() == ExploreStatus::CycleFound);
  CHECK_THROWS_AS(infer(systemt_signature(), {}, om), TypeError);
}

TEST_CASE("report formats") {
  SuiteReport r;
  r.lemmas.push_back({"alpha", 10, 0, {}, 1.5});
  r.lemmas.push_back({"beta", 4, 1, {{3, "M = v0"}}, 0.25});
  std::ostringstream log, jsonl;
  write_log(log, r);
  write_report(jsonl, r);
  CHECK(log.str() ==
        "ok   alpha  cases=10 failures=0 ms=1.5\n"
        "FAIL beta  cases=4 failures=1 ms=0.25\n"
        "       #3: M = v0\n"
        "suite FAILED: 2 properties, 1 failures\n");
  std::istringstream in(jsonl.str());
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(in, line)) rows.push_back(nlohmann::json::parse(line));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["name"] == "alpha");
  CHECK(rows[1]["failures"] == 1);
  CHECK(rows[1]["cases"] == 4);
  CHECK(rows[1]["millis"] == 0.25);
  CHECK(rows[1]["reproducers"][0]["case"] == 3);
}
