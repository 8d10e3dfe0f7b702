#include "lmk/harness.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "lmk/alpha.hpp"
#include "lmk/normalization.hpp"
#include "lmk/text.hpp"

namespace lmk {

void CorpusConfig::validate() const {
  if (max_term_size == 0)
    throw std::invalid_argument("max_term_size must be positive");
  if (variable_pool.empty())
    throw std::invalid_argument("variable pool must not be empty");
  for (std::size_t i = 0; i < variable_pool.size(); ++i)
    for (std::size_t j = i + 1; j < variable_pool.size(); ++j)
      if (variable_pool[i] == variable_pool[j])
        throw std::invalid_argument("variable pool has duplicates");
  if (substitution_pool_size == 0)
    throw std::invalid_argument("substitution_pool_size must be positive");
}

void LemmaReport::fail(std::size_t case_index, std::string reproducer) {
  ++failure_count;
  if (failures.size() < kept_failures)
    failures.push_back({case_index, std::move(reproducer)});
}

std::size_t SuiteReport::total_failures() const {
  std::size_t n = 0;
  for (const auto& l : lemmas) n += l.failure_count;
  return n;
}

const LemmaReport* SuiteReport::find(std::string_view name) const {
  for (const auto& l : lemmas)
    if (l.name == name) return &l;
  return nullptr;
}

void write_log(std::ostream& os, const SuiteReport& r) {
  for (const auto& l : r.lemmas) {
    os << (l.failure_count == 0 ? "ok   " : "FAIL ") << l.name << "  cases="
       << l.cases << " failures=" << l.failure_count << " ms=" << l.millis
       << "\n";
    for (const auto& f : l.failures)
      os << "       #" << f.case_index << ": " << f.reproducer << "\n";
  }
  os << (r.ok() ? "suite ok" : "suite FAILED") << ": " << r.lemmas.size()
     << " properties, " << r.total_failures() << " failures\n";
}

void write_report(std::ostream& os, const SuiteReport& r) {
  for (const auto& l : r.lemmas) {
    nlohmann::json j;
    j["name"] = l.name;
    j["cases"] = l.cases;
    j["failures"] = l.failure_count;
    j["millis"] = l.millis;
    auto& kept = j["reproducers"] = nlohmann::json::array();
    for (const auto& f : l.failures)
      kept.push_back({{"case", f.case_index}, {"term", f.reproducer}});
    os << j.dump() << "\n";
  }
}

// ---------------------------------------------------------------- corpus

namespace {

template <ConstAlphabet C>
void emit_size(std::size_t n, const std::vector<std::vector<Term<C>>>& by_size,
               const std::vector<Var>& pool,
               const std::function<void(const Term<C>&)>& fn) {
  using T = Term<C>;
  if (n == 1) {
    for (Var x : pool) fn(T::variable(x));
    for (C c : Alphabet<C>::symbols()) fn(T::constant(c));
    return;
  }
  for (Var x : pool)
    for (const T& b : by_size[n - 1]) fn(T::abs(x, b));
  for (std::size_t i = 1; i + 1 < n; ++i)
    for (const T& f : by_size[i])
      for (const T& a : by_size[n - 1 - i]) fn(T::app(f, a));
}

}  // namespace

template <ConstAlphabet C>
void for_each_term(const CorpusConfig& cfg,
                   const std::function<void(const Term<C>&)>& fn) {
  cfg.validate();
  std::vector<std::vector<Term<C>>> by_size(cfg.max_term_size + 1);
  for (std::size_t n = 1; n <= cfg.max_term_size; ++n) {
    if (n == cfg.max_term_size) {
      emit_size<C>(n, by_size, cfg.variable_pool, fn);
    } else {
      emit_size<C>(n, by_size, cfg.variable_pool, [&](const Term<C>& t) {
        by_size[n].push_back(t);
        fn(t);
      });
    }
  }
}

template <ConstAlphabet C>
std::vector<Term<C>> enumerate_terms(const CorpusConfig& cfg) {
  std::vector<Term<C>> out;
  for_each_term<C>(cfg, [&](const Term<C>& t) { out.push_back(t); });
  return out;
}

template <ConstAlphabet C>
void for_each_typed_closed(
    const CorpusConfig& cfg,
    const std::function<void(const Term<C>&, const SimpleType&)>& fn) {
  const auto sig = default_signature<C>();
  const Context empty;
  for_each_term<C>(cfg, [&](const Term<C>& t) {
    if (!is_closed(t)) return;
    SimpleType a = SimpleType::base();
    try {
      a = infer(sig, empty, t);
    } catch (const TypeError&) {
      return;
    }
    fn(t, instantiate_metas(a, SimpleType::base()));
  });
}

template <ConstAlphabet C>
std::vector<std::pair<Term<C>, SimpleType>> enumerate_typed_closed(
    const CorpusConfig& cfg) {
  std::vector<std::pair<Term<C>, SimpleType>> out;
  for_each_typed_closed<C>(cfg, [&](const Term<C>& t, const SimpleType& a) {
    out.emplace_back(t, a);
  });
  return out;
}

template <ConstAlphabet C>
std::vector<Subst<C>> random_substitutions(const CorpusConfig& cfg,
                                           std::span<const Var> domain) {
  cfg.validate();
  CorpusConfig small = cfg;
  small.max_term_size = std::min<std::size_t>(3, cfg.max_term_size);
  const auto images = enumerate_terms<C>(small);

  std::mt19937_64 gen(cfg.seed);
  std::vector<Subst<C>> out{identity<C>()};
  std::vector<Var> vars(domain.begin(), domain.end());
  while (out.size() < cfg.substitution_pool_size) {
    Subst<C> s;
    if (!vars.empty()) {
      // Fisher-Yates by hand so the pool does not depend on the standard
      // library's distribution algorithms.
      for (std::size_t i = vars.size(); i > 1; --i)
        std::swap(vars[i - 1], vars[gen() % i]);
      const std::size_t k = 1 + gen() % vars.size();
      for (std::size_t i = 0; i < k; ++i)
        s = s.update(vars[i], images[gen() % images.size()]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

template <ConstAlphabet C>
std::uint32_t max_name(const Term<C>& m) {
  switch (m.kind()) {
    case Term<C>::Kind::Const:
      return 0;
    case Term<C>::Kind::Var:
      return m.var().index;
    case Term<C>::Kind::Abs:
      return std::max(m.var().index, max_name(m.body()));
    case Term<C>::Kind::App:
      return std::max(max_name(m.fun()), max_name(m.arg()));
  }
  return 0;
}

template <ConstAlphabet C>
Term<C> rename_binders(const Term<C>& m, std::vector<std::pair<Var, Var>>& env,
                       std::uint32_t& next) {
  using T = Term<C>;
  switch (m.kind()) {
    case T::Kind::Const:
      return m;
    case T::Kind::Var:
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == m.var()) return T::variable(it->second);
      return m;
    case T::Kind::Abs: {
      const Var y(next++);
      env.emplace_back(m.var(), y);
      T body = rename_binders(m.body(), env, next);
      env.pop_back();
      return T::abs(y, std::move(body));
    }
    case T::Kind::App: {
      T f = rename_binders(m.fun(), env, next);
      return T::app(std::move(f), rename_binders(m.arg(), env, next));
    }
  }
  return m;
}

// Locally nameless rendering. Bound occurrences print as "#k" (k binders
// up); free ones go through `free_var`.
template <ConstAlphabet C, class FreeVar>
void nameless(const Term<C>& m, std::vector<Var>& binders, std::string& out,
              const FreeVar& free_var) {
  switch (m.kind()) {
    case Term<C>::Kind::Const:
      out += Alphabet<C>::spelling(m.symbol());
      return;
    case Term<C>::Kind::Var:
      for (std::size_t k = 0; k < binders.size(); ++k)
        if (binders[binders.size() - 1 - k] == m.var()) {
          out += '#';
          out += std::to_string(k);
          return;
        }
      free_var(m.var(), out);
      return;
    case Term<C>::Kind::Abs:
      out += "(\\ ";
      binders.push_back(m.var());
      nameless(m.body(), binders, out, free_var);
      binders.pop_back();
      out += ')';
      return;
    case Term<C>::Kind::App:
      out += '(';
      nameless(m.fun(), binders, out, free_var);
      out += ' ';
      nameless(m.arg(), binders, out, free_var);
      out += ')';
      return;
  }
}

// Key of m . sigma computed without renaming anything: images are spliced
// in at free occurrences, and they cannot be captured since bound
// occurrences are nameless.
template <ConstAlphabet C>
std::string nameless_subst_key(const Term<C>& m, const Subst<C>& sigma) {
  std::string out;
  std::vector<Var> binders;
  nameless(m, binders, out, [&](Var x, std::string& o) {
    o += nameless_key(sigma(x));
  });
  return out;
}

template <ConstAlphabet C>
void positions(const Term<C>& m, Path& here,
               std::vector<std::pair<Path, Term<C>>>& out) {
  out.emplace_back(here, m);
  if (m.is_abs()) {
    here.push_back(Move::IntoBody);
    positions(m.body(), here, out);
    here.pop_back();
  } else if (m.is_app()) {
    here.push_back(Move::IntoFun);
    positions(m.fun(), here, out);
    here.back() = Move::IntoArg;
    positions(m.arg(), here, out);
    here.pop_back();
  }
}

template <ConstAlphabet C>
Term<C> plug(const Term<C>& m, const Path& p, std::size_t at, const Term<C>& n) {
  using T = Term<C>;
  if (at == p.size()) return n;
  switch (p[at]) {
    case Move::IntoBody:
      return T::abs(m.var(), plug(m.body(), p, at + 1, n));
    case Move::IntoFun:
      return T::app(plug(m.fun(), p, at + 1, n), m.arg());
    case Move::IntoArg:
      return T::app(m.fun(), plug(m.arg(), p, at + 1, n));
  }
  return n;
}

}  // namespace

template <ConstAlphabet C>
std::vector<Term<C>> alpha_variants(const Term<C>& m) {
  std::vector<std::pair<Var, Var>> env;
  std::uint32_t next = max_name(m) + 1;
  return {subst(m, identity<C>()), rename_binders(m, env, next)};
}

template <ConstAlphabet C>
std::string nameless_key(const Term<C>& m) {
  std::string out;
  std::vector<Var> binders;
  nameless(m, binders, out,
           [](Var x, std::string& o) { o += to_string(x); });
  return out;
}

template <ConstAlphabet C>
std::vector<std::pair<Term<C>, Path>> reducts_by_contexts(
    const RuleSet<C>& rules, const Term<C>& m) {
  std::vector<std::pair<Path, Term<C>>> holes;
  Path here;
  positions(m, here, holes);
  std::vector<std::pair<Term<C>, Path>> out;
  for (const auto& [p, sub] : holes)
    for (const auto& c : rules.contract(sub))
      out.emplace_back(plug(m, p, 0, c.term), p);
  return out;
}

template <ConstAlphabet C>
SubstitutionKernel<C> SubstitutionKernel<C>::standard() {
  return {[](const Subst<C>& s, const Term<C>& m) { return lmk::choose_fresh(s, m); },
          [](const Term<C>& m, const Subst<C>& s) { return lmk::subst(m, s); }};
}

template <ConstAlphabet C>
Term<C> omega() {
  using T = Term<C>;
  const T x = T::variable(Var(0));
  const T w = T::abs(Var(0), T::app(x, x));
  return T::app(w, w);
}

// ---------------------------------------------------------------- suite

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(LemmaReport& r)
      : r_(r), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    r_.millis += std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start_)
                     .count();
  }

 private:
  LemmaReport& r_;
  std::chrono::steady_clock::time_point start_;
};

template <ConstAlphabet C>
std::string show(const Term<C>& m) {
  return print_term(m);
}

template <ConstAlphabet C>
std::vector<Var> sorted_free(const Term<C>& m) {
  auto v = free_vars(m);
  std::sort(v.begin(), v.end());
  return v;
}

template <ConstAlphabet C>
std::vector<RuleSet<C>> rule_sets();

template <>
std::vector<RuleSet<EmptyConst>> rule_sets<EmptyConst>() {
  return {beta_rules<EmptyConst>()};
}

template <>
std::vector<RuleSet<TConst>> rule_sets<TConst>() {
  return {beta_rules<TConst>(), systemt_rules()};
}

// pool[k] : nat -> ... -> nat with k arguments.
Context open_context(const std::vector<Var>& pool) {
  Context ctx;
  for (std::size_t k = pool.size(); k-- > 0;) {
    SimpleType t = SimpleType::base();
    for (std::size_t i = 0; i < k; ++i)
      t = SimpleType::arrow(SimpleType::base(), t);
    ctx = ctx.extend(pool[k], t);
  }
  return ctx;
}

template <ConstAlphabet C>
class Suite {
 public:
  Suite(const CorpusConfig& cfg, const SubstitutionKernel<C>& k)
      : cfg_(cfg), k_(k) {
    report_.lemmas.reserve(64);  // lemma() hands out references
  }

  SuiteReport run(const SuiteSelection& sel) {
    cfg_.validate();
    const bool need_corpus =
        sel.substitution || sel.alpha || sel.reduction || sel.typing ||
        sel.app_inversion;
    if (need_corpus) corpus_ = enumerate_terms<C>(cfg_);
    if (sel.substitution || sel.reduction) {
      sigmas_ = random_substitutions<C>(cfg_, cfg_.variable_pool);
      CorpusConfig small = cfg_;
      small.max_term_size = std::min<std::size_t>(3, cfg_.max_term_size);
      small_ = enumerate_terms<C>(small);
    }
    if (sel.substitution) substitution_group();
    if (sel.alpha) alpha_group();
    if (sel.reduction)
      for (const auto& r : rule_sets<C>()) reduction_group(r);
    if (sel.typing) typing_group();
    if (sel.normalization) normalization_group();
    if (sel.app_inversion) app_inversion();
    return std::move(report_);
  }

 private:
  LemmaReport& lemma(std::string name) {
    report_.lemmas.push_back({std::move(name), 0, 0, {}, 0});
    return report_.lemmas.back();
  }

  static std::string where(const Term<C>& m, const Subst<C>& s) {
    return "M = " + show(m) + "; sigma = " + print_subst(s);
  }

  void substitution_group() {
    {
      auto& r = lemma(lemma::fresh_choice);
      Stopwatch w(r);
      for (const auto& m : corpus_)
        for (const auto& s : sigmas_) {
          const Var y = k_.choose_fresh(s, m);
          if (!restriction_fresh(y, s, m))
            r.fail(r.cases, where(m, s) + "; chose " + to_string(y));
          ++r.cases;
        }
    }
    {
      auto& r = lemma(lemma::capture_avoidance);
      Stopwatch w(r);
      for (const auto& m : corpus_)
        for (const auto& s : sigmas_) {
          const Term<C> got = k_.subst(m, s);
          if (nameless_key(got) != nameless_subst_key(m, s))
            r.fail(r.cases, where(m, s) + "; got " + show(got));
          ++r.cases;
        }
    }
    {
      auto& r = lemma(lemma::subst_free_vars);
      Stopwatch w(r);
      for (const auto& m : corpus_)
        for (const auto& s : sigmas_) {
          std::vector<Var> expect;
          for (Var x : free_vars(m))
            for (Var y : free_vars(s(x))) expect.push_back(y);
          std::sort(expect.begin(), expect.end());
          expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
          const Term<C> got = k_.subst(m, s);
          if (sorted_free(got) != expect)
            r.fail(r.cases, where(m, s) + "; got " + show(got));
          ++r.cases;
        }
    }
    {
      auto& r = lemma(lemma::identity_alpha);
      Stopwatch w(r);
      const auto id = identity<C>();
      for (const auto& m : corpus_) {
        const Term<C> got = k_.subst(m, id);
        if (!alpha_eq(m, got))
          r.fail(r.cases, "M = " + show(m) + "; got " + show(got));
        ++r.cases;
      }
    }
    {
      auto& r = lemma(lemma::subst_composition);
      Stopwatch w(r);
      const auto& pool = cfg_.variable_pool;
      for (std::size_t i = 0; i < corpus_.size(); ++i) {
        const auto& m = corpus_[i];
        for (std::size_t j = 0; j < sigmas_.size(); ++j) {
          const auto& s = sigmas_[j];
          const Var x = pool[(i + j) % pool.size()];
          const Term<C>& n = small_[(i * 31 + j * 7) % small_.size()];
          const Var y = k_.choose_fresh(s, Term<C>::abs(x, m));
          const Term<C> lhs =
              k_.subst(k_.subst(m, s.update(x, Term<C>::variable(y))),
                       identity<C>().update(y, n));
          const Term<C> rhs = k_.subst(m, s.update(x, n));
          if (!alpha_eq(lhs, rhs))
            r.fail(r.cases, where(m, s) + "; x = " + to_string(x) +
                                "; N = " + show(n) + "; y = " + to_string(y));
          ++r.cases;
        }
      }
    }
  }

  void alpha_group() {
    auto& r = lemma(lemma::alpha_laws);
    Stopwatch w(r);
    std::unordered_map<std::string, std::size_t> first, last;
    auto expect = [&](const Term<C>& a, const Term<C>& b, bool eq) {
      const bool got = alpha_eq(a, b);
      if (got != eq)
        r.fail(r.cases, "alpha_eq(" + show(a) + ", " + show(b) + ") = " +
                            (got ? "true" : "false"));
      ++r.cases;
      if (eq && got && sorted_free(a) != sorted_free(b)) {
        r.fail(r.cases, "free variables differ: " + show(a) + " vs " + show(b));
      }
    };
    std::string prev_key;
    for (std::size_t i = 0; i < corpus_.size(); ++i) {
      const auto& m = corpus_[i];
      const std::string key = nameless_key(m);
      expect(m, m, true);
      for (const auto& v : alpha_variants(m)) {
        expect(m, v, true);
        expect(v, m, true);
      }
      if (auto f = first.find(key); f != first.end()) {
        const auto& rep = corpus_[f->second];
        const auto& prev = corpus_[last[key]];
        expect(m, rep, true);
        expect(rep, m, true);
        expect(prev, m, true);
        last[key] = i;
      } else {
        first.emplace(key, i);
        last.emplace(key, i);
      }
      if (i > 0 && key != prev_key) {
        expect(m, corpus_[i - 1], false);
        expect(corpus_[i - 1], m, false);
      }
      prev_key = key;
    }
  }

  void reduction_group(const RuleSet<C>& rules) {
    const std::string sfx = "/" + rules.name;
    std::vector<std::vector<Step<C>>> steps;
    steps.reserve(corpus_.size());
    {
      auto& r = lemma(lemma::reduct_soundness + sfx);
      Stopwatch w(r);
      for (const auto& m : corpus_) {
        steps.push_back(one_step_reducts(rules, m));
        for (const auto& s : steps.back()) {
          if (!(s.source == m) || !step_is_sound(rules, s))
            r.fail(r.cases, "M = " + show(m) + "; " +
                                std::string(tag_name(s.tag)) + "@" +
                                path_string(s.path) + " -> " + show(s.target));
          ++r.cases;
        }
      }
    }
    {
      auto& r = lemma(lemma::reduct_completeness + sfx);
      Stopwatch w(r);
      for (std::size_t i = 0; i < corpus_.size(); ++i) {
        auto expect = reducts_by_contexts(rules, corpus_[i]);
        const auto& got = steps[i];
        std::vector<bool> used(got.size(), false);
        bool ok = expect.size() == got.size();
        for (const auto& [t, p] : expect) {
          bool hit = false;
          for (std::size_t k = 0; k < got.size() && !hit; ++k)
            if (!used[k] && got[k].path == p && got[k].target == t)
              used[k] = hit = true;
          if (!hit) ok = false;
        }
        if (!ok)
          r.fail(r.cases, "M = " + show(corpus_[i]) + "; expected " +
                              std::to_string(expect.size()) + " reducts, got " +
                              std::to_string(got.size()));
        ++r.cases;
      }
    }
    {
      auto& r = lemma(lemma::preserves_fresh + sfx);
      Stopwatch w(r);
      std::vector<Var> xs = cfg_.variable_pool;
      xs.push_back(fresh_not_in(cfg_.variable_pool));
      for (std::size_t i = 0; i < corpus_.size(); ++i)
        for (const auto& s : steps[i])
          for (Var x : xs) {
            if (!check_preserves_fresh(x, s))
              r.fail(r.cases, "x = " + to_string(x) + "; " + show(s.source) +
                                  " -> " + show(s.target));
            ++r.cases;
          }
    }
    {
      auto& r = lemma(lemma::compat_subst + sfx);
      Stopwatch w(r);
      for (std::size_t i = 0; i < corpus_.size(); ++i)
        for (const auto& s : steps[i])
          for (const auto& sigma : sigmas_) {
            if (!check_compat_subst(rules, s, sigma))
              r.fail(r.cases, "step " + show(s.source) + " -> " +
                                  show(s.target) + "; sigma = " +
                                  print_subst(sigma));
            ++r.cases;
          }
    }
    {
      auto& r = lemma(lemma::comm_alpha + sfx);
      Stopwatch w(r);
      for (std::size_t i = 0; i < corpus_.size(); ++i)
        for (const auto& s : steps[i])
          for (const auto& v : alpha_variants(s.source)) {
            if (!check_comm_alpha(rules, v, s))
              r.fail(r.cases, "step " + show(s.source) + " -> " +
                                  show(s.target) + "; variant " + show(v));
            ++r.cases;
          }
    }
    {
      auto& r = lemma(lemma::neutral_head + sfx);
      Stopwatch w(r);
      for (const auto& m : corpus_) {
        if (!neutral_head_check(rules, m))
          r.fail(r.cases, "M = " + show(m));
        ++r.cases;
      }
    }
  }

  void typing_group() {
    const auto sig = default_signature<C>();
    const Context ctx = open_context(cfg_.variable_pool);
    const SimpleType nat = SimpleType::base();
    const SimpleType nat2 = SimpleType::arrow(nat, nat);
    auto& sound = lemma(lemma::infer_soundness);
    auto& princ = lemma(lemma::principality);
    for (const auto& m : corpus_) {
      std::optional<Derivation<C>> d;
      {
        Stopwatch w(sound);
        try {
          d = infer_derivation(sig, ctx, m);
        } catch (const TypeError&) {
        }
        if (d) {
          const auto ground = instantiate_metas(*d, nat);
          const bool ok = verify_derivation(sig, ctx, ground) &&
                          ground.type == instantiate_metas(infer(sig, ctx, m), nat) &&
                          check(sig, ctx, m, ground.type).derivable;
          if (!ok) sound.fail(sound.cases, "M = " + show(m));
        } else if (check(sig, ctx, m, nat).derivable ||
                   check(sig, ctx, m, nat2).derivable) {
          sound.fail(sound.cases, "inference failed but M checks: " + show(m));
        }
        ++sound.cases;
      }
      if (d) {
        Stopwatch w(princ);
        if (!d->type.is_ground()) {
          const auto inst = instantiate_metas(d->type, nat2);
          if (!check(sig, ctx, m, inst).derivable)
            princ.fail(princ.cases,
                       "M = " + show(m) + " at " + print_type(inst));
          ++princ.cases;
        }
        // Ground types that do not unify with the principal one are rejected.
        for (const auto& other : {nat, nat2}) {
          if (!unifiable(d->type, other) && check(sig, ctx, m, other).derivable)
            princ.fail(princ.cases, "M = " + show(m) + " also checks at " +
                                        print_type(other));
        }
        ++princ.cases;
      }
    }
  }

  void normalization_group() {
    const RuleSet<C> rules = rule_sets<C>().back();
    constexpr bool with_rec = std::is_same_v<C, TConst>;
    auto& sn = lemma(lemma::typed_sn);
    auto& dec = lemma(lemma::height_decreases);
    auto& alpha = lemma(lemma::alpha_sn);
    auto& nf = lemma(lemma::normalize_nf);
    LemmaReport* succ = with_rec ? &lemma(lemma::succ_height) : nullptr;
    LemmaReport* lex = with_rec ? &lemma(lemma::rec_lexicographic) : nullptr;
    auto& wit = lemma(lemma::divergence_witness);
    const std::size_t budget = cfg_.node_budget;

    for_each_typed_closed<C>(cfg_, [&](const Term<C>& m, const SimpleType& a) {
      std::optional<ReductionGraph<C>> g;
      {
        Stopwatch w(sn);
        g = explore(rules, m, budget);
        if (!g->finite())
          sn.fail(sn.cases, "M = " + show(m) + "; status " +
                                std::string(status_name(g->status())));
        ++sn.cases;
      }
      if (!g->finite()) return;
      {
        Stopwatch w(dec);
        for (const auto& e : g->edges()) {
          if (g->height(e.from) <= g->height(e.to))
            dec.fail(dec.cases, show(g->nodes()[e.from]) + " -> " +
                                    show(g->nodes()[e.to]));
          ++dec.cases;
        }
      }
      {
        Stopwatch w(alpha);
        for (const auto& v : alpha_variants(m)) {
          auto gv = explore(rules, v, budget);
          if (!gv.finite() || gv.height(0) != g->height(0))
            alpha.fail(alpha.cases, "M = " + show(m) + "; variant " + show(v));
          ++alpha.cases;
        }
      }
      {
        Stopwatch w(nf);
        auto r = normalize(rules, m, cfg_.fuel);
        auto at = g->find(r.term);
        if (r.fuel_exhausted || !one_step_reducts(rules, r.term).empty() ||
            r.steps.size() > g->height(0) || !at || g->height(*at) != 0)
          nf.fail(nf.cases, "M = " + show(m) + "; reached " + show(r.term));
        ++nf.cases;
      }
      if constexpr (with_rec) {
        {
          Stopwatch w(*succ);
          if (a.is_base()) {
            const auto sm = Term<C>::app(Term<C>::constant(TConst::Succ), m);
            auto gs = explore(rules, sm, budget);
            if (!gs.finite() || gs.height(0) != g->height(0))
              succ->fail(succ->cases, "N = " + show(m));
            ++succ->cases;
          }
        }
        Stopwatch w(*lex);
        rec_measure(rules, *g, *lex);
        if (a.is_base()) {
          using T = Term<C>;
          const T count = T::abs(
              Var(0), T::abs(Var(1), T::app(T::constant(TConst::Succ),
                                            T::variable(Var(1)))));
          const T r = apply_spine(T::constant(TConst::Rec),
                                  {T::constant(TConst::Zero), count, m});
          auto gr = explore(rules, r, budget);
          if (gr.finite())
            rec_measure(rules, gr, *lex);
          else
            lex->fail(lex->cases++, "Rec over N = " + show(m) + " diverges");
        }
      }
    });

    Stopwatch w(wit);
    const Term<C> om = omega<C>();
    const auto go = explore(rules, om, budget);
    bool rejected = false;
    try {
      infer(default_signature<C>(), Context{}, om);
    } catch (const TypeError&) {
      rejected = true;
    }
    if (go.status() != ExploreStatus::CycleFound || !rejected)
      wit.fail(0, "Omega: status " + std::string(status_name(go.status())) +
                      (rejected ? "" : "; typed"));
    ++wit.cases;
  }

  // Every step out of Rec g h n either leaves n alone or lowers
  // (v(n), count of S in n) lexicographically.
  void rec_measure(const RuleSet<C>& rules, const ReductionGraph<C>& g,
                   LemmaReport& r)
    requires std::is_same_v<C, TConst>
  {
    const std::size_t budget = cfg_.node_budget;
    auto measure = [&](const Term<C>& n) -> std::optional<std::pair<std::size_t, std::size_t>> {
      auto gn = explore(rules, n, budget);
      if (!gn.finite()) return std::nullopt;
      return std::pair{gn.height(0), count_succ(n)};
    };
    for (const auto& e : g.edges()) {
      const Term<C>& src = g.nodes()[e.from];
      const auto sp = spine(src);
      if (!sp.head.is_constant(TConst::Rec) || sp.args.size() != 3) continue;
      const Term<C>& n = sp.args[2];
      std::optional<Term<C>> n2;
      if (e.path.empty() && e.tag == RuleTag::RecS) n2 = n.arg();
      if (!e.path.empty() && e.path.front() == Move::IntoArg)
        n2 = subterm_at(g.nodes()[e.to], Path{Move::IntoArg});
      if (!n2) continue;
      const auto before = measure(n);
      const auto after = measure(*n2);
      if (!before || !after || !(*after < *before))
        r.fail(r.cases, show(src) + " -> " + show(g.nodes()[e.to]));
      ++r.cases;
    }
  }

  void app_inversion() {
    const RuleSet<C> rules = rule_sets<C>().back();
    auto& r = lemma(lemma::app_inversion);
    Stopwatch w(r);
    std::unordered_map<Term<C>, bool> finite;
    auto status = [&](const Term<C>& t) {
      if (auto it = finite.find(t); it != finite.end()) return it->second;
      const bool f = explore(rules, t, cfg_.node_budget).finite();
      finite.emplace(t, f);
      return f;
    };
    for (const auto& m : corpus_) {
      const bool f = status(m);
      if (!m.is_app() || !f) continue;
      if (!status(m.fun()) || !status(m.arg()))
        r.fail(r.cases, "M = " + show(m));
      ++r.cases;
    }
  }

  CorpusConfig cfg_;
  SubstitutionKernel<C> k_;
  SuiteReport report_;
  std::vector<Term<C>> corpus_;
  std::vector<Term<C>> small_;
  std::vector<Subst<C>> sigmas_;
};

}  // namespace

template <ConstAlphabet C>
SuiteReport run_suite_for(const CorpusConfig& cfg,
                          const SubstitutionKernel<C>& kernel,
                          const SuiteSelection& select) {
  return Suite<C>(cfg, kernel).run(select);
}

SuiteReport run_suite(const CorpusConfig& cfg, const SuiteSelection& select) {
  if (cfg.alphabet == AlphabetChoice::Empty)
    return run_suite_for<EmptyConst>(
        cfg, SubstitutionKernel<EmptyConst>::standard(), select);
  return run_suite_for<TConst>(cfg, SubstitutionKernel<TConst>::standard(),
                               select);
}

#define LMK_INSTANTIATE(C)                                                    \
  template void for_each_term<C>(const CorpusConfig&,                         \
                                 const std::function<void(const Term<C>&)>&); \
  template std::vector<Term<C>> enumerate_terms<C>(const CorpusConfig&);      \
  template void for_each_typed_closed<C>(                                     \
      const CorpusConfig&,                                                    \
      const std::function<void(const Term<C>&, const SimpleType&)>&);         \
  template std::vector<std::pair<Term<C>, SimpleType>>                        \
  enumerate_typed_closed<C>(const CorpusConfig&);                             \
  template std::vector<Subst<C>> random_substitutions<C>(                     \
      const CorpusConfig&, std::span<const Var>);                             \
  template std::vector<Term<C>> alpha_variants<C>(const Term<C>&);            \
  template std::string nameless_key<C>(const Term<C>&);                       \
  template std::vector<std::pair<Term<C>, Path>> reducts_by_contexts<C>(      \
      const RuleSet<C>&, const Term<C>&);                                     \
  template struct SubstitutionKernel<C>;                                      \
  template SuiteReport run_suite_for<C>(                                      \
      const CorpusConfig&, const SubstitutionKernel<C>&,                      \
      const SuiteSelection&);                                                 \
  template Term<C> omega<C>();

LMK_INSTANTIATE(EmptyConst)
LMK_INSTANTIATE(TConst)

#undef LMK_INSTANTIATE

}  // namespace lmk
