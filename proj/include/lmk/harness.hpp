#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmk/reduction.hpp"
#include "lmk/substitution.hpp"
#include "lmk/syntax.hpp"
#include "lmk/typing.hpp"

namespace lmk {

enum class AlphabetChoice : std::uint8_t { Empty, SystemT };

struct CorpusConfig {
  std::size_t max_term_size = 7;
  std::vector<Var> variable_pool{Var(0), Var(1), Var(2)};
  AlphabetChoice alphabet = AlphabetChoice::SystemT;
  std::size_t substitution_pool_size = 50;
  std::uint64_t seed = 1;
  std::size_t node_budget = 100000;
  std::size_t fuel = 100000;

  /// Throws std::invalid_argument on an empty pool or a zero size.
  void validate() const;
};

/// Property names as they appear in reports.
namespace lemma {
inline constexpr const char* fresh_choice = "fresh-choice-restriction";
inline constexpr const char* capture_avoidance = "capture-avoidance";
inline constexpr const char* subst_free_vars = "subst-free-vars";
inline constexpr const char* identity_alpha = "identity-subst-alpha";
inline constexpr const char* alpha_laws = "alpha-equivalence";
inline constexpr const char* subst_composition = "subst-update-composition";
inline constexpr const char* reduct_soundness = "reduct-soundness";
inline constexpr const char* reduct_completeness = "reduct-completeness";
inline constexpr const char* preserves_fresh = "preserves-fresh";
inline constexpr const char* compat_subst = "compat-subst";
inline constexpr const char* comm_alpha = "comm-alpha";
inline constexpr const char* neutral_head = "neutral-head";
inline constexpr const char* infer_soundness = "infer-soundness";
inline constexpr const char* principality = "infer-principality";
inline constexpr const char* typed_sn = "typed-closed-sn";
inline constexpr const char* divergence_witness = "untyped-divergence-witness";
inline constexpr const char* height_decreases = "height-decreases";
inline constexpr const char* succ_height = "succ-preserves-height";
inline constexpr const char* app_inversion = "sn-app-inversion";
inline constexpr const char* alpha_sn = "sn-alpha-invariant";
inline constexpr const char* rec_lexicographic = "rec-lexicographic";
inline constexpr const char* normalize_nf = "normalize-reaches-nf";
}  // namespace lemma

struct Failure {
  std::size_t case_index;
  std::string reproducer;
};

struct LemmaReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failure_count = 0;
  std::vector<Failure> failures;  // the first few, in enumeration order
  double millis = 0;

  static constexpr std::size_t kept_failures = 10;

  void fail(std::size_t case_index, std::string reproducer);
};

struct SuiteReport {
  std::vector<LemmaReport> lemmas;

  std::size_t total_failures() const;
  bool ok() const { return total_failures() == 0; }
  const LemmaReport* find(std::string_view name) const;
};

/// One line per lemma plus a summary line.
void write_log(std::ostream& os, const SuiteReport& r);

/// JSON Lines: one object per lemma with name, cases, failures, millis and
/// the kept reproducers.
void write_report(std::ostream& os, const SuiteReport& r);

/// Every term up to cfg.max_term_size over the variable pool and alphabet,
/// by increasing size, each exactly once. Small sizes are tabulated; the
/// largest size is streamed.
template <ConstAlphabet C>
void for_each_term(const CorpusConfig& cfg,
                   const std::function<void(const Term<C>&)>& fn);

template <ConstAlphabet C>
std::vector<Term<C>> enumerate_terms(const CorpusConfig& cfg);

/// Closed terms with a principal type, residual metavariables set to the
/// base type.
template <ConstAlphabet C>
void for_each_typed_closed(
    const CorpusConfig& cfg,
    const std::function<void(const Term<C>&, const SimpleType&)>& fn);

template <ConstAlphabet C>
std::vector<std::pair<Term<C>, SimpleType>> enumerate_typed_closed(
    const CorpusConfig& cfg);

/// substitution_pool_size substitutions over `domain`; the first is the
/// identity. Deterministic in cfg.seed.
template <ConstAlphabet C>
std::vector<Subst<C>> random_substitutions(const CorpusConfig& cfg,
                                           std::span<const Var> domain);

/// Alpha-variants of m: m . identity, and m with every binder renamed to a
/// name above all names in m.
template <ConstAlphabet C>
std::vector<Term<C>> alpha_variants(const Term<C>& m);

/// Nameless rendering of m; two terms are alpha-equivalent iff their keys
/// are equal.
template <ConstAlphabet C>
std::string nameless_key(const Term<C>& m);

/// Reference enumeration of one-step reducts: every one-hole context of m,
/// with the root contracta of the hole's subterm plugged back in.
template <ConstAlphabet C>
std::vector<std::pair<Term<C>, Path>> reducts_by_contexts(
    const RuleSet<C>& rules, const Term<C>& m);

/// The substitution primitives exercised by the substitution properties.
/// Tests swap in deliberately broken versions.
template <ConstAlphabet C>
struct SubstitutionKernel {
  std::function<Var(const Subst<C>&, const Term<C>&)> choose_fresh;
  std::function<Term<C>(const Term<C>&, const Subst<C>&)> subst;

  static SubstitutionKernel standard();
};

/// Property groups; run_suite runs the selected ones.
struct SuiteSelection {
  bool substitution = true;
  bool alpha = true;
  bool reduction = true;
  bool typing = true;
  bool normalization = true;
  bool app_inversion = true;

  static SuiteSelection only_normalization() {
    return {false, false, false, false, true, false};
  }
};

template <ConstAlphabet C>
SuiteReport run_suite_for(const CorpusConfig& cfg,
                          const SubstitutionKernel<C>& kernel,
                          const SuiteSelection& select = {});

/// Dispatches on cfg.alphabet with the standard kernel.
SuiteReport run_suite(const CorpusConfig& cfg,
                      const SuiteSelection& select = {});

/// (\v0. v0 v0) (\v0. v0 v0)
template <ConstAlphabet C>
Term<C> omega();

}  // namespace lmk
