// lmk: command-line front end for the term library.
//
// Exit status: 0 on success, 1 when the answer is negative (not derivable,
// not alpha-equivalent, fuel or budget exhausted, property failures), 2 on
// usage or parse errors.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lmk/alpha.hpp"
#include "lmk/harness.hpp"
#include "lmk/normalization.hpp"
#include "lmk/reduction.hpp"
#include "lmk/substitution.hpp"
#include "lmk/text.hpp"
#include "lmk/typing.hpp"

namespace {

using namespace lmk;

struct Options {
  std::string system = "t";
  std::string term;
  std::string other;
  std::string type;
  std::string ctx;
  std::size_t fuel = 10000;
  std::size_t budget = 100000;
  std::string out;

  std::size_t max_size = 7;
  std::size_t pool = 3;
  std::uint64_t seed = 1;
  std::size_t subs = 50;
  std::string report;
  std::vector<std::string> groups;
};

template <ConstAlphabet C>
RuleSet<C> rules_for() {
  if constexpr (std::is_same_v<C, TConst>)
    return systemt_rules();
  else
    return beta_rules<C>();
}

template <ConstAlphabet C>
int cmd_check(const Options& o) {
  const auto m = parse_term<C>(o.term);
  const auto a = parse_type(o.type);
  const auto r = check(default_signature<C>(), parse_context(o.ctx), m, a);
  if (r) {
    std::cout << "derivable\n";
    return 0;
  }
  std::cout << "not derivable";
  if (r.error) std::cout << ": " << r.error->what();
  std::cout << "\n";
  return 1;
}

template <ConstAlphabet C>
int cmd_infer(const Options& o) {
  const auto m = parse_term<C>(o.term);
  try {
    std::cout << print_type(infer(default_signature<C>(), parse_context(o.ctx), m))
              << "\n";
    return 0;
  } catch (const TypeError& e) {
    std::cout << "type error: " << e.what() << "\n";
    return 1;
  }
}

template <ConstAlphabet C>
int cmd_normalize(const Options& o, bool trace) {
  const auto m = parse_term<C>(o.term);
  const auto r = normalize(rules_for<C>(), m, o.fuel);
  if (trace) {
    std::cout << "   " << print_term(m) << "\n";
    for (const auto& s : r.steps)
      std::cout << tag_name(s.tag) << "@" << path_string(s.path) << "  "
                << print_term(s.target) << "\n";
  } else {
    std::cout << print_term(r.term) << "\n";
  }
  std::cerr << r.steps.size() << " steps"
            << (r.fuel_exhausted ? ", fuel exhausted" : "") << "\n";
  return r.fuel_exhausted ? 1 : 0;
}

template <ConstAlphabet C>
int cmd_reducts(const Options& o) {
  const auto m = parse_term<C>(o.term);
  for (const auto& s : one_step_reducts(rules_for<C>(), m))
    std::cout << tag_name(s.tag) << "@" << path_string(s.path) << "  "
              << print_term(s.target) << "\n";
  return 0;
}

template <ConstAlphabet C>
int cmd_alpha(const Options& o) {
  const bool eq = alpha_eq(parse_term<C>(o.term), parse_term<C>(o.other));
  std::cout << (eq ? "yes" : "no") << "\n";
  return eq ? 0 : 1;
}

template <ConstAlphabet C>
int cmd_subst(const Options& o) {
  std::cout << print_term(subst(parse_term<C>(o.term), parse_subst<C>(o.other)))
            << "\n";
  return 0;
}

template <ConstAlphabet C>
int cmd_height(const Options& o) {
  const auto g = explore(rules_for<C>(), parse_term<C>(o.term), o.budget);
  if (!g.finite()) {
    std::cout << status_name(g.status()) << "\n";
    return 1;
  }
  std::cout << g.height(0) << "\n";
  return 0;
}

int cmd_scount(const Options& o) {
  std::cout << count_succ(parse_term<TConst>(o.term)) << "\n";
  return 0;
}

template <ConstAlphabet C>
int cmd_graph(const Options& o) {
  const auto g = explore(rules_for<C>(), parse_term<C>(o.term), o.budget);
  if (o.out.empty()) {
    write_dot(std::cout, g);
  } else {
    std::ofstream f(o.out);
    if (!f) throw CLI::FileError("cannot write " + o.out);
    write_dot(f, g);
  }
  return g.finite() ? 0 : 1;
}

int cmd_props(const Options& o) {
  CorpusConfig cfg;
  cfg.max_term_size = o.max_size;
  cfg.variable_pool.clear();
  for (std::size_t i = 0; i < o.pool; ++i)
    cfg.variable_pool.push_back(Var(static_cast<std::uint32_t>(i)));
  cfg.alphabet = o.system == "pure" ? AlphabetChoice::Empty : AlphabetChoice::SystemT;
  cfg.seed = o.seed;
  cfg.substitution_pool_size = o.subs;
  cfg.node_budget = o.budget;
  cfg.fuel = o.fuel;

  SuiteSelection sel;
  if (!o.groups.empty()) {
    sel = {false, false, false, false, false, false};
    for (const auto& g : o.groups) {
      if (g == "substitution") sel.substitution = true;
      if (g == "alpha") sel.alpha = true;
      if (g == "reduction") sel.reduction = true;
      if (g == "typing") sel.typing = true;
      if (g == "normalization") sel.normalization = true;
      if (g == "inversion") sel.app_inversion = true;
    }
  }
  const auto report = run_suite(cfg, sel);
  write_log(std::cout, report);
  if (!o.report.empty()) {
    std::ofstream f(o.report);
    if (!f) throw CLI::FileError("cannot write " + o.report);
    write_report(f, report);
  }
  return report.ok() ? 0 : 1;
}

template <ConstAlphabet C>
int dispatch(const std::string& cmd, const Options& o) {
  if (cmd == "check") return cmd_check<C>(o);
  if (cmd == "infer") return cmd_infer<C>(o);
  if (cmd == "normalize") return cmd_normalize<C>(o, false);
  if (cmd == "trace") return cmd_normalize<C>(o, true);
  if (cmd == "reducts") return cmd_reducts<C>(o);
  if (cmd == "alpha") return cmd_alpha<C>(o);
  if (cmd == "subst") return cmd_subst<C>(o);
  if (cmd == "height") return cmd_height<C>(o);
  if (cmd == "graph") return cmd_graph<C>(o);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lambda terms with explicit names: substitution, reduction, "
               "typing and normalization"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--system", o.system, "calculus: pure or t")
      ->check(CLI::IsMember({"pure", "t"}));

  auto* check = app.add_subcommand("check", "decide CTX |- TERM : TYPE");
  check->add_option("term", o.term)->required();
  check->add_option("--type", o.type, "ground type")->required();
  check->add_option("--ctx", o.ctx, "v0:TYPE,v1:TYPE (search order)");

  auto* infer = app.add_subcommand("infer", "principal type");
  infer->add_option("term", o.term)->required();
  infer->add_option("--ctx", o.ctx, "v0:TYPE,v1:TYPE (search order)");

  auto* norm = app.add_subcommand("normalize", "leftmost-first normal form");
  auto* trace = app.add_subcommand("trace", "print each contraction");
  for (auto* s : {norm, trace}) {
    s->add_option("term", o.term)->required();
    s->add_option("--fuel", o.fuel, "maximum number of steps");
  }

  auto* reducts = app.add_subcommand("reducts", "all one-step reducts");
  reducts->add_option("term", o.term)->required();

  auto* alpha = app.add_subcommand("alpha", "alpha-equivalence");
  alpha->add_option("left", o.term)->required();
  alpha->add_option("right", o.other)->required();

  auto* sub = app.add_subcommand("subst", "apply a substitution");
  sub->add_option("term", o.term)->required();
  sub->add_option("--map", o.other, "v0:=TERM,v1:=TERM")->required();

  auto* height = app.add_subcommand("height", "longest reduction length");
  auto* graph = app.add_subcommand("graph", "reduction graph as Graphviz");
  for (auto* s : {height, graph}) {
    s->add_option("term", o.term)->required();
    s->add_option("--budget", o.budget, "maximum number of graph nodes");
  }
  graph->add_option("--dot", o.out, "output file (default: standard output)");

  auto* scount = app.add_subcommand("scount", "number of S symbols");
  scount->add_option("term", o.term)->required();

  auto* props = app.add_subcommand("props", "run the property suite");
  props->add_option("--size,--max-size", o.max_size, "largest term size")
      ->check(CLI::PositiveNumber);
  props->add_option("--pool", o.pool, "number of variables v0..")
      ->check(CLI::PositiveNumber);
  props->add_option("--seed", o.seed);
  props->add_option("--subs", o.subs, "substitution pool size")
      ->check(CLI::PositiveNumber);
  props->add_option("--budget", o.budget, "node budget per exploration");
  props->add_option("--fuel", o.fuel, "normalization fuel");
  props->add_option("--report", o.report, "JSON Lines report file");
  props->add_option("--group", o.groups,
                    "substitution, alpha, reduction, typing, normalization, "
                    "inversion (repeatable)")
      ->check(CLI::IsMember({"substitution", "alpha", "reduction", "typing",
                             "normalization", "inversion"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "props") return cmd_props(o);
    if (cmd == "scount") {
      if (o.system != "t") {
        std::cerr << "scount needs --system t\n";
        return 2;
      }
      return cmd_scount(o);
    }
    return o.system == "pure" ? dispatch<EmptyConst>(cmd, o)
                              : dispatch<TConst>(cmd, o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
