#include "gword/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gword/constructions.hpp"
#include "gword/matrix_io.hpp"
#include "gword/report.hpp"
#include "gword/suites.hpp"

namespace gword::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SweepExhausted:
    case ErrorCode::ConvergenceFailure:
      return kFinding;
    default:
      return kUsage;
  }
}

namespace {

struct Options {
  std::string out_path;
  bool no_timing = false;
  bool beta_cyclic = false;

  std::string word;
  std::string file_a, file_b;
  bool exact = false;
  bool expect_positive = false;
  double tol_real = Tolerances{}.real;
  double tol_imag = Tolerances{}.imag;

  std::string recipe = "auto";
  std::uint64_t seed = 0;
  std::size_t n = 2;
  std::size_t trials = 1000;
  bool refine = false;
  std::size_t threads = 1;
  double lambda_min = 1e-2, lambda_max = 1e2;

  std::string suite;
  bool list = false;
};

// Outcome of a subcommand before it is wrapped into a report.
struct Outcome {
  Json results;
  int code = kOk;
  std::optional<std::uint64_t> seed;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExponentSequence read_word(const std::string& text) { return canonicalize(parse_word(text)); }

PDMatrix as_pd(const MatrixFile& f, const std::string& label) {
  try {
    return spectral_factor(f.values);
  } catch (const Error& e) {
    throw Error(e.code(), label + ": " + e.what());
  }
}

SearchConfig search_config(const Options& o) {
  SearchConfig c;
  c.n = o.n;
  c.trials = o.trials;
  c.seed = o.seed;
  c.refine = o.refine;
  c.threads = o.threads;
  c.lambda_min = o.lambda_min;
  c.lambda_max = o.lambda_max;
  c.tol = {o.tol_real, o.tol_imag};
  c.validate();
  return c;
}

Outcome do_reduce(const Options& o) {
  const ExponentSequence s = read_word(o.word);
  Json r{{"input", to_json(s)}, {"beta_cyclic", o.beta_cyclic}, {"irreducible", is_irreducible(s, o.beta_cyclic)}};
  Json normal = Json::object();
  const Normalization nm = normalize_signs(s, o.beta_cyclic);
  normal["sequence"] = format_pairs(nm.sequence);
  normal["alpha_sign"] = nm.alpha_sign;
  normal["beta_sign"] = nm.beta_sign;
  r["normalized"] = normal;
  r["reduction"] = to_json(reduced_class(s, o.beta_cyclic));
  const ReducedClass other = reduced_class(s, !o.beta_cyclic);
  r["other_beta_mode"] = Json{{"beta_cyclic", !o.beta_cyclic}, {"m", other.m}, {"reachable", other.reachable}};
  return {r, kOk, std::nullopt};
}

Outcome do_classify(const Options& o) {
  const ExponentSequence s = read_word(o.word);
  Json r{{"input", to_json(s)}, {"beta_cyclic", o.beta_cyclic}, {"classification", to_json(classify(s, o.beta_cyclic))}};
  return {r, kOk, std::nullopt};
}

Outcome do_eval(const Options& o) {
  const ExponentSequence s = read_word(o.word);
  const MatrixFile fa = read_matrix_file(o.file_a), fb = read_matrix_file(o.file_b);
  if (fa.values.rows() != fb.values.rows()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  const PDMatrix a = as_pd(fa, "A"), b = as_pd(fb, "B");
  const EvalResult e = evaluate(s, a, b, {o.tol_real, o.tol_imag});

  Json r{{"input", to_json(s)},
         {"n", fa.values.rows()},
         {"spectrum", to_json(e.spectrum)},
         {"min_real", e.min_real},
         {"max_imag", e.max_imag},
         {"verdict", to_string(e.verdict.verdict)},
         {"reason", e.verdict.reason}};
  bool positive = e.verdict.verdict == Verdict::AllPositive;
  if (o.exact) {
    if (!fa.exact || !fb.exact)
      throw Error(ErrorCode::ExactModeUnsupported, "--exact needs rational-mode matrix files");
    for (const auto* m : {&*fa.exact, &*fb.exact})
      if (!rat_is_positive_definite(*m)) throw Error(ErrorCode::NotPositiveDefinite, "exact input is not positive definite");
    const Certificate c = sturm_decide(s, *fa.exact, *fb.exact);
    r["exact"] = Json{{"verdict", c.is_none() ? "AllPositive" : "NotAllPositive"}, {"certificate", to_json(c)}};
    positive = c.is_none();
  }
  return {r, o.expect_positive && !positive ? kFinding : kOk, std::nullopt};
}

std::optional<long> thfour_m(const ExponentSequence& s) {
  if (s.size() != 2 || !s.all_integer()) return std::nullopt;
  const long m = s.pairs[0].alpha.as_integer();
  if (s == thfour_sequence(m)) return m;
  return std::nullopt;
}

Outcome do_witness(const Options& o) {
  const ExponentSequence s = read_word(o.word);
  std::optional<Witness> w;
  std::string route = o.recipe;
  Json search_stats;

  if (o.recipe == "hijo-eq2") {
    w = hijo_witness(s);
  } else if (o.recipe == "thfour") {
    const auto m = thfour_m(s);
    if (!m) throw Error(ErrorCode::InvalidArgument, "thfour recipe needs a word A^m B A^-m B^-1");
    w = thfour_witness(*m);
  } else if (o.recipe == "epsilon") {
    w = epsilon_sweep(s, o.beta_cyclic);
  } else if (o.recipe == "auto") {
    if (s == canonicalize(to_word(hijo_sequence()))) {
      route = "hijo-eq2";
      w = hijo_witness(s);
    } else if (const auto m = thfour_m(s)) {
      route = "thfour";
      w = thfour_witness(*m);
    } else if (classify(s, o.beta_cyclic).verdict == Goodness::ProvablyBad) {
      route = "epsilon";
      w = epsilon_sweep(s, o.beta_cyclic);
    } else {
      route = "search";
      const SearchConfig c = search_config(o);
      const SearchResult sr = random_search(s, c);
      w = sr.witness;
      search_stats = Json{{"n", c.n}, {"trials_run", sr.trials_run}, {"not_all_positive", sr.not_all_positive}};
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown recipe '" + o.recipe + "'");
  }

  Json r{{"input", to_json(s)}, {"recipe", route}};
  if (!search_stats.is_null()) r["search"] = search_stats;
  r["witness"] = w ? to_json(*w) : Json(nullptr);
  const bool seeded = route == "search";
  return {r, w ? kOk : kFinding, seeded ? std::optional<std::uint64_t>(o.seed) : std::nullopt};
}

Outcome do_search(const Options& o) {
  const ExponentSequence s = read_word(o.word);
  const SearchConfig c = search_config(o);
  const SearchResult sr = random_search(s, c);
  Json r{{"input", to_json(s)},
         {"config",
          Json{{"n", c.n},
               {"trials", c.trials},
               {"lambda_min", c.lambda_min},
               {"lambda_max", c.lambda_max},
               {"refine", c.refine},
               {"max_denominator", c.max_denominator}}},
         {"trials_run", sr.trials_run},
         {"not_all_positive", sr.not_all_positive},
         {"inconclusive", sr.inconclusive},
         {"false_alarms", sr.false_alarms},
         {"best_margin", sr.best_margin},
         {"best_trial", sr.best_trial}};
  if (sr.refined_objective)
    r["refine"] = Json{{"start_objective", *sr.refine_start_objective}, {"objective", *sr.refined_objective}};
  r["witness"] = sr.witness ? to_json(*sr.witness) : Json(nullptr);
  return {r, kOk, o.seed};
}

Outcome do_verify(const Options& o) {
  Json r = Json::object();
  if (o.list || o.suite.empty()) {
    Json reg = Json::array();
    for (const auto& s : suite_registry())
      reg.push_back(Json{{"name", s.name}, {"description", s.description}, {"covers", s.covers}});
    r["suites"] = reg;
    r["result_tags"] = result_tags();
    return {r, kOk, std::nullopt};
  }
  std::vector<std::string> names;
  if (o.suite == "all")
    for (const auto& s : suite_registry()) names.push_back(s.name);
  else
    names.push_back(o.suite);
  Json suites = Json::array();
  bool ok = true;
  for (const auto& name : names) {
    const SuiteResult sr = run_suite(name, o.seed);
    ok = ok && sr.passed();
    suites.push_back(Json{{"name", sr.name},
                          {"passed", sr.passed()},
                          {"checks", sr.checks},
                          {"failures", sr.failures},
                          {"notes", sr.notes},
                          {"details", sr.details}});
  }
  r["suites"] = suites;
  r["passed"] = ok;
  return {r, ok ? kOk : kFinding, o.seed};
}

Outcome do_halmos(const Options& o) {
  const MatrixFile fp = read_matrix_file(o.file_a), fq = read_matrix_file(o.file_b);
  if (fp.values.rows() != fq.values.rows()) throw Error(ErrorCode::DimensionMismatch, "P and Q differ in size");
  const OrthoProjection p(fp.values), q(fq.values);
  const TwoProjectionForm f = halmos_form(p, q);
  Json r = to_json(f);
  r["rank_p"] = p.rank();
  r["rank_q"] = q.rank();
  return {r, kOk, std::nullopt};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spectra of generalized words A^a1 B^b1 ... A^aN B^bN in positive definite matrices", "gword"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", o.out_path, "Write the report to this file instead of standard output");
  app.add_flag("--no-timing", o.no_timing, "Omit the timing field");

  auto word_arg = [&](CLI::App* sub) { sub->add_option("word", o.word, "Word, e.g. \"A B^-1 A^2 B\"")->required(); };
  auto tol_opts = [&](CLI::App* sub) {
    sub->add_option("--tol-real", o.tol_real, "Real-part tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--tol-imag", o.tol_imag, "Imaginary-part tolerance")->check(CLI::PositiveNumber);
  };
  auto search_opts = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Master seed");
    sub->add_option("--n", o.n, "Matrix size")->check(CLI::PositiveNumber);
    sub->add_option("--trials", o.trials, "Number of random trials")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "Worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
    sub->add_option("--lambda-min", o.lambda_min, "Smallest sampled eigenvalue");
    sub->add_option("--lambda-max", o.lambda_max, "Largest sampled eigenvalue");
    tol_opts(sub);
  };

  CLI::App* reduce = app.add_subcommand("reduce", "Cancellation trace and reduced class");
  word_arg(reduce);
  reduce->add_flag("--beta-cyclic", o.beta_cyclic, "Let the beta rule wrap around");

  CLI::App* cls = app.add_subcommand("classify", "Good / bad / unknown verdict with the deciding result");
  word_arg(cls);
  cls->add_flag("--beta-cyclic", o.beta_cyclic, "Let the beta rule wrap around");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a word on two matrix files");
  word_arg(eval);
  eval->add_option("a", o.file_a, "Matrix file for A")->required();
  eval->add_option("b", o.file_b, "Matrix file for B")->required();
  eval->add_flag("--exact", o.exact, "Also decide positivity exactly (rational files, integer exponents)");
  eval->add_flag("--expect-positive", o.expect_positive, "Exit 1 unless the spectrum is all positive");
  tol_opts(eval);

  CLI::App* wit = app.add_subcommand("witness", "Construct or search for a counterexample");
  word_arg(wit);
  wit->add_option("--recipe", o.recipe, "auto, hijo-eq2, epsilon or thfour")
      ->check(CLI::IsMember({"auto", "hijo-eq2", "epsilon", "thfour"}));
  wit->add_flag("--beta-cyclic", o.beta_cyclic, "Let the beta rule wrap around");
  search_opts(wit);

  CLI::App* search = app.add_subcommand("search", "Random search for a certified counterexample");
  word_arg(search);
  search->add_flag("--refine", o.refine, "Polish the best trial with Nelder-Mead");
  search_opts(search);

  CLI::App* verify = app.add_subcommand("verify", "Run a named property suite (or \"all\")");
  verify->add_option("suite", o.suite, "Suite name");
  verify->add_option("--seed", o.seed, "Master seed");
  verify->add_flag("--list", o.list, "List the suites and the results they cover");

  CLI::App* halmos = app.add_subcommand("halmos", "Canonical block form of two orthoprojections");
  halmos->add_option("p", o.file_a, "Projection file P")->required();
  halmos->add_option("q", o.file_b, "Projection file Q")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  const auto start = std::chrono::steady_clock::now();
  Outcome result;
  std::string digest_input = command;
  for (const auto& a : args) digest_input += '\0' + a;
  try {
    for (const auto* f : {&o.file_a, &o.file_b})
      if (!f->empty()) digest_input += '\0' + slurp(*f);

    if (command == "reduce")
      result = do_reduce(o);
    else if (command == "classify")
      result = do_classify(o);
    else if (command == "eval")
      result = do_eval(o);
    else if (command == "witness")
      result = do_witness(o);
    else if (command == "search")
      result = do_search(o);
    else if (command == "verify")
      result = do_verify(o);
    else
      result = do_halmos(o);
  } catch (const Error& e) {
    err << "gword " << command << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json report;
  report["command"] = command;
  report["args"] = args;
  report["inputs_digest"] = fnv1a_hex(digest_input);
  report["version"] = kVersion;
  report["seed"] = result.seed ? Json(*result.seed) : Json(nullptr);
  report["results"] = std::move(result.results);
  if (!o.no_timing) report["timing"] = Json{{"seconds", elapsed}};

  const std::string text = report.dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f || !(f << text)) {
      err << "gword: cannot write " << o.out_path << "\n";
      return kUsage;
    }
  }
  return result.code;
}

}  // namespace gword::cli
