#include "toric_af/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "toric_af/afstable.hpp"
#include "toric_af/config.hpp"
#include "toric_af/error.hpp"
#include "toric_af/json_io.hpp"
#include "toric_af/lattice.hpp"
#include "toric_af/version.hpp"

namespace toric_af {

namespace {

using json_io::json;
using json_io::to_json;

json read_json(const std::string& source, std::istream& in) {
  try {
    if (source == "-") return json::parse(in);
    std::ifstream file(source);
    if (!file) throw Error(ErrorKind::ParseError, "cannot read " + source);
    return json::parse(file);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, (source == "-" ? std::string("stdin") : source) + ": " + e.what());
  }
}

void emit_text(const json& j, std::ostream& out) {
  for (const auto& [key, value] : j.items()) {
    out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

std::vector<std::size_t> parse_cuts(const std::string& text) {
  std::vector<std::size_t> cuts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    Integer v = parse_integer(item);
    if (v < 0 || !v.fits_ulong_p()) throw Error(ErrorKind::ParseError, "bad cut \"" + item + "\"");
    cuts.push_back(v.get_ui());
  }
  return cuts;
}

json to_json_column(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

struct Globals {
  bool json_flag = false;
  bool strict = false;
  std::uint64_t seed = 1;
  std::string format;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Jacobi-Perron continued fractions, pseudo-lattices and toric AF-algebras", "toric-af"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);

  Globals g;
  app.add_flag("--json", g.json_flag, "Force JSON output");
  app.add_flag("--strict", g.strict, "Exit with status 2 on Unknown verdicts");
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text", "dot", "csv"}));

  auto leaf = [](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = leaf(&app, name, help);
    sub->require_subcommand(1);
    return sub;
  };

  // cf
  CLI::App* cf = group("cf", "Regular continued fractions");
  CLI::App* cf_expand = leaf(cf, "expand", "Regular continued fraction of x > 0");
  std::string cf_x;
  std::size_t cf_terms = 20;
  cf_expand->add_option("--x", cf_x, "Real number")->required();
  cf_expand->add_option("--terms", cf_terms, "Maximum number of terms");
  CLI::App* cf_euclid = leaf(cf, "euclid", "Euclidean algorithm for a >= b >= 1");
  std::string eu_a, eu_b;
  cf_euclid->add_option("--a", eu_a)->required();
  cf_euclid->add_option("--b", eu_b)->required();

  // jpa
  CLI::App* jpa = group("jpa", "Jacobi-Perron algorithm");
  CLI::App* jpa_expand_cmd = leaf(jpa, "expand", "Expand a positive vector");
  std::string lambda_text;
  std::size_t steps = 20;
  bool projective = false;
  jpa_expand_cmd->add_option("--lambda", lambda_text, "Comma-separated reals")->required();
  jpa_expand_cmd->add_option("--steps", steps, "Maximum number of steps");
  jpa_expand_cmd->add_flag("--projective", projective, "Normalize each state by its last entry");

  CLI::App* jpa_period = leaf(jpa, "period", "Detect eventual periodicity by exact state repetition");
  std::string period_lambda, period_expansion;
  std::size_t period_horizon = 0;
  auto* pl_opt = jpa_period->add_option("--lambda", period_lambda, "Comma-separated reals");
  auto* ex_opt = jpa_period->add_option("--expansion", period_expansion, "Output of `jpa expand` (file or -)");
  pl_opt->excludes(ex_opt);
  jpa_period->add_option("--horizon", period_horizon, "States searched");

  CLI::App* jpa_conv = leaf(jpa, "convergents", "Product of the first k digit matrices");
  std::string conv_digits;
  std::size_t conv_k = 0;
  jpa_conv->add_option("--digits", conv_digits, "Digit JSON (file or -)")->required();
  jpa_conv->add_option("--k", conv_k, "Number of digits")->required();

  CLI::App* jpa_diag = leaf(jpa, "diagnose", "Angle between convergent columns and the input direction");
  std::string diag_lambda;
  std::size_t diag_steps = 20;
  double diag_threshold = 1e-6;
  jpa_diag->add_option("--lambda", diag_lambda)->required();
  jpa_diag->add_option("--steps", diag_steps);
  jpa_diag->add_option("--threshold", diag_threshold);

  // pl
  CLI::App* pl = group("pl", "Pseudo-lattices");
  CLI::App* pl_project = leaf(pl, "project", "Projectivize (lambda_1, ..., lambda_n)");
  std::string pl_lambda;
  std::optional<long> genus;
  pl_project->add_option("--lambda", pl_lambda)->required();
  pl_project->add_option("--genus", genus);
  CLI::App* pl_lift = leaf(pl, "lift", "Lift (theta_1, ...) with a positive scale");
  std::string lift_theta, lift_scale;
  pl_lift->add_option("--theta", lift_theta)->required();
  pl_lift->add_option("--scale", lift_scale)->required();
  CLI::App* pl_transform = leaf(pl, "transform", "Apply lambda'_j = sum_i a_ij lambda_i");
  std::string tr_lambda, tr_matrix;
  pl_transform->add_option("--lambda", tr_lambda)->required();
  pl_transform->add_option("--matrix", tr_matrix, "JSON array of integer rows (file or -)")->required();
  CLI::App* pl_equal = leaf(pl, "equal", "Compare the generated Z-modules");
  std::string eq_a, eq_b;
  pl_equal->add_option("--a", eq_a)->required();
  pl_equal->add_option("--b", eq_b)->required();

  // bratteli
  CLI::App* br = group("bratteli", "Bratteli diagrams");
  CLI::App* br_build = leaf(br, "build", "Diagram from Jacobi-Perron digits");
  std::string br_digits;
  std::size_t br_depth = 0;
  br_build->add_option("--digits", br_digits, "Digit JSON (file or -)")->required();
  br_build->add_option("--depth", br_depth, "Number of levels")->required();
  CLI::App* br_tele = leaf(br, "telescope", "Keep level 1 and the listed levels");
  std::string br_diagram, br_cuts;
  br_tele->add_option("--diagram", br_diagram, "Diagram JSON (file or -)")->required();
  br_tele->add_option("--cuts", br_cuts, "Comma-separated levels")->required();

  // af
  CLI::App* af = group("af", "Toric AF-algebras");
  CLI::App* af_iso = leaf(af, "stable-iso", "Stable isomorphism verdict");
  std::string theta_a, theta_b, witness_file, witness_scale;
  std::optional<std::size_t> af_horizon;
  af_iso->add_option("--theta-a", theta_a)->required();
  af_iso->add_option("--theta-b", theta_b)->required();
  auto* w_opt = af_iso->add_option("--witness", witness_file, "Unimodular matrix JSON (file or -)");
  auto* s_opt = af_iso->add_option("--scale", witness_scale);
  w_opt->needs(s_opt);
  s_opt->needs(w_opt);
  af_iso->add_option("--horizon", af_horizon);

  // sample
  CLI::App* sample = group("sample", "Experiments");
  CLI::App* gen = leaf(sample, "genericity", "Convergence rate of the expansion over uniform samples");
  std::size_t s_rank = 2, s_trials = 1000, s_steps = 60;
  double s_tol = 1e-6;
  std::optional<unsigned> s_workers;
  gen->add_option("--rank", s_rank)->required();
  gen->add_option("--trials", s_trials);
  gen->add_option("--steps", s_steps);
  gen->add_option("--tol", s_tol);
  gen->add_option("--workers", s_workers);

  if (args.empty()) {
    err << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().back()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  }

  try {
    const RunConfig config = config_from_environment();
    set_default_precision_bits(config.precision_bits);
    std::string format = g.json_flag ? "json" : (g.format.empty() ? config.format : g.format);
    int code = kExitOk;

    auto emit = [&](json j) {
      j["version"] = kVersion;
      if (format == "text") {
        emit_text(j, out);
      } else {
        out << j.dump(2) << "\n";
      }
    };

    if (cf_expand->parsed()) {
      auto r = regular_cf(parse_exact_real(cf_x), cf_terms);
      json digits = json::array();
      for (const auto& d : r.digits) digits.push_back(to_json(d));
      emit({{"digits", digits}, {"terminated", r.terminated}, {"inexact", r.inexact}});
    } else if (cf_euclid->parsed()) {
      auto r = euclid(parse_integer(eu_a), parse_integer(eu_b));
      json q = json::array();
      for (const auto& d : r.quotients) q.push_back(to_json(d));
      emit({{"gcd", to_json(r.gcd)}, {"quotients", q}});
    } else if (jpa_expand_cmd->parsed()) {
      emit(to_json(jpa_expand(parse_exact_vector(lambda_text), steps, projective)));
    } else if (jpa_period->parsed()) {
      std::size_t horizon = period_horizon ? period_horizon : config.period_horizon;
      json result;
      if (!period_expansion.empty()) {
        auto e = json_io::expansion_from_json(read_json(period_expansion, in));
        auto p = detect_period(e);
        result["states_examined"] = e.states.size();
        result["period"] = p ? json{{"preperiod", p->preperiod}, {"period", p->period}} : json(nullptr);
        result["digits"] = to_json(e.digits);
      } else {
        if (period_lambda.empty()) throw Error(ErrorKind::DomainError, "give --lambda or --expansion");
        auto s = find_period(parse_exact_vector(period_lambda), horizon);
        result["states_examined"] = s.expansion.states.size();
        result["period"] =
            s.period ? json{{"preperiod", s.period->preperiod}, {"period", s.period->period}} : json(nullptr);
        result["digits"] = to_json(s.expansion.digits);
        result["termination"] = json_io::to_string(s.expansion.termination);
      }
      emit(result);
    } else if (jpa_conv->parsed()) {
      auto digits = json_io::digits_from_json(read_json(conv_digits, in));
      auto c = convergents(digits, conv_k);
      emit({{"k", conv_k}, {"matrix", to_json(c.matrix)}, {"last_column", to_json_column(c.last_column)}});
    } else if (jpa_diag->parsed()) {
      auto lambda = parse_exact_vector(diag_lambda);
      auto e = jpa_expand(lambda, diag_steps);
      DiagnosticOptions options;
      options.threshold = diag_threshold;
      auto r = convergence_diagnostic(e, lambda, options);
      emit({{"angles", r.angles},
            {"trend", r.decided == Trend::Improving ? "improving" : "stalled"},
            {"digits", to_json(e.digits)},
            {"termination", json_io::to_string(e.termination)}});
    } else if (pl_project->parsed()) {
      auto p = projectivize(make_pseudolattice(parse_exact_vector(pl_lambda), genus));
      emit({{"thetas", to_json(p.ppl.thetas())}, {"scale", to_json(p.scale)}});
    } else if (pl_lift->parsed()) {
      auto l = lift(ProjectivePseudoLattice(parse_exact_vector(lift_theta)), parse_exact_real(lift_scale));
      emit({{"lambdas", to_json(l.lambdas())}});
    } else if (pl_transform->parsed()) {
      auto a = BasisChange(json_io::matrix_from_json(read_json(tr_matrix, in)));
      auto l = basis_change(make_pseudolattice(parse_exact_vector(tr_lambda)), a);
      emit({{"lambdas", to_json(l.lambdas())}});
    } else if (pl_equal->parsed()) {
      bool eq = module_equal(make_pseudolattice(parse_exact_vector(eq_a)), make_pseudolattice(parse_exact_vector(eq_b)));
      emit({{"equal", eq}});
    } else if (br_build->parsed() || br_tele->parsed()) {
      BratteliDiagram d = br_build->parsed()
                              ? build_toric_af(json_io::digits_from_json(read_json(br_digits, in)), br_depth)
                              : BratteliDiagram(1);
      if (br_tele->parsed()) {
        auto source = json_io::diagram_from_json(read_json(br_diagram, in));
        auto cuts = parse_cuts(br_cuts);
        d = telescope(source, cuts);
      }
      if (format == "dot") {
        out << to_dot(d);
      } else {
        emit(to_json(d));
      }
    } else if (af_iso->parsed()) {
      ProjectivePseudoLattice a(parse_exact_vector(theta_a));
      ProjectivePseudoLattice b(parse_exact_vector(theta_b));
      StableIsoOptions options;
      options.horizon = af_horizon.value_or(config.default_horizon);
      options.period_horizon = config.period_horizon;
      if (!witness_file.empty()) {
        options.witness = MatrixWitness{json_io::matrix_from_json(read_json(witness_file, in)),
                                        parse_exact_real(witness_scale)};
      }
      auto v = stable_iso(a, b, options);
      emit(to_json(v));
      if (g.strict && v.outcome == Outcome::Unknown) code = kExitUnknown;
    } else if (gen->parsed()) {
      auto r = sample_genericity(s_rank, s_trials, s_steps, s_tol, g.seed, s_workers.value_or(config.workers));
      if (format == "csv") {
        out << histogram_csv(r.histogram);
      } else {
        emit(to_json(r));
      }
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace toric_af
