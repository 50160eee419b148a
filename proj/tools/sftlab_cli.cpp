#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sftlab/json_io.hpp"
#include "sftlab/rng.hpp"
#include "sftlab/splitting.hpp"
#include "sftlab/version.hpp"

using namespace sftlab;

namespace {

struct Common {
  std::string out_path;
  std::string format = "json";
};

void emit(const Common& c, const json& config, const json& result,
          const std::optional<std::string>& csv = std::nullopt) {
  std::string text;
  if (c.format == "csv") {
    if (!csv) throw DomainError("this subcommand has no CSV form; use --format json");
    text = *csv;
  } else {
    json doc;
    doc["version"] = kVersion;
    doc["config"] = config;
    doc["result"] = result;
    text = doc.dump(2);
    text.push_back('\n');
  }
  if (c.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file: " + c.out_path);
    f << text;
  }
}

CountVector parse_counts(const std::string& s) {
  CountVector out;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ','))
    if (!tok.empty()) out.push_back(std::stoll(tok));
  if (out.empty()) throw DomainError("empty count vector");
  return out;
}

MarkovSpec measure_from_flags(const std::string& markov_path, const std::string& alpha) {
  if (!markov_path.empty()) return markov_from_json(load_json_file(markov_path));
  if (!alpha.empty()) {
    Rational a = parse_rational(alpha);
    if (a <= 0 || a >= 1) throw DomainError("--alpha must lie in (0,1)");
    return bernoulli_exact({a, 1 - a});
  }
  throw DomainError("need --markov FILE or --alpha R");
}

json classes_to_json(const SymbolClasses& sc) {
  json j;
  json cl = json::array();
  for (const auto& c : sc.classes) cl.push_back(c);
  j["classes"] = cl;
  j["status"] = sc.status == SearchStatus::Proven ? "proven" : "bound-reached";
  if (!sc.alphabet_blocks.empty()) {
    json blocks = json::array();
    for (const auto& b : sc.alphabet_blocks) blocks.push_back(word_to_string(b));
    j["block_alphabet"] = blocks;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) + " - adic transformations, Gibbs measures, and "
               "cocycle subrelations on subshifts of finite type"};
  app.require_subcommand(1);

  Common common;
  app.add_option("--out", common.out_path, "output file (default: stdout)");
  app.add_option("--format", common.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string matrix_path, markov_path, potential_path, cocycle_path, point_path,
      point2_path;
  std::string alpha, theta, cylinder, parikh, s1, s2, alpha_left, alpha_right, variant =
      "plain";
  long n_val = 0, m_val = 0, steps = 0, bound = -1, block_l = 1;
  int next_symbol = 0, qi = 0, qj = 0;
  std::uint64_t seed = 0;
  bool use_float = false;

  auto* validate_cmd = app.add_subcommand("validate", "validate a transition matrix");
  validate_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();

  auto* measure_cmd = app.add_subcommand("measure", "cylinder measure queries");
  measure_cmd->add_option("--markov", markov_path, "Markov spec JSON file");
  measure_cmd->add_option("--alpha", alpha, "Bernoulli(alpha) shorthand");
  measure_cmd->add_option("--cylinder", cylinder, "cylinder word")->required();
  measure_cmd->add_option("--m", m_val, "cylinder position (stationary specs only)");

  auto* gibbs_cmd = app.add_subcommand("gibbs", "Markov Gibbs measure of a potential");
  gibbs_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  gibbs_cmd->add_option("--potential", potential_path, "potential JSON file")->required();

  auto* succ_cmd = app.add_subcommand("successor", "adic successor of a point");
  succ_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  succ_cmd->add_option("--point", point_path, "point JSON file")->required();

  auto* orbit_cmd = app.add_subcommand("orbit", "iterated adic successor");
  orbit_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  orbit_cmd->add_option("--point", point_path, "point JSON file")->required();
  orbit_cmd->add_option("--steps", steps, "number of successor steps")->required();

  auto* weights_cmd = app.add_subcommand("weights", "path-count weights");
  weights_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  weights_cmd->add_option("--m", m_val, "level")->required();
  weights_cmd->add_option("--parikh", parikh, "Parikh vector, e.g. 2,1")->required();
  weights_cmd->add_option("--next", next_symbol, "next symbol")->required();
  weights_cmd->add_option("--cylinder", cylinder, "optional cylinder prefix");

  auto* trans_cmd = app.add_subcommand("transitive", "symbol equivalence / transitivity");
  trans_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  trans_cmd->add_option("--cocycle", cocycle_path, "cocycle JSON (default symbol_count)");
  trans_cmd->add_option("--bound", bound, "difference-vector bound (default n^2)");

  auto* cocycle_cmd = app.add_subcommand("cocycle", "cocycle membership of a point pair");
  cocycle_cmd->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  cocycle_cmd->add_option("--cocycle", cocycle_path, "cocycle JSON file")->required();
  cocycle_cmd->add_option("--point", point_path, "first point JSON")->required();
  cocycle_cmd->add_option("--point2", point2_path, "second point JSON")->required();

  auto* ratio_cmd = app.add_subcommand("ratio-limit", "weight-ratio series toward mu(C)");
  ratio_cmd->add_option("--markov", markov_path, "Markov spec JSON file");
  ratio_cmd->add_option("--alpha", alpha, "Bernoulli(alpha) shorthand");
  ratio_cmd->add_option("--cylinder", cylinder, "cylinder word")->required();
  ratio_cmd->add_option("--n", n_val, "n_max")->required();
  ratio_cmd->add_option("--seed", seed, "RNG seed")->required();

  auto* defi_cmd = app.add_subcommand("definetti", "conditional block distribution");
  defi_cmd->add_option("--markov", markov_path, "Markov spec JSON file");
  defi_cmd->add_option("--alpha", alpha, "Bernoulli(alpha) shorthand");
  defi_cmd->add_option("--block-l", block_l, "initial block length")->required();
  defi_cmd->add_option("--n", n_val, "conditioning level")->required();
  defi_cmd->add_option("--seed", seed, "RNG seed")->required();

  auto* amnesia_cmd = app.add_subcommand("amnesia", "Q-ratio amnesia series");
  amnesia_cmd->add_option("--markov", markov_path, "Markov spec JSON file")->required();
  amnesia_cmd->add_option("--s1", s1, "first initial count vector, e.g. 2,0")->required();
  amnesia_cmd->add_option("--s2", s2, "second initial count vector")->required();
  amnesia_cmd->add_option("--m", m_val, "m_max")->required();
  amnesia_cmd->add_option("--seed", seed, "RNG seed")->required();

  auto* qtable_cmd = app.add_subcommand("qtable", "exact Q_{ij}(s) table at level m");
  qtable_cmd->add_option("--markov", markov_path, "Markov spec JSON file")->required();
  qtable_cmd->add_option("--m", m_val, "level")->required();

  auto* weakmix_cmd = app.add_subcommand("weakmix", "fractional parts of theta * weights");
  weakmix_cmd->add_option("--alpha", alpha, "Bernoulli sampling parameter")->required();
  weakmix_cmd->add_option("--theta", theta, "rotation number (exact rational)")->required();
  weakmix_cmd->add_option("--m", m_val, "m_max")->required();
  weakmix_cmd->add_option("--seed", seed, "RNG seed")->required();

  auto* split_cmd = app.add_subcommand("split", "Kakutani interval splitting");
  split_cmd->add_option("--alpha", alpha, "splitting proportion");
  split_cmd->add_option("--variant", variant, "plain | left-right")
      ->check(CLI::IsMember({"plain", "left-right"}));
  split_cmd->add_option("--alpha-left", alpha_left, "proportion for left children");
  split_cmd->add_option("--alpha-right", alpha_right, "proportion for right children");
  split_cmd->add_option("--steps", steps, "number of split steps")->required();
  split_cmd->add_flag("--float", use_float, "double-precision engine for large runs");

  // let --out/--format appear after the subcommand name
  for (CLI::App* sc : app.get_subcommands(nullptr)) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json config;
    config["format"] = common.format;

    if (validate_cmd->parsed()) {
      config["subcommand"] = "validate";
      config["matrix"] = matrix_path;
      TransitionMatrix A = matrix_from_json(load_json_file(matrix_path));
      json res;
      res["n"] = A.n;
      res["irreducible"] = A.irreducible;
      res["period"] = A.period;
      res["aperiodic"] = A.aperiodic();
      emit(common, config, res);
    } else if (measure_cmd->parsed()) {
      config["subcommand"] = "measure";
      config["markov"] = markov_path;
      config["alpha"] = alpha;
      config["cylinder"] = cylinder;
      config["m"] = m_val;
      MarkovSpec spec = measure_from_flags(markov_path, alpha);
      Word C = word_from_string(cylinder, m_val);
      MeasureValue v = cylinder_measure(spec, C);
      json res;
      res["value"] = v.as_double();
      if (v.mode == NumMode::Exact) res["exact"] = rational_to_string(v.q);
      emit(common, config, res);
    } else if (gibbs_cmd->parsed()) {
      config["subcommand"] = "gibbs";
      config["matrix"] = matrix_path;
      config["potential"] = potential_path;
      TransitionMatrix A = matrix_from_json(load_json_file(matrix_path));
      Potential phi = potential_from_json(A, load_json_file(potential_path));
      MarkovSpec spec = gibbs_from_potential(A, phi);
      emit(common, config, markov_to_json(spec));
    } else if (succ_cmd->parsed()) {
      config["subcommand"] = "successor";
      config["matrix"] = matrix_path;
      config["point"] = point_path;
      TransitionMatrix A = matrix_from_json(load_json_file(matrix_path));
      SequencePoint x = point_from_json(load_json_file(point_path));
      auto s = successor(A, x);
      json res;
      if (s) {
        res["maximal"] = false;
        res["successor"] = point_to_json(*s);
      } else {
        res["maximal"] = true;
      }
      emit(common, config, res);
    } else if (orbit_cmd->parsed()) {
      config["subcommand"] = "orbit";
      config["matrix"] = matrix_path;
      config["point"] = point_path;
      config["steps"] = steps;
      TransitionMatrix A = matrix_from_json(load_json_file(matrix_path));
      SequencePoint x = point_from_json(load_json_file(point_path));
      auto pts = orbit(A, x, steps);
      json res = json::array();
      for (const auto& p : pts) res.push_back(point_to_json(p));
      emit(common, config, res);
    } else if (weights_cmd->parsed()) {
      config["subcommand"] = "weights";
      config["matrix"] = matrix_path;
      config["m"] = m_val;
      config["parikh"] = parikh;
      config["next"] = next_symbol;
      config["cylinder"] = cylinder;
      TransitionMatrix A = matrix_from_json(load_json_file(matrix_path));
      WeightQuery q{m_val, parse_counts(parikh), next_symbol};
      json res;
      res["weight"] = sft_weight(A, q).str();
      if (!cylinder.empty()) {
        Word C = word_from_string(cylinder);
        res["weight_in_cylinder"] = sft_weight_in_cylinder(A, q, C).str();
      }
      emit(common, config, res);
    } else if (trans_cmd->parsed()) {
      config["subcommand"] = "transitive";
      config["matrix"] = matrix_path;
      config["cocycle"] = cocycle_path;
      config["bound"] = bound;
      TransitionMatrix A = matrix_from_json(load_json_file(matrix_path));
      CocycleSpec psi = cocycle_path.empty() ? symbol_count_cocycle(A.n)
                                             : cocycle_from_json(load_json_file(cocycle_path));
      auto r = is_topologically_transitive(A, psi, bound);
      json res = classes_to_json(r.classes);
      res["transitive"] = r.transitive;
      emit(common, config, res);
    } else if (cocycle_cmd->parsed()) {
      config["subcommand"] = "cocycle";
      config["matrix"] = matrix_path;
      config["cocycle"] = cocycle_path;
      config["point"] = point_path;
      config["point2"] = point2_path;
      TransitionMatrix A = matrix_from_json(load_json_file(matrix_path));
      CocycleSpec psi = cocycle_from_json(load_json_file(cocycle_path));
      SequencePoint x = point_from_json(load_json_file(point_path));
      SequencePoint x2 = point_from_json(load_json_file(point2_path));
      if (!x.is_valid(A) || !x2.is_valid(A))
        throw DomainError("points are not allowed sequences");
      json res;
      res["equivalent"] = in_subrelation(psi, x, x2);
      emit(common, config, res);
    } else if (ratio_cmd->parsed()) {
      config["subcommand"] = "ratio-limit";
      config["markov"] = markov_path;
      config["alpha"] = alpha;
      config["cylinder"] = cylinder;
      config["n"] = n_val;
      config["seed"] = seed;
      MarkovSpec spec = measure_from_flags(markov_path, alpha);
      Word C = word_from_string(cylinder);
      auto r = ratio_limit_experiment(spec.A, spec, C, seed, n_val);
      emit(common, config, report_to_json(r), report_to_csv(r, config));
    } else if (defi_cmd->parsed()) {
      config["subcommand"] = "definetti";
      config["markov"] = markov_path;
      config["alpha"] = alpha;
      config["block_l"] = block_l;
      config["n"] = n_val;
      config["seed"] = seed;
      MarkovSpec spec = measure_from_flags(markov_path, alpha);
      auto r = definetti_conditional_experiment(spec.A, spec, block_l, n_val, seed);
      json res = report_to_json(r.report);
      res["counts"] = r.counts;
      res["next_symbol"] = r.next_symbol;
      json rows = json::array();
      for (const auto& row : r.rows) {
        json jr;
        jr["block"] = word_to_string(row.block);
        jr["conditional"] = rational_to_string(row.conditional);
        jr["unconditional"] = rational_to_string(row.unconditional);
        rows.push_back(jr);
      }
      res["rows"] = rows;
      emit(common, config, res, report_to_csv(r.report, config));
    } else if (amnesia_cmd->parsed()) {
      config["subcommand"] = "amnesia";
      config["markov"] = markov_path;
      config["s1"] = s1;
      config["s2"] = s2;
      config["m"] = m_val;
      config["seed"] = seed;
      MarkovSpec spec = markov_from_json(load_json_file(markov_path));
      auto r = amnesia_experiment(spec, parse_counts(s1), parse_counts(s2), seed, m_val);
      emit(common, config, report_to_json(r), report_to_csv(r, config));
    } else if (qtable_cmd->parsed()) {
      config["subcommand"] = "qtable";
      config["markov"] = markov_path;
      config["m"] = m_val;
      MarkovSpec spec = markov_from_json(load_json_file(markov_path));
      auto rows = q_table(spec, m_val);
      json res = json::array();
      for (const auto& e : rows) {
        json jr;
        jr["i"] = e.i;
        jr["j"] = e.j;
        jr["s"] = e.s;
        jr["value"] = rational_to_string(e.value);
        res.push_back(jr);
      }
      emit(common, config, res);
    } else if (weakmix_cmd->parsed()) {
      config["subcommand"] = "weakmix";
      config["alpha"] = alpha;
      config["theta"] = theta;
      config["m"] = m_val;
      config["seed"] = seed;
      auto r = weakmix_exploration(parse_rational(alpha), parse_rational(theta), m_val, seed);
      json res = report_to_json(r.report);
      res["min_tail_distance_to_zero"] = r.min_tail_distance_to_zero;
      res["discrepancy"] = r.discrepancy;
      emit(common, config, res, report_to_csv(r.report, config));
    } else if (split_cmd->parsed()) {
      config["subcommand"] = "split";
      config["alpha"] = alpha;
      config["variant"] = variant;
      config["alpha_left"] = alpha_left;
      config["alpha_right"] = alpha_right;
      config["steps"] = steps;
      config["float"] = use_float;
      SplitConfig sc;
      if (variant == "left-right") {
        sc.left_right_dependent = true;
        if (alpha_left.empty() || alpha_right.empty())
          throw DomainError("left-right variant needs --alpha-left and --alpha-right");
        sc.alpha_left = parse_rational(alpha_left);
        sc.alpha_right = parse_rational(alpha_right);
      } else {
        if (alpha.empty()) throw DomainError("plain variant needs --alpha");
        sc.alpha = parse_rational(alpha);
      }
      std::ostringstream csv;
      csv << "# version=" << kVersion << "\n# config=" << config.dump() << "\n";
      json res;
      if (use_float) {
        auto r = run_and_discrepancy_float(sc, steps);
        res["discrepancy"] = r.discrepancy;
        res["n_points"] = r.points.size();
        csv << "# discrepancy=" << format_double(r.discrepancy) << "\npoint\n";
        for (double p : r.points) csv << format_double(p) << "\n";
      } else {
        auto r = run_and_discrepancy(sc, steps);
        res["discrepancy"] = format_double(to_double(r.discrepancy));
        res["discrepancy_exact"] = rational_to_string(r.discrepancy);
        res["n_points"] = r.state.points.size();
        json pts = json::array();
        if (r.state.points.size() <= 1000)
          for (const auto& p : r.state.points) pts.push_back(rational_to_string(p));
        res["points"] = pts;
        csv << "# discrepancy=" << rational_to_string(r.discrepancy) << "\npoint\n";
        for (const auto& p : r.state.points) csv << rational_to_string(p) << "\n";
      }
      emit(common, config, res, csv.str());
    }
    return 0;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
