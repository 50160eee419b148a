#include "sftlab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "sftlab/version.hpp"

namespace sftlab {

json matrix_to_json(const TransitionMatrix& A) {
  json j;
  j["n"] = A.n;
  j["rows"] = A.entries;
  return j;
}

TransitionMatrix matrix_from_json(const json& j) {
  if (!j.contains("rows")) throw DomainError("matrix JSON needs a 'rows' field");
  std::vector<std::vector<int>> rows = j["rows"].get<std::vector<std::vector<int>>>();
  if (j.contains("n") && j["n"].get<int>() != static_cast<int>(rows.size()))
    throw DomainError("matrix 'n' does not match 'rows'");
  return validate_matrix(rows);
}

namespace {

bool entry_is_exact(const json& v) { return v.is_string(); }

Rational entry_to_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw DomainError("expected an exact entry (\"p/q\" or integer)");
}

double entry_to_double(const json& v) {
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  return v.get<double>();
}

MeasureTag tag_from_string(const std::string& s) {
  if (s == "stationary") return MeasureTag::Stationary;
  if (s == "one-sided-uniform") return MeasureTag::OneSidedUniform;
  if (s == "general") return MeasureTag::General;
  throw DomainError("unknown measure tag: " + s);
}

}  // namespace

MarkovSpec markov_from_json(const json& j) {
  if (!j.contains("P")) throw DomainError("Markov JSON needs a 'P' field");
  const json& P = j["P"];
  int n = static_cast<int>(P.size());
  bool exact = true;
  for (const auto& row : P)
    for (const auto& v : row) exact &= entry_is_exact(v) || v.is_number_integer();
  if (j.contains("initial"))
    for (const auto& v : j["initial"]) exact &= entry_is_exact(v) || v.is_number_integer();

  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) {
      double v = entry_to_double(P[i][jj]);
      a[i][jj] = v > 0 ? 1 : 0;
    }
  TransitionMatrix A = validate_matrix(a);
  MeasureTag tag = tag_from_string(j.value("tag", std::string("stationary")));

  if (exact) {
    std::vector<std::vector<Rational>> Pq(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < n; ++jj) Pq[i][jj] = entry_to_rational(P[i][jj]);
    std::optional<std::vector<Rational>> init;
    if (j.contains("initial")) {
      std::vector<Rational> v;
      for (const auto& e : j["initial"]) v.push_back(entry_to_rational(e));
      init = v;
    }
    if (tag == MeasureTag::General && !init)
      throw DomainError("general spec needs an 'initial' field");
    return make_markov_exact(A, std::move(Pq), init, tag);
  }
  std::vector<std::vector<double>> Pf(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int jj = 0; jj < n; ++jj) Pf[i][jj] = entry_to_double(P[i][jj]);
  std::optional<std::vector<double>> init;
  if (j.contains("initial")) {
    std::vector<double> v;
    for (const auto& e : j["initial"]) v.push_back(entry_to_double(e));
    init = v;
  }
  return make_markov_float(A, std::move(Pf), init, tag);
}

json markov_to_json(const MarkovSpec& spec) {
  json j;
  j["matrix"] = matrix_to_json(spec.A);
  switch (spec.tag) {
    case MeasureTag::Stationary:
      j["tag"] = "stationary";
      break;
    case MeasureTag::OneSidedUniform:
      j["tag"] = "one-sided-uniform";
      break;
    case MeasureTag::General:
      j["tag"] = "general";
      break;
  }
  if (spec.mode == NumMode::Exact) {
    json P = json::array();
    for (const auto& row : spec.P_q) {
      json r = json::array();
      for (const auto& v : row) r.push_back(rational_to_string(v));
      P.push_back(r);
    }
    j["P"] = P;
    json init = json::array();
    for (const auto& v : spec.initial_q) init.push_back(rational_to_string(v));
    j["initial"] = init;
  } else {
    j["P"] = spec.P_f;
    j["initial"] = spec.initial_f;
  }
  return j;
}

Potential potential_from_json(const TransitionMatrix& A, const json& j) {
  if (!j.contains("range") || !j.contains("table"))
    throw DomainError("potential JSON needs 'range' and 'table'");
  int range = j["range"].get<int>();
  bool exact = true;
  for (const auto& [k, v] : j["table"].items())
    exact &= entry_is_exact(v) || v.is_number_integer();
  if (exact) {
    std::map<std::vector<int>, Rational> t;
    for (const auto& [k, v] : j["table"].items())
      t[word_from_string(k).symbols] = entry_to_rational(v);
    return make_potential_exact(A, range, std::move(t));
  }
  std::map<std::vector<int>, double> t;
  for (const auto& [k, v] : j["table"].items())
    t[word_from_string(k).symbols] = entry_to_double(v);
  return make_potential_float(A, range, std::move(t));
}

CocycleSpec cocycle_from_json(const json& j) {
  std::string kind = j.value("kind", std::string("symbol_count"));
  int n = j.value("n", 2);
  if (kind == "symbol_count") return symbol_count_cocycle(n);
  if (kind == "transition_count") return transition_count_cocycle(n, j.value("l", 1));
  if (kind == "transposition") return transposition_cocycle(n);
  if (kind == "table") {
    if (!j.contains("table")) throw DomainError("table cocycle needs a 'table' field");
    std::map<std::vector<int>, GroupElement> t;
    for (const auto& [k, v] : j["table"].items()) {
      if (v.is_array()) {
        t[word_from_string(k).symbols] =
            GroupElement::int_vector(v.get<std::vector<long long>>());
      } else if (v.is_object() && v.contains("perm")) {
        t[word_from_string(k).symbols] =
            GroupElement::permutation(v["perm"].get<std::vector<int>>());
      } else {
        throw DomainError("cocycle table values are int arrays or {\"perm\": [...]}");
      }
    }
    return table_cocycle(n, std::move(t));
  }
  throw DomainError("unknown cocycle kind: " + kind);
}

SequencePoint point_from_json(const json& j) {
  return make_point(j.value("prefix", std::string()),
                    j.value("tail_preperiod", std::string()),
                    j.value("tail_period", std::string()));
}

json point_to_json(const SequencePoint& p) {
  json j;
  j["prefix"] = word_to_string(p.prefix);
  j["tail_preperiod"] = word_to_string(p.tail_preperiod);
  j["tail_period"] = word_to_string(p.tail_period);
  return j;
}

json report_to_json(const ExperimentReport& r) {
  json j;
  j["seed"] = r.rng_seed;
  j["limit_estimate"] = r.limit_estimate;
  if (r.target) j["target"] = *r.target;
  j["max_abs_error_tail"] = r.max_abs_error_tail;
  j["truncated"] = r.truncated;
  j["skipped"] = r.skipped;
  json series = json::array();
  for (const auto& [n, v] : r.series) series.push_back({n, v});
  j["series"] = series;
  return j;
}

std::string report_to_csv(const ExperimentReport& r, const json& config) {
  std::ostringstream os;
  os << "# version=" << kVersion << "\n";
  os << "# config=" << config.dump() << "\n";
  os << "# seed=" << r.rng_seed << "\n";
  if (r.target) os << "# target=" << format_double(*r.target) << "\n";
  os << "# limit_estimate=" << format_double(r.limit_estimate) << "\n";
  os << "# max_abs_error_tail=" << format_double(r.max_abs_error_tail) << "\n";
  os << "# truncated=" << (r.truncated ? 1 : 0) << "\n";
  os << "n,value\n";
  for (const auto& [n, v] : r.series) os << n << "," << format_double(v) << "\n";
  return os.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace sftlab
