#include "probclone/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace probclone {

namespace {

Json complex_pair(double re, double im) { return Json::array({re, im}); }

template <typename Scalar, typename Cell>
Json hermitian_rows(const HermitianMatrix3<Scalar>& m, Cell cell) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < 3; ++j) row.push_back(cell(m.re(i, j), m.im(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Scalar, typename Value>
Json gammas(const Efficiencies<Scalar>& e, Value value) {
  return Json::array({value(e[0]), value(e[1]), value(e[2])});
}

template <typename Scalar, typename Value>
Json flag_block(const FlagOverlaps<Scalar>& p, Value value) {
  return Json{{"P12", Json::array({value(p.p12.re), value(p.p12.im)})},
              {"P13", Json::array({value(p.p13.re), value(p.p13.im)})},
              {"P23", Json::array({value(p.p23.re), value(p.p23.im)})}};
}

const char* minor_name(std::size_t k) {
  static const char* names[] = {"m11", "m22", "m33", "m12", "m13", "m23", "det"};
  return names[k];
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const BooleanFunction& f) { return f.name(); }

Json to_json(const FunctionSet& s) {
  Json members = Json::array();
  for (const auto& f : s.members) members.push_back(f.name());
  return Json{{"label", s.label}, {"members", std::move(members)}};
}

Json to_json(const TaskInstance& t) {
  return Json{{"f0", t.f0.name()}, {"f1", t.f1.name()}, {"f2", t.f2.name()}};
}

Json to_json(const StateVector& v) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) amps.push_back(complex_pair(v[i].real(), v[i].imag()));
  return Json{{"dim", v.size()}, {"amps", std::move(amps)}};
}

Json to_json(const GramMatrix& g) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(complex_pair(g(i, j).real(), g(i, j).imag()));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RationalMatrix& g) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(g(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const HermitianMatrix3<double>& m) {
  return hermitian_rows(m, [](double re, double im) { return complex_pair(re, im); });
}

Json to_json(const HermitianMatrix3<Rational>& m) {
  return hermitian_rows(m, [](const Rational& re, const Rational& im) { return Json::array({re.str(), im.str()}); });
}

Json to_json(const FeasibilityPoint<double>& pt, double tol) {
  const auto minors = principal_minors(pt.m);
  Json minor_block;
  for (std::size_t k = 0; k < minors.size(); ++k) minor_block[minor_name(k)] = minors[k];
  const auto eig = eigenvalues(pt.m);
  Json doc{{"mode", "float"},
           {"gammas", gammas(pt.eff, [](double g) { return g; })},
           {"flags", flag_block(pt.flags, [](double x) { return x; })},
           {"gram", to_json(pt.gram)},
           {"M", to_json(pt.m)},
           {"minors", std::move(minor_block)},
           {"eigenvalues", Json::array({eig[0], eig[1], eig[2]})},
           {"min_eigenvalue", eig[0]},
           {"tol", tol},
           {"psd", is_psd(pt, tol)}};
  return doc;
}

Json to_json(const FeasibilityPoint<Rational>& pt) {
  const auto minors = principal_minors(pt.m);
  Json exact_minors, decimal_minors;
  for (std::size_t k = 0; k < minors.size(); ++k) {
    exact_minors[minor_name(k)] = minors[k].str();
    decimal_minors[minor_name(k)] = minors[k].to_double();
  }
  const auto eig = eigenvalues(pt.m.cast<double>());
  Json doc{{"mode", "exact"},
           {"gammas", gammas(pt.eff, [](const Rational& g) { return g.str(); })},
           {"flags", flag_block(pt.flags, [](const Rational& x) { return x.str(); })},
           {"gram", to_json(pt.gram)},
           {"M", to_json(pt.m)},
           {"minors", std::move(exact_minors)},
           {"minors_decimal", std::move(decimal_minors)},
           {"eigenvalues", Json::array({eig[0], eig[1], eig[2]})},
           {"min_eigenvalue", eig[0]},
           {"psd", is_psd(pt)}};
  return doc;
}

Json to_json(const OptimumReport& r) {
  Json doc{{"case", std::string(to_string(r.which))}, {"objective", std::string(to_string(r.objective))}};
  if (r.analytic_exact) doc["analytic_exact"] = r.analytic_exact->str();
  if (r.analytic_value) doc["analytic_value"] = *r.analytic_value;
  if (!r.analytic_form.empty()) doc["analytic_form"] = r.analytic_form;
  if (r.numeric_value) doc["numeric_value"] = *r.numeric_value;
  if (r.analytic_value && r.numeric_value) doc["numeric_minus_analytic"] = *r.numeric_value - *r.analytic_value;
  doc["gammas"] = gammas(r.argmax, [](double g) { return g; });
  doc["flags"] = flag_block(r.flags, [](double x) { return x; });
  if (r.argmax_exact) doc["gammas_exact"] = gammas(*r.argmax_exact, [](const Rational& g) { return g.str(); });
  if (r.flags_exact) doc["flags_exact"] = flag_block(*r.flags_exact, [](const Rational& x) { return x.str(); });
  doc["certificate"] = r.exact_certificate ? to_json(*r.exact_certificate) : to_json(r.certificate);
  doc["min_eigenvalue"] = r.min_eigenvalue;
  doc["certificate_psd"] = r.exact_certificate ? r.exact_certificate_psd : r.certificate_psd;
  doc["evaluations"] = r.evaluations;
  return doc;
}

Json to_json(const ScoreReport& r) {
  Json doc{{"strategy", r.strategy}, {"case", std::string(to_string(r.which))}};
  if (r.exact) doc["exact"] = r.exact->str();
  doc["exact_decimal"] = r.exact_decimal;
  if (r.enumerated) {
    doc["enumerated"] = r.enumerated->str();
    doc["enumerated_decimal"] = r.enumerated->to_double();
  }
  if (r.p_success) doc["p_success"] = *r.p_success;
  if (r.posterior) doc["posterior"] = *r.posterior;
  doc["simulated"] = r.simulated;
  doc["trials"] = r.trials;
  doc["successes"] = r.successes;
  doc["seed"] = r.seed;
  doc["stderr"] = r.stderr_;
  doc["sigma"] = r.sigma;
  doc["deviation_sigma"] = r.sigma > 0 ? (r.simulated - r.exact_decimal) / r.sigma : 0.0;
  doc["within_3sigma"] = r.within_3sigma;
  doc["diagnostics"] = Json{{"first_trials", r.first_trials},
                            {"first_successes", r.first_successes},
                            {"other_trials", r.other_trials},
                            {"other_successes", r.other_successes},
                            {"clone_successes", r.clone_successes},
                            {"clone_success_errors", r.clone_success_errors},
                            {"clone_failures", r.clone_failures},
                            {"failures_with_first", r.failures_with_first}};
  return doc;
}

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "table") return Format::Table;
  throw std::invalid_argument("unknown format: " + std::string(text));
}

namespace {

void flatten(const Json& node, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(path, node.is_string() ? node.get<std::string>() : node.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

}  // namespace

std::string render(const Json& doc, Format format) {
  if (format == Format::Json) return doc.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(doc, "", rows);
  std::ostringstream os;
  if (format == Format::Csv) {
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << csv_field(k) << ',' << csv_field(v) << '\n';
  } else {
    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.first.size());
    for (const auto& [k, v] : rows) os << k << std::string(width - k.size() + 2, ' ') << v << '\n';
  }
  return os.str();
}

}  // namespace probclone
