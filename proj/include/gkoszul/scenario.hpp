#pragma once

// Scenario ingestion: the JSON scenario format, the minimal polynomial
// grammar (integer coefficients, variables, ^, *, +, -), shipped presets,
// and load-time validation: homogeneity, field restrictions (the
// characteristic must not divide any weight or relation degree), the
// regular-sequence certificate via the Hilbert series product test, and
// lambda o chi = 0.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gkoszul/engine.hpp"

namespace gkoszul {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Polynomial parser
// ---------------------------------------------------------------------------

namespace detail {

struct PolyToken {
  enum Kind { Int, Ident, Pow, Mul, Plus, Minus, End } kind;
  std::int64_t value = 0;
  std::string text;
};

inline std::vector<PolyToken> poly_tokens(const std::string& s) {
  std::vector<PolyToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        ++i;
      }
      out.push_back({PolyToken::Int, v, ""});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id;
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        id += s[i];
        ++i;
      }
      out.push_back({PolyToken::Ident, 0, id});
      continue;
    }
    switch (c) {
      case '^': out.push_back({PolyToken::Pow, 0, ""}); break;
      case '*': out.push_back({PolyToken::Mul, 0, ""}); break;
      case '+': out.push_back({PolyToken::Plus, 0, ""}); break;
      case '-': out.push_back({PolyToken::Minus, 0, ""}); break;
      default: throw ParseError(std::string("unexpected character '") + c + "' in polynomial");
    }
    ++i;
  }
  out.push_back({PolyToken::End, 0, ""});
  return out;
}

}  // namespace detail

// Parses the minimal grammar into coefficient/exponent pairs; homogeneity is
// checked by the caller against the weight system.
inline std::vector<std::pair<std::int64_t, std::vector<int>>> parse_poly_terms(
    const std::string& text, const std::vector<std::string>& vars) {
  auto toks = detail::poly_tokens(text);
  std::size_t pos = 0;
  auto var_index = [&](const std::string& id) {
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] == id) return static_cast<int>(i);
    throw ParseError("unknown variable '" + id + "'");
  };
  std::vector<std::pair<std::int64_t, std::vector<int>>> terms;
  int sign = 1;
  if (toks[pos].kind == detail::PolyToken::Minus) {
    sign = -1;
    ++pos;
  } else if (toks[pos].kind == detail::PolyToken::Plus) {
    ++pos;
  }
  while (true) {
    // one product of factors
    std::int64_t coeff = sign;
    std::vector<int> exps(vars.size(), 0);
    bool first_factor = true;
    while (true) {
      const auto& t = toks[pos];
      if (t.kind == detail::PolyToken::Int) {
        coeff *= t.value;
        ++pos;
      } else if (t.kind == detail::PolyToken::Ident) {
        int vi = var_index(t.text);
        ++pos;
        int e = 1;
        if (toks[pos].kind == detail::PolyToken::Pow) {
          ++pos;
          if (toks[pos].kind != detail::PolyToken::Int)
            throw ParseError("exponent must be an integer");
          e = static_cast<int>(toks[pos].value);
          if (e < 0) throw ParseError("negative exponent");
          ++pos;
        }
        exps[vi] += e;
      } else if (first_factor) {
        throw ParseError("expected a coefficient or variable");
      } else {
        break;
      }
      first_factor = false;
      if (toks[pos].kind == detail::PolyToken::Mul) {
        ++pos;
        continue;
      }
      if (toks[pos].kind != detail::PolyToken::Int && toks[pos].kind != detail::PolyToken::Ident)
        break;
      // implicit product such as "2x" or "x y" is accepted
    }
    terms.emplace_back(coeff, std::move(exps));
    if (toks[pos].kind == detail::PolyToken::Plus) {
      sign = 1;
      ++pos;
    } else if (toks[pos].kind == detail::PolyToken::Minus) {
      sign = -1;
      ++pos;
    } else if (toks[pos].kind == detail::PolyToken::End) {
      break;
    } else {
      throw ParseError("unexpected token in polynomial");
    }
  }
  return terms;
}

template <class F>
HomPoly<F> parse_poly(const F& field, const WeightSystem& ws,
                      const std::vector<std::string>& vars, const std::string& text) {
  auto terms = parse_poly_terms(text, vars);
  std::optional<int> degree;
  for (const auto& [c, e] : terms) {
    (void)c;
    int d = ws.degree(e);
    if (!degree)
      degree = d;
    else if (*degree != d)
      throw ValidationError("polynomial '" + text + "' is not weighted-homogeneous (degrees " +
                            std::to_string(*degree) + " and " + std::to_string(d) + ")");
  }
  HomPoly<F> p(degree.value_or(0));
  for (const auto& [c, e] : terms) p.add_term(field, e, field.from_int(c));
  return p;
}

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

struct GradeValue {
  bool known = false;
  bool infinite = false;
  long long value = 0;
  std::string provenance;  // "certified" | "declared" | ""

  // convenience comparisons treating infinity properly
  bool at_least(long long v) const { return known && (infinite || value >= v); }
  long long finite_or(long long cap) const { return infinite ? cap : value; }
  std::string str() const {
    if (!known) return "unknown";
    if (infinite) return "infinite";
    return std::to_string(value);
  }
};

template <class F>
struct Scenario {
  explicit Scenario(F f) : field(std::move(f)) {}

  std::string name;
  F field;
  RingPtr<F> ring;
  bool icis = false;

  // chi : Fscript -> Gscript and lambda : Gscript -> Hscript, when present
  std::optional<HomogeneousMap<F>> chi;
  std::optional<HomogeneousMap<F>> lambda;
  // dualized pair psi = chi^*, phi = lambda^*
  std::optional<HomogeneousMap<F>> psi;
  std::optional<HomogeneousMap<F>> phi;

  int n = 0, m = 0, l = 0;
  int r = 0, s = 0, rho = 0;
  int dim_ring = 0;

  GradeValue g, h;
  GradeCertificate g_cert, h_cert;

  std::vector<int> t_values;
  EngineOptions options;

  json echo;  // scenario echo for reports
};

// The shipped presets. brieskorn:x^A+y^B expands with normalized weights;
// the rest are fixed desk-scale scenarios.
inline json preset_json(const std::string& name) {
  auto brieskorn = [](int a, int b) {
    int g = std::gcd(a, b);
    json j;
    j["name"] = "brieskorn:x^" + std::to_string(a) + "+y^" + std::to_string(b);
    j["field"] = "fp:32003";
    j["vars"] = {"x", "y"};
    j["weights"] = {b / g, a / g};
    j["relations"] = {"x^" + std::to_string(a) + "+y^" + std::to_string(b)};
    j["icis"] = true;
    j["t_range"] = {0, 1};
    return j;
  };
  if (name.rfind("brieskorn:", 0) == 0) {
    // parse "brieskorn:x^A+y^B"
    int a = 0, b = 0;
    if (std::sscanf(name.c_str(), "brieskorn:x^%d+y^%d", &a, &b) != 2 || a < 2 || b < 2)
      throw ParseError("malformed brieskorn preset '" + name + "'");
    return brieskorn(a, b);
  }
  if (name == "cusp") return brieskorn(3, 2);
  if (name == "fermat3") {
    json j;
    j["name"] = "fermat3";
    j["field"] = "fp:32003";
    j["vars"] = {"x", "y", "z"};
    j["weights"] = {1, 1, 1};
    j["relations"] = {"x^3+y^3+z^3"};
    j["icis"] = true;
    j["t_range"] = {0, 2};
    j["bound"] = 11;
    return j;
  }
  if (name == "fermat4") {
    json j;
    j["name"] = "fermat4";
    j["field"] = "fp:32003";
    j["vars"] = {"x", "y", "z", "w"};
    j["weights"] = {1, 1, 1, 1};
    j["relations"] = {"x^3+y^3+z^3+w^3"};
    j["icis"] = true;
    j["t_range"] = {0, 1};
    j["bound"] = 14;
    return j;
  }
  if (name == "ci-curve") {
    json j;
    j["name"] = "ci-curve";
    j["field"] = "fp:32003";
    j["vars"] = {"x", "y", "z"};
    j["weights"] = {1, 1, 1};
    j["relations"] = {"x^2+y^2+z^2", "x*y"};
    j["icis"] = true;
    j["t_range"] = {0, 1};
    return j;
  }
  if (name == "ci-surface") {
    json j;
    j["name"] = "ci-surface";
    j["field"] = "fp:32003";
    j["vars"] = {"x", "y", "z", "w"};
    j["weights"] = {1, 1, 1, 1};
    j["relations"] = {"x^2+y^2+z^2+w^2", "x^2+2*y^2+3*z^2+4*w^2"};
    j["icis"] = true;
    j["t_range"] = {0, 2};
    j["bound"] = 12;
    return j;
  }
  if (name == "koszul-xyz") {
    json j;
    j["name"] = "koszul-xyz";
    j["field"] = "fp:32003";
    j["vars"] = {"x", "y", "z"};
    j["weights"] = {1, 1, 1};
    j["relations"] = json::array();
    j["chi"] = {{"x"}, {"y"}, {"z"}};
    j["g_degrees"] = {0, 0, 0};
    j["f_degrees"] = {1};
    j["t_range"] = {-1, 2};  // t = -1 exercises S_{-1}(C) = Lambda^{r+1} Coker psi^*
    j["bound"] = 8;
    return j;
  }
  if (name == "split-unit") {
    json j;
    j["name"] = "split-unit";
    j["field"] = "fp:32003";
    j["vars"] = {"x", "y"};
    j["weights"] = {1, 1};
    j["relations"] = json::array();
    j["chi"] = {{"1"}, {"x"}, {"y"}};
    j["g_degrees"] = {1, 0, 0};
    j["f_degrees"] = {1};
    j["t_range"] = {0, 2};
    j["bound"] = 6;
    return j;
  }
  throw ParseError("unknown preset '" + name + "'");
}

namespace detail {

template <class F>
HomogeneousMap<F> parse_map(const RingPtr<F>& ring, const json& rows,
                            const std::vector<int>& src_degrees,
                            const std::vector<int>& tgt_degrees, const std::string& what) {
  const auto& field = ring->field();
  const auto& vars = ring->var_names();
  const auto& ws = ring->weight_system();
  int n_rows = static_cast<int>(rows.size());
  if (n_rows != static_cast<int>(tgt_degrees.size()))
    throw ValidationError(what + ": row count does not match target degrees");
  int n_cols = static_cast<int>(src_degrees.size());
  std::vector<HomPoly<F>> entries;
  for (int i = 0; i < n_rows; ++i) {
    if (static_cast<int>(rows[i].size()) != n_cols)
      throw ValidationError(what + ": ragged matrix");
    for (int j = 0; j < n_cols; ++j)
      entries.push_back(parse_poly(field, ws, vars, rows[i][j].template get<std::string>()));
  }
  FreeGradedModule<F> src(ring, src_degrees, {});
  FreeGradedModule<F> tgt(ring, tgt_degrees, {});
  try {
    return HomogeneousMap<F>(src, tgt, std::move(entries));
  } catch (const DegreeMismatch& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

}  // namespace detail

// Builds the scenario over the requested field from a parsed JSON document.
// All structural invariants are validated here; grade certification happens
// in certify_grades once an engine exists.
template <class F>
Scenario<F> build_scenario(const F& field, const json& j) {
  Scenario<F> sc(field);
  sc.name = j.value("name", std::string("scenario"));
  sc.echo = j;

  std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
  std::vector<int> weights = j.at("weights").get<std::vector<int>>();
  if (vars.empty() || vars.size() != weights.size())
    throw ValidationError("vars/weights must be nonempty and of equal length");
  for (int a : weights)
    if (a < 1) throw ValidationError("weights must be positive integers");

  WeightSystem ws{weights};

  std::vector<HomPoly<F>> relations;
  std::vector<int> rel_degrees;
  if (j.contains("relations"))
    for (const auto& rs : j.at("relations")) {
      auto p = parse_poly(field, ws, vars, rs.template get<std::string>());
      if (p.is_zero()) throw ValidationError("zero relation");
      if (p.degree() <= 0) throw ValidationError("relations must have positive degree");
      relations.push_back(p);
      rel_degrees.push_back(p.degree());
    }

  // field restriction: the characteristic must not divide any weight or
  // relation degree (unit requirements in the Euler normalization)
  std::int64_t ch = field.characteristic();
  if (ch > 0) {
    for (int a : weights)
      if (a % ch == 0)
        throw ValidationError("characteristic " + std::to_string(ch) + " divides weight " +
                              std::to_string(a));
    for (int b : rel_degrees)
      if (b % ch == 0)
        throw ValidationError("characteristic " + std::to_string(ch) + " divides relation degree " +
                              std::to_string(b));
  }

  sc.icis = j.value("icis", false);
  if (sc.icis && relations.empty()) throw ValidationError("icis scenario needs relations");
  if (sc.icis) {
    for (const auto& p : relations)
      for (const auto& [e, c] : p.terms()) {
        (void)c;
        int total = 0;
        for (int x : e) total += x;
        if (total < 2)
          throw ValidationError("icis relations must lie in the square of the irrelevant ideal");
      }
  }

  sc.ring = std::make_shared<const WeightedRing<F>>(field, ws, vars, relations);
  const auto& ring = sc.ring;

  if (sc.icis) {
    if (j.contains("chi") || j.contains("lambda"))
      throw ValidationError("specify either icis or explicit matrices, not both");
    // chi : F -> G is the transposed Jacobian column block (dp_j/dX_i);
    // lambda : G -> H = R is the Euler row (a_1 X_1, ..., a_n X_n)
    int n = static_cast<int>(vars.size());
    int m = static_cast<int>(relations.size());
    if (m >= n) throw ValidationError("icis requires m < n");
    std::vector<int> gdeg = weights;
    std::vector<int> fdeg = rel_degrees;
    std::vector<HomPoly<F>> chi_entries;
    for (int i = 0; i < n; ++i)
      for (int jj = 0; jj < m; ++jj)
        chi_entries.push_back(poly_derivative(field, ws, relations[jj], i));
    FreeGradedModule<F> Fs(ring, fdeg, {});
    FreeGradedModule<F> Gs(ring, gdeg, {});
    sc.chi = HomogeneousMap<F>(Fs, Gs, std::move(chi_entries));
    std::vector<HomPoly<F>> lam;
    for (int i = 0; i < n; ++i) {
      std::vector<int> e(n, 0);
      e[i] = 1;
      lam.push_back(HomPoly<F>::monomial(field, ws, e, field.from_int(weights[i])));
    }
    FreeGradedModule<F> Hs(ring, {0}, {});
    sc.lambda = HomogeneousMap<F>(Gs, Hs, std::move(lam));
  } else {
    if (!j.contains("chi")) throw ValidationError("scenario needs chi or the icis flag");
    auto gdeg = j.at("g_degrees").get<std::vector<int>>();
    auto fdeg = j.at("f_degrees").get<std::vector<int>>();
    sc.chi = detail::parse_map(ring, j.at("chi"), fdeg, gdeg, "chi");
    if (j.contains("lambda")) {
      auto hdeg = j.at("h_degrees").get<std::vector<int>>();
      sc.lambda = detail::parse_map(ring, j.at("lambda"), gdeg, hdeg, "lambda");
    }
  }

  sc.n = sc.chi->target().rank();
  sc.m = sc.chi->source().rank();
  sc.l = sc.lambda ? sc.lambda->target().rank() : 0;
  if (sc.m > sc.n) throw ValidationError("rank F must not exceed rank G");
  if (sc.l > sc.n) throw ValidationError("rank H must not exceed rank G");
  sc.r = sc.n - sc.m;
  sc.s = sc.n - sc.l;
  sc.rho = sc.r - sc.l;
  sc.dim_ring = static_cast<int>(vars.size()) - static_cast<int>(relations.size());

  if (sc.lambda && !map_is_zero_mod(compose(*sc.lambda, *sc.chi)))
    throw ValidationError("lambda o chi != 0 in R");

  sc.psi = dual_map(*sc.chi);
  if (sc.lambda) sc.phi = dual_map(*sc.lambda);

  // engine options
  int sum_a = 0, sum_b = 0, max_a = 1;
  for (int a : weights) {
    sum_a += a;
    max_a = std::max(max_a, a);
  }
  for (int b : rel_degrees) sum_b += b;
  sc.options.bound = j.value("bound", sum_b + sum_a + 2 * max_a);
  sc.options.window = j.value("window", max_a);
  sc.options.jobs = j.value("jobs", 0);
  if (sc.options.jobs <= 0)
    sc.options.jobs = std::max(1u, std::thread::hardware_concurrency());

  if (j.contains("t_range")) {
    auto tr = j.at("t_range").get<std::vector<int>>();
    if (tr.size() != 2 || tr[0] > tr[1]) throw ValidationError("t_range must be [from, to]");
    for (int t = tr[0]; t <= tr[1]; ++t) sc.t_values.push_back(t);
  } else {
    for (int t = 0; t <= std::max(1, sc.r); ++t) sc.t_values.push_back(t);
  }

  if (j.contains("declared_grades")) {
    const auto& dg = j.at("declared_grades");
    if (dg.contains("g")) {
      sc.g.known = true;
      sc.g.value = dg.at("g").get<long long>();
      sc.g.provenance = "declared";
    }
    if (dg.contains("h")) {
      sc.h.known = true;
      sc.h.value = dg.at("h").get<long long>();
      sc.h.provenance = "declared";
    }
  }
  return sc;
}

// The maximal minors of a map's matrix, generating the Fitting ideal I_f.
template <class F>
std::vector<HomPoly<F>> maximal_minors(const HomogeneousMap<F>& f) {
  const auto& field = f.source().ring()->field();
  int rows = f.target().rank(), cols = f.source().rank();
  int k = std::min(rows, cols);
  if (k == 0) return {poly_one<F>(field, f.source().ring()->n_vars())};
  std::vector<HomPoly<F>> out;
  for (const auto& rsel : subsets(rows, k))
    for (const auto& csel : subsets(cols, k)) {
      std::vector<std::vector<HomPoly<F>>> sub(k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub[a].push_back(f.entry(rsel[a], csel[b]));
      auto d = poly_determinant(field, sub);
      if (!d.is_zero()) out.push_back(std::move(d));
    }
  return out;
}

// Verifies the regular-sequence hypothesis indirectly: the Hilbert function
// of R must match the complete-intersection product series up to the bound.
template <class F>
void certify_regular_sequence(const Scenario<F>& sc, const Engine<F>& engine) {
  const auto& rels = sc.ring->relations();
  if (rels.empty()) return;
  std::vector<int> bdeg;
  for (const auto& p : rels) bdeg.push_back(p.degree());
  auto series = ci_hilbert_series(sc.ring->weight_system().weights, bdeg, engine.bound());
  for (int d = 0; d <= engine.bound(); ++d) {
    if (series[d] < 0)
      throw ValidationError("relations are not a regular sequence (negative series coefficient)");
    if (sc.ring->dim(d) != series[d])
      throw ValidationError("Hilbert series mismatch at degree " + std::to_string(d) +
                            ": relations are not a regular sequence");
  }
}

// Certify g = grade I_chi and h = grade I_lambda in the finite-colength
// regime (grade = dim R), or detect the unit ideal (infinite grade).
// Declared values are kept when certification is inconclusive.
template <class F>
void certify_grades(Scenario<F>& sc, const Engine<F>& engine) {
  {
    auto minors = maximal_minors(*sc.psi);
    sc.g_cert = engine.finite_colength(minors, "I_chi");
    if (sc.g_cert.finite_colength) {
      if (sc.g_cert.colength == 0) {
        sc.g.known = true;
        sc.g.infinite = true;
        sc.g.provenance = "certified-unit";
      } else {
        sc.g.known = true;
        sc.g.infinite = false;
        sc.g.value = sc.dim_ring;
        sc.g.provenance = "certified";
      }
    }
  }
  if (sc.phi) {
    auto minors = maximal_minors(*sc.phi);
    sc.h_cert = engine.finite_colength(minors, "I_lambda");
    if (sc.h_cert.finite_colength) {
      if (sc.h_cert.colength == 0) {
        sc.h.known = true;
        sc.h.infinite = true;
        sc.h.provenance = "certified-unit";
      } else {
        sc.h.known = true;
        sc.h.infinite = false;
        sc.h.value = sc.dim_ring;
        sc.h.provenance = "certified";
      }
    }
  }
}

// Loads a scenario from a preset name or a JSON file path.
inline json load_scenario_json(const std::string& path_or_preset) {
  // preset names contain no '/' and no '.'
  bool looks_like_preset = path_or_preset.find('/') == std::string::npos &&
                           path_or_preset.find(".json") == std::string::npos;
  if (looks_like_preset) return preset_json(path_or_preset);
  std::FILE* f = std::fopen(path_or_preset.c_str(), "rb");
  if (!f) throw ParseError("cannot open scenario file '" + path_or_preset + "'");
  std::string data;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) data.append(buf, got);
  std::fclose(f);
  json j = json::parse(data, nullptr, false);
  if (j.is_discarded()) throw ParseError("scenario file is not valid JSON");
  return j;
}

}  // namespace gkoszul
