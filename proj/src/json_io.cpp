#include "starprod/json_io.hpp"

#include <fstream>
#include <sstream>

namespace starprod::io {

namespace {

Json polynomial_to_json(const HPolynomial& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(to_decimal_string(c));
  return arr;
}

HPolynomial polynomial_from_json(const Json& j) {
  std::vector<Rational> coeffs;
  for (const auto& c : j) coeffs.push_back(rational_from_string(c.get<std::string>()));
  return HPolynomial(std::move(coeffs));
}

Json multiindex_to_json(const MultiIndex& m) {
  Json arr = Json::array();
  for (int i = 0; i < m.dim(); ++i) arr.push_back(m[i]);
  return arr;
}

MultiIndex multiindex_from_json(const Json& j) {
  std::vector<int> comps;
  for (const auto& c : j) comps.push_back(c.get<int>());
  return MultiIndex(std::move(comps));
}

const char* kind_name(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::kCpn: return "cpn";
    case ManifoldKind::kGrassmann: return "grassmann";
    case ManifoldKind::kOneDim: return "one_dim";
    case ManifoldKind::kCustom: return "custom";
  }
  return "custom";
}

}  // namespace

Json to_json(const HRational& value) {
  return Json{{"num", polynomial_to_json(value.num())}, {"den", polynomial_to_json(value.den())}};
}

HRational hrational_from_json(const Json& j) {
  return HRational(polynomial_from_json(j.at("num")), polynomial_from_json(j.at("den")));
}

Json to_json(const Manifold& manifold) {
  const GeometryPoint& g = manifold.geometry;
  Json params = Json::object();
  switch (manifold.kind) {
    case ManifoldKind::kCpn:
      params["n"] = manifold.cpn_dim;
      break;
    case ManifoldKind::kGrassmann:
      params["p"] = manifold.grassmann_p;
      params["q"] = manifold.grassmann_q;
      break;
    case ManifoldKind::kOneDim:
      params["g11"] = to_json(manifold.onedim_g11);
      params["R"] = to_json(manifold.onedim_r);
      break;
    case ManifoldKind::kCustom:
      break;
  }
  Json metric = Json::array();
  for (int i = 0; i < g.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < g.dim(); ++j) row.push_back(to_json(g.metric(i, j)));
    metric.push_back(std::move(row));
  }
  // Raised curvature as nested arrays indexed [p][k][l][i].
  Json curvature = Json::array();
  for (int p = 0; p < g.dim(); ++p) {
    Json jp = Json::array();
    for (int k = 0; k < g.dim(); ++k) {
      Json jk = Json::array();
      for (int l = 0; l < g.dim(); ++l) {
        Json jl = Json::array();
        for (int i = 0; i < g.dim(); ++i) jl.push_back(to_json(g.curvature(p, k, l, i)));
        jk.push_back(std::move(jl));
      }
      jp.push_back(std::move(jk));
    }
    curvature.push_back(std::move(jp));
  }
  return Json{{"kind", kind_name(manifold.kind)},
              {"params", std::move(params)},
              {"metric", std::move(metric)},
              {"curvature", std::move(curvature)}};
}

Manifold manifold_from_json(const Json& j) {
  const auto& jm = j.at("metric");
  const int n = static_cast<int>(jm.size());
  HMatrix metric;
  for (const auto& row : jm) {
    std::vector<HRational> r;
    for (const auto& v : row) r.push_back(hrational_from_json(v));
    metric.push_back(std::move(r));
  }
  std::vector<HRational> curvature;
  curvature.reserve(static_cast<std::size_t>(n) * n * n * n);
  for (const auto& jp : j.at("curvature"))
    for (const auto& jk : jp)
      for (const auto& jl : jk)
        for (const auto& ji : jl) curvature.push_back(hrational_from_json(ji));

  Manifold out = Manifold::custom(custom_geometry(std::move(metric), std::move(curvature)));
  const std::string kind = j.at("kind").get<std::string>();
  const Json params = j.value("params", Json::object());
  if (kind == "cpn") {
    out.kind = ManifoldKind::kCpn;
    out.cpn_dim = params.at("n").get<int>();
  } else if (kind == "grassmann") {
    out.kind = ManifoldKind::kGrassmann;
    out.grassmann_p = params.at("p").get<int>();
    out.grassmann_q = params.at("q").get<int>();
  } else if (kind == "one_dim") {
    out.kind = ManifoldKind::kOneDim;
    out.onedim_g11 = hrational_from_json(params.at("g11"));
    out.onedim_r = hrational_from_json(params.at("R"));
  } else if (kind != "custom") {
    throw std::invalid_argument("unknown manifold kind: " + kind);
  }
  return out;
}

Json to_json(const CoefficientTable& table) {
  Json entries = Json::array();
  for (const auto& e : table.sorted_entries())
    entries.push_back(Json{{"n", e.order},
                           {"alpha", multiindex_to_json(e.alpha)},
                           {"beta", multiindex_to_json(e.beta)},
                           {"coeff", to_json(e.value)}});
  return Json{{"manifold", to_json(table.manifold())},
              {"max_order", table.max_order()},
              {"entries", std::move(entries)}};
}

CoefficientTable table_from_json(const Json& j) {
  CoefficientTable table(manifold_from_json(j.at("manifold")), j.at("max_order").get<int>());
  for (const auto& e : j.at("entries"))
    table.set(e.at("n").get<int>(), multiindex_from_json(e.at("alpha")),
              multiindex_from_json(e.at("beta")), hrational_from_json(e.at("coeff")));
  return table;
}

Json to_json(const ChartFunction& f) {
  Json terms = Json::array();
  for (const auto& [mono, coeff] : f.numerator()) {
    Json jm = Json::array();
    for (int e : mono) jm.push_back(e);
    terms.push_back(Json{{"coeff", to_json(coeff)}, {"monomial", std::move(jm)}});
  }
  return Json{{"num", std::move(terms)}, {"s_power", f.s_power()}};
}

Json to_json(const StarResult& result) {
  return Json{{"truncation_order", result.truncation_order}, {"value", to_json(result.value)}};
}

std::string csv_series(const CoefficientTable& table, int hbar_order) {
  if (hbar_order < 0) throw std::invalid_argument("negative h expansion order");
  std::ostringstream out;
  out << "n,alpha,beta";
  for (int k = 0; k <= hbar_order; ++k) out << ",c" << k;
  out << "\n";
  for (const auto& e : table.sorted_entries()) {
    out << e.order << ",\"";
    for (int i = 0; i < e.alpha.dim(); ++i) out << (i ? " " : "") << e.alpha[i];
    out << "\",\"";
    for (int i = 0; i < e.beta.dim(); ++i) out << (i ? " " : "") << e.beta[i];
    out << "\"";
    for (const auto& c : e.value.expand_series(hbar_order)) out << "," << to_decimal_string(c);
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << contents;
}

}  // namespace starprod::io
