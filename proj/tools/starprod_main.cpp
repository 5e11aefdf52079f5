// Command-line front end: coefficient-table computation and export, symbolic
// star products on CP^N charts, and the verification suites.
//
// Exit codes: 0 success / all checks pass, 1 verification failure, 2 input
// errors (reported as machine-readable JSON on stderr).

#include <CLI11.hpp>

#include <iostream>
#include <set>
#include <string>

#include "starprod/coeff_engine.hpp"
#include "starprod/json_io.hpp"
#include "starprod/parser.hpp"
#include "starprod/star.hpp"

namespace {

using namespace starprod;
using starprod::io::Json;

void report_input_error(const std::string& message) {
  std::cerr << Json{{"error", "input"}, {"message", message}}.dump() << "\n";
}

struct ManifoldChoice {
  Manifold manifold;
  std::string default_method;
  std::set<std::string> allowed;
};

std::pair<std::string, std::string> split_once(const std::string& text, char sep) {
  const auto pos = text.find(sep);
  if (pos == std::string::npos) return {text, ""};
  return {text.substr(0, pos), text.substr(pos + 1)};
}

ManifoldChoice parse_manifold_spec(const std::string& spec) {
  const auto [head, rest] = split_once(spec, ':');
  if (head == "cpn") {
    const int n = std::stoi(rest);
    return {Manifold::cpn(n), "closed", {"general", "closed", "recurrence"}};
  }
  if (head == "grassmann") {
    const auto [p_text, q_text] = split_once(rest, ',');
    const int p = std::stoi(p_text), q = std::stoi(q_text);
    if (p == 2 && q == 2) return {Manifold::grassmann(2, 2), "general", {"general", "recurrence"}};
    return {Manifold::grassmann(p, q), "general", {"general"}};
  }
  if (head == "g22") {
    return {Manifold::grassmann(2, 2), "recurrence", {"general", "recurrence"}};
  }
  if (head == "onedim") {
    const auto [g_text, r_text] = split_once(rest, ',');
    if (g_text.empty() || r_text.empty())
      throw std::invalid_argument("onedim manifold needs g,R (e.g. onedim:1,-2)");
    return {Manifold::one_dim(HRational(rational_from_string(g_text)),
                              HRational(rational_from_string(r_text))),
            "general",
            {"general", "closed"}};
  }
  if (head == "custom") {
    if (rest.empty()) throw std::invalid_argument("custom manifold needs a geometry file path");
    const Json j = Json::parse(io::read_file(rest));
    Manifold m = io::manifold_from_json(j);
    return {std::move(m), "general", {"general"}};
  }
  throw std::invalid_argument("unknown manifold spec: " + spec +
                              " (expected cpn:N | grassmann:p,q | g22 | onedim:g,R | custom:file)");
}

CoefficientTable onedim_closed_table(const Manifold& manifold, int order) {
  CoefficientTable table(manifold, order);
  for (int n = 0; n <= order; ++n) {
    MultiIndex idx(1);
    idx[0] = n;
    table.set(n, idx, idx, coeff_1d(manifold.onedim_g11, manifold.onedim_r, n));
  }
  return table;
}

CoefficientTable build_table(const ManifoldChoice& choice, const std::string& method, int order) {
  if (!choice.allowed.count(method))
    throw std::invalid_argument("method '" + method + "' is not available for this manifold");
  const Manifold& m = choice.manifold;
  if (method == "general") return solve_general(m, order);
  if (method == "closed")
    return m.kind == ManifoldKind::kCpn ? cpn_closed_table(m.cpn_dim, order)
                                        : onedim_closed_table(m, order);
  // recurrence
  return m.kind == ManifoldKind::kCpn ? cpn_recurrence(m.cpn_dim, order) : solve_g22(order);
}

int run_coeffs(const std::string& manifold_spec, int order, std::string method,
               const std::string& out_path, const std::string& csv_path, int hbar_order) {
  ManifoldChoice choice = parse_manifold_spec(manifold_spec);
  if (method.empty()) method = choice.default_method;
  CoefficientTable table = build_table(choice, method, order);
  io::write_file(out_path, io::to_json(table).dump(2) + "\n");
  if (!csv_path.empty()) {
    if (hbar_order < 0)
      throw std::invalid_argument("--csv requires --hbar-order for the series truncation");
    io::write_file(csv_path, io::csv_series(table, hbar_order));
  }
  return 0;
}

int run_star(const std::string& manifold_spec, int order, const std::string& f_text,
             const std::string& g_text, const std::string& out_path) {
  ManifoldChoice choice = parse_manifold_spec(manifold_spec);
  if (choice.manifold.kind != ManifoldKind::kCpn)
    throw std::invalid_argument("star evaluation needs a cpn:N manifold");
  const int dim = choice.manifold.cpn_dim;
  const ChartFunction f = lower(parse_expression(f_text, dim), dim);
  const ChartFunction g = lower(parse_expression(g_text, dim), dim);
  const CoefficientTable table = cpn_closed_table(dim, order);
  const ChartMetric chart = cpn_chart_metric(dim);
  const StarResult result = star(f, g, table, order, chart);
  const std::string text = io::to_json(result).dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    io::write_file(out_path, text);
  return 0;
}

int verify_residuals(const CoefficientTable& table) {
  const ResidualReport report = verify_residual_all(table, table.geometry());
  if (report.pass) {
    std::cout << "residuals: pass (orders 0.." << table.max_order() << ")\n";
    return 0;
  }
  std::cout << "residuals: FAIL, " << report.violations.size() << " violated equation(s)\n";
  std::size_t shown = 0;
  for (const auto& v : report.violations) {
    if (shown++ == 10) {
      std::cout << "  ...\n";
      break;
    }
    std::cout << "  order " << v.order << " i=" << v.coord + 1 << " alpha=" << v.alpha.str()
              << " beta=" << v.beta.str() << " residual=" << v.residual.str() << "\n";
  }
  return 1;
}

int verify_triangulate(const CoefficientTable& table) {
  const Manifold& m = table.manifold();
  const int order = table.max_order();
  std::vector<std::pair<std::string, CoefficientTable>> rebuilt;
  switch (m.kind) {
    case ManifoldKind::kCpn:
      rebuilt.emplace_back("general", solve_general(m, order));
      rebuilt.emplace_back("closed", cpn_closed_table(m.cpn_dim, order));
      rebuilt.emplace_back("recurrence", cpn_recurrence(m.cpn_dim, order));
      break;
    case ManifoldKind::kGrassmann:
      rebuilt.emplace_back("general", solve_general(m, order));
      if (m.grassmann_p == 2 && m.grassmann_q == 2)
        rebuilt.emplace_back("recurrence", solve_g22(order));
      break;
    case ManifoldKind::kOneDim:
      rebuilt.emplace_back("general", solve_general(m, order));
      rebuilt.emplace_back("closed", onedim_closed_table(m, order));
      break;
    case ManifoldKind::kCustom:
      rebuilt.emplace_back("general", solve_general(m, order));
      break;
  }
  int status = 0;
  for (const auto& [name, other] : rebuilt) {
    const bool same = other == table;
    std::cout << "triangulate vs " << name << ": " << (same ? "pass" : "FAIL") << "\n";
    if (!same) status = 1;
  }
  return status;
}

int verify_axioms(const CoefficientTable& table, int order) {
  if (table.manifold().kind != ManifoldKind::kCpn)
    throw std::invalid_argument("--axioms needs a cpn table");
  if (order > table.max_order())
    throw std::invalid_argument("--order exceeds the table's maximum order");
  const int dim = table.manifold().cpn_dim;
  const ChartMetric chart = cpn_chart_metric(dim);
  auto fn = [&](const std::string& text) { return lower(parse_expression(text, dim), dim); };

  int status = 0;
  auto note = [&status](const std::string& name, bool pass) {
    std::cout << name << ": " << (pass ? "pass" : "FAIL") << "\n";
    if (!pass) status = 1;
  };

  for (const std::string text : {"z1^2*zb1", "1"})
    note("unit law on " + text, check_unit(fn(text), table, order, chart).pass);

  std::vector<std::pair<std::string, std::string>> pairs = {{"z1", "zb1"}, {"z1*zb1", "z1"}};
  if (dim >= 2) pairs.push_back({"z1*zb2", "z2"});
  for (const auto& [a, b] : pairs)
    note("first-order bracket on (" + a + ", " + b + ")",
         check_poisson(fn(a), fn(b), table, chart).pass);

  note("associativity on (zb1, z1, zb1)",
       check_associativity(fn("zb1"), fn("z1"), fn("zb1"), table, order, chart).pass);
  return status;
}

int run_verify(const std::string& table_path, bool residuals, bool axioms, int axiom_order,
               bool triangulate) {
  const CoefficientTable table = io::table_from_json(Json::parse(io::read_file(table_path)));
  if (!residuals && !axioms && !triangulate) residuals = true;
  int status = 0;
  if (residuals) status |= verify_residuals(table);
  if (triangulate) status |= verify_triangulate(table);
  if (axioms) status |= verify_axioms(table, axiom_order >= 0 ? axiom_order : table.max_order());
  return status;
}

int run_expand(const std::string& table_path, int hbar_order) {
  const CoefficientTable table = io::table_from_json(Json::parse(io::read_file(table_path)));
  std::cout << io::csv_series(table, hbar_order);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact star-product coefficient tables for locally symmetric Kahler geometries"};
  app.require_subcommand(1);

  std::string manifold_spec, method, out_path, csv_path, f_text, g_text, table_path;
  int order = 0, hbar_order = -1, axiom_order = -1;
  bool residuals = false, axioms = false, triangulate = false;

  CLI::App* coeffs = app.add_subcommand("coeffs", "Compute a coefficient table");
  coeffs->add_option("--manifold", manifold_spec,
                     "cpn:N | grassmann:p,q | g22 | onedim:g,R | custom:file")
      ->required();
  coeffs->add_option("--order", order, "Maximum coefficient order")->required();
  coeffs->add_option("--method", method, "general | closed | recurrence");
  coeffs->add_option("--out", out_path, "Output table JSON path")->required();
  coeffs->add_option("--csv", csv_path, "Optional CSV export of the h-series");
  coeffs->add_option("--hbar-order", hbar_order, "Series truncation for --csv");

  CLI::App* star_cmd = app.add_subcommand("star", "Evaluate a star product on a CP^N chart");
  star_cmd->add_option("--manifold", manifold_spec, "cpn:N")->required();
  star_cmd->add_option("--order", order, "Truncation order")->required();
  star_cmd->add_option("--f", f_text, "Left factor expression")->required();
  star_cmd->add_option("--g", g_text, "Right factor expression")->required();
  star_cmd->add_option("--out", out_path, "Output JSON path (stdout when omitted)");

  CLI::App* verify = app.add_subcommand("verify", "Check a table against its contracts");
  verify->add_option("--table", table_path, "Table JSON path")->required();
  verify->add_flag("--residuals", residuals, "Check the recurrence equations order by order");
  verify->add_flag("--axioms", axioms, "Check unit/bracket/associativity (cpn tables)");
  verify->add_option("--order", axiom_order, "Axiom truncation order (default: table order)");
  verify->add_flag("--triangulate", triangulate, "Recompute by every applicable method and compare");

  CLI::App* expand = app.add_subcommand("expand", "Print the h-series CSV of a table");
  expand->add_option("--table", table_path, "Table JSON path")->required();
  expand->add_option("--hbar-order", hbar_order, "Series truncation")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_input_error(e.what());
    return 2;
  }

  try {
    if (coeffs->parsed()) return run_coeffs(manifold_spec, order, method, out_path, csv_path, hbar_order);
    if (star_cmd->parsed()) return run_star(manifold_spec, order, f_text, g_text, out_path);
    if (verify->parsed()) return run_verify(table_path, residuals, axioms, axiom_order, triangulate);
    if (expand->parsed()) return run_expand(table_path, hbar_order);
  } catch (const std::exception& e) {
    report_input_error(e.what());
    return 2;
  }
  return 0;
}
