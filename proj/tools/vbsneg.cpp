// Command-line front end: exact SU(2) symbols, VBS transfer/entanglement
// spectra, negativity, the vanishing-negativity survey, and the analytic
// vs brute-force comparison. JSON by default, CSV where tabular.
//
// Exit codes: 0 success, 1 usage error, 2 numerical-contract violation.

#include "vbsneg/negativity.hpp"
#include "vbsneg/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace vbsneg;

namespace {

json ssr_json(const SignedSqrtRational& v) {
  return {{"sign", v.sign()},
          {"numerator", boost::multiprecision::numerator(v.radicand()).str()},
          {"denominator", boost::multiprecision::denominator(v.radicand()).str()},
          {"float", v.to_double()}};
}

json spectrum_json(const Spectrum& sp) {
  json eigs = json::array();
  for (auto& [v, mult] : sp.eigs) eigs.push_back({{"value", v}, {"multiplicity", mult}});
  return {{"eigenvalues", eigs},
          {"total_dimension", sp.total_dimension},
          {"trace", sp.trace()},
          {"min_eigenvalue", sp.min_eigenvalue()},
          {"source", sp.source == Spectrum::Source::Analytic ? "analytic" : "numeric"}};
}

json sectors_json(const SectorMap& sectors) {
  json out = json::array();
  for (const auto& [R, sec] : sectors) {
    json labels = json::array();
    for (auto& [na, nb] : sec.labels) labels.push_back({na, nb});
    DenseSquare sym = sec.m;
    for (int i = 0; i < sym.n; ++i)
      for (int j = 0; j < sym.n; ++j)
        sym.at(i, j) = 0.5 * (sec.m.at(i, j) + sec.m.at(j, i));
    json eigs = json::array();
    for (double v : jacobi_eigenvalues(std::move(sym))) eigs.push_back(v);
    out.push_back({{"R", R},
                   {"labels", labels},
                   {"eigenvalues", eigs},
                   {"degeneracy", sec.degeneracy()}});
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file " + out_path);
    f << text << "\n";
  }
}

ChainSpec make_spec(const std::string& S, int L1, int LA, int L2, int LB, int L3,
                    const std::string& boundary) {
  ChainSpec spec;
  spec.S = HalfInt::parse(S);
  spec.L1 = L1; spec.LA = LA; spec.L2 = L2; spec.LB = LB; spec.L3 = L3;
  if (boundary == "pbc") spec.boundary = Boundary::Periodic;
  else if (boundary == "edges") spec.boundary = Boundary::SpinHalfEdges;
  else throw CLI::ValidationError("--boundary", "expected pbc or edges");
  spec.validate();
  return spec;
}

// zero eigenvalues reported as exact zeros in summaries, raw values retained
double summary_value(double v) { return std::abs(v) < 1e-13 ? 0.0 : v; }

int run(int argc, char** argv) {
  CLI::App app{"Entanglement spectra and negativity of the generalized spin-S VBS chain"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write output to a file instead of stdout");

  // ---- symbols ----
  auto* sym = app.add_subcommand("symbols", "exact Clebsch-Gordan / 6j / F-matrix values");
  std::vector<std::string> cg_args, sixj_args, fmat_args;
  sym->add_option("--cg", cg_args, "j1 m1 j2 m2 J M")->expected(6);
  sym->add_option("--sixj", sixj_args, "a b c d e f")->expected(6);
  sym->add_option("--fmat", fmat_args, "J1 J2 J3 J4 N J")->expected(6);

  // ---- spectrum ----
  auto* spect = app.add_subcommand("spectrum", "transfer-matrix or density-matrix spectra");
  std::string transfer_S;
  std::vector<std::string> rho_args;
  std::string boundary = "pbc";
  bool as_csv = false;
  spect->add_option("--transfer", transfer_S, "spin S: print the lambda_j table");
  spect->add_option("--rho", rho_args, "S L1 LA L2 LB L3: block density-matrix spectrum")
      ->expected(6);
  spect->add_option("--boundary", boundary, "pbc | edges | thermo");
  spect->add_flag("--csv", as_csv, "flatten to CSV");

  // ---- negativity ----
  auto* negc = app.add_subcommand("negativity", "closed-form or numeric negativity");
  std::vector<std::string> adj_args, gen_args;
  std::string neg_boundary = "pbc";
  negc->add_option("--adjacent", adj_args, "S LA LB (closed form, PBC)")->expected(3);
  negc->add_option("--general", gen_args, "S L1 LA L2 LB L3")->expected(6);
  negc->add_option("--boundary", neg_boundary, "pbc | edges (with --general)");

  // ---- conjecture ----
  auto* conj = app.add_subcommand("conjecture", "vanishing-negativity survey for separated blocks");
  std::string smax = "3";
  int budget = 6;
  conj->add_option("--smax", smax, "largest spin S to scan");
  conj->add_option("--budget", budget, "total-length budget per configuration");

  // ---- oracle ----
  auto* orc = app.add_subcommand("oracle", "brute-force comparison against the analytic path");
  std::vector<std::string> cmp_args;
  std::string orc_boundary = "pbc";
  orc->add_option("--compare", cmp_args, "S L1 LA L2 LB L3")->expected(6);
  orc->add_option("--boundary", orc_boundary, "pbc | edges");

  // ---- figure ----
  auto* fig = app.add_subcommand("figure", "negativity vs LA curves at fixed LB");
  int fig_lb = 2, fig_smax = 4, fig_lamax = 40;
  std::string fig_csv;
  fig->add_option("--lb", fig_lb, "fixed length of block B");
  fig->add_option("--smax", fig_smax, "spins 1..smax");
  fig->add_option("--lamax", fig_lamax, "largest LA");
  fig->add_option("--csv", fig_csv, "CSV output path (default: CSV to stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  if (sym->parsed()) {
    const int given = (!cg_args.empty()) + (!sixj_args.empty()) + (!fmat_args.empty());
    if (given != 1)
      throw CLI::ValidationError("symbols", "give exactly one of --cg, --sixj, --fmat");
    auto h = [](const std::string& s) { return HalfInt::parse(s); };
    SignedSqrtRational v;
    json req;
    if (!cg_args.empty()) {
      v = clebsch_gordan(h(cg_args[0]), h(cg_args[1]), h(cg_args[2]), h(cg_args[3]),
                         h(cg_args[4]), h(cg_args[5]));
      req = {{"symbol", "cg"}, {"args", cg_args}};
    } else if (!sixj_args.empty()) {
      v = six_j(h(sixj_args[0]), h(sixj_args[1]), h(sixj_args[2]), h(sixj_args[3]),
                h(sixj_args[4]), h(sixj_args[5]));
      req = {{"symbol", "sixj"}, {"args", sixj_args}};
    } else {
      v = f_matrix(h(fmat_args[0]), h(fmat_args[1]), h(fmat_args[2]), h(fmat_args[3]),
                   h(fmat_args[4]), h(fmat_args[5]));
      req = {{"symbol", "fmat"}, {"args", fmat_args}};
    }
    req.update(ssr_json(v));
    emit(req.dump(2), out_path);
    return 0;
  }

  if (spect->parsed()) {
    if (!transfer_S.empty() == !rho_args.empty())
      throw CLI::ValidationError("spectrum", "give exactly one of --transfer, --rho");
    if (!transfer_S.empty()) {
      TransferSpectrum ts = lambda_spectrum(HalfInt::parse(transfer_S));
      if (as_csv) {
        std::ostringstream os;
        os << "j,numerator,denominator,lambda";
        for (int j = 0; j <= ts.S; ++j)
          os << "\n" << j << "," << boost::multiprecision::numerator(ts.lambda[j])
             << "," << boost::multiprecision::denominator(ts.lambda[j]) << ","
             << json(to_double(ts.lambda[j])).dump();
        emit(os.str(), out_path);
      } else {
        json rows = json::array();
        for (int j = 0; j <= ts.S; ++j)
          rows.push_back({{"j", j},
                          {"numerator", boost::multiprecision::numerator(ts.lambda[j]).str()},
                          {"denominator", boost::multiprecision::denominator(ts.lambda[j]).str()},
                          {"lambda", to_double(ts.lambda[j])}});
        emit(json{{"S", ts.S}, {"lambda", rows}}.dump(2), out_path);
      }
      return 0;
    }
    Spectrum sp;
    json sectors;
    if (boundary == "thermo") {
      HalfInt S = HalfInt::parse(rho_args[0]);
      int LA = std::stoi(rho_args[2]), L2 = std::stoi(rho_args[3]),
          LB = std::stoi(rho_args[4]);
      auto secs = thermodynamic_sectors(S, LA, LB, L2);
      sp = thermodynamic_eigenvalues(S, LA, LB, L2);
      sectors = sectors_json(secs);
    } else {
      ChainSpec spec = make_spec(rho_args[0], std::stoi(rho_args[1]), std::stoi(rho_args[2]),
                                 std::stoi(rho_args[3]), std::stoi(rho_args[4]),
                                 std::stoi(rho_args[5]), boundary);
      auto secs = density_sectors(spec, false);
      sp = diagonalize(secs);
      sectors = sectors_json(secs);
    }
    if (as_csv) {
      std::ostringstream os;
      os << "eigenvalue,multiplicity";
      for (auto& [v, mult] : sp.eigs)
        os << "\n" << json(v).dump() << "," << mult;
      emit(os.str(), out_path);
    } else {
      json out = {{"sectors", sectors},
                  {"trace", sp.trace()},
                  {"min_eigenvalue", summary_value(sp.min_eigenvalue())},
                  {"min_eigenvalue_raw", sp.min_eigenvalue()},
                  {"spectrum", spectrum_json(sp)}};
      emit(out.dump(2), out_path);
    }
    return 0;
  }

  if (negc->parsed()) {
    if (adj_args.empty() == gen_args.empty())
      throw CLI::ValidationError("negativity", "give exactly one of --adjacent, --general");
    NegativityResult r;
    if (!adj_args.empty()) {
      r = adjacent_negativity(HalfInt::parse(adj_args[0]), std::stoi(adj_args[1]),
                              std::stoi(adj_args[2]));
    } else {
      ChainSpec spec = make_spec(gen_args[0], std::stoi(gen_args[1]), std::stoi(gen_args[2]),
                                 std::stoi(gen_args[3]), std::stoi(gen_args[4]),
                                 std::stoi(gen_args[5]), neg_boundary);
      r = numeric_negativity(spec);
    }
    json out = {{"value", r.value},
                {"negative_eigenvalue_sum", r.negative_eigenvalue_sum},
                {"method", to_string(r.method)},
                {"spec", {{"S", r.spec.S.str()}, {"L1", r.spec.L1}, {"LA", r.spec.LA},
                          {"L2", r.spec.L2}, {"LB", r.spec.LB}, {"L3", r.spec.L3},
                          {"boundary", to_string(r.spec.boundary)}}}};
    emit(out.dump(2), out_path);
    return 0;
  }

  if (conj->parsed()) {
    ScanReport rep = conjecture_scan(HalfInt::parse(smax), budget);
    json pts = json::array();
    for (const auto& pt : rep.points)
      pts.push_back({{"S", pt.spec.S.str()},
                     {"L1", pt.spec.L1}, {"LA", pt.spec.LA}, {"L2", pt.spec.L2},
                     {"LB", pt.spec.LB}, {"L3", pt.spec.L3},
                     {"boundary", to_string(pt.spec.boundary)},
                     {"negativity", summary_value(pt.negativity)},
                     {"negativity_raw", pt.negativity},
                     {"counterexample", pt.counterexample}});
    json out = {{"smax", rep.S_max.str()},
                {"budget", rep.length_budget},
                {"threshold", rep.threshold},
                {"all_vanish", !rep.any_counterexample},
                {"points", pts}};
    emit(out.dump(2), out_path);
    return 0;
  }

  if (orc->parsed()) {
    if (cmp_args.empty())
      throw CLI::ValidationError("oracle", "--compare S L1 LA L2 LB L3 is required");
    ChainSpec spec = make_spec(cmp_args[0], std::stoi(cmp_args[1]), std::stoi(cmp_args[2]),
                               std::stoi(cmp_args[3]), std::stoi(cmp_args[4]),
                               std::stoi(cmp_args[5]), orc_boundary);
    oracle::SpectraPair o = oracle::spectra(spec);
    Spectrum rho_sp = density_spectrum(spec);
    Spectrum pt_sp = ptdm_spectrum(spec);
    auto pad_compare = [](std::vector<double> a, const std::vector<double>& b) {
      a.insert(a.end(), b.size() - std::min(a.size(), b.size()), 0.0);
      std::sort(a.begin(), a.end());
      double worst = 0.0;
      for (size_t i = 0; i < b.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
      return worst;
    };
    json out = {
        {"spec", {{"S", spec.S.str()}, {"L1", spec.L1}, {"LA", spec.LA}, {"L2", spec.L2},
                  {"LB", spec.LB}, {"L3", spec.L3}, {"boundary", to_string(spec.boundary)}}},
        {"analytic", {{"rho", spectrum_json(rho_sp)}, {"ptdm", spectrum_json(pt_sp)},
                      {"negativity", -pt_sp.negative_sum()}}},
        {"oracle", {{"rho_dimension", o.rho.size()}, {"negativity", o.negativity}}},
        {"max_abs_deviation", {{"rho", pad_compare(rho_sp.expanded(), o.rho)},
                               {"ptdm", pad_compare(pt_sp.expanded(), o.ptdm)},
                               {"negativity", std::abs(-pt_sp.negative_sum() - o.negativity)}}}};
    emit(out.dump(2), out_path);
    return 0;
  }

  if (fig->parsed()) {
    std::vector<HalfInt> spins;
    for (int s = 1; s <= fig_smax; ++s) spins.emplace_back(s);
    auto rows = figure_data(spins, fig_lb, fig_lamax);
    std::ostringstream os;
    os << "S,LA,negativity";
    for (const auto& r : rows)
      os << "\n" << r.S << "," << r.LA << "," << json(r.negativity).dump();
    emit(os.str(), fig_csv.empty() ? out_path : fig_csv);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const NumericalContractError& e) {
    std::cerr << "numerical contract violated: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
