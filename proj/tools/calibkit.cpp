// calibkit — command-line harness for the calibrated-geometry verification
// toolkit: named constants, stabilizers, polar profiles, restraining spaces,
// comass estimation, plane predicates, product structures, and the suite
// runner.

#include <calibkit/cartan.hpp>
#include <calibkit/catalog.hpp>
#include <calibkit/json_io.hpp>
#include <calibkit/models.hpp>
#include <calibkit/numeric.hpp>
#include <calibkit/stabilizer.hpp>
#include <calibkit/verify.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace calibkit;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CALIBKIT_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("CALIBKIT_SEED", "must be an unsigned integer");
    }
  }
  return 1;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

int cmd_dump(const std::string& name) {
  CatalogKey key = CatalogKey::parse(name);
  Json out;
  if ((key.name == "upsilon0" || key.name == "upsilon_star") && key.params.size() == 1) {
    auto [re, im] =
        key.name == "upsilon0" ? upsilon0(key.params[0]) : upsilon_star(key.params[0]);
    out = Json{{"re", form_to_json(re)}, {"im", form_to_json(im)}};
  } else {
    try {
      out = form_to_json(catalog_form(key));
    } catch (const std::invalid_argument&) {
      try {
        out = mat_to_json(catalog_matrix(key));
      } catch (const std::invalid_argument&) {
        out = subspace_to_json(catalog_space(key));
      }
    }
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_stab(const std::string& system, bool as_json) {
  FormSystem sys = system_by_name(system);
  Subspace g = stab_algebra(sys);
  const bool closed = bracket_closed(g);
  std::optional<AdmissibilityReport> adm;
  std::string adm_error;
  try {
    adm = strong_admissibility(sys);
  } catch (const std::invalid_argument& e) {
    adm_error = e.what();
  }
  if (as_json) {
    Json j{{"system", sys.name},
           {"dimension", g.dim()},
           {"bracket_closed", closed},
           {"basis", subspace_to_json(g)}};
    if (adm) {
      j["symbol_rank"] = adm->rank;
      j["expected_rank"] = adm->expected_rank;
      j["kernel_dim"] = adm->kernel_dim;
      j["strongly_admissible"] = adm->strongly_admissible;
    } else {
      j["symbol_rank"] = symbol_rank(sys);
      j["strong_admissibility_error"] = adm_error;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "system " << sys.name << "\n"
              << "  stabilizer dimension: " << g.dim() << "\n"
              << "  bracket closed: " << (closed ? "yes" : "no") << "\n";
    if (adm) {
      std::cout << "  symbol rank: " << adm->rank << " (strong admissibility needs "
                << adm->expected_rank << ")\n"
                << "  kernel dimension: " << adm->kernel_dim << " (cross-check "
                << adm->expected_kernel << ")\n"
                << "  strongly admissible: " << (adm->strongly_admissible ? "yes" : "no") << "\n";
    } else {
      std::cout << "  symbol rank: " << symbol_rank(sys) << "\n"
                << "  strong admissibility: not applicable (" << adm_error << ")\n";
    }
    std::cout << "  basis matrices:\n";
    for (const auto& m : g.basis_matrices()) {
      for (std::size_t i = 0; i < m.rows(); ++i) {
        std::cout << "    ";
        for (std::size_t j = 0; j < m.cols(); ++j) std::cout << to_string(m(i, j)) << " ";
        std::cout << "\n";
      }
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_polar(const std::string& system, std::optional<int> k, bool as_json) {
  FormSystem sys = system_by_name(system);
  if (k) {
    Subspace h = polar_h(sys, *k);
    if (as_json)
      std::cout << Json{{"system", sys.name}, {"k", *k}, {"dim", h.dim()},
                        {"space", subspace_to_json(h)}}
                       .dump(2)
                << "\n";
    else
      std::cout << "dim h_" << *k << " = " << h.dim() << "\n";
    return 0;
  }
  CartanTestResult ct = cartan_test(sys);
  Json ext = Json::array();
  for (int kk = 0; kk < sys.dim; ++kk) {
    auto e = extension_rank_S(sys, kk, &ct.profile);
    ext.push_back(Json{{"k", kk}, {"dim_S", e.dim_S}, {"dim_H", e.dim_H}, {"r", e.r}});
  }
  if (as_json) {
    std::cout << Json{{"system", sys.name},
                      {"h_dims", ct.profile.h_dims},
                      {"c_seq", ct.profile.c_seq},
                      {"g_dim", ct.profile.g_dim},
                      {"cartan_sum", ct.cartan_sum},
                      {"symbol_rank", ct.symbol_rank},
                      {"regularly_presented", ct.regularly_presented},
                      {"extension_ranks", ext}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "system " << sys.name << "\n  h dims: ";
    for (auto d : ct.profile.h_dims) std::cout << d << " ";
    std::cout << "\n  c seq:  ";
    for (auto c : ct.profile.c_seq) std::cout << c << " ";
    std::cout << "\n  Cartan sum c_0..c_{n-1}: " << ct.cartan_sum
              << "\n  symbol rank: " << ct.symbol_rank
              << "\n  regularly presented: " << (ct.regularly_presented ? "yes" : "no") << "\n"
              << "  extension ranks (k: dim_H, r):\n";
    for (const auto& e : ext)
      std::cout << "    " << e["k"] << ": " << e["dim_H"] << ", " << e["r"] << "\n";
  }
  return 0;
}

int cmd_restrain(const std::string& system, bool as_json) {
  if (system != "g2")
    throw CLI::ValidationError("--system", "restraining construction is defined for g2");
  FormSystem sys = system_g2();
  G2Restrainers w = build_g2_restrainers(sys);
  auto su2 = su2_in_g2().basis_matrices();
  auto report = [&](const Subspace& s, int k) {
    return restraining_check(s, sys, k, {matrix_R7()}, su2);
  };
  auto r4 = report(w.w5, 4);
  auto r5 = report(w.w15, 5);
  auto r6 = report(w.w28, 6);
  if (as_json) {
    auto entry = [](const RestrainingReport& r, const Subspace& s, int k) {
      return Json{{"k", k},
                  {"dim", r.w_dim},
                  {"meet_dim", r.meet_dim},
                  {"dims_complementary", r.dims_complementary},
                  {"conj_invariant", r.conj_ok},
                  {"bracket_invariant", r.bracket_ok},
                  {"pass", r.pass},
                  {"space", subspace_to_json(s)}};
    };
    std::cout << Json{{"system", "g2"},
                      {"spaces", Json::array({entry(r4, w.w5, 4), entry(r5, w.w15, 5),
                                              entry(r6, w.w28, 6)})},
                      {"nested", w.w15.contains(w.w5) && w.w28.contains(w.w15)}}
                     .dump(2)
              << "\n";
  } else {
    auto line = [](const char* name, const RestrainingReport& r) {
      std::cout << "  " << name << ": dim " << r.w_dim << ", meet " << r.meet_dim
                << ", complementary " << (r.dims_complementary ? "yes" : "no") << ", conj-inv "
                << (r.conj_ok ? "yes" : "no") << ", su2-inv " << (r.bracket_ok ? "yes" : "no")
                << ", " << (r.pass ? "pass" : "FAIL") << "\n";
    };
    std::cout << "g2 restraining spaces (trace complements of h_4, h_5, h_6)\n";
    line("W5 ", r4);
    line("W15", r5);
    line("W28", r6);
    std::cout << "  nested: " << (w.w15.contains(w.w5) && w.w28.contains(w.w15) ? "yes" : "no")
              << "\n";
  }
  return (r4.pass && r5.pass && r6.pass) ? 0 : 1;
}

int cmd_comass(const std::string& form_key, int p, int samples, int iters, std::uint64_t seed,
               bool as_json) {
  AltForm form = catalog_form(CatalogKey::parse(form_key));
  ComassConfig cfg;
  cfg.restarts = samples;
  cfg.iterations = iters;
  cfg.seed = seed;
  ComassResult r = comass_estimate(to_double(form), p, cfg);
  if (as_json) {
    std::cout << Json{{"form", form_key},
                      {"p", p},
                      {"estimate", r.estimate},
                      {"samples", r.samples},
                      {"iterations", r.iterations},
                      {"seed", r.seed},
                      {"converged", r.converged},
                      {"argmax_frame", frame_to_json(*r.argmax_frame)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "comass estimate for " << form_key << " (p = " << p << "): " << r.estimate
              << "\n  restarts " << r.samples << ", total iterations " << r.iterations
              << ", seed " << r.seed << (r.converged ? "" : "  [iteration cap hit]") << "\n";
  }
  return 0;
}

int cmd_plane(const std::string& check, const std::string& frame_path, bool as_json) {
  Frame f = frame_from_json(load_json(frame_path));
  if (check == "sl") {
    SlVerdict v = sl_predicate(f, 1e-9);
    Json j{{"check", "sl"}, {"is_lagrangian", v.is_lagrangian}};
    if (v.phase) {
      j["phase_re"] = v.phase->real();
      j["phase_im"] = v.phase->imag();
      j["is_special"] = *v.is_special;
      if (v.calibrated_orientation) j["calibrated_orientation"] = *v.calibrated_orientation;
    }
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else {
      std::cout << "lagrangian: " << (v.is_lagrangian ? "yes" : "no") << "\n";
      if (v.phase)
        std::cout << "phase: " << v.phase->real() << " + " << v.phase->imag() << "i\n"
                  << "special: " << (*v.is_special ? "yes" : "no") << "\n";
      else
        std::cout << "phase: undefined (not lagrangian)\n";
    }
    return 0;
  }
  if (check == "coassoc") {
    const AltFormD phid = to_double(phi0());
    const AltFormD spd = to_double(star_phi0());
    auto cols = f.columns();
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int bb = a + 1; bb < 4; ++bb)
        for (int c = bb + 1; c < 4; ++c)
          worst = std::max(worst, std::abs(eval(phid, {cols[a], cols[bb], cols[c]})));
    const bool coassoc = worst <= 1e-9;
    const double value = frame_value(spd, f);
    Json j{{"check", "coassoc"},
           {"phi_residual", worst},
           {"is_coassociative", coassoc},
           {"star_phi_value", value},
           {"is_calibrated", std::abs(value - 1.0) <= 1e-9}};
    if (std::abs(std::abs(value) - 1.0) <= 1e-9)
      j["calibrated_orientation"] = value > 0 ? f.orientation() : -f.orientation();
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << "coassociative: " << (coassoc ? "yes" : "no") << " (phi residual " << worst
                << ")\nstar-phi value: " << value << "\n";
    return 0;
  }
  throw CLI::ValidationError("--check", "expected sl or coassoc");
}

SdTripleD triple_from_json(const Json& j) {
  auto f = [&](const char* key) {
    AltForm a = form_from_json(j.at(key));
    return to_double(a);
  };
  return SdTripleD(f("omega1"), f("omega2"), f("omega3"), f("volume"));
}

int cmd_sdtriple(const std::string& input, bool as_json) {
  Json j = load_json(input);
  SdTripleD t = triple_from_json(j);
  MatD gram = sd_gram(t);
  // allow a uniformly scaled Gram c·I by folding c into the volume form
  double c = gram(0, 0);
  double dev_scaled = 0.0, dev_id = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int jj = 0; jj < 3; ++jj) {
      dev_scaled = std::max(dev_scaled, std::abs(gram(i, jj) - (i == jj ? c : 0.0)));
      dev_id = std::max(dev_id, std::abs(gram(i, jj) - (i == jj ? 1.0 : 0.0)));
    }
  double rescale = 1.0;
  if (dev_id > 1e-9 && dev_scaled <= 1e-9 && c > 0) {
    rescale = c;
    t = SdTripleD(t.omegas[0], t.omegas[1], t.omegas[2], t.vol * c);
  }
  MatD coframe = standardize_sd_triple(t);
  const double residual = sd_identity_residual(t, coframe);
  if (as_json) {
    Json rows = Json::array();
    for (int r = 0; r < 4; ++r) {
      Json row = Json::array();
      for (int cc = 0; cc < 4; ++cc) row.push_back(coframe(r, cc));
      rows.push_back(row);
    }
    std::cout << Json{{"coframe_rows", rows}, {"residual", residual}, {"phi_rescale", rescale}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "coframe rows (alpha_0..alpha_3):\n";
    for (int r = 0; r < 4; ++r) {
      std::cout << "  ";
      for (int cc = 0; cc < 4; ++cc) std::cout << coframe(r, cc) << " ";
      std::cout << "\n";
    }
    std::cout << "residual: " << residual << "\nvolume rescale applied: " << rescale << "\n";
  }
  return 0;
}

int cmd_g2build(const std::string& input) {
  Json j = load_json(input);
  SdTripleD t = triple_from_json(j);
  auto s = build_g2_structure(t);
  std::cout << Json{{"phibar", float_form_to_json(s.phibar)},
                    {"star_phibar", float_form_to_json(s.star_phibar)}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_torus(const std::string& g_path) {
  Json j = load_json(g_path);
  Mat g = mat_from_json(j);
  auto r = torus_metric_roundtrip(g);
  std::cout << Json{{"h", mat_to_json(r.h)},
                    {"g_back", mat_to_json(r.g_back)},
                    {"exact_roundtrip", r.g_back == g},
                    {"divergence_ok", r.divergence_ok}}
                   .dump(2)
            << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, bool full, std::uint64_t seed, const std::string& format,
               const std::string& out_path) {
  VerifyOptions opt;
  opt.seed = seed;
  opt.full = full;
  SuiteReport report = run_suite(suite, opt);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    emit_report(report, format, out);
  } else {
    emit_report(report, format, std::cout);
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calibkit — exact and floating-point verification of calibrated geometry"};
  app.require_subcommand(1);

  std::string name, system = "su3", form_key, frame_path, input, check, format = "table";
  std::string out_path, g_path;
  int p = 0, samples = 200, iters = 500, kval = -1;
  bool as_json = false, full = false;
  std::uint64_t seed = 0;
  bool seed_set = false;

  auto* dump = app.add_subcommand("dump", "emit a catalog object as JSON");
  dump->add_option("--name", name, "catalog key, e.g. phi0, omega0(3), W14, J(3)")->required();

  auto* stab = app.add_subcommand("stab", "stabilizer algebra and strong admissibility");
  stab->add_option("--system", system, "su3|g2|sp2sp1|omega-only|su3-star")->required();
  stab->add_flag("--json", as_json, "machine output");

  auto* polar = app.add_subcommand("polar", "polar profile, Cartan test, extension ranks");
  polar->add_option("--system", system)->required();
  polar->add_option("--k", kval, "single polar space h_k");
  polar->add_flag("--json", as_json);

  auto* restrain = app.add_subcommand("restrain", "construct and check restraining spaces");
  restrain->add_option("--system", system)->required();
  restrain->add_flag("--json", as_json);

  auto* comass = app.add_subcommand("comass", "comass estimation over orthonormal frames");
  comass->add_option("--form", form_key, "catalog form key")->required();
  comass->add_option("--p", p, "form degree")->required();
  comass->add_option("--samples", samples, "ascent restarts");
  comass->add_option("--iters", iters, "iterations per restart");
  auto* comass_seed = comass->add_option("--seed", seed, "RNG seed");
  comass->add_flag("--json", as_json);

  auto* plane = app.add_subcommand("plane", "plane predicates on a frame file");
  plane->add_option("--check", check, "sl|coassoc")->required();
  plane->add_option("--frame", frame_path, "JSON frame file")->required();
  plane->add_flag("--json", as_json);

  auto* sdtriple = app.add_subcommand("sdtriple", "standardize a self-dual triple");
  sdtriple->add_option("--input", input, "JSON file with omega1..omega3 and volume")->required();
  sdtriple->add_flag("--json", as_json);

  auto* g2build = app.add_subcommand("g2build", "product 3-/4-form of a self-dual triple");
  g2build->add_option("--input", input)->required();

  auto* torus = app.add_subcommand("torus", "torus metric correspondence round trip");
  torus->add_option("--g", g_path, "JSON matrix file")->required();

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("--suite", system, "su3|g2|comass|models|all")->required();
  verify->add_flag("--full", full, "include the comass suite in `all`");
  auto* verify_seed = verify->add_option("--seed", seed, "RNG seed (CALIBKIT_SEED fallback)");
  verify->add_option("--format", format, "table|json");
  verify->add_option("--out", out_path, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (dump->parsed()) return cmd_dump(name);
    if (stab->parsed()) return cmd_stab(system, as_json);
    if (polar->parsed())
      return cmd_polar(system, kval >= 0 ? std::optional<int>(kval) : std::nullopt, as_json);
    if (restrain->parsed()) return cmd_restrain(system, as_json);
    if (comass->parsed()) {
      seed_set = comass_seed->count() > 0;
      return cmd_comass(form_key, p, samples, iters, seed_set ? seed : default_seed(), as_json);
    }
    if (plane->parsed()) return cmd_plane(check, frame_path, as_json);
    if (sdtriple->parsed()) return cmd_sdtriple(input, as_json);
    if (g2build->parsed()) return cmd_g2build(input);
    if (torus->parsed()) return cmd_torus(g_path);
    if (verify->parsed()) {
      seed_set = verify_seed->count() > 0;
      return cmd_verify(system, full, seed_set ? seed : default_seed(), format, out_path);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
