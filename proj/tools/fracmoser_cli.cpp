// Experiment runner: reproducible, file-emitting commands over the library.
//
// Subcommands: constants, moser, fraclap, sharpness, solve, validate.
// Exit codes: 0 ok, 1 numeric failure, 2 usage error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fracmoser/fraclap.hpp"
#include "fracmoser/gridfield.hpp"
#include "fracmoser/moser_family.hpp"
#include "fracmoser/mt_functionals.hpp"
#include "fracmoser/nehari.hpp"
#include "fracmoser/serialize.hpp"
#include "json.hpp"

using namespace fm;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << text;
}

// JSON config: mirrors the flags one-to-one; flags win on conflict; unknown
// keys are rejected.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  json cfg;
  in >> cfg;
  if (!cfg.is_object())
    throw CLI::ValidationError("--config", "config must be a JSON object");
  for (auto& [key, value] : cfg.items()) {
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw CLI::ValidationError("--config", "unknown key '" + key + "'");
    if (opt->count() > 0) continue;  // flag given explicitly: flags win
    std::string text =
        value.is_string() ? value.get<std::string>() : value.dump();
    opt->add_result(text);
    opt->run_callback();
  }
}

RadialProfile select_profile(const std::string& name, int n, double p,
                             double eps) {
  if (name == "logkernel") return log_kernel_profile(Dim(n));
  MoserParams params(Dim(n), ExponentPair(p), eps);
  if (name == "veps") return v_eps(params);
  if (name == "ueps") return u_eps(params);
  if (name == "feps") return decompose(params).f_eps;
  if (name == "geps") return decompose(params).g_eps;
  if (name == "reps") return decompose(params).R_eps;
  throw CLI::ValidationError("--profile", "unknown profile " + name);
}

struct ValidationCheck {
  std::string name;
  bool ok;
  std::string detail;
};

std::vector<ValidationCheck> run_validation(unsigned seed) {
  std::vector<ValidationCheck> out;
  auto push = [&](const std::string& name, bool ok, const std::string& d) {
    out.push_back({name, ok, d});
  };

  // exact-constant cross identities
  bool consts_ok = true;
  for (int n = 1; n <= 8 && consts_ok; ++n) {
    for (double p : {1.25, 1.5, 2.0, 3.0, 5.0}) {
      ExponentPair e(p);
      const double v =
          alpha_np(Dim(n), e) * std::pow(kappa_np(Dim(n), e), e.p_conj);
      if (std::abs(v - n) > 1e-11 * n) consts_ok = false;
    }
  }
  push("constant-identities", consts_ok, "");

  // log-kernel oracle at a representative pair
  {
    RadialProfile g = log_kernel_profile(Dim(2));
    const double got = frac_lap_pointwise(g, OperatorSpec(0.5), 1.0, 1e-8);
    const double want = log_kernel_constant(Dim(2), 0.5);
    push("log-kernel-oracle", std::abs(got - want) <= 1e-6 * want,
         "value " + fmt17(got));
  }

  // plateau identity on a sampled member
  {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> kpick(3, 7);
    const int k = kpick(rng);
    MoserParams params(Dim(2), ExponentPair(2), std::exp(-k));
    const double plateau = u_eps(params).value(0.0);
    const double lhs = alpha_np(params.n, params.p) * std::pow(plateau, 2.0);
    push("plateau-identity", std::abs(lhs - 2.0 * k) <= 1e-10 * 2.0 * k,
         "k=" + std::to_string(k));
  }

  // truncated exponential checks
  {
    bool ok = j_p(2.5) == 3 &&
              std::abs(phi_truncated(1.0, 2.0) - (std::exp(1.0) - 1.0)) < 1e-14;
    for (double t : {1.0, 10.0, 50.0})
      ok = ok && phi_truncated(t, 2.0) <= std::exp(t);
    push("phi-truncation", ok, "");
  }

  // explicit eigenvalue lower bound against the assembled form
  {
    DiscreteSpace sp = assemble_space(1, 1.0 / 64);
    const double l1 = lambda1(sp).lambda;
    const double bound = poincare_lower_bound(Dim(1), 0.5, 1.0);
    push("poincare-bound", l1 >= bound,
         "lambda1=" + fmt17(l1) + " bound=" + fmt17(bound));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional Moser-Trudinger sharpness toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  int n = 2;
  double p = 2.0, eps = std::exp(-4), sigma = 0.5, tau = 0.0, b = 1.0;
  double h = 1.0 / 64, lambda_frac = 0.5;
  int kmin = 2, kmax = 7, dim = 2, samples = 200, max_iter = 10000;
  unsigned seed = 12345;
  std::string weight = "t^2", profile_name = "ueps", at_list = "1.0";
  std::string mass = "lumped", format = "csv";
  bool use_phi = false, as_json = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file (flags win)");
    sub->add_option("--out", out_path, "output path ('-' = stdout)");
  };

  CLI::App* c_const = app.add_subcommand("constants", "print the exact constants");
  c_const->add_option("--n", n, "dimension");
  c_const->add_option("--p", p, "integrability exponent");
  c_const->add_option("--sigma", sigma, "operator order");
  c_const->add_option("--tau", tau, "operator shift");
  add_common(c_const);

  CLI::App* c_moser = app.add_subcommand("moser", "dump sampled family profiles");
  c_moser->add_option("--n", n, "dimension");
  c_moser->add_option("--p", p, "integrability exponent");
  c_moser->add_option("--eps", eps, "plateau radius");
  c_moser->add_option("--samples", samples, "rows in the dump");
  c_moser->add_flag("--json", as_json, "emit serialized profiles instead of CSV");
  add_common(c_moser);

  CLI::App* c_frac = app.add_subcommand("fraclap", "pointwise operator values");
  c_frac->add_option("--profile", profile_name,
                     "veps|ueps|feps|geps|reps|logkernel");
  c_frac->add_option("--n", n, "dimension");
  c_frac->add_option("--p", p, "integrability exponent");
  c_frac->add_option("--eps", eps, "plateau radius");
  c_frac->add_option("--sigma", sigma, "operator order in (0,1) u (1,2)");
  c_frac->add_option("--tau", tau, "operator shift");
  c_frac->add_option("--at", at_list, "comma-separated radii");
  add_common(c_frac);

  CLI::App* c_sharp = app.add_subcommand("sharpness", "divergence sweep");
  c_sharp->add_option("--n", n, "dimension");
  c_sharp->add_option("--p", p, "integrability exponent");
  c_sharp->add_option("--tau", tau, "shift (> 0 selects the bessel sweep)");
  c_sharp->add_option("--kmin", kmin, "first k (eps = e^{-k})");
  c_sharp->add_option("--kmax", kmax, "last k");
  c_sharp->add_option("--weight", weight, "t^<a>|log|one");
  c_sharp->add_flag("--phi", use_phi, "use the truncated exponential");
  c_sharp->add_flag("--json", as_json, "emit JSON instead of CSV");
  add_common(c_sharp);

  CLI::App* c_solve = app.add_subcommand("solve", "nehari-manifold solve");
  c_solve->set_help_flag("--help", "print help");  // frees -h for the mesh size
  c_solve->add_option("--dim", dim, "1 or 2")->check(CLI::IsMember({1, 2}));
  c_solve->add_option("--h", h, "mesh size (1/h integer)");
  c_solve->add_option("--lambda-frac", lambda_frac, "lambda as a fraction of lambda1");
  c_solve->add_option("--b", b, "exponent coefficient");
  c_solve->add_option("--mass", mass, "lumped|consistent")
      ->check(CLI::IsMember({"lumped", "consistent"}));
  c_solve->add_option("--max-iter", max_iter, "descent iteration budget");
  c_solve->add_option("--csv", out_path, "solution profile CSV path");
  c_solve->add_option("--config", config_path, "JSON config file (flags win)");

  CLI::App* c_val = app.add_subcommand("validate", "run the oracle suite");
  c_val->add_option("--seed", seed, "sampling seed");
  add_common(c_val);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;  // usage
  }
  CLI::App* sub = app.get_subcommands().front();

  try {
    if (!config_path.empty()) apply_config(sub, config_path);

    if (sub == c_const) {
      json out;
      Dim d(n);
      ExponentPair e(p);
      out["n"] = n;
      out["p"] = p;
      out["p_conj"] = e.p_conj;
      out["sphere_measure"] = sphere_measure(d);
      out["ball_volume"] = ball_volume(d);
      out["alpha_np"] = alpha_np(d, e);
      out["kappa_np"] = kappa_np(d, e);
      out["gamma_n"] = gamma_n(d);
      out["sigma"] = sigma;
      out["tau"] = tau;
      if (sigma < 0.5 * n) out["log_kernel_constant"] = log_kernel_constant(d, sigma);
      if (sigma > 0.0 && sigma < 1.0) out["pv_normalizer"] = pv_normalizer(d, sigma);
      if (2.0 * sigma < n) out["riesz_ft_constant"] = riesz_ft_constant(d, 2.0 * sigma);
      out["poincare_lower_bound"] = poincare_lower_bound(d, sigma, 1.0);
      if (n < 16) {
        const int kcl = std::max(1, n / 2);
        if (kcl < n) out["alpha_classical"] = alpha_classical(kcl, d);
      }
      write_text(out_path, out.dump(2) + "\n");
    } else if (sub == c_moser) {
      MoserParams params(Dim(n), ExponentPair(p), eps);
      RadialProfile v = v_eps(params), u = u_eps(params);
      MoserDecomposition dec = decompose(params);
      if (as_json) {
        json out;
        out["v_eps"] = profile_to_json(v, samples, 1.5);
        out["u_eps"] = profile_to_json(u, samples, 1.5);
        out["f_eps"] = profile_to_json(dec.f_eps, samples, 1.5);
        out["g_eps"] = profile_to_json(dec.g_eps, samples, 1.5);
        out["R_eps"] = profile_to_json(dec.R_eps, samples, 1.5);
        write_text(out_path, out.dump(2) + "\n");
      } else {
        std::ostringstream csv;
        csv << "r,v_eps,u_eps,f_eps,g_eps,R_eps\n";
        for (int i = 1; i <= samples; ++i) {
          const double r = 1.5 * i / samples;
          csv << fmt17(r) << ',' << fmt17(v.value(r)) << ',' << fmt17(u.value(r))
              << ',' << fmt17(dec.f_eps.value(r)) << ','
              << fmt17(dec.g_eps.value(r)) << ',' << fmt17(dec.R_eps.value(r))
              << '\n';
        }
        write_text(out_path, csv.str());
      }
    } else if (sub == c_frac) {
      RadialProfile g = select_profile(profile_name, n, p, eps);
      OperatorSpec op(sigma, tau);
      std::ostringstream csv;
      csv << "r,value\n";
      std::stringstream radii(at_list);
      std::string tok;
      while (std::getline(radii, tok, ',')) {
        const double r = std::stod(tok);
        csv << fmt17(r) << ',' << fmt17(frac_lap_at(g, op, r, op.tol)) << '\n';
      }
      write_text(out_path, csv.str());
    } else if (sub == c_sharp) {
      const WeightFn w = WeightFn::parse(weight);
      std::vector<SweepRow> rows;
      if (tau > 0.0) {
        rows = bessel_sharpness_sweep(Dim(n), ExponentPair(p), tau, kmin, kmax,
                                      w, use_phi);
      } else {
        rows = sharpness_sweep(Dim(n), ExponentPair(p), kmin, kmax, w);
      }
      if (as_json) {
        json out = json::array();
        for (const SweepRow& r : rows) {
          out.push_back({{"k", r.k},
                         {"lp_norm_p", r.lp_norm_p},
                         {"seminorm_p", r.seminorm_p},
                         {"bessel_norm_p", r.bessel_norm_p},
                         {"I_eps", r.I_eps},
                         {"weighted", r.weighted}});
        }
        write_text(out_path, out.dump(2) + "\n");
      } else {
        std::ostringstream csv;
        csv << sweep_row_header() << '\n';
        for (const SweepRow& r : rows) csv << sweep_row_csv(r) << '\n';
        write_text(out_path, csv.str());
      }
    } else if (sub == c_solve) {
      if (!(lambda_frac > 0.0 && lambda_frac < 1.0))
        throw std::domain_error("solve: --lambda-frac must lie in (0, 1)");
      if (!(b > 0.0)) throw std::domain_error("solve: --b must be positive");
      DiscreteSpace sp = assemble_space(
          dim, h, mass == "lumped" ? MassKind::lumped : MassKind::consistent);
      Eigenpair e = lambda1(sp);
      ProblemParams pp{lambda_frac * e.lambda, b};
      NehariResult res = minimize_on_S(sp, pp, e.vec, max_iter);
      json out;
      out["dim"] = dim;
      out["h"] = h;
      out["ndof"] = sp.ndof;
      out["mass"] = mass;
      out["lambda1"] = e.lambda;
      out["lambda"] = pp.lambda;
      out["b"] = pp.b;
      out["J"] = res.J_val;
      out["F"] = res.F_val;
      out["I"] = res.I_val;
      out["energy_level"] = res.energy_level;
      out["dj_residual"] = res.dj_residual;
      out["weak_residual"] = weak_residual(sp, pp, res.u);
      out["iterations"] = res.iterations;
      out["converged"] = res.converged;
      out["alpha0_over_2b"] = alpha_np(Dim(dim), ExponentPair(2)) / (2.0 * b);
      std::fputs((out.dump(2) + "\n").c_str(), stdout);
      if (!out_path.empty()) {
        std::ostringstream csv;
        if (dim == 1) {
          csv << "x,u\n";
          for (int i = 0; i < sp.ndof; ++i)
            csv << fmt17((i + 1) * h) << ',' << fmt17(res.u[i]) << '\n';
        } else {
          // nodal values along the diagonal of the square
          csv << "x,u\n";
          const int N = static_cast<int>(std::lround(1.0 / h)) - 1;
          for (int i = 0; i < N; ++i)
            csv << fmt17((i + 1) * h) << ',' << fmt17(res.u[i * N + i]) << '\n';
        }
        write_text(out_path, csv.str());
      }
      if (!res.converged) return 1;
    } else if (sub == c_val) {
      const auto checks = run_validation(seed);
      bool all_ok = true;
      for (const auto& c : checks) {
        std::printf("[%s] %s%s%s\n", c.ok ? "ok" : "FAIL", c.name.c_str(),
                    c.detail.empty() ? "" : ": ", c.detail.c_str());
        all_ok = all_ok && c.ok;
      }
      if (!all_ok) return 1;
    }
  } catch (const CLI::Error& e) {
    app.exit(e);
    return 2;
  } catch (const std::domain_error& e) {
    // parameter outside its documented range: usage error
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    json diag;
    diag["error"] = e.what();
    std::fprintf(stderr, "%s\n", diag.dump().c_str());
    return 1;
  }
  return 0;
}
