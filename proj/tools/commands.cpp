#include "commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "mesh_io.hpp"
#include "octodpw/errors.hpp"
#include "octodpw/identity_suite.hpp"
#include "octodpw/isotropic.hpp"
#include "octodpw/pipeline.hpp"
#include "octodpw/report.hpp"

namespace octodpw::cli {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::FactorizationDiverged:
    case ErrorCode::StepSizeTooCoarse:
      return kDiverged;
    case ErrorCode::OffBigCell:
      return kOffBigCell;
    default:
      return kInvalidInput;
  }
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInvalidInput;
  }
}

double snap(double x) { return std::abs(x) < 1e-13 ? 0.0 : x; }

std::string quat_text(const Quaternion& q) {
  return fmt::format("({:.12g},{:.12g},{:.12g},{:.12g})", snap(q.w), snap(q.x), snap(q.y), snap(q.z));
}

std::string group_text(const GroupElementG0& g) {
  const bool id = abs(g.a - quat::one) < 1e-12 && abs(g.b - quat::one) < 1e-12 && abs(g.c - quat::one) < 1e-12;
  std::string s = id ? "g=Id" : fmt::format("g=(a={},b={},c={})", quat_text(g.a), quat_text(g.b), quat_text(g.c));
  if (g.eflag) s += " composed with L_E";
  return s;
}

PotentialSpec load_with_overrides(const RunConfig& cfg) {
  if (cfg.input.empty()) throw Error(ErrorCode::InvalidInput, "--input is required");
  PotentialSpec spec = load_potential(cfg.input);
  if (cfg.grid) {
    spec.domain.nu = cfg.grid->first;
    spec.domain.nv = cfg.grid->second;
  }
  if (cfg.truncation) spec.truncation = *cfg.truncation;
  if (!cfg.lambdas.empty()) spec.lambda_samples = cfg.lambdas;
  require_valid(spec);
  return spec;
}

std::filesystem::path prepare_out(const RunConfig& cfg) {
  std::filesystem::path p(cfg.out);
  std::filesystem::create_directories(p);
  return p;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
  f << text;
}

struct Check {
  std::string metric;
  double threshold;
};

/// Prints each check present in the report; true when all pass.
bool run_checks(const DiagnosticsReport& r, const std::vector<Check>& checks, std::ostream& out) {
  bool ok = true;
  for (const auto& c : checks) {
    const auto it = r.metrics.find(c.metric);
    if (it == r.metrics.end()) continue;
    const double v = it->second.max;
    const bool pass = v <= c.threshold;
    ok = ok && pass;
    fmt::print(out, "check {} max={:.3e} threshold={:.1e} {}\n", c.metric, v, c.threshold, pass ? "PASS" : "FAIL");
  }
  return ok;
}

}  // namespace

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t a = 0, b = 0;
    const int nu = std::stoi(text.substr(0, x), &a);
    const int nv = std::stoi(text.substr(x + 1), &b);
    if (a != x || b != text.size() - x - 1) throw std::invalid_argument(text);
    return {nu, nv};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidInput, "--grid expects NUxNV, got '" + text + "'");
  }
}

std::vector<std::complex<double>> parse_lambdas(const std::string& text) {
  std::vector<std::complex<double>> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(' '));
    tok.erase(tok.find_last_not_of(' ') + 1);
    if (tok.empty()) continue;
    std::complex<double> lam;
    try {
      if (tok[0] == '@') {
        lam = std::polar(1.0, std::stod(tok.substr(1)) * std::numbers::pi / 180.0);
      } else if (tok.back() == 'i') {
        // a+bi, bi, i, -i
        const std::string body = tok.substr(0, tok.size() - 1);
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;)
          if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
          }
        const std::string re = split == std::string::npos ? "" : body.substr(0, split);
        std::string im = split == std::string::npos ? body : body.substr(split);
        if (im.empty() || im == "+") im = "1";
        if (im == "-") im = "-1";
        lam = {re.empty() ? 0.0 : std::stod(re), std::stod(im)};
      } else {
        std::size_t used = 0;
        lam = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidInput, "cannot parse lambda '" + tok + "'");
    }
    out.push_back(lam);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidInput, "--lambda list is empty");
  return out;
}

std::array<int, 3> parse_projection(const std::string& text) {
  std::array<int, 3> axes{};
  std::stringstream ss(text);
  std::string tok;
  int n = 0;
  while (std::getline(ss, tok, ',')) {
    int v = -1;
    try {
      v = std::stoi(tok);
    } catch (const std::logic_error&) {
    }
    if (n >= 3 || v < 0 || v > 7) throw Error(ErrorCode::InvalidInput, "--project expects i,j,k in 0..7, got '" + text + "'");
    axes[n++] = v;
  }
  if (n != 3) throw Error(ErrorCode::InvalidInput, "--project expects three axes, got '" + text + "'");
  return axes;
}

int cmd_verify_algebra(const RunConfig& cfg, const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Multiply mul = opts.inject_fault ? faulty_multiply() : standard_multiply();
    auto results = run_algebra_identities(cfg.seed, opts.count, mul, cfg.tol.value_or(1e-10));
    const auto geometry = run_geometry_identities(cfg.seed, opts.count, cfg.tol.value_or(1e-9));
    results.insert(results.end(), geometry.begin(), geometry.end());

    nlohmann::ordered_json j;
    j["seed"] = cfg.seed;
    j["count"] = opts.count;
    j["fault_injected"] = opts.inject_fault;
    bool ok = true;
    auto& list = j["identities"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      ok = ok && r.passed();
      list.push_back({{"name", r.name},
                      {"max_residual", r.max_residual},
                      {"samples", r.samples},
                      {"tolerance", r.tolerance},
                      {"passed", r.passed()}});
      if (!r.passed())
        fmt::print(err, "FAIL {} max_residual={:.3e} tolerance={:.1e}\n", r.name, r.max_residual, r.tolerance);
    }
    j["passed"] = ok;
    out << j.dump(2) << "\n";
    return ok ? kOk : kCheckFailed;
  });
}

int cmd_classify(const std::vector<double>& values, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (values.size() != 16)
      throw Error(ErrorCode::InvalidInput, fmt::format("classify needs 16 numbers, got {}", values.size()));
    Frame f;
    for (int k = 0; k < 8; ++k) {
      f.q[k] = values[static_cast<std::size_t>(k)];
      f.qp[k] = values[static_cast<std::size_t>(k + 8)];
    }
    const double tol = cfg.tol.value_or(1e-8);
    const OrbitClass c = classify(f, tol);
    fmt::print(out, "{} p={:.12g}\n", to_string(c.tag), snap(c.p));
    const NormalizedFrame nf = normalize_frame(f);
    if (nf.ambiguous) {
      fmt::print(out, "theta undefined\n");
    } else {
      fmt::print(out, "theta={:.12g}\n", snap(nf.theta));
    }
    if (c.tag == OrbitTag::TypeP1) return kOk;
    fmt::print(out, "threshold={:.12g}\n", branch_threshold(f));
    for (const auto branch : {Branch::Low, Branch::High}) {
      const Reconstruction r = reconstruct(f, branch);
      const Frame back = reassemble(r);
      const double resid = std::max(max_abs(back.q - f.q), max_abs(back.qp - f.qp));
      fmt::print(out, "branch {}: {} alpha={:.12g} beta={:.12g} theta={:.12g} residual={:.1e}\n",
                 branch == Branch::Low ? "low" : "high", group_text(r.g), r.alpha, r.beta, snap(r.theta), resid);
    }
    return kOk;
  });
}

int cmd_dpw(const RunConfig& cfg, const DpwOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PotentialSpec spec = load_with_overrides(cfg);
    const auto dir = prepare_out(cfg);
    PipelineOptions po;
    po.birkhoff = opts.birkhoff;
    po.iwasawa.k_max = cfg.max_toeplitz;
    const DiscreteSurface S = extract_surface(spec, po);
    for (std::size_t k = 0; k < S.lambdas.size(); ++k) {
      const auto obj = dir / fmt::format("surface_l{}.obj", k);
      const auto csv = dir / fmt::format("surface_l{}.csv", k);
      write_obj(obj.string(), S.X[k], cfg.project, S.lambdas[k]);
      write_csv(csv.string(), S.X[k]);
      fmt::print(out, "lambda[{}] = {:.12g}{:+.12g}i -> {}, {}\n", k, S.lambdas[k].real(), S.lambdas[k].imag(),
                 obj.filename().string(), csv.filename().string());
    }
    const DiagnosticsReport report = diagnose(S);
    write_text(dir / "report.json", report.to_json());
    fmt::print(out, "grid {}x{} h={:.6g} truncation {} max K {}\n", S.grid.nu, S.grid.nv, S.grid.h(), spec.truncation,
               S.stats.max_K);
    for (const char* name : {"tension", "zero_curvature", "mean_curvature", "conformality", "singular_fraction"}) {
      const auto it = report.metrics.find(name);
      if (it != report.metrics.end())
        fmt::print(out, "metric {} max={:.3e} mean={:.3e}\n", name, it->second.max, it->second.mean);
    }
    const double t = cfg.tol.value_or(1e-8);
    const bool ok = run_checks(report,
                               {{"factorization.product", t},
                                {"factorization.negative_part", t},
                                {"factorization.unitarity", t},
                                {"factorization.truncation_tail", t},
                                {"reality", t},
                                {"twisting", t},
                                {"rho_unit", t},
                                {"b_isotropy", t},
                                {"omega_isotropy", t},
                                {"family.f_variation", t},
                                {"family.type_mismatch", 0.0}},
                               out);
    if (opts.birkhoff && S.meromorphic) {
      std::size_t off = 0;
      std::string names;
      const Grid& g = S.grid;
      for (int j = 0; j < g.nv; ++j)
        for (int i = 0; i < g.nu; ++i)
          if (!(*S.meromorphic)(i, j).big_cell) {
            ++off;
            if (off <= 20) names += fmt::format(" ({},{})", i, j);
          }
      const double frac = static_cast<double>(off) / static_cast<double>(g.size());
      fmt::print(out, "off big cell: {} points ({:.3g}%)\n", off, 100 * frac);
      if (frac > opts.max_off_big_cell) {
        fmt::print(err, "error: OffBigCell at grid points{}{}\n", names, off > 20 ? " ..." : "");
        return kOffBigCell;
      }
    }
    return ok ? kOk : kCheckFailed;
  });
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.input.empty()) throw Error(ErrorCode::InvalidInput, "--input is required");
    const Field<Octonion> X = read_csv(cfg.input);
    const DiagnosticsReport report = analyze_surface(X);
    const auto dir = prepare_out(cfg);
    write_text(dir / "report.json", report.to_json());
    fmt::print(out, "grid {}x{} h={:.6g}\n", X.grid().nu, X.grid().nv, X.grid().h());
    for (const auto& [name, m] : report.metrics) fmt::print(out, "metric {} max={:.3e} mean={:.3e}\n", name, m.max, m.mean);
    if (!cfg.tol) return kOk;
    const double t = *cfg.tol;
    return run_checks(report, {{"conformality", t}, {"rho_unit", t}, {"b_isotropy", t}, {"omega_isotropy", t}}, out)
               ? kOk
               : kCheckFailed;
  });
}

int cmd_roundtrip(const RunConfig& cfg, const RoundTripOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PotentialSpec spec = load_with_overrides(cfg);
    const auto dir = prepare_out(cfg);
    PipelineOptions po;
    po.iwasawa.k_max = cfg.max_toeplitz;
    const RoundTripResult rt = round_trip(spec, po);
    write_text(dir / "meromorphic.json", dump_potential(rt.meromorphic));
    fmt::print(out, "fit residual {:.3e}\n", rt.fit_residual);
    fmt::print(out, "derivative check {:.3e}\n", rt.derivative_check);
    fmt::print(out, "max condition {:.3e}\n", rt.max_condition);
    fmt::print(out, "deviation {:.3e}\n", rt.deviation);
    fmt::print(out, "off big cell: {} points ({:.3g}%)\n", rt.off_big_cell, 100 * rt.off_big_cell_fraction);
    for (const auto& [i, j] : rt.singular_points) fmt::print(out, "singular grid point ({},{})\n", i, j);
    if (rt.off_big_cell_fraction > opts.max_off_big_cell) {
      fmt::print(err, "error: OffBigCell fraction {:.3g} exceeds {:.3g}\n", rt.off_big_cell_fraction,
                 opts.max_off_big_cell);
      return kOffBigCell;
    }
    const double t = cfg.tol.value_or(1e-6);
    const bool ok = rt.deviation <= t;
    fmt::print(out, "check deviation max={:.3e} threshold={:.1e} {}\n", rt.deviation, t, ok ? "PASS" : "FAIL");
    return ok ? kOk : kCheckFailed;
  });
}

}  // namespace octodpw::cli
