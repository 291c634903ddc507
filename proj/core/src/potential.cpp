#include "octodpw/potential.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace octodpw {

using nlohmann::json;

namespace {

int mod4(int k) { return ((k % 4) + 4) % 4; }

std::complex<double> ipow(std::complex<double> s, int n) {
  if (n < 0) return 1.0 / ipow(s, -n);
  std::complex<double> r = 1.0;
  for (int k = 0; k < n; ++k) r *= s;
  return r;
}

std::complex<double> read_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidInput, "expected [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

json write_complex(std::complex<double> c) { return json::array({c.real(), c.imag()}); }

template <class T>
T required(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

LieElement payload_to_element(int grade, const std::vector<std::complex<double>>& p) {
  const auto need = [&](std::size_t n) {
    if (p.size() != n) {
      throw Error(ErrorCode::InvalidInput, "grade " + std::to_string(grade) + " payload needs " + std::to_string(n) +
                                               " complex numbers, got " + std::to_string(p.size()));
    }
  };
  switch (mod4(grade)) {
    case 3:
      need(4);
      return grade_minus1({p[0], p[1], p[2], p[3]});
    case 1:
      need(4);
      return grade_plus1({p[0], p[1], p[2], p[3]});
    case 0:
      need(6);
      return grade0({0.0, p[0], p[1], p[2]}, {0.0, p[3], p[4], p[5]});
    default:
      need(3);
      return grade2({0.0, p[0], p[1], p[2]});
  }
}

std::vector<std::complex<double>> element_to_payload(int grade, const LieElement& v) {
  switch (mod4(grade)) {
    case 3:
    case 1: {
      const CQuaternion w = 2.0 * v.t.x;
      return {w.w, w.x, w.y, w.z};
    }
    case 0:
      return {v.alpha.x, v.alpha.y, v.alpha.z, v.delta.x, v.delta.y, v.delta.z};
    default:
      return {v.beta.x, v.beta.y, v.beta.z};
  }
}

PotentialSpec parse_potential(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("potential JSON: ") + e.what());
  }
  PotentialSpec s;
  try {
    const json& d = j.at("domain");
    s.domain = Grid{required<double>(d, "u_min"), required<double>(d, "u_max"), required<double>(d, "v_min"),
                    required<double>(d, "v_max"), required<int>(d, "nu"), required<int>(d, "nv")};
    const json& b = j.at("basepoint");
    if (!b.is_array() || b.size() != 2) throw Error(ErrorCode::InvalidInput, "basepoint must be [u0, v0]");
    s.basepoint = {b[0].get<double>(), b[1].get<double>()};
    s.truncation = required<int>(j, "truncation");
    s.lambda_samples.clear();
    for (const json& l : j.at("lambda_samples")) s.lambda_samples.push_back(read_complex(l));
    if (j.contains("center")) s.center = read_complex(j.at("center"));
    for (const json& t : j.at("potential")) {
      PotentialTerm term;
      term.power = required<int>(t, "power");
      term.grade = required<int>(t, "grade");
      for (const json& c : t.at("coeff_poly")) {
        std::vector<std::complex<double>> payload;
        for (const json& x : c.at("value")) payload.push_back(read_complex(x));
        term.coeff_poly.push_back({required<int>(c, "z_power"), payload_to_element(term.grade, payload)});
      }
      s.potential.push_back(std::move(term));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("potential JSON: ") + e.what());
  }
  return s;
}

PotentialSpec load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_potential(ss.str());
}

std::string dump_potential(const PotentialSpec& s) {
  json j;
  j["domain"] = {{"u_min", s.domain.u_min}, {"u_max", s.domain.u_max}, {"v_min", s.domain.v_min},
                 {"v_max", s.domain.v_max}, {"nu", s.domain.nu},       {"nv", s.domain.nv}};
  j["basepoint"] = json::array({s.basepoint.real(), s.basepoint.imag()});
  j["truncation"] = s.truncation;
  j["lambda_samples"] = json::array();
  for (auto l : s.lambda_samples) j["lambda_samples"].push_back(write_complex(l));
  if (s.center != std::complex<double>(0.0, 0.0)) j["center"] = write_complex(s.center);
  j["potential"] = json::array();
  for (const auto& t : s.potential) {
    json jt{{"power", t.power}, {"grade", t.grade}, {"coeff_poly", json::array()}};
    for (const auto& c : t.coeff_poly) {
      json vals = json::array();
      for (auto x : element_to_payload(t.grade, c.value)) vals.push_back(write_complex(x));
      jt["coeff_poly"].push_back({{"z_power", c.z_power}, {"value", vals}});
    }
    j["potential"].push_back(jt);
  }
  return j.dump(2);
}

std::pair<int, int> basepoint_index(const PotentialSpec& s) {
  const Grid& g = s.domain;
  const double fi = (s.basepoint.real() - g.u_min) / g.hu();
  const double fj = (s.basepoint.imag() - g.v_min) / g.hv();
  const int i = static_cast<int>(std::lround(fi)), j = static_cast<int>(std::lround(fj));
  if (std::abs(fi - i) > 1e-9 || std::abs(fj - j) > 1e-9 || i < 0 || j < 0 || i >= g.nu || j >= g.nv) {
    throw Error(ErrorCode::InvalidInput, "basepoint is not a grid point");
  }
  return {i, j};
}

LieElement evaluate_term(const PotentialTerm& term, std::complex<double> z, std::complex<double> center) {
  LieElement acc;
  const std::complex<double> s = z - center;
  for (const auto& c : term.coeff_poly) acc += ipow(s, c.z_power) * c.value;
  return acc;
}

TwistedLoop evaluate(const PotentialSpec& spec, std::complex<double> z) {
  int lo = 0, hi = 0;
  for (const auto& t : spec.potential) lo = std::min(lo, t.power), hi = std::max(hi, t.power);
  TwistedLoop l(lo, hi);
  for (const auto& t : spec.potential) l[t.power] += evaluate_term(t, z, spec.center);
  return l;
}

std::vector<ValidationIssue> validate_potential(const PotentialSpec& s) {
  std::vector<ValidationIssue> out;
  const Grid& g = s.domain;
  if (!(g.u_max > g.u_min) || !(g.v_max > g.v_min) || g.nu < 5 || g.nv < 5) {
    out.push_back({ErrorCode::InvalidInput, "domain needs u_max > u_min, v_max > v_min and at least 5x5 points"});
    return out;
  }
  if (s.truncation < 2) out.push_back({ErrorCode::InvalidInput, "truncation must be at least 2"});
  try {
    basepoint_index(s);
  } catch (const Error& e) {
    out.push_back({e.code(), e.what()});
  }
  if (s.lambda_samples.empty()) out.push_back({ErrorCode::InvalidInput, "lambda_samples is empty"});
  for (auto l : s.lambda_samples) {
    if (std::abs(std::abs(l) - 1.0) > 1e-12) {
      out.push_back({ErrorCode::InvalidInput, "lambda sample off the unit circle"});
      break;
    }
  }
  bool has_pole = false;
  bool has_minus1 = false;
  for (const auto& t : s.potential) {
    if (t.power < -2) {
      out.push_back({ErrorCode::InvalidInput, "power " + std::to_string(t.power) + " below -2"});
    }
    if (t.power > s.truncation) {
      out.push_back({ErrorCode::InvalidInput, "power " + std::to_string(t.power) + " above the truncation"});
    }
    if (mod4(t.power) != mod4(t.grade)) {
      out.push_back({ErrorCode::GradingViolation, "power " + std::to_string(t.power) + " carries grade " +
                                                      std::to_string(t.grade) + "; needs grade " +
                                                      std::to_string(mod4(t.power)) + " mod 4"});
    }
    for (const auto& c : t.coeff_poly) {
      if (grade_defect(c.value, t.power) > 1e-12 * std::max(1.0, max_abs(c.value))) {
        out.push_back({ErrorCode::GradingViolation, "coefficient of power " + std::to_string(t.power) +
                                                        " is not in grade " + std::to_string(mod4(t.power))});
      }
      if (c.z_power < 0) has_pole = true;
    }
    if (t.power == -1) has_minus1 = true;
  }
  if (has_pole) {
    const auto c = s.center;
    if (c.real() >= g.u_min && c.real() <= g.u_max && c.imag() >= g.v_min && c.imag() <= g.v_max) {
      out.push_back({ErrorCode::PoleInDomain, "pole at (" + std::to_string(c.real()) + "," +
                                                  std::to_string(c.imag()) + ") inside the domain"});
    }
  }
  if (!has_minus1) {
    out.push_back({ErrorCode::ImmersionConditionFail, "no lambda^-1 term"});
  } else if (out.empty()) {
    for (int j = 0; j < g.nv; ++j) {
      for (int i = 0; i < g.nu; ++i) {
        LieElement m1;
        for (const auto& t : s.potential)
          if (t.power == -1) m1 += evaluate_term(t, g.z(i, j), s.center);
        if (max_abs(m1) < 1e-12) {
          out.push_back({ErrorCode::ImmersionConditionFail, "mu_{-1} vanishes at grid point (" + std::to_string(i) +
                                                                "," + std::to_string(j) + ")"});
          return out;
        }
      }
    }
  }
  return out;
}

void require_valid(const PotentialSpec& spec) {
  const auto issues = validate_potential(spec);
  if (!issues.empty()) throw Error(issues.front().code, issues.front().message);
}

PotentialSpec vacuum_potential(const CQuaternion& w, const Grid& domain, int truncation) {
  PotentialSpec s;
  s.domain = domain;
  s.basepoint = {domain.u_min, domain.v_min};
  s.truncation = truncation;
  s.potential.push_back({-1, -1, {{0, grade_minus1(w)}}});
  return s;
}

}  // namespace octodpw
