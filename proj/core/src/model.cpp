#include "helmrays/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace helmrays::model {

using nlohmann::json;

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

double FourierConvention::forward_prefactor(int d) { return std::pow(kTwoPi, -d); }
double FourierConvention::parseval_prefactor(int d) { return std::pow(kTwoPi, d); }

double Scenario::alpha(double eps) const { return std::pow(eps, gamma); }
double Scenario::damping(double eps) const { return eps * alpha(eps); }

std::string ValidationReport::summary() const {
  if (ok) return "accept";
  std::string s = "reject:";
  for (const auto& v : violations) s += " " + v;
  return s;
}

ValidationReport validate(const Scenario& s) {
  ValidationReport r;
  r.h3_threshold = 0.5 + 3.0 * s.gamma / (s.gamma + 1.0);
  if (s.d < 1 || s.d > 3) {
    r.violations.push_back("geometry: d must be 1..3");
  }
  if (norm(s.q1) == 0.0) {
    r.violations.push_back("geometry: q1 must be a point different from the origin");
  }
  if (s.epsilons.empty()) {
    r.violations.push_back("epsilons: empty grid");
  }
  for (std::size_t i = 0; i < s.epsilons.size(); ++i) {
    if (!(s.epsilons[i] > 0.0)) {
      r.violations.push_back("epsilons: entries must be positive");
      break;
    }
    if (i > 0 && !(s.epsilons[i] < s.epsilons[i - 1])) {
      r.violations.push_back("epsilons: grid must be strictly decreasing");
      break;
    }
  }
  if (!(s.gamma > 0.0)) {
    r.violations.push_back("H1: gamma must be positive");
  }
  if (!(s.N > r.h3_threshold)) {
    std::ostringstream os;
    os << "H3: N must exceed 1/2 + 3*gamma/(gamma+1) = " << r.h3_threshold;
    r.violations.push_back(os.str());
  }
  r.ok = r.violations.empty();
  return r;
}

namespace {

json atoms_to_json(const FieldExpr& f) {
  json arr = json::array();
  for (const auto& a : f.atoms) {
    if (!a.plain() || a.s.imag() != 0.0)
      throw std::runtime_error("scenario sources must be plain Gaussian atoms");
    json ja;
    ja["amplitude_re"] = a.amp.real();
    ja["amplitude_im"] = a.amp.imag();
    ja["center"] = std::vector<double>{a.center[0], a.center[1], a.center[2]};
    ja["inv_variance"] = a.s.real();
    ja["modulation"] = std::vector<double>{a.mod[0], a.mod[1], a.mod[2]};
    arr.push_back(ja);
  }
  return arr;
}

Vec3 vec_from_json(const json& j) {
  Vec3 v{0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < std::min<std::size_t>(3, j.size()); ++k) v[k] = j[k].get<double>();
  return v;
}

FieldExpr atoms_from_json(const json& arr, int dim) {
  FieldExpr f;
  f.dim = dim;
  for (const auto& ja : arr) {
    double sr = ja.at("inv_variance").get<double>();
    Complex amp(ja.at("amplitude_re").get<double>(), ja.at("amplitude_im").get<double>());
    Vec3 c = vec_from_json(ja.at("center"));
    Vec3 k = vec_from_json(ja.at("modulation"));
    f = add(f, gaussian(dim, amp, sr, c, k));
  }
  return f;
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["d"] = s.d;
  j["epsilons"] = s.epsilons;
  j["gamma"] = s.gamma;
  j["q1"] = std::vector<double>{s.q1[0], s.q1[1], s.q1[2]};
  j["N"] = s.N;
  j["id"] = s.id;
  j["S0"] = atoms_to_json(s.S0);
  j["S1"] = atoms_to_json(s.S1);
  return j.dump(2) + "\n";
}

Scenario parse_scenario_json(const std::string& text) {
  json j = json::parse(text);
  Scenario s;
  s.d = j.at("d").get<int>();
  s.epsilons = j.at("epsilons").get<std::vector<double>>();
  s.gamma = j.at("gamma").get<double>();
  s.q1 = vec_from_json(j.at("q1"));
  s.N = j.at("N").get<double>();
  if (j.contains("id")) s.id = j["id"].get<std::string>();
  s.S0 = atoms_from_json(j.at("S0"), s.d);
  s.S1 = atoms_from_json(j.at("S1"), s.d);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_json(ss.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario config: " + path);
  out << scenario_to_json(s);
}

}  // namespace helmrays::model
