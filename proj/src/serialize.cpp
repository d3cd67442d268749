#include "charur/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <boost/math/interpolators/makima.hpp>

#include "charur/error.hpp"
#include "charur/expr.hpp"

namespace charur {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::InvalidInput, "json: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

json matrix_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string pair_key(const std::vector<std::string>& labels, int i, int j) { return labels.at(i) + "," + labels.at(j); }

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) bad("complex must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const BasisSpec& b) {
  switch (b.kind) {
    case BasisKind::Fock: return {{"kind", "fock"}, {"N", b.cutoff}};
    case BasisKind::Su11: return {{"kind", "su11"}, {"k", b.k}, {"N", b.cutoff}};
    case BasisKind::Su2: return {{"kind", "su2"}, {"j", b.j}};
    case BasisKind::Multimode: return {{"kind", "multimode"}, {"s", b.modes}, {"N", b.cutoff}};
  }
  bad("unknown basis kind");
}

BasisSpec basis_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) bad("basis kind must be a string");
  const std::string k = kind.get<std::string>();
  auto cutoff = [&]() {
    const json& n = field(j, "N");
    if (!n.is_number_integer()) bad("basis N must be an integer");
    return n.get<int>();
  };
  if (k == "fock") return BasisSpec::fock(cutoff());
  if (k == "su11") return BasisSpec::su11(number(field(j, "k"), "basis k"), cutoff());
  if (k == "su2") return BasisSpec::su2(number(field(j, "j"), "basis j"));
  if (k == "multimode") {
    const json& s = field(j, "s");
    if (!s.is_number_integer()) bad("basis s must be an integer");
    return BasisSpec::multimode(s.get<int>(), cutoff());
  }
  bad("unknown basis kind '" + k + "'");
}

json to_json(const StateVector& psi) {
  json params = json::object();
  for (const auto& [name, value] : psi.params()) params[name] = to_json(value);
  json amps = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) amps.push_back(to_json(psi.amplitudes()(i)));
  return {{"family", psi.family()},
          {"params", std::move(params)},
          {"basis", to_json(psi.basis())},
          {"amplitudes", std::move(amps)},
          {"tail_mass", psi.tail_mass()}};
}

StateVector state_from_json(const json& j) {
  const BasisSpec basis = basis_from_json(field(j, "basis"));
  const json& amps = field(j, "amplitudes");
  if (!amps.is_array()) bad("amplitudes must be an array");
  CVector a(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) a(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
  std::map<std::string, cplx> params;
  if (j.contains("params")) {
    for (const auto& [name, value] : j.at("params").items()) params[name] = complex_from_json(value);
  }
  const std::string family = j.contains("family") ? j.at("family").get<std::string>() : "custom";
  return StateVector::restore(basis, std::move(a), family, std::move(params));
}

json to_json(const MomentReport& m) {
  json means = json::array();
  for (Eigen::Index i = 0; i < m.means.size(); ++i) means.push_back(m.means(i));
  return {{"observables", m.labels},
          {"means", std::move(means)},
          {"sigma", matrix_json(m.sigma)},
          {"commut", matrix_json(m.commut)},
          {"psd", {{"sigma_min_eig", m.sigma_min_eig}, {"robertson_min_eig", m.robertson_min_eig}}},
          {"tail_mass", m.tail_mass}};
}

json to_json(const URReport& r, const std::vector<int>& only) {
  json orders = json::object();
  for (const OrderGap& o : r.orders) {
    if (!only.empty() && std::find(only.begin(), only.end(), o.r) == only.end()) continue;
    orders[std::to_string(o.r)] = {{"c_sigma", o.c_sigma}, {"c_comm", o.c_comm}, {"gap", o.gap}, {"saturated", o.saturated}};
  }
  json pairs = json::object();
  for (const PairGaps& p : r.pairs) {
    pairs[pair_key(r.observables, p.i, p.j)] = {
        {"var_x", p.var_x},       {"var_y", p.var_y},
        {"cov", p.cov},           {"c12", p.c12},
        {"sum_gap", p.sum_gap},   {"heis_gap", p.heis_gap},
        {"schr_gap", p.schr_gap}, {"saturated", {{"sum", p.sum_saturated}, {"heis", p.heis_saturated}, {"schr", p.schr_saturated}}}};
  }
  json out = {{"observables", r.observables}, {"n_states", r.n_states}, {"orders", std::move(orders)}, {"pairs", std::move(pairs)}};
  if (r.complementary) {
    const ComplementaryPair& c = *r.complementary;
    out["complementary"] = {{"r", c.r}, {"alpha", c.alpha}, {"P2", c.p_sq}, {"V2", c.v_sq}};
  }
  return out;
}

json to_json(const MinimizerCertificate& c) {
  json pairs = json::object();
  for (const PairCertificate& p : c.pairs) {
    pairs[pair_key(c.observables, p.i, p.j)] = {{"beta", json::array({to_json(p.beta_i), to_json(p.beta_j)})},
                                                {"z", to_json(p.z)},
                                                {"residual", p.residual},
                                                {"schr_gap", p.schr_gap}};
  }
  return {{"pairs", std::move(pairs)}, {"robertson_gap", c.robertson_gap}, {"verdict", c.verdict}};
}

json to_json(const DistanceResult& d) { return {{"g", d.g}, {"D2", d.d_sq}, {"observable", d.observable}}; }

namespace {

Scalar1D sampled(const json& samples, const char* name) {
  const json& tj = field(samples, "t");
  const json& yj = field(samples, name);
  if (!tj.is_array() || !yj.is_array() || tj.size() != yj.size() || tj.size() < 4) {
    bad(std::string("samples.t and samples.") + name + " must be arrays of equal length >= 4");
  }
  std::vector<double> t, y;
  for (std::size_t i = 0; i < tj.size(); ++i) {
    t.push_back(number(tj[i], "sample time"));
    y.push_back(number(yj[i], "sample value"));
    if (i > 0 && !(t[i] > t[i - 1])) bad("sample times must increase strictly");
  }
  const double lo = t.front(), hi = t.back();
  auto spline = boost::math::interpolators::makima<std::vector<double>>(std::move(t), std::move(y));
  // Held constant outside the sampled window.
  return [spline, lo, hi](double s) { return spline(std::clamp(s, lo, hi)); };
}

Scalar1D expression(const json& exprs, const char* name) {
  const json& e = field(exprs, name);
  if (e.is_number()) {
    const double c = e.get<double>();
    return [c](double) { return c; };
  }
  if (!e.is_string()) bad(std::string("expressions.") + name + " must be a string or number");
  const Expression parsed = Expression::parse(e.get<std::string>());
  return [parsed](double t) { return parsed(t); };
}

}  // namespace

OscillatorProfile profile_from_json(const json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  const double omega0 = j.contains("omega0") ? number(j.at("omega0"), "omega0") : 1.0;
  const bool has_samples = j.contains("samples");
  const bool has_exprs = j.contains("expressions");
  if (has_samples == has_exprs) bad("profile needs exactly one of 'samples' or 'expressions'");
  const json& src = has_samples ? j.at("samples") : j.at("expressions");
  auto get = [&](const char* name) { return has_samples ? sampled(src, name) : expression(src, name); };
  if (kind == "omega") return OscillatorProfile::frequency(get("omega"), omega0);
  if (kind == "g123") return OscillatorProfile::quadratic(get("g1"), get("g2"), get("g3"), omega0);
  bad("profile kind must be 'omega' or 'g123'");
}

void write_trajectory_csv(std::ostream& os, const UvTrajectory& uv, double omega0) {
  const auto old_flags = os.flags();
  const auto old_prec = os.precision();
  os << "t,re(eps),im(eps),re(u),im(u),re(v),im(v),dq2,dp2,dpq\n";
  os << std::setprecision(17);
  const double s = std::sqrt(omega0);
  for (std::size_t i = 0; i < uv.t.size(); ++i) {
    const cplx eps = (uv.u[i] - uv.v[i]) / s;
    const UvMoments m = uv_moments(uv.u[i], uv.v[i]);
    os << uv.t[i] << ',' << eps.real() << ',' << eps.imag() << ',' << uv.u[i].real() << ',' << uv.u[i].imag() << ','
       << uv.v[i].real() << ',' << uv.v[i].imag() << ',' << m.dq2 << ',' << m.dp2 << ',' << m.dpq << '\n';
  }
  os.flags(old_flags);
  os.precision(old_prec);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << text;
}

}  // namespace charur
