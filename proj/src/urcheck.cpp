#include "charur/urcheck.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "charur/error.hpp"
#include "charur/matrixkit.hpp"

namespace charur {

bool saturated(double lhs, double rhs, double tol) {
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
  return std::abs(lhs - rhs) / scale <= tol;
}

PairGaps pair_gaps_from(const RMatrix& sigma, const RMatrix& commut, int i, int j) {
  PairGaps g;
  g.i = i;
  g.j = j;
  g.var_x = sigma(i, i);
  g.var_y = sigma(j, j);
  g.cov = sigma(i, j);
  g.c12 = commut(i, j);
  const double comm_abs = 2.0 * std::abs(g.c12);
  const double c2 = g.c12 * g.c12;
  g.sum_gap = g.var_x + g.var_y - comm_abs;
  g.heis_gap = g.var_x * g.var_y - c2;
  g.schr_gap = g.var_x * g.var_y - g.cov * g.cov - c2;
  g.sum_saturated = saturated(g.var_x + g.var_y, comm_abs);
  g.heis_saturated = saturated(g.var_x * g.var_y, c2);
  g.schr_saturated = saturated(g.var_x * g.var_y, g.cov * g.cov + c2);
  return g;
}

namespace {

ObservableSet pair_set(const Operator& x, const Operator& y) { return ObservableSet::make("pair", {x, y}); }

}  // namespace

PairGaps pair_ur_gaps(const Operator& x, const Operator& y, const StateVector& psi, const MomentOptions& opts) {
  const MomentReport m = moment_report(pair_set(x, y), psi, opts);
  return pair_gaps_from(m.sigma, m.commut, 0, 1);
}

PairGaps pair_ur_gaps(const Operator& x, const Operator& y, const DensityMatrix& rho, const MomentOptions& opts) {
  const MomentReport m = moment_report(pair_set(x, y), rho, opts);
  return pair_gaps_from(m.sigma, m.commut, 0, 1);
}

const OrderGap& URReport::order(int r) const {
  if (r < 1 || r > static_cast<int>(orders.size())) fail(ErrorKind::InvalidInput, "URReport: order out of range");
  return orders[r - 1];
}

const PairGaps& URReport::pair(int i, int j) const {
  for (const PairGaps& p : pairs) {
    if (p.i == i && p.j == j) return p;
  }
  fail(ErrorKind::InvalidInput, "URReport: no such pair");
}

URReport char_ur_report(std::vector<std::string> labels, const RMatrix& sigma, const RMatrix& commut, int n_states) {
  const int n = static_cast<int>(sigma.rows());
  if (n < 2) fail(ErrorKind::InvalidInput, "char_ur_report: need at least two observables");
  URReport rep;
  rep.observables = std::move(labels);
  rep.n_states = n_states;
  rep.sigma = sigma;
  rep.commut = commut;
  const CharCoeffs cs = char_coeffs(sigma);
  const CharCoeffs cc = char_coeffs(commut);
  // e_r of the variances bounds C_r(sigma) from above (Hadamard) and sets the
  // scale against which a vanishing C_r(sigma) is judged.
  std::vector<double> e(n + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int r = i + 1; r >= 1; --r) e[r] += e[r - 1] * sigma(i, i);
  }
  for (int r = 1; r <= n; ++r) {
    OrderGap o;
    o.r = r;
    o.c_sigma = cs[r].real();
    o.c_comm = cc[r].real();
    o.gap = o.c_sigma - o.c_comm;
    const double scale = std::max({std::abs(o.c_sigma), std::abs(o.c_comm), std::abs(e[r]), 1e-30});
    o.saturated = std::abs(o.gap) / scale <= tol::kSaturation;
    rep.orders.push_back(o);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) rep.pairs.push_back(pair_gaps_from(sigma, commut, i, j));
  }
  return rep;
}

URReport char_ur_report(const ObservableSet& set, const std::vector<StateVector>& states, const MomentOptions& opts) {
  if (states.empty() || states.size() > 8) fail(ErrorKind::InvalidInput, "char_ur_report: accepts 1..8 states");
  const int n = set.size();
  RMatrix sigma = RMatrix::Zero(n, n);
  RMatrix commut = RMatrix::Zero(n, n);
  for (const StateVector& s : states) {
    const MomentReport m = moment_report(set, s, opts);
    sigma += m.sigma;
    commut += m.commut;
  }
  return char_ur_report(set.labels(), sigma, commut, static_cast<int>(states.size()));
}

URReport char_ur_report(const ObservableSet& set, const StateVector& psi, const MomentOptions& opts) {
  return char_ur_report(set, std::vector<StateVector>{psi}, opts);
}

URReport char_ur_report(const ObservableSet& set, const DensityMatrix& rho, const MomentOptions& opts) {
  const MomentReport m = moment_report(set, rho, opts);
  return char_ur_report(set.labels(), m.sigma, m.commut, 1);
}

double two_state_schrodinger(const Operator& x, const Operator& y, const StateVector& psi1, const StateVector& psi2,
                             const MomentOptions& opts) {
  const ObservableSet set = pair_set(x, y);
  const MomentReport a = moment_report(set, psi1, opts);
  const MomentReport b = moment_report(set, psi2, opts);
  // <[X,Y]> = 2i C_12, so 1/4 <[X,Y]>_1 <[Y,X]>_2 = C_12(1) C_12(2).
  return 0.5 * (a.sigma(0, 0) * b.sigma(1, 1) + b.sigma(0, 0) * a.sigma(1, 1)) - a.sigma(0, 1) * b.sigma(0, 1) -
         a.commut(0, 1) * b.commut(0, 1);
}

double one_observable_two_state(const Operator& x, const StateVector& psi1, const StateVector& psi2,
                                const MomentOptions& opts) {
  const ObservableSet set = ObservableSet::make("single", {x});
  // Validates bases and tails the same way moment reports do.
  moment_report(set, psi1, opts);
  moment_report(set, psi2, opts);
  const CVector y1 = x.matrix * psi1.amplitudes();
  const CVector y2 = x.matrix * psi2.amplitudes();
  return y1.squaredNorm() * y2.squaredNorm() - std::norm(y1.dot(y2));
}

ComplementaryPair complementary(const URReport& report, int r, double alpha) {
  const OrderGap& o = report.order(r);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorKind::InvalidScale, "complementary: alpha must be > 0");
  if (alpha < o.c_sigma * (1.0 - 1e-12)) {
    fail(ErrorKind::InvalidScale, "complementary: alpha " + short_num(alpha) + " is below C_r(sigma) = " +
                                      short_num(o.c_sigma));
  }
  ComplementaryPair c;
  c.r = r;
  c.alpha = alpha;
  c.p_sq = 1.0 - o.c_sigma / alpha;
  c.v_sq = o.c_comm / alpha;
  return c;
}

double complementary_scale(const std::vector<URReport>& family, int r) {
  if (family.empty()) fail(ErrorKind::InvalidInput, "complementary_scale: empty family");
  double best = 0.0;
  for (const URReport& rep : family) best = std::max(best, rep.order(r).c_sigma);
  if (!(best > 0.0)) fail(ErrorKind::InvalidScale, "complementary_scale: C_r(sigma) vanishes on the whole family");
  return best;
}

}  // namespace charur
