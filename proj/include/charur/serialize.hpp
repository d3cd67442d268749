#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "charur/dynamics.hpp"
#include "charur/intelligent.hpp"
#include "charur/metrics.hpp"
#include "charur/moments.hpp"
#include "charur/urcheck.hpp"

namespace charur {

using json = nlohmann::json;

// Complex numbers serialize as [re, im]. Doubles use the shortest
// representation that round-trips exactly.

json to_json(cplx z);
cplx complex_from_json(const json& j);

json to_json(const BasisSpec& basis);
BasisSpec basis_from_json(const json& j);

/// {family, params{...}, basis{kind, k|j|s, N}, amplitudes[[re,im],...], tail_mass}
json to_json(const StateVector& psi);
StateVector state_from_json(const json& j);

/// {observables[], means[], sigma[][], commut[][], psd{sigma_min_eig, robertson_min_eig}, tail_mass}
json to_json(const MomentReport& m);

/// {observables[], n_states, orders{r:{c_sigma,c_comm,gap,saturated}}, pairs{"X,Y":{...}}, complementary{r,alpha,P2,V2}}
/// `orders` lists only the requested orders when `only` is non-empty.
json to_json(const URReport& r, const std::vector<int>& only = {});

/// {pairs{"X,Y":{beta[],z,residual,schr_gap}}, robertson_gap, verdict}
json to_json(const MinimizerCertificate& c);

/// {g, D2, observable}
json to_json(const DistanceResult& d);

/// {kind: "omega"|"g123", omega0, samples{t[], omega[] | g1[], g2[], g3[]} | expressions{omega | g1, g2, g3}}
OscillatorProfile profile_from_json(const json& j);

/// Header plus one row per sample:
/// t, re(eps), im(eps), re(u), im(u), re(v), im(v), dq2, dp2, dpq
void write_trajectory_csv(std::ostream& os, const UvTrajectory& uv, double omega0);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace charur
