#include "charur/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "charur/acceptance.hpp"
#include "charur/error.hpp"
#include "charur/kernels.hpp"
#include "charur/serialize.hpp"
#include "charur/states.hpp"

namespace charur {

namespace {

using Params = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) fail(ErrorKind::InvalidInput, what + ": cannot parse '" + text + "' as a number");
  return x;
}

int parse_int(const std::string& text, const std::string& what) {
  const double x = parse_real(text, what);
  if (x != std::floor(x) || std::abs(x) > 1e9) fail(ErrorKind::InvalidInput, what + ": '" + text + "' is not an integer");
  return static_cast<int>(x);
}

// "re,im", "a+bi", "bi", "i" or a plain real.
cplx parse_complex(const std::string& text, const std::string& what) {
  const std::string s = trim(text);
  if (const auto comma = s.find(','); comma != std::string::npos) {
    return {parse_real(s.substr(0, comma), what), parse_real(s.substr(comma + 1), what)};
  }
  if (!s.empty() && (s.back() == 'i' || s.back() == 'j')) {
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    const std::string re = split == std::string::npos ? "" : body.substr(0, split);
    const std::string im = split == std::string::npos ? body : body.substr(split);
    const double imag = im.empty() || im == "+" ? 1.0 : im == "-" ? -1.0 : parse_real(im, what);
    return {re.empty() ? 0.0 : parse_real(re, what), imag};
  }
  return {parse_real(s, what), 0.0};
}

std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

// ---------------------------------------------------------------------------
// State construction from named parameters.

const std::vector<std::string> kFamilies = {"glauber", "canonical-ss", "squeezed-fock", "bg-cs", "su11-cs",
                                            "su11-intelligent", "even-cs", "odd-cs", "su2-cs", "fock"};

bool has(const Params& p, const char* key) { return p.count(key) > 0; }

const std::string& need(const Params& p, const char* key, const std::string& family) {
  const auto it = p.find(key);
  if (it == p.end()) fail(ErrorKind::InvalidInput, "family " + family + " requires --" + key);
  return it->second;
}

cplx complex_arg(const Params& p, const char* key, const std::string& family) {
  return parse_complex(need(p, key, family), std::string("--") + key);
}

cplx complex_or(const Params& p, const char* key, cplx fallback) {
  return has(p, key) ? parse_complex(p.at(key), std::string("--") + key) : fallback;
}

double real_or(const Params& p, const char* key, double fallback) {
  return has(p, key) ? parse_real(p.at(key), std::string("--") + key) : fallback;
}

SqueezeParams squeeze_from(const Params& p) {
  if (has(p, "u") || has(p, "v")) return SqueezeParams::make(complex_or(p, "u", 1.0), complex_or(p, "v", 0.0));
  return SqueezeParams::polar(real_or(p, "r", 0.0), real_or(p, "theta", 0.0));
}

StateVector build_state(const std::string& family, const Params& p) {
  const bool su11_family = family == "bg-cs" || family == "su11-cs" || family == "su11-intelligent";
  const int cutoff = has(p, "cutoff") ? parse_int(p.at("cutoff"), "--cutoff")
                                      : (su11_family ? kDefaultSu11Cutoff : default_fock_cutoff());
  const double k = real_or(p, "k", 0.5);
  if (family == "glauber") return glauber(complex_arg(p, "alpha", family), cutoff);
  if (family == "fock") return fock_state(parse_int(need(p, "n", family), "--n"), cutoff);
  if (family == "canonical-ss") return canonical_ss(complex_arg(p, "alpha", family), squeeze_from(p), cutoff);
  if (family == "squeezed-fock") return squeezed_fock(parse_int(need(p, "n", family), "--n"), squeeze_from(p), cutoff);
  if (family == "bg-cs") return bg_cs(complex_arg(p, "z", family), k, cutoff);
  if (family == "su11-cs") return su11_cs(complex_arg(p, "xi", family), k, cutoff);
  if (family == "su11-intelligent") {
    IntelligentParams ip;
    ip.u = complex_arg(p, "u", family);
    ip.v = complex_or(p, "v", 0.0);
    ip.w = complex_or(p, "w", 0.0);
    ip.k = k;
    ip.z = has(p, "z") ? complex_arg(p, "z", family)
                       : intelligent_discrete_eigenvalue(ip, has(p, "m") ? parse_int(p.at("m"), "--m") : 0);
    return su11_intelligent(ip, cutoff);
  }
  if (family == "even-cs") return even_odd_cs(complex_arg(p, "alpha", family), Parity::Even, cutoff);
  if (family == "odd-cs") return even_odd_cs(complex_arg(p, "alpha", family), Parity::Odd, cutoff);
  if (family == "su2-cs") return su2_cs(complex_arg(p, "tau", family), real_or(p, "j", 0.5));
  fail(ErrorKind::InvalidInput, "unknown family '" + family + "'");
}

// Registers the state-parameter flags shared by `state` and `scan`.
void add_state_flags(CLI::App* cmd, Params& values) {
  const std::vector<std::pair<const char*, const char*>> flags = {
      {"alpha", "eigenvalue of a (complex: re,im or a+bi)"},
      {"u", "coefficient of the lowering operator"},
      {"v", "coefficient of the raising operator"},
      {"w", "coefficient of K3 (su11-intelligent)"},
      {"r", "squeeze magnitude, with --theta, instead of --u/--v"},
      {"theta", "squeeze direction"},
      {"z", "eigenvalue (bg-cs, su11-intelligent)"},
      {"m", "discrete eigenvalue index (su11-intelligent, default 0)"},
      {"xi", "su(1,1) coherent-state parameter, |xi| < 1"},
      {"k", "Bargmann index (default 1/2)"},
      {"n", "Fock level"},
      {"tau", "su(2) coherent-state parameter"},
      {"j", "spin (default 1/2)"},
      {"cutoff", "basis cutoff N"},
  };
  for (const auto& [name, help] : flags) {
    cmd->add_option_function<std::string>(std::string("--") + name, [&values, key = std::string(name)](const std::string& s) {
      values[key] = s;
    }, help);
  }
}

std::string default_observables(const BasisSpec& b) {
  switch (b.kind) {
    case BasisKind::Fock: return "canonical";
    case BasisKind::Su11: return "su11";
    case BasisKind::Su2: return "su2";
    case BasisKind::Multimode: return "canonical";
  }
  return "canonical";
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) out.push_back(parse_int(item, what));
  }
  return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

// ---------------------------------------------------------------------------
// Verbs.

int cmd_state(const std::string& family, const Params& values, const std::string& path, std::ostream& out) {
  emit(to_json(build_state(family, values)).dump(2) + "\n", path, out);
  return 0;
}

struct ReportArgs {
  std::vector<std::string> states;
  std::string observables;
  std::string orders;
  std::optional<double> alpha_r;
  int r = 0;
  bool certificate = false;
  bool allow_tail = false;
  std::string out;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  std::vector<StateVector> states;
  for (const std::string& f : a.states) states.push_back(state_from_json(read_json_file(f)));
  for (const StateVector& s : states) {
    if (!(s.basis() == states.front().basis())) fail(ErrorKind::BasisMismatch, "report: states live on different bases");
  }
  const BasisSpec& basis = states.front().basis();
  const ObservableSet set = observable_set(a.observables.empty() ? default_observables(basis) : a.observables, basis);
  MomentOptions opts;
  opts.allow_tail = a.allow_tail;

  const std::vector<int> orders = parse_int_list(a.orders, "--orders");
  for (int r : orders) {
    if (r < 1 || r > set.size()) fail(ErrorKind::InvalidInput, "--orders: order " + std::to_string(r) + " outside 1.." + std::to_string(set.size()));
  }
  URReport ur = char_ur_report(set, states, opts);
  if (a.alpha_r) {
    if (a.r < 1 || a.r > set.size()) fail(ErrorKind::InvalidInput, "--r must name an order in 1.." + std::to_string(set.size()));
    ur.complementary = complementary(ur, a.r, *a.alpha_r);
  }
  json j = to_json(ur, orders);
  json moments = json::array();
  for (const StateVector& s : states) moments.push_back(to_json(moment_report(set, s, opts)));
  j["moments"] = std::move(moments);
  if (a.certificate) {
    if (states.size() != 1) fail(ErrorKind::InvalidInput, "--certificate takes exactly one state");
    j["certificate"] = to_json(minimizer_certificate(states.front(), set, opts));
  }
  emit(j.dump(2) + "\n", a.out, out);
  return 0;
}

struct GridAxis {
  std::string name;
  std::vector<double> values;
};

GridAxis parse_axis(const std::string& spec) {
  // name=lo:hi:count
  const auto eq = spec.find('=');
  if (eq == std::string::npos) fail(ErrorKind::InvalidInput, "--param expects name=lo:hi:count, got '" + spec + "'");
  GridAxis axis{trim(spec.substr(0, eq)), {}};
  std::vector<std::string> parts;
  std::stringstream ss(spec.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) fail(ErrorKind::InvalidInput, "--param expects name=lo:hi:count, got '" + spec + "'");
  const double lo = parse_real(parts[0], "--param"), hi = parse_real(parts[1], "--param");
  const int count = parse_int(parts[2], "--param");
  if (count < 1) fail(ErrorKind::InvalidInput, "--param count must be >= 1");
  for (int i = 0; i < count; ++i) axis.values.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  return axis;
}

struct ScanArgs {
  std::string family;
  Params values;
  std::vector<std::string> axes;
  int random = 0;
  std::string observables;
  int jobs = 1;
  std::uint64_t seed = 42;
  int support = 0;
  int complementary_r = 0;
  bool allow_tail = false;
  std::string out;
};

struct ScanRow {
  std::string status = "ok";
  std::string message;
  std::optional<URReport> report;
  double tail = 0.0;
};

int cmd_scan(const ScanArgs& a, std::ostream& out) {
  if (a.random > 0 && !a.family.empty()) fail(ErrorKind::InvalidInput, "scan: --random and --family are exclusive");
  if (a.random <= 0 && a.family.empty()) fail(ErrorKind::InvalidInput, "scan: needs --family or --random");
  std::vector<GridAxis> axes;
  for (const std::string& s : a.axes) axes.push_back(parse_axis(s));
  if (a.random > 0 && !axes.empty()) fail(ErrorKind::InvalidInput, "scan: --param applies to --family scans");

  int total = a.random > 0 ? a.random : 1;
  for (const GridAxis& ax : axes) total *= static_cast<int>(ax.values.size());

  std::optional<BasisSpec> random_basis;
  if (a.random > 0) {
    const std::string obs = a.observables.empty() ? "canonical" : a.observables;
    const int cutoff = has(a.values, "cutoff") ? parse_int(a.values.at("cutoff"), "--cutoff") : 32;
    random_basis = basis_for_observables(obs, cutoff);
  }
  MomentOptions opts;
  opts.allow_tail = a.allow_tail;

  std::vector<ScanRow> rows(total);
  std::vector<std::vector<double>> coords(total);
  kernels::map_grid(total, [&](int idx) {
    ScanRow& row = rows[idx];
    try {
      StateVector psi;
      if (random_basis) {
        std::mt19937_64 rng(a.seed + static_cast<std::uint64_t>(idx));
        psi = random_state(*random_basis, rng, a.support);
      } else {
        Params p = a.values;
        int rest = idx;
        for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
          const int n = static_cast<int>(it->values.size());
          const double x = it->values[rest % n];
          rest /= n;
          p[it->name] = format_number(x);
          coords[idx].insert(coords[idx].begin(), x);
        }
        psi = build_state(a.family, p);
      }
      const ObservableSet set =
          observable_set(a.observables.empty() ? default_observables(psi.basis()) : a.observables, psi.basis());
      row.tail = psi.tail_mass();
      row.report = char_ur_report(set, psi, opts);
    } catch (const Error& e) {
      row.status = std::string(to_string(e.kind()));
      row.message = e.what();
    }
  }, a.jobs);

  const URReport* first = nullptr;
  for (const ScanRow& r : rows) {
    if (r.report) {
      first = &*r.report;
      break;
    }
  }
  double alpha = 0.0;
  if (a.complementary_r > 0 && first) {
    if (a.complementary_r > static_cast<int>(first->observables.size())) fail(ErrorKind::InvalidInput, "--complementary: order too large");
    std::vector<URReport> family;
    for (const ScanRow& r : rows) if (r.report) family.push_back(*r.report);
    alpha = complementary_scale(family, a.complementary_r);
  }

  std::ostringstream os;
  os << std::setprecision(17);
  os << "index";
  for (const GridAxis& ax : axes) os << ',' << ax.name;
  os << ",status,tail_mass";
  const int n = first ? static_cast<int>(first->observables.size()) : 0;
  for (int i = 0; i < n; ++i) os << ",var_" << first->observables[i];
  for (int r = 1; r <= n; ++r) os << ",c_sigma_" << r << ",c_comm_" << r << ",gap_" << r;
  if (first) {
    for (const PairGaps& p : first->pairs) os << ",schr_gap_" << first->observables[p.i] << '_' << first->observables[p.j];
  }
  if (a.complementary_r > 0 && first) os << ",alpha_" << a.complementary_r << ",P2,V2";
  os << '\n';
  for (int idx = 0; idx < total; ++idx) {
    const ScanRow& row = rows[idx];
    os << idx;
    for (double x : coords[idx]) os << ',' << x;
    os << ',' << row.status << ',';
    if (!row.report) {
      const int blanks = n + 3 * n + (first ? static_cast<int>(first->pairs.size()) : 0) + (a.complementary_r > 0 && first ? 3 : 0);
      os << std::string(blanks, ',') << '\n';
      continue;
    }
    const URReport& r = *row.report;
    os << row.tail;
    for (int i = 0; i < n; ++i) os << ',' << r.sigma(i, i);
    for (const OrderGap& g : r.orders) os << ',' << g.c_sigma << ',' << g.c_comm << ',' << g.gap;
    for (const PairGaps& p : r.pairs) os << ',' << p.schr_gap;
    if (a.complementary_r > 0) {
      const ComplementaryPair cp = complementary(r, a.complementary_r, alpha);
      os << ',' << alpha << ',' << cp.p_sq << ',' << cp.v_sq;
    }
    os << '\n';
  }
  emit(os.str(), a.out, out);
  return 0;
}

struct EvolveArgs {
  std::string profile;
  double t0 = 0.0;
  double t1 = 10.0;
  int steps = 1001;
  std::string route = "eps";
  std::string out;
};

int cmd_evolve(const EvolveArgs& a, std::ostream& out) {
  const OscillatorProfile profile = profile_from_json(read_json_file(a.profile));
  if (a.steps < 2) fail(ErrorKind::InvalidInput, "--steps must be >= 2");
  if (!(a.t1 > a.t0)) fail(ErrorKind::InvalidInput, "--t1 must exceed --t0");
  const std::vector<double> grid = linspace(a.t0, a.t1, a.steps);
  const UvTrajectory uv =
      a.route == "flow" ? uv_from_flow(profile, grid) : uv_trajectory(integrate_epsilon(profile, grid), profile.omega0);
  std::ostringstream os;
  write_trajectory_csv(os, uv, profile.omega0);
  emit(os.str(), a.out, out);
  return 0;
}

Operator distance_observable(const std::string& name, const BasisSpec& basis) {
  if (name == "identity") return identity_op(basis);
  if (name == "n+1") {
    if (basis.kind != BasisKind::Fock) fail(ErrorKind::BasisMismatch, "observable n+1 needs a Fock basis");
    Operator x = boson_rep(basis.cutoff).n;
    x.matrix += CMatrix::Identity(basis.cutoff, basis.cutoff);
    x.label = "n+1";
    return x;
  }
  if (name == "K3") {
    if (basis.kind != BasisKind::Su11) fail(ErrorKind::BasisMismatch, "observable K3 needs an su(1,1) basis");
    return su11_rep(basis.k, basis.cutoff).k3;
  }
  fail(ErrorKind::InvalidObservable, "unknown distance observable '" + name + "'");
}

int cmd_distance(const std::string& f1, const std::string& f2, const std::string& observable, std::ostream& out) {
  const StateVector a = state_from_json(read_json_file(f1));
  const StateVector b = state_from_json(read_json_file(f2));
  out << to_json(g_overlap(a, b, distance_observable(observable, a.basis()))).dump(2) << '\n';
  return 0;
}

int cmd_selftest(int jobs, const std::string& only, std::ostream& out) {
  AcceptanceOptions opts;
  opts.jobs = jobs;
  opts.only = parse_int_list(only, "--only");
  const std::vector<CriterionResult> results = run_acceptance(opts);
  int passed = 0;
  for (const CriterionResult& r : results) {
    out << format_result(r) << '\n';
    passed += r.pass ? 1 : 0;
  }
  out << passed << '/' << results.size() << " criteria passed\n";
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent, squeezed and intelligent states with characteristic uncertainty relations", "charur"};
  app.require_subcommand(1);

  std::string family;
  Params state_values;
  std::string state_out;
  CLI::App* state = app.add_subcommand("state", "Build a state and write it as JSON");
  state->add_option("--family", family, "state family")->required()->check(CLI::IsMember(kFamilies));
  add_state_flags(state, state_values);
  state->add_option("--out", state_out, "output file (stdout if omitted)");

  ReportArgs report_args;
  std::optional<double> alpha_r;
  CLI::App* report = app.add_subcommand("report", "Moment and uncertainty-relation report for saved states");
  report->add_option("--state", report_args.states, "state JSON file (repeat for up to 8 states)")->required();
  report->add_option("--observables", report_args.observables, "canonical[:s], su11[:k], su2[:j] or a2-quadratures");
  report->add_option("--orders", report_args.orders, "comma-separated orders to list (default all)");
  auto* alpha_opt = report->add_option("--alpha-r", alpha_r, "complementary-form scale");
  report->add_option("--r", report_args.r, "order of the complementary form")->needs(alpha_opt);
  alpha_opt->needs("--r");
  report->add_flag("--certificate", report_args.certificate, "add the minimizer certificate");
  report->add_flag("--allow-tail", report_args.allow_tail, "report states with tail mass above 1e-8");
  report->add_option("--out", report_args.out, "output file (stdout if omitted)");

  ScanArgs scan_args;
  CLI::App* scan = app.add_subcommand("scan", "Uncertainty gaps over a parameter grid or random states, as CSV");
  scan->add_option("--family", scan_args.family, "state family")->check(CLI::IsMember(kFamilies));
  add_state_flags(scan, scan_args.values);
  scan->add_option("--param", scan_args.axes, "grid axis name=lo:hi:count (repeatable; last varies fastest)");
  scan->add_option("--random", scan_args.random, "number of random states instead of a family grid");
  scan->add_option("--support", scan_args.support, "levels carrying random amplitudes (default 0.8 N)");
  scan->add_option("--observables", scan_args.observables, "observable set");
  scan->add_option("--jobs", scan_args.jobs, "OpenMP threads over grid points")->check(CLI::PositiveNumber);
  scan->add_option("--seed", scan_args.seed, "RNG seed for random scans (default 42)");
  scan->add_option("--complementary", scan_args.complementary_r, "order r; adds alpha_r = scan max, P2 and V2");
  scan->add_flag("--allow-tail", scan_args.allow_tail, "keep points with tail mass above 1e-8");
  scan->add_option("--out", scan_args.out, "output file (stdout if omitted)");

  EvolveArgs evolve_args;
  CLI::App* evolve = app.add_subcommand("evolve", "Squeezing dynamics of a nonstationary oscillator, as CSV");
  evolve->add_option("--profile", evolve_args.profile, "profile JSON file")->required();
  evolve->add_option("--t0", evolve_args.t0, "start time (default 0)");
  evolve->add_option("--t1", evolve_args.t1, "end time (default 10)");
  evolve->add_option("--steps", evolve_args.steps, "number of output samples (default 1001)");
  evolve->add_option("--route", evolve_args.route, "eps or flow")->check(CLI::IsMember({"eps", "flow"}));
  evolve->add_option("--out", evolve_args.out, "output file (stdout if omitted)");

  std::string dist1, dist2, dist_obs = "identity";
  CLI::App* distance = app.add_subcommand("distance", "Uncertainty-based distance between two saved states");
  distance->add_option("--state", dist1, "first state JSON file")->required();
  distance->add_option("--state2", dist2, "second state JSON file")->required();
  distance->add_option("--observable", dist_obs, "identity, n+1 or K3")->check(CLI::IsMember({"identity", "n+1", "K3"}));

  int self_jobs = 1;
  std::string self_only;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the acceptance suite");
  selftest->add_option("--jobs", self_jobs, "OpenMP threads")->check(CLI::PositiveNumber);
  selftest->add_option("--only", self_only, "comma-separated criterion ids");

  std::vector<const char*> argv = {"charur"};
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 64;
  }

  auto error_json = [&](std::string_view kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
  };
  try {
    if (*state) return cmd_state(family, state_values, state_out, out);
    if (*report) {
      report_args.alpha_r = alpha_r;
      return cmd_report(report_args, out);
    }
    if (*scan) return cmd_scan(scan_args, out);
    if (*evolve) return cmd_evolve(evolve_args, out);
    if (*distance) return cmd_distance(dist1, dist2, dist_obs, out);
    if (*selftest) return cmd_selftest(self_jobs, self_only, out);
  } catch (const Error& e) {
    error_json(to_string(e.kind()), e.what());
    return e.is_contract() ? 2 : 1;
  } catch (const json::exception& e) {
    error_json(to_string(ErrorKind::InvalidInput), std::string("json: ") + e.what());
    return 2;
  } catch (const std::exception& e) {
    error_json("internal", e.what());
    return 1;
  }
  err << app.help();
  return 64;
}

}  // namespace charur
