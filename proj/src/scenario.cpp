#include "synatt/scenario.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "synatt/numfmt.hpp"

namespace synatt {

std::string to_string(ControllerKind k) {
  switch (k) {
    case ControllerKind::csh: return "csh";
    case ControllerKind::ncsh: return "ncsh";
    case ControllerKind::cs_fixed: return "cs-fixed";
  }
  return "unknown";
}

ControllerKind parse_controller_kind(const std::string& s) {
  if (s == "csh") return ControllerKind::csh;
  if (s == "ncsh") return ControllerKind::ncsh;
  if (s == "cs-fixed" || s == "cs_fixed") return ControllerKind::cs_fixed;
  throw std::invalid_argument("unknown controller kind '" + s + "'");
}

std::string VariantSpec::label() const {
  if (kind == ControllerKind::cs_fixed) return q0.value() > 0 ? "cs_q1" : "cs_qm1";
  return to_string(kind);
}

std::vector<std::string> builtin_scenario_names() { return {"sim1", "sim2", "sim3", "sim4", "chatter"}; }

ScenarioSpec builtin_scenario(const std::string& name) {
  ScenarioSpec s;
  s.name = name;
  s.solver.h = 1e-3;
  s.solver.t_max = 10.0;
  s.seed = 42;
  if (name == "sim1") {
    s.variants = {{ControllerKind::csh, LogicState::plus()}, {ControllerKind::cs_fixed, LogicState::plus()}};
    s.Q0_critical = CriticalStart{3, 1, LogicState::plus()};
    s.solver.t_max = 20.0;
    return s;
  }
  const std::vector<VariantSpec> csh_vs_ncsh = {{ControllerKind::csh, LogicState::minus()},
                                                {ControllerKind::ncsh, LogicState::plus()}};
  s.Q0 = Vec4(0.0, 0.6, 0.8, 0.0);
  s.variants = csh_vs_ncsh;
  if (name == "sim2") {
    s.measurement = SignFlipMeasurement{5.0};
    return s;
  }
  if (name == "sim3") {
    s.measurement = GaussianDirectionMeasurement{0.05};
    return s;
  }
  if (name == "sim4") {
    s.measurement = GaussianDirectionMeasurement{0.13};
    return s;
  }
  if (name == "chatter") {
    s.loop = ClosedLoop::kinematic;
    s.kp = 1.0;
    s.variants = {{ControllerKind::ncsh, LogicState::plus()}, {ControllerKind::csh, LogicState::minus()}};
    s.measurement = SignFlipMeasurement{5.0};
    s.solver.t_max = 4.0;
    return s;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw std::invalid_argument("scenario key '" + key + "': cannot parse number '" + s + "'");
  }
  return v;
}

template <class Int>
Int to_int(const std::string& key, const std::string& s) {
  Int v{};
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw std::invalid_argument("scenario key '" + key + "': cannot parse integer '" + s + "'");
  }
  return v;
}

template <int N>
Eigen::Matrix<double, N, 1> to_vec(const std::string& key, const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != N) {
    throw std::invalid_argument("scenario key '" + key + "': expected " + std::to_string(N) + " comma-separated values");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = to_double(key, parts[static_cast<std::size_t>(i)]);
  return v;
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("scenario key '" + key + "': expected true or false");
}

template <class Derived>
std::string join(const Eigen::MatrixBase<Derived>& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_double(v(i));
  }
  return out;
}

}  // namespace

ScenarioSpec parse_scenario(std::istream& in) {
  ScenarioSpec s;
  s.variants.clear();
  std::string measurement = "clean";
  double signflip_hz = 5.0;
  double n_max = 0.0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("scenario line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "name") {
      s.name = val;
    } else if (key == "loop") {
      if (val == "dynamic") s.loop = ClosedLoop::dynamic;
      else if (val == "kinematic") s.loop = ClosedLoop::kinematic;
      else throw std::invalid_argument("scenario key 'loop': expected dynamic or kinematic");
    } else if (key == "variants") {
      for (const std::string& item : split(val, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("scenario key 'variants': expected kind:q0 items");
        s.variants.push_back({parse_controller_kind(trim(item.substr(0, colon))),
                              LogicState(to_int<int>(key, trim(item.substr(colon + 1))))});
      }
    } else if (key == "Q0") {
      if (val.rfind("crit:", 0) == 0) {
        const auto parts = split(val.substr(5), ':');
        if (parts.size() != 3) throw std::invalid_argument("scenario key 'Q0': expected crit:<index>:<+|->:<q>");
        CriticalStart c;
        c.eigen_index = to_int<int>(key, parts[0]);
        if (c.eigen_index < 1 || c.eigen_index > 3) throw std::invalid_argument("scenario key 'Q0': index must be 1..3");
        if (parts[1] != "+" && parts[1] != "-") throw std::invalid_argument("scenario key 'Q0': sign must be + or -");
        c.sign = parts[1] == "+" ? 1 : -1;
        c.q = LogicState(to_int<int>(key, parts[2]));
        s.Q0_critical = c;
      } else {
        s.Q0 = to_vec<4>(key, val);
        s.Q0_critical.reset();
      }
    } else if (key == "omega0") {
      s.omega0 = to_vec<3>(key, val);
    } else if (key == "J") {
      s.inertia_diag = to_vec<3>(key, val);
    } else if (key == "A") {
      s.A_diag = to_vec<3>(key, val);
    } else if (key == "u") {
      s.u = to_vec<3>(key, val);
    } else if (key == "k") {
      s.k = to_double(key, val);
    } else if (key == "delta_h") {
      s.delta_h = to_double(key, val);
    } else if (key == "ncsh_delta") {
      s.ncsh_delta = to_double(key, val);
    } else if (key == "kp") {
      s.kp = to_double(key, val);
    } else if (key == "kd") {
      s.kd = to_double(key, val);
    } else if (key == "measurement") {
      if (val != "clean" && val != "signflip" && val != "gaussian") {
        throw std::invalid_argument("scenario key 'measurement': expected clean, signflip or gaussian");
      }
      measurement = val;
    } else if (key == "signflip_hz") {
      signflip_hz = to_double(key, val);
    } else if (key == "n_max") {
      n_max = to_double(key, val);
    } else if (key == "seed") {
      s.seed = to_int<std::uint64_t>(key, val);
    } else if (key == "step") {
      s.solver.h = to_double(key, val);
    } else if (key == "tmax") {
      s.solver.t_max = to_double(key, val);
    } else if (key == "jmax") {
      s.solver.j_max = to_int<int>(key, val);
    } else if (key == "policy") {
      if (val == "jump") s.solver.jump_policy = JumpPolicy::jump_priority;
      else if (val == "flow") s.solver.jump_policy = JumpPolicy::flow_priority;
      else throw std::invalid_argument("scenario key 'policy': expected jump or flow");
    } else if (key == "renormalize") {
      s.solver.renormalize = to_bool(key, val);
    } else if (key == "experiment") {
      s.experiment_mode = to_bool(key, val);
    } else {
      throw std::invalid_argument("scenario line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (measurement == "signflip") {
    s.measurement = SignFlipMeasurement{signflip_hz};
  } else if (measurement == "gaussian") {
    s.measurement = GaussianDirectionMeasurement{n_max};
  } else {
    s.measurement = CleanMeasurement{};
  }
  if (s.variants.empty()) throw std::invalid_argument("scenario defines no variants");
  s.solver.validate();
  return s;
}

ScenarioSpec load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file '" + path + "'");
  return parse_scenario(in);
}

std::string format_scenario(const ScenarioSpec& s) {
  std::ostringstream o;
  o << "name = " << s.name << "\n";
  o << "loop = " << (s.loop == ClosedLoop::dynamic ? "dynamic" : "kinematic") << "\n";
  o << "variants = ";
  for (std::size_t i = 0; i < s.variants.size(); ++i) {
    o << (i ? ", " : "") << to_string(s.variants[i].kind) << ":" << s.variants[i].q0.value();
  }
  o << "\n";
  if (s.Q0_critical) {
    o << "Q0 = crit:" << s.Q0_critical->eigen_index << ":" << (s.Q0_critical->sign > 0 ? "+" : "-") << ":"
      << s.Q0_critical->q.value() << "\n";
  } else {
    o << "Q0 = " << join(s.Q0) << "\n";
  }
  o << "omega0 = " << join(s.omega0) << "\n";
  o << "J = " << join(s.inertia_diag) << "\n";
  o << "A = " << join(s.A_diag) << "\n";
  o << "u = " << join(s.u) << "\n";
  o << "k = " << format_double(s.k) << "\n";
  o << "delta_h = " << format_double(s.delta_h) << "\n";
  o << "ncsh_delta = " << format_double(s.ncsh_delta) << "\n";
  o << "kp = " << format_double(s.kp) << "\n";
  o << "kd = " << format_double(s.kd) << "\n";
  if (const auto* sf = std::get_if<SignFlipMeasurement>(&s.measurement)) {
    o << "measurement = signflip\nsignflip_hz = " << format_double(sf->frequency_hz) << "\n";
  } else if (const auto* g = std::get_if<GaussianDirectionMeasurement>(&s.measurement)) {
    o << "measurement = gaussian\nn_max = " << format_double(g->n_max) << "\n";
  } else {
    o << "measurement = clean\n";
  }
  o << "seed = " << s.seed << "\n";
  o << "step = " << format_double(s.solver.h) << "\n";
  o << "tmax = " << format_double(s.solver.t_max) << "\n";
  o << "jmax = " << s.solver.j_max << "\n";
  o << "policy = " << (s.solver.jump_policy == JumpPolicy::jump_priority ? "jump" : "flow") << "\n";
  o << "renormalize = " << (s.solver.renormalize ? "true" : "false") << "\n";
  o << "experiment = " << (s.experiment_mode ? "true" : "false") << "\n";
  return o.str();
}

WarpParams warp_params(const ScenarioSpec& s) {
  return WarpParams(QuadraticPotential::diagonal(s.A_diag), s.u.normalized(), s.k);
}

std::shared_ptr<const SpfFamily> make_family(const ScenarioSpec& s, ControllerKind kind) {
  if (kind == ControllerKind::ncsh) return std::make_shared<NcshFamily>(s.ncsh_delta);
  return std::make_shared<CshFamily>(warp_params(s));
}

HybridController make_controller(const ScenarioSpec& s, const VariantSpec& v) {
  auto family = make_family(s, v.kind);
  const SwitchConfig sw(*family, s.delta_h, s.experiment_mode);
  return HybridController(family, sw, Gains{s.kp, s.kd}, v.kind != ControllerKind::cs_fixed);
}

Vec4 initial_attitude(const ScenarioSpec& s) {
  if (!s.Q0_critical) return UnitQuaternion::from_vector(s.Q0).vec();
  const WarpParams W = warp_params(s);
  const CriticalStart& c = *s.Q0_critical;
  const CriticalPoint p = critical_point_for_eigenvector(W, W.base().eigenvector(c.eigen_index - 1), c.q);
  return c.sign > 0 ? p.Q.vec() : (-p.Q).vec();
}

SimulationSetup make_setup(const ScenarioSpec& s, const VariantSpec& v) {
  return SimulationSetup{
      .loop = s.loop,
      .inertia = Inertia::diagonal(s.inertia_diag),
      .controller = make_controller(s, v),
      .measurement = s.measurement,
      .solver = s.solver,
      .initial = PlantState{initial_attitude(s), s.omega0},
      .q0 = v.q0,
      .seed = s.seed,
  };
}

std::vector<VariantRun> run_scenario(const ScenarioSpec& s) {
  std::vector<VariantRun> out;
  for (const VariantSpec& v : s.variants) out.push_back({v, run(make_setup(s, v))});
  return out;
}

}  // namespace synatt
