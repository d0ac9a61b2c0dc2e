#include "sgreen/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "sgreen/errors.hpp"
#include "sgreen/regularization.hpp"
#include "sgreen/table.hpp"

namespace sgreen {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::G0: return "g0";
    case Scenario::Dress: return "dress";
    case Scenario::Scatter: return "scatter";
    case Scenario::Wavepacket: return "wavepacket";
    case Scenario::Scan: return "scan";
    case Scenario::Validate: return "validate";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& name) {
  for (Scenario s : {Scenario::G0, Scenario::Dress, Scenario::Scatter, Scenario::Wavepacket,
                     Scenario::Scan, Scenario::Validate})
    if (to_string(s) == name) return s;
  throw ValidationError("unknown scenario '" + name + "'");
}

namespace {

std::string where(const YAML::Node& n, const std::string& field) {
  std::ostringstream s;
  if (n.Mark().line >= 0) s << "line " << n.Mark().line + 1 << ", ";
  s << "field '" << field << "'";
  return s.str();
}

// Reads the keys of one mapping block, rejecting unknown ones.
class Block {
 public:
  Block(const YAML::Node& node, std::string name, std::set<std::string> allowed)
      : node_(node), name_(std::move(name)) {
    if (!node_) return;
    if (!node_.IsMap()) throw ParseError(where(node_, name_) + ": expected a mapping");
    for (const auto& kv : node_) {
      auto key = kv.first.as<std::string>();
      if (!allowed.count(key))
        throw ParseError(where(kv.first, path(key)) + ": unknown key");
    }
  }

  template <class T>
  void get(const std::string& key, T& out) const {
    if (!node_ || !node_[key]) return;
    const YAML::Node v = node_[key];
    try {
      out = v.as<T>();
    } catch (const YAML::Exception&) {
      throw ParseError(where(v, path(key)) + ": wrong type");
    }
  }

  template <class T>
  void get(const std::string& key, std::optional<T>& out) const {
    if (!node_ || !node_[key]) return;
    T v{};
    get(key, v);
    out = v;
  }

  YAML::Node raw(const std::string& key) const { return node_ ? node_[key] : YAML::Node(); }
  std::string path(const std::string& key) const {
    return name_.empty() ? key : name_ + "." + key;
  }

 private:
  YAML::Node node_;
  std::string name_;
};

std::optional<cplx> read_P(const Block& b) {
  YAML::Node n = b.raw("P");
  if (!n || n.IsNull()) return std::nullopt;
  try {
    if (n.IsScalar()) {
      if (n.as<std::string>() == "limit") return std::nullopt;
      return cplx(n.as<double>(), 0.0);
    }
    if (n.IsSequence() && n.size() == 2) return cplx(n[0].as<double>(), n[1].as<double>());
  } catch (const YAML::Exception&) {
  }
  throw ParseError(where(n, b.path("P")) + ": expected \"limit\", a number or [re, im]");
}

}  // namespace

void validate(const ScenarioConfig& c) {
  if (!(c.grid.n >= 2)) throw ValidationError("n >= 2");
  if (!(c.grid.xmin < c.grid.xmax)) throw ValidationError("xmin < xmax");
  if (!(c.frequency.im > 0.0)) throw ValidationError("im > 0");
  if (!(c.margin > 0.0)) throw ValidationError("margin > 0");

  const auto& m = c.mass;
  if (m.type == "constant") {
    if (!(m.value > 0.0)) throw ValidationError("mass > 0");
  } else if (m.type == "smooth") {
    if (!(m.left > 0.0) || !(m.right > 0.0)) throw ValidationError("mass > 0");
    if (!(m.width > 0.0) || !(m.bump_width > 0.0)) throw ValidationError("mass width > 0");
  } else if (m.type == "table") {
    if (m.path.empty()) throw ValidationError("mass table path is set");
  } else {
    throw ValidationError("mass.type is one of constant, smooth, table");
  }

  const auto& v = c.potential;
  if (v.type == "harmonic" || v.type == "linear") {
    if (!(v.half_width > 0.0)) throw ValidationError("half_width > 0");
  } else if (v.type == "piecewise") {
    if (v.breaks.size() < 2) throw ValidationError("piecewise needs at least two breaks");
    if (!std::is_sorted(v.breaks.begin(), v.breaks.end(), std::less_equal<>()))
      throw ValidationError("breaks strictly increasing");
    if (v.coeffs.size() + 1 != v.breaks.size())
      throw ValidationError("one coefficient list per piece");
  } else if (v.type == "table") {
    if (v.path.empty()) throw ValidationError("potential table path is set");
  } else if (v.type != "free") {
    throw ValidationError("potential.type is one of free, harmonic, linear, piecewise, table");
  }

  const auto& p = c.packet;
  if (!(p.sigma > 0.0)) throw ValidationError("sigma > 0");
  if (p.times.empty()) throw ValidationError("at least one output time");
  for (double t : p.times)
    if (!(t >= 0.0)) throw ValidationError("times >= 0");
  if (p.panels == 0) throw ValidationError("panels >= 1");
  if (!(p.support > 0.0)) throw ValidationError("support > 0");
  if (!(p.eta > 0.0)) throw ValidationError("packet eta > 0");

  const auto& s = c.scan;
  if (!(s.k > 0.0)) throw ValidationError("scan k > 0");
  if (s.epsilons.empty()) throw ValidationError("at least one epsilon");
  for (std::size_t i = 0; i < s.epsilons.size(); ++i) {
    if (!(s.epsilons[i] > 0.0)) throw ValidationError("epsilon > 0");
    if (i > 0 && !(s.epsilons[i] < s.epsilons[i - 1]))
      throw ValidationError("epsilons strictly decreasing");
  }
  if (!(s.layers_per_epsilon > 0.0)) throw ValidationError("layers_per_epsilon > 0");
  RegularizationSpec{parse_shape(s.shape), s.epsilons.back(), s.cutoff}.validate();
}

ScenarioConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ParseError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ParseError("line 1: configuration must be a mapping");

  ScenarioConfig c;
  c.base_dir = base_dir;
  Block top(root, "",
            {"scenario", "output", "margin", "mass", "potential", "frequency", "singular", "grid",
             "scatter", "packet", "scan"});
  if (!root["scenario"]) throw ParseError("field 'scenario': missing");
  std::string tag;
  top.get("scenario", tag);
  try {
    c.scenario = parse_scenario(tag);
  } catch (const ValidationError&) {
    throw ParseError(where(root["scenario"], "scenario") +
                     ": expected g0, dress, scatter, wavepacket, scan or validate");
  }
  top.get("output", c.output);
  top.get("margin", c.margin);

  Block mass(root["mass"], "mass",
             {"type", "value", "left", "right", "center", "width", "bump", "bump_center",
              "bump_width", "path"});
  mass.get("type", c.mass.type);
  mass.get("value", c.mass.value);
  mass.get("left", c.mass.left);
  mass.get("right", c.mass.right);
  mass.get("center", c.mass.center);
  mass.get("width", c.mass.width);
  mass.get("bump", c.mass.bump);
  mass.get("bump_center", c.mass.bump_center);
  mass.get("bump_width", c.mass.bump_width);
  mass.get("path", c.mass.path);

  Block pot(root["potential"], "potential",
            {"type", "level", "omega", "field", "half_width", "breaks", "coeffs", "left", "right",
             "path"});
  pot.get("type", c.potential.type);
  pot.get("level", c.potential.level);
  pot.get("omega", c.potential.omega);
  pot.get("field", c.potential.field);
  pot.get("half_width", c.potential.half_width);
  pot.get("breaks", c.potential.breaks);
  pot.get("coeffs", c.potential.coeffs);
  pot.get("left", c.potential.left);
  pot.get("right", c.potential.right);
  pot.get("path", c.potential.path);

  Block freq(root["frequency"], "frequency", {"re", "im"});
  freq.get("re", c.frequency.re);
  freq.get("im", c.frequency.im);

  Block sing(root["singular"], "singular", {"alpha", "beta", "P"});
  sing.get("alpha", c.singular.alpha);
  sing.get("beta", c.singular.beta);
  c.singular.P = read_P(sing);

  Block grid(root["grid"], "grid", {"xmin", "xmax", "n"});
  grid.get("xmin", c.grid.xmin);
  grid.get("xmax", c.grid.xmax);
  grid.get("n", c.grid.n);

  Block sc(root["scatter"], "scatter", {"x", "x_prime"});
  sc.get("x", c.scatter.x);
  sc.get("x_prime", c.scatter.x_prime);

  Block pk(root["packet"], "packet", {"x0", "k0", "sigma", "times", "panels", "support", "eta"});
  pk.get("x0", c.packet.x0);
  pk.get("k0", c.packet.k0);
  pk.get("sigma", c.packet.sigma);
  pk.get("times", c.packet.times);
  pk.get("panels", c.packet.panels);
  pk.get("support", c.packet.support);
  pk.get("eta", c.packet.eta);

  Block scan(root["scan"], "scan",
             {"alpha", "beta", "k", "epsilons", "shape", "cutoff", "layers_per_epsilon"});
  scan.get("alpha", c.scan.alpha);
  scan.get("beta", c.scan.beta);
  scan.get("k", c.scan.k);
  scan.get("epsilons", c.scan.epsilons);
  scan.get("shape", c.scan.shape);
  scan.get("cutoff", c.scan.cutoff);
  scan.get("layers_per_epsilon", c.scan.layers_per_epsilon);

  validate(c);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

namespace {

std::string num(double v) { return format_double(v); }

std::vector<std::string> nums(const std::vector<double>& v) {
  std::vector<std::string> out;
  for (double x : v) out.push_back(num(x));
  return out;
}

}  // namespace

std::string dump_config(const ScenarioConfig& c) {
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "scenario" << YAML::Value << to_string(c.scenario);
  if (!c.output.empty()) e << YAML::Key << "output" << YAML::Value << c.output;
  e << YAML::Key << "margin" << YAML::Value << num(c.margin);

  e << YAML::Key << "mass" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "type" << YAML::Value << c.mass.type;
  if (c.mass.type == "constant") {
    e << YAML::Key << "value" << YAML::Value << num(c.mass.value);
  } else if (c.mass.type == "smooth") {
    e << YAML::Key << "left" << YAML::Value << num(c.mass.left);
    e << YAML::Key << "right" << YAML::Value << num(c.mass.right);
    e << YAML::Key << "center" << YAML::Value << num(c.mass.center);
    e << YAML::Key << "width" << YAML::Value << num(c.mass.width);
    e << YAML::Key << "bump" << YAML::Value << num(c.mass.bump);
    e << YAML::Key << "bump_center" << YAML::Value << num(c.mass.bump_center);
    e << YAML::Key << "bump_width" << YAML::Value << num(c.mass.bump_width);
  } else {
    e << YAML::Key << "path" << YAML::Value << c.mass.path;
  }
  e << YAML::EndMap;

  const auto& v = c.potential;
  e << YAML::Key << "potential" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "type" << YAML::Value << v.type;
  if (v.type == "free") {
    e << YAML::Key << "level" << YAML::Value << num(v.level);
  } else if (v.type == "harmonic") {
    e << YAML::Key << "omega" << YAML::Value << num(v.omega);
    e << YAML::Key << "half_width" << YAML::Value << num(v.half_width);
  } else if (v.type == "linear") {
    e << YAML::Key << "field" << YAML::Value << num(v.field);
    e << YAML::Key << "half_width" << YAML::Value << num(v.half_width);
  } else if (v.type == "piecewise") {
    e << YAML::Key << "breaks" << YAML::Value << YAML::Flow << nums(v.breaks);
    e << YAML::Key << "coeffs" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& row : v.coeffs) e << YAML::Flow << nums(row);
    e << YAML::EndSeq;
    e << YAML::Key << "left" << YAML::Value << num(v.left);
    e << YAML::Key << "right" << YAML::Value << num(v.right);
  } else {
    e << YAML::Key << "path" << YAML::Value << v.path;
  }
  e << YAML::EndMap;

  e << YAML::Key << "frequency" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "re" << YAML::Value << num(c.frequency.re);
  e << YAML::Key << "im" << YAML::Value << num(c.frequency.im);
  e << YAML::EndMap;

  e << YAML::Key << "singular" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "alpha" << YAML::Value << num(c.singular.alpha);
  e << YAML::Key << "beta" << YAML::Value << num(c.singular.beta);
  e << YAML::Key << "P" << YAML::Value;
  if (c.singular.P)
    e << YAML::Flow << YAML::BeginSeq << num(c.singular.P->real()) << num(c.singular.P->imag())
      << YAML::EndSeq;
  else
    e << "limit";
  e << YAML::EndMap;

  e << YAML::Key << "grid" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "xmin" << YAML::Value << num(c.grid.xmin);
  e << YAML::Key << "xmax" << YAML::Value << num(c.grid.xmax);
  e << YAML::Key << "n" << YAML::Value << c.grid.n;
  e << YAML::EndMap;

  switch (c.scenario) {
    case Scenario::Scatter:
      e << YAML::Key << "scatter" << YAML::Value << YAML::Flow << YAML::BeginMap;
      if (c.scatter.x) e << YAML::Key << "x" << YAML::Value << num(*c.scatter.x);
      if (c.scatter.x_prime) e << YAML::Key << "x_prime" << YAML::Value << num(*c.scatter.x_prime);
      e << YAML::EndMap;
      break;
    case Scenario::Wavepacket:
      e << YAML::Key << "packet" << YAML::Value << YAML::Flow << YAML::BeginMap;
      e << YAML::Key << "x0" << YAML::Value << num(c.packet.x0);
      e << YAML::Key << "k0" << YAML::Value << num(c.packet.k0);
      e << YAML::Key << "sigma" << YAML::Value << num(c.packet.sigma);
      e << YAML::Key << "times" << YAML::Value << YAML::Flow << nums(c.packet.times);
      e << YAML::Key << "panels" << YAML::Value << c.packet.panels;
      e << YAML::Key << "support" << YAML::Value << num(c.packet.support);
      e << YAML::Key << "eta" << YAML::Value << num(c.packet.eta);
      e << YAML::EndMap;
      break;
    case Scenario::Scan:
      e << YAML::Key << "scan" << YAML::Value << YAML::Flow << YAML::BeginMap;
      e << YAML::Key << "alpha" << YAML::Value << num(c.scan.alpha);
      e << YAML::Key << "beta" << YAML::Value << num(c.scan.beta);
      e << YAML::Key << "k" << YAML::Value << num(c.scan.k);
      e << YAML::Key << "epsilons" << YAML::Value << YAML::Flow << nums(c.scan.epsilons);
      e << YAML::Key << "shape" << YAML::Value << c.scan.shape;
      e << YAML::Key << "cutoff" << YAML::Value << num(c.scan.cutoff);
      e << YAML::Key << "layers_per_epsilon" << YAML::Value << num(c.scan.layers_per_epsilon);
      e << YAML::EndMap;
      break;
    default: break;
  }
  e << YAML::EndMap;
  return e.c_str();
}

namespace {

std::filesystem::path resolve(const ScenarioConfig& c, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !c.base_dir.empty() ? c.base_dir / path : path;
}

}  // namespace

MassProfile make_mass(const ScenarioConfig& c) {
  const auto& m = c.mass;
  if (m.type == "constant") return MassProfile::constant(m.value);
  if (m.type == "smooth")
    return MassProfile::smooth(m.left, m.right, m.center, m.width, m.bump, m.bump_center,
                               m.bump_width);
  return MassProfile::tabulated(load_table(resolve(c, m.path)));
}

PotentialSpec make_potential(const ScenarioConfig& c) {
  const auto& v = c.potential;
  if (v.type == "harmonic") return PotentialSpec::harmonic(v.omega, v.half_width);
  if (v.type == "linear") return PotentialSpec::linear_field(v.field, v.half_width);
  if (v.type == "piecewise")
    return PotentialSpec::piecewise_polynomial(v.breaks, v.coeffs, v.left, v.right);
  if (v.type == "table") return PotentialSpec::tabulated(load_table(resolve(c, v.path)));
  return PotentialSpec::free(v.level);
}

ProblemSpec make_problem(const ScenarioConfig& c) {
  ProblemSpec p;
  p.mass = make_mass(c);
  p.potential = make_potential(c);
  p.omega = Frequency(c.frequency.re, c.frequency.im);
  p.margin = c.margin;
  return p;
}

}  // namespace sgreen
