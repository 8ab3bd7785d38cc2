#include "graphpass/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace graphpass::io {

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidInput, std::string(what) + ": " + e.what());
  }
}

Eigen::VectorXd table_of(const json& j, const char* what) {
  if (!j.is_array()) throw Error(Errc::InvalidInput, std::string(what) + " must be an array");
  Eigen::VectorXd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = j[i].get<double>();
  return v;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(Errc::IoError, "write to '" + path.string() + "' failed");
}

// ---------------------------------------------------------------------------
// Graph

WeightedGraph graph_from_json(const json& j) {
  return guarded("graph file", [&] {
    std::vector<VertexSpec> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back({v.at("id").get<std::string>(), v.at("mu").get<double>()});
    std::vector<EdgeSpec> edges;
    for (const auto& e : j.at("edges"))
      edges.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(), e.at("w").get<double>()});
    std::optional<Truncation> trunc;
    if (auto it = j.find("truncation"); it != j.end())
      trunc = Truncation{it->at("family").get<std::string>(), it->at("base").get<std::string>(),
                         it->at("radius").get<int>()};
    return build_graph(vertices, edges, std::move(trunc));
  });
}

json graph_to_json(const WeightedGraph& g) {
  json vertices = json::array();
  for (Index x = 0; x < g.size(); ++x) vertices.push_back({{"id", g.id(x)}, {"mu", g.mu(x)}});
  json edges = json::array();
  for (Index x = 0; x < g.size(); ++x)
    for (const Neighbor& n : g.neighbors(x))
      if (x < n.index) edges.push_back({{"a", g.id(x)}, {"b", g.id(n.index)}, {"w", n.weight}});
  json out = {{"vertices", vertices}, {"edges", edges}};
  if (const auto& t = g.truncation())
    out["truncation"] = {{"family", t->family}, {"base", t->base}, {"radius", t->radius}};
  return out;
}

WeightedGraph read_graph(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  return graph_from_json(guarded("graph file", [&] { return json::parse(text); }));
}

void write_graph(const std::filesystem::path& path, const WeightedGraph& g) {
  write_text(path, graph_to_json(g).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// Problem

ProblemSpec problem_from_json(const json& j) {
  return guarded("problem file", [&] {
    ProblemSpec spec;
    const json& pot = j.at("potential");
    if (pot.contains("table")) {
      spec.potential = Potential::table(table_of(pot.at("table"), "potential table"));
    } else {
      const json& p = pot.at("profile");
      spec.potential = Potential::profile({p.at("h0").get<double>(), p.value("c", 0.0),
                                           p.value("alpha", 0.0), p.at("x0").get<std::string>()});
    }

    const json& nl = j.at("nonlinearity");
    const auto family = nl.at("family").get<std::string>();
    if (family != "power") throw Error(Errc::InvalidInput, "unknown nonlinearity family '" + family + "'");
    const json& a = nl.contains("a") ? nl.at("a") : json(1.0);
    if (a.is_array())
      spec.nonlinearity = std::make_shared<PowerNonlinearity>(nl.at("p").get<double>(), table_of(a, "a"));
    else
      spec.nonlinearity = std::make_shared<PowerNonlinearity>(nl.at("p").get<double>(), a.get<double>());

    if (auto it = j.find("perturbation"); it != j.end() && !it->is_null())
      spec.perturbation = PerturbationSpec{it->at("eps").get<double>(),
                                           table_of(it->at("g").at("table"), "g table")};
    return spec;
  });
}

ProblemSpec read_problem(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  return problem_from_json(guarded("problem file", [&] { return json::parse(text); }));
}

Problem bind(const ProblemSpec& spec, const WeightedGraph& g) {
  std::optional<PerturbationSource> pert;
  if (spec.perturbation) pert.emplace(spec.perturbation->eps, spec.perturbation->g);
  return Problem(g, spec.potential.evaluate(g), spec.nonlinearity, std::move(pert));
}

// ---------------------------------------------------------------------------
// CSV

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_solution_csv(std::ostream& os, const WeightedGraph& g, const Eigen::VectorXd& u) {
  os << "vertex_id,value\n";
  for (Index x = 0; x < g.size(); ++x) os << g.id(x) << ',' << format_double(u(x)) << '\n';
}

void write_solution_csv(const std::filesystem::path& path, const WeightedGraph& g,
                        const Eigen::VectorXd& u) {
  std::ostringstream os;
  write_solution_csv(os, g, u);
  write_text(path, os.str());
}

Eigen::VectorXd read_solution_csv(const std::filesystem::path& path, const WeightedGraph& g) {
  std::istringstream in(read_text(path));
  Eigen::VectorXd u(g.size());
  std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header && line == "vertex_id,value") {
      header = false;
      continue;
    }
    header = false;
    // ids may contain commas (lattice coordinates): split at the last one
    const auto comma = line.rfind(',');
    if (comma == std::string::npos) throw Error(Errc::InvalidInput, "malformed CSV row '" + line + "'");
    const Index x = g.index_of(line.substr(0, comma));
    if (seen[static_cast<std::size_t>(x)]) throw Error(Errc::InvalidInput, "vertex '" + g.id(x) + "' listed twice");
    seen[static_cast<std::size_t>(x)] = true;
    try {
      u(x) = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "malformed value in row '" + line + "'");
    }
  }
  for (Index x = 0; x < g.size(); ++x)
    if (!seen[static_cast<std::size_t>(x)]) throw Error(Errc::InvalidInput, "no value for vertex '" + g.id(x) + "'");
  return u;
}

void write_ray_csv(std::ostream& os, const RayProbe& probe) {
  os << "t,J\n";
  for (std::size_t k = 0; k < probe.t.size(); ++k)
    os << format_double(probe.t[k]) << ',' << format_double(probe.energy[k]) << '\n';
}

void write_rim_csv(std::ostream& os, const RimProbe& probe) {
  const json header = {{"radius", probe.radius},
                       {"tau", number_or_null(probe.tau)},
                       {"rho", number_or_null(probe.rho)},
                       {"delta", number_or_null(probe.delta)},
                       {"r_eps", number_or_null(probe.r_eps)},
                       {"lambda1", probe.lambda1},
                       {"min_energy", probe.min_energy},
                       {"exhaustive", probe.exhaustive}};
  os << "# " << header.dump() << '\n' << "sample_index,J\n";
  for (std::size_t k = 0; k < probe.energy.size(); ++k) os << k << ',' << format_double(probe.energy[k]) << '\n';
}

// ---------------------------------------------------------------------------
// JSON views

json to_json(const EnergyBreakdown& e) {
  return {{"dirichlet", e.dirichlet}, {"potential", e.potential}, {"nonlinear", e.nonlinear},
          {"source", e.source}, {"total", e.total}};
}

namespace {

json check_json(const HypothesisCheck& c) {
  json w = json::object();
  for (const auto& [k, v] : c.witness) w[k] = number_or_null(v);
  return {{"verdict", std::string(to_string(c.verdict))}, {"detail", c.detail}, {"witness", w}};
}

}  // namespace

json to_json(const HypothesisReport& r) {
  json shells = json::array();
  for (const auto& s : r.shells)
    shells.push_back({{"radius", s.radius}, {"count", s.count}, {"inv_h_mass", s.inv_h_mass},
                      {"tail_mass", s.tail_mass}, {"min_h", s.min_h}});
  json samples = json::array();
  for (const auto& [s, v] : r.f3_samples) samples.push_back({s, v});
  return {{"H1", check_json(r.h1)},       {"H2", check_json(r.h2)},
          {"H2prime", check_json(r.h2prime)}, {"F1", check_json(r.f1)},
          {"F1prime", check_json(r.f1prime)}, {"F2", check_json(r.f2)},
          {"F3", check_json(r.f3)},       {"shells", shells},
          {"F3_samples", samples}};
}

json to_json(const SolutionCertificate& c) {
  json prov = json::object();
  for (const auto& [k, v] : c.provenance) prov[k] = v;
  return {{"residual_inf", c.residual_inf},
          {"residual_l2", c.residual_l2},
          {"min_value", c.min_value},
          {"positive", c.positive},
          {"energy", to_json(c.energy)},
          {"weak_form_max", c.weak_form_max},
          {"hypotheses", to_json(c.hypotheses)},
          {"lambda1", c.lambda1},
          {"embedding_check", c.embedding_check},
          {"provenance", prov}};
}

json to_json(const SolveOutcome& s) {
  json out = {{"classification", std::string(to_string(s.classification))},
              {"energy", s.energy},
              {"residual_inf", s.residual_inf},
              {"iterations", s.iterations},
              {"min_value", s.min_value}};
  if (!s.max_energy_history.empty()) out["path_max_energy_final"] = s.max_energy_history.back();
  if (std::isfinite(s.pairing)) out["pairing"] = s.pairing;
  if (std::isfinite(s.h_norm_sq)) out["h_norm_sq"] = s.h_norm_sq;
  return out;
}

json to_json(const EigenResult& e) {
  return {{"lambda1", e.lambda1}, {"residual", e.residual}, {"iterations", e.iterations}};
}

// ---------------------------------------------------------------------------
// Digests

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string file_digest(const std::filesystem::path& path) { return digest(read_text(path)); }

}  // namespace graphpass::io
