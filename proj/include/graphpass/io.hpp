#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "graphpass/certify.hpp"
#include "graphpass/graph.hpp"
#include "graphpass/model.hpp"
#include "graphpass/solvers.hpp"
#include "graphpass/spectral.hpp"
#include "graphpass/variational.hpp"

namespace graphpass::io {

using json = nlohmann::json;

// Graph file:
//   {"vertices":[{"id":"a","mu":1.0}], "edges":[{"a":"a","b":"b","w":1.0}],
//    "truncation":{"family":"lattice_ball","base":"0,0","radius":3}}
// with each undirected edge listed once; "truncation" is optional.
WeightedGraph graph_from_json(const json& j);
json graph_to_json(const WeightedGraph& g);
WeightedGraph read_graph(const std::filesystem::path& path);
void write_graph(const std::filesystem::path& path, const WeightedGraph& g);

struct PerturbationSpec {
  double eps = 0.0;
  Eigen::VectorXd g;
};

/// Problem file contents before binding to a graph.
struct ProblemSpec {
  Potential potential = Potential::table(Eigen::VectorXd());
  std::shared_ptr<const Nonlinearity> nonlinearity;
  std::optional<PerturbationSpec> perturbation;
};

ProblemSpec problem_from_json(const json& j);
ProblemSpec read_problem(const std::filesystem::path& path);
/// Evaluates the potential on g and validates the result.
Problem bind(const ProblemSpec& spec, const WeightedGraph& g);

/// "vertex_id,value" rows in vertex order, 17 significant digits.
void write_solution_csv(std::ostream& os, const WeightedGraph& g, const Eigen::VectorXd& u);
void write_solution_csv(const std::filesystem::path& path, const WeightedGraph& g,
                        const Eigen::VectorXd& u);
/// Rows may come in any order but must cover every vertex exactly once.
Eigen::VectorXd read_solution_csv(const std::filesystem::path& path, const WeightedGraph& g);

std::string format_double(double v);

json to_json(const EnergyBreakdown& e);
json to_json(const HypothesisReport& r);
json to_json(const SolutionCertificate& c);
json to_json(const SolveOutcome& s);
json to_json(const EigenResult& e);

void write_ray_csv(std::ostream& os, const RayProbe& probe);
/// First line is "# " followed by the JSON header {radius, tau, rho, delta, ...}.
void write_rim_csv(std::ostream& os, const RimProbe& probe);

/// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);
std::string digest(std::string_view bytes);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace graphpass::io
