#include "graphpass/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "graphpass/io.hpp"

namespace graphpass {

namespace {

using io::json;

struct Common {
  std::string graph;
  std::string problem;
};

struct GenArgs {
  std::string family;
  int n = 0, dim = 2, radius = 0, branching = 2, depth = 0;
  double w = 1.0, mu = 1.0;
  std::optional<double> w_max, mu_max;
  std::string out;
};

struct EigArgs {
  double tol = 1e-10;
  int max_iter = 10000;
  std::string eigenfunction;
};

struct CheckArgs {
  std::string mode = "H2";
  double f1_bound = 10.0;
  double lipschitz_range = 10.0;
};

struct SolveArgs {
  double tol = 1e-10;
  int path_nodes = 21;
  int max_iter = 10000;
  std::string out;
  std::optional<double> eps;
};

struct CertifyArgs {
  std::string solution;
  std::string mode = "H2";
  std::string out;
};

struct ProbeArgs {
  std::string kind = "ray";
  std::string vertex;
  double t_max = 10.0;
  int n_points = 101;
  std::optional<double> radius;
  int samples = 1000;
  std::string out;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GRAPHPASS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "GRAPHPASS_SEED is not an unsigned integer");
    }
  }
  return 42;
}

HypothesisMode parse_mode(const std::string& m) {
  if (m == "H2") return HypothesisMode::H2;
  if (m == "H2prime") return HypothesisMode::H2prime;
  throw Error(Errc::InvalidInput, "mode must be H2 or H2prime");
}

Family parse_family(const std::string& f) {
  if (f == "path") return Family::path;
  if (f == "cycle") return Family::cycle;
  if (f == "lattice_ball") return Family::lattice_ball;
  if (f == "tree") return Family::tree;
  throw Error(Errc::InvalidFamilyParams, "unknown family '" + f + "'");
}

void emit(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

std::vector<std::pair<std::string, std::string>> provenance(const std::string& command, const Common& c,
                                                            const SolverConfig& cfg) {
  return {{"command", command},
          {"graph_digest", io::file_digest(c.graph)},
          {"problem_digest", io::file_digest(c.problem)},
          {"tol", io::format_double(cfg.tol)},
          {"path_nodes", std::to_string(cfg.path_nodes)},
          {"max_iter", std::to_string(cfg.max_iter)},
          {"seed", std::to_string(cfg.seed)}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"graphpass: positive solutions of semilinear equations on weighted graphs"};
  app.require_subcommand(1);

  Common common;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--graph", common.graph, "graph JSON file")->required();
    sub->add_option("--problem", common.problem, "problem JSON file")->required();
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { seed = s, seed_given = true; },
        "random seed (default: $GRAPHPASS_SEED or 42)");
  };

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph family member");
  gen_cmd->add_option("--family", gen.family, "path | cycle | lattice_ball | tree")->required();
  gen_cmd->add_option("--n", gen.n, "vertex count (path, cycle)");
  gen_cmd->add_option("--d", gen.dim, "lattice dimension");
  gen_cmd->add_option("--r", gen.radius, "lattice ball radius");
  gen_cmd->add_option("--b", gen.branching, "tree branching");
  gen_cmd->add_option("--depth", gen.depth, "tree depth");
  gen_cmd->add_option("--w", gen.w, "edge weight (lower bound with --w-max)");
  gen_cmd->add_option("--w-max", gen.w_max, "draw weights uniformly from [w, w-max]");
  gen_cmd->add_option("--mu", gen.mu, "vertex measure (lower bound with --mu-max)");
  gen_cmd->add_option("--mu-max", gen.mu_max, "draw measures uniformly from [mu, mu-max]");
  gen_cmd->add_option("--out", gen.out, "output graph JSON")->required();
  add_seed(gen_cmd);

  EigArgs eig;
  auto* eig_cmd = app.add_subcommand("eig", "first eigenvalue of the H-form");
  add_common(eig_cmd);
  eig_cmd->add_option("--tol", eig.tol);
  eig_cmd->add_option("--max-iter", eig.max_iter);
  eig_cmd->add_option("--eigenfunction", eig.eigenfunction, "write the eigenfunction CSV here");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "hypothesis report");
  add_common(check_cmd);
  check_cmd->add_option("--mode", check.mode, "H2 | H2prime");
  check_cmd->add_option("--f1-bound", check.f1_bound, "M for the (F1) bound");
  check_cmd->add_option("--lipschitz-range", check.lipschitz_range, "S_max for the (F1') estimate");

  SolveArgs solve;
  auto add_solve = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--tol", solve.tol);
    sub->add_option("--path-nodes", solve.path_nodes);
    sub->add_option("--max-iter", solve.max_iter);
    sub->add_option("--out", solve.out, "output prefix")->required();
    add_seed(sub);
  };
  auto* solve_cmd = app.add_subcommand("solve", "mountain-pass solution of the unperturbed equation");
  add_solve(solve_cmd);
  auto* perturb_cmd = app.add_subcommand("perturb", "two positive solutions of the perturbed equation");
  add_solve(perturb_cmd);
  perturb_cmd->add_option("--eps", solve.eps, "perturbation size (overrides the problem file)");

  CertifyArgs cert;
  auto* cert_cmd = app.add_subcommand("certify", "certificate for a given vertex function");
  add_common(cert_cmd);
  cert_cmd->add_option("--solution", cert.solution, "solution CSV")->required();
  cert_cmd->add_option("--mode", cert.mode, "H2 | H2prime");
  cert_cmd->add_option("--out", cert.out, "also write the certificate JSON here");

  ProbeArgs probe;
  auto* probe_cmd = app.add_subcommand("probe", "ray scans and rim probes of the energy");
  add_common(probe_cmd);
  probe_cmd->add_option("--kind", probe.kind, "ray | rim");
  probe_cmd->add_option("--vertex", probe.vertex, "ray direction: indicator of this vertex");
  probe_cmd->add_option("--t-max", probe.t_max);
  probe_cmd->add_option("--n-points", probe.n_points);
  probe_cmd->add_option("--radius", probe.radius, "rim radius (default sqrt(eps) when perturbed)");
  probe_cmd->add_option("--samples", probe.samples);
  probe_cmd->add_option("--out", probe.out, "CSV output (default stdout)");
  add_seed(probe_cmd);

  auto fail = [&](std::string_view code, const std::string& message, int exit_code) {
    err << json{{"error", std::string(code)}, {"message", message}}.dump() << '\n';
    return exit_code;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail("InvalidArguments", e.what(), kExitInputError);
  }

  try {
    if (!seed_given) seed = default_seed();

    if (gen_cmd->parsed()) {
      FamilySpec spec;
      spec.family = parse_family(gen.family);
      spec.n = gen.n;
      spec.dim = gen.dim;
      spec.radius = gen.radius;
      spec.branching = gen.branching;
      spec.depth = gen.depth;
      const Profile w = gen.w_max ? Profile::uniform(gen.w, *gen.w_max, seed) : Profile::constant(gen.w);
      const Profile mu = gen.mu_max ? Profile::uniform(gen.mu, *gen.mu_max, seed + 1) : Profile::constant(gen.mu);
      const WeightedGraph g = generate_graph(spec, w, mu);
      io::write_graph(gen.out, g);
      emit(out, {{"vertices", g.size()}, {"edges", g.edge_count()}, {"out", gen.out}});
      return kExitOk;
    }

    const WeightedGraph g = io::read_graph(common.graph);
    io::ProblemSpec spec = io::read_problem(common.problem);

    if (eig_cmd->parsed()) {
      const Problem p = io::bind(spec, g);
      const EigenResult r = lambda1(g, p.h(), eig.tol, eig.max_iter);
      if (!eig.eigenfunction.empty()) io::write_solution_csv(eig.eigenfunction, g, r.eigenfunction);
      emit(out, io::to_json(r));
      return kExitOk;
    }

    if (check_cmd->parsed()) {
      const Problem p = io::bind(spec, g);
      const double l1 = lambda1(g, p.h()).lambda1;
      HypothesisOptions opts;
      opts.f1_bound = check.f1_bound;
      opts.lipschitz_range = check.lipschitz_range;
      json report = io::to_json(check_hypotheses(g, spec.potential, *spec.nonlinearity,
                                                 parse_mode(check.mode), l1, opts));
      report["lambda1"] = l1;
      emit(out, report);
      return kExitOk;
    }

    SolverConfig cfg;
    cfg.tol = solve.tol;
    cfg.path_nodes = solve.path_nodes;
    cfg.max_iter = solve.max_iter;
    cfg.seed = seed;

    if (solve_cmd->parsed()) {
      const Problem p = io::bind(spec, g).without_perturbation();
      const SolveOutcome s = mountain_pass_solve(g, p, cfg);
      CertifyOptions copts;
      copts.potential = spec.potential;
      copts.provenance = provenance("solve", common, cfg);
      const SolutionCertificate c = certify(g, p, s.solution, copts);
      io::write_solution_csv(solve.out + ".solution.csv", g, s.solution);
      const json doc = {{"solution", io::to_json(s)}, {"certificate", io::to_json(c)}};
      io::write_text(solve.out + ".certificate.json", doc.dump(2) + "\n");
      emit(out, {{"classification", std::string(to_string(s.classification))},
                 {"energy", s.energy},
                 {"residual_inf", s.residual_inf},
                 {"min_value", s.min_value},
                 {"positive", c.positive}});
      return kExitOk;
    }

    if (perturb_cmd->parsed()) {
      if (solve.eps) {
        Eigen::VectorXd gsrc = spec.perturbation ? spec.perturbation->g : Eigen::VectorXd::Ones(g.size());
        spec.perturbation = io::PerturbationSpec{*solve.eps, std::move(gsrc)};
      }
      if (!spec.perturbation)
        throw Error(Errc::PerturbationRequired, "give --eps or a perturbation in the problem file");
      const Problem p = io::bind(spec, g);
      const PerturbedPair pair = solve_perturbed_pair(g, p, cfg);
      CertifyOptions copts;
      copts.potential = spec.potential;
      copts.provenance = provenance("perturb", common, cfg);
      copts.provenance.emplace_back("eps", io::format_double(p.perturbation()->eps()));
      const auto c0 = certify(g, p, pair.local_min.solution, copts);
      const auto cm = certify(g, p, pair.mountain_pass.solution, copts);
      io::write_solution_csv(solve.out + ".u0.solution.csv", g, pair.local_min.solution);
      io::write_solution_csv(solve.out + ".uM.solution.csv", g, pair.mountain_pass.solution);
      const json doc = {
          {"u0", {{"solution", io::to_json(pair.local_min)}, {"certificate", io::to_json(c0)}}},
          {"uM", {{"solution", io::to_json(pair.mountain_pass)}, {"certificate", io::to_json(cm)}}}};
      io::write_text(solve.out + ".certificate.json", doc.dump(2) + "\n");
      emit(out, {{"eps", p.perturbation()->eps()},
                 {"u0", {{"energy", pair.local_min.energy}, {"min_value", pair.local_min.min_value}}},
                 {"uM", {{"energy", pair.mountain_pass.energy}, {"min_value", pair.mountain_pass.min_value}}}});
      return kExitOk;
    }

    if (cert_cmd->parsed()) {
      const Problem p = io::bind(spec, g);
      const Eigen::VectorXd u = io::read_solution_csv(cert.solution, g);
      CertifyOptions copts;
      copts.potential = spec.potential;
      copts.mode = parse_mode(cert.mode);
      copts.provenance = {{"command", "certify"},
                          {"graph_digest", io::file_digest(common.graph)},
                          {"problem_digest", io::file_digest(common.problem)},
                          {"solution_digest", io::file_digest(cert.solution)}};
      const json doc = io::to_json(certify(g, p, u, copts));
      if (!cert.out.empty()) io::write_text(cert.out, doc.dump(2) + "\n");
      emit(out, doc);
      return kExitOk;
    }

    if (probe_cmd->parsed()) {
      const Problem p = io::bind(spec, g);
      std::ostringstream csv;
      json summary;
      if (probe.kind == "ray") {
        const Index x = probe.vertex.empty() ? mountain_pass_anchor(g, p) : g.index_of(probe.vertex);
        const RayProbe r = ray_scan(g, p, indicator(g, x), probe.t_max, probe.n_points);
        io::write_ray_csv(csv, r);
        summary = {{"kind", "ray"}, {"vertex", g.id(x)}, {"diverges", r.diverges}};
      } else if (probe.kind == "rim") {
        double radius = 0.0;
        if (probe.radius) radius = *probe.radius;
        else if (p.perturbation()) radius = std::sqrt(p.perturbation()->eps());
        else throw Error(Errc::InvalidInput, "rim probe needs --radius for an unperturbed problem");
        const double l1 = lambda1(g, p.h()).lambda1;
        const RimProbe r = rim_probe(g, p, l1, radius, probe.samples, seed);
        io::write_rim_csv(csv, r);
        summary = {{"kind", "rim"}, {"radius", radius}, {"min_energy", r.min_energy}, {"delta", r.delta}};
      } else {
        throw Error(Errc::InvalidInput, "probe kind must be ray or rim");
      }
      if (probe.out.empty()) {
        out << csv.str();
      } else {
        io::write_text(probe.out, csv.str());
        emit(out, summary);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    return fail(to_string(e.code()), e.what(), is_solver_failure(e.code()) ? kExitSolverFailure : kExitInputError);
  } catch (const std::exception& e) {
    return fail("InvalidInput", e.what(), kExitInputError);
  }
  return fail("InvalidArguments", "no subcommand", kExitInputError);
}

}  // namespace graphpass
