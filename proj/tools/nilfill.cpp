#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "nilfill/rng.hpp"

#include "nilfill/experiments.hpp"
#include "nilfill/json_io.hpp"

using namespace nilfill;

namespace {

void print_poly_matrix(const std::vector<std::vector<MultiPoly>>& M, const char* name) {
  std::printf("%s =\n", name);
  for (std::size_t i = 0; i < M.size(); ++i) {
    std::printf("  [");
    for (std::size_t j = 0; j < M[i].size(); ++j)
      std::printf("%s%s", j ? ", " : "", M[i][j].str().c_str());
    std::printf("]\n");
  }
}

void show_algebra(const NilpotentAlgebra& alg) {
  std::printf("dimension n = %d, nilpotency class s = %d, homogeneous dimension N = %d\n",
              alg.dim(), alg.nilpotency_class(), alg.homogeneous_dimension());
  auto lcs = alg.lcs_dims();
  std::printf("lower central series dims:");
  for (int d : lcs) std::printf(" %d", d);
  std::printf("\ngrading dims:");
  for (int d = 1; d <= alg.nilpotency_class(); ++d) std::printf(" %d", alg.grading_dim(d));
  std::printf("\nbrackets:\n");
  for (const auto& [ij, v] : alg.constants().brackets) {
    std::printf("  [e%d, e%d] =", ij.first + 1, ij.second + 1);
    bool first = true;
    for (int k = 0; k < alg.dim(); ++k) {
      const Rational& c = v[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      std::printf("%s %s*e%d", first ? "" : " +", rat_to_string(c).c_str(), k + 1);
      first = false;
    }
    if (first) std::printf(" 0");
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilfill: exact filling-invariant experiments on nilpotent Lie groups"};
  app.require_subcommand(1);

  std::string algebra_arg, file_arg, config_path, out_dir, metric_name = "pulled_back";
  std::string chain_out;
  int d_arg = 1, samples = 1000, bfs_radius = 12, jobs = 1;
  double radius_arg = 100.0, tol = 1e-12;
  std::uint64_t seed = 1;
  bool deform = false;
  std::string eps_str = "1";
  QuadratureSpec quad;

  auto* algebra_cmd = app.add_subcommand("algebra", "validate or display algebras");
  auto* algebra_validate = algebra_cmd->add_subcommand("validate", "validate a JSON file");
  algebra_validate->add_option("file", file_arg, "structure-constant JSON")->required();
  auto* algebra_show = algebra_cmd->add_subcommand("show", "show a catalog algebra");
  algebra_show->add_option("name", algebra_arg, "e.g. heisenberg(3)")->required();

  auto* frames_cmd = app.add_subcommand("frames", "polynomial frames");
  auto* frames_show = frames_cmd->add_subcommand("show", "print A and A^-1");
  frames_show->add_option("algebra", algebra_arg, "catalog name or JSON file")->required();

  auto* sim_cmd = app.add_subcommand("similarity", "similarity bounds");
  auto* sim_check = sim_cmd->add_subcommand("check", "sample the sandwich inequality");
  sim_check->add_option("algebra", algebra_arg)->required();
  sim_check->add_option("--d", d_arg, "exterior power degree")->required();
  sim_check->add_option("--samples", samples, "sample count");
  sim_check->add_option("--radius", radius_arg, "max ||x||");
  sim_check->add_option("--seed", seed);

  auto* chain_cmd = app.add_subcommand("chain", "chain utilities");
  auto* chain_mass = chain_cmd->add_subcommand("mass", "chain mass");
  chain_mass->add_option("file", file_arg)->required();
  chain_mass->add_option("--algebra", algebra_arg, "needed for the pulled-back metric");
  chain_mass->add_option("--metric", metric_name, "euclidean | pulled_back");
  auto* chain_boundary = chain_cmd->add_subcommand("boundary", "boundary chain JSON");
  chain_boundary->add_option("file", file_arg)->required();
  chain_boundary->add_option("--out", chain_out, "output path (default stdout)");
  auto* chain_components = chain_cmd->add_subcommand("components", "support geometry");
  chain_components->add_option("file", file_arg)->required();
  chain_components->add_option("--tol", tol, "vertex merge tolerance");

  auto* fill_cmd = app.add_subcommand("fill", "fill a cycle");
  auto* fill_loop_cmd = fill_cmd->add_subcommand("loop", "Dehn pipeline for a 1-cycle");
  fill_loop_cmd->add_option("algebra", algebra_arg)->required();
  fill_loop_cmd->add_option("chain", file_arg)->required();
  fill_loop_cmd->add_option("--out-dir", out_dir);
  auto* fill_cycle_cmd = fill_cmd->add_subcommand("cycle", "general coning pipeline");
  fill_cycle_cmd->add_option("algebra", algebra_arg)->required();
  fill_cycle_cmd->add_option("chain", file_arg)->required();
  fill_cycle_cmd->add_flag("--deform", deform, "grid-deform the filling");
  fill_cycle_cmd->add_option("--eps", eps_str, "grid cell size (rational)");
  fill_cycle_cmd->add_option("--out-dir", out_dir);

  auto* dist_cmd = app.add_subcommand("distortion", "lattice distortion");
  auto* dist_run = dist_cmd->add_subcommand("run", "BFS + enclosing fits");
  dist_run->add_option("algebra", algebra_arg)->required();
  dist_run->add_option("--radius", bfs_radius);
  dist_run->add_option("--out-dir", out_dir);

  auto* exp_cmd = app.add_subcommand("experiment", "run a configured experiment");
  exp_cmd->add_option("--config", config_path, "experiment config JSON")->required();
  exp_cmd->add_option("--seed", seed, "override config seed");
  exp_cmd->add_option("--out-dir", out_dir, "override config out_dir");
  exp_cmd->add_option("--jobs", jobs, "override config jobs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (algebra_validate->parsed()) {
      NilpotentAlgebra alg = NilpotentAlgebra::validate(algebra_from_json(load_json_file(file_arg)));
      std::printf("valid nilpotent algebra\n");
      show_algebra(alg);
      return 0;
    }
    if (algebra_show->parsed()) {
      show_algebra(catalog(algebra_arg));
      return 0;
    }
    if (frames_show->parsed()) {
      NilpotentAlgebra alg = load_algebra(algebra_arg);
      PolyFrame f = frame(alg);
      print_poly_matrix(f.A, "A");
      print_poly_matrix(f.Ainv, "Ainv");
      return 0;
    }
    if (sim_check->parsed()) {
      NilpotentAlgebra alg = load_algebra(algebra_arg);
      MetricContext ctx(alg);
      const auto& sb = ctx.similarity_bound(d_arg);
      Rng rng(seed);
      int pass = 0, fail = 0;
      for (int t = 0; t < samples; ++t) {
        std::vector<double> x(static_cast<std::size_t>(alg.dim()));
        for (auto& v : x) v = rng.next_real(-radius_arg, radius_arg);
        double nx = 0;
        for (double v : x) nx += v * v;
        nx = std::sqrt(nx);
        std::vector<std::vector<double>> edges(static_cast<std::size_t>(d_arg));
        for (auto& e : edges) {
          e.resize(static_cast<std::size_t>(alg.dim()));
          for (auto& v : e) v = rng.next_real(-1, 1);
        }
        double eu = ctx.dvector_norm(x, edges, MetricKind::euclidean);
        double pb = ctx.dvector_norm(x, edges, MetricKind::pulled_back);
        double R = sb.R.eval(nx);
        bool ok = pb <= R * eu * (1 + 1e-9) + 1e-300 && pb * R * (1 + 1e-9) + 1e-300 >= eu;
        (ok ? pass : fail)++;
      }
      std::printf("R_%d(r) = %s\n", d_arg, sb.R.str().c_str());
      std::printf("pass %d fail %d\n", pass, fail);
      return fail == 0 ? 0 : 1;
    }
    if (chain_mass->parsed()) {
      PLChain c = chain_from_json(load_json_file(file_arg));
      if (metric_name == "euclidean") {
        std::printf("euclidean mass = %.12g\n", euclidean_mass(c));
      } else {
        if (algebra_arg.empty()) throw Error("--algebra is required for the pulled-back metric");
        MetricContext ctx(load_algebra(algebra_arg));
        std::printf("pulled-back mass = %.12g\n",
                    mass(ctx, c, MetricKind::pulled_back, quad));
      }
      return 0;
    }
    if (chain_boundary->parsed()) {
      PLChain c = chain_from_json(load_json_file(file_arg));
      Json j = chain_to_json(boundary(c));
      if (chain_out.empty())
        std::printf("%s\n", j.dump(2).c_str());
      else
        save_json_file(chain_out, j);
      return 0;
    }
    if (chain_components->parsed()) {
      PLChain c = chain_from_json(load_json_file(file_arg));
      auto geom = support_geometry(c, tol);
      std::printf("diameter = %.12g\ncontains_origin = %s\ncomponents = %zu\n", geom.diameter,
                  geom.contains_origin ? "true" : "false", geom.components.size());
      for (std::size_t i = 0; i < geom.component_chains.size(); ++i)
        std::printf("  component %zu: %zu simplices, euclidean mass %.12g\n", i,
                    geom.component_chains[i].simplex_count(),
                    euclidean_mass(geom.component_chains[i]));
      return 0;
    }
    if (fill_loop_cmd->parsed() || fill_cycle_cmd->parsed()) {
      NilpotentAlgebra alg = load_algebra(algebra_arg);
      MetricContext ctx(alg);
      PLChain c = chain_from_json(load_json_file(file_arg));
      FillReport rep;
      PLChain filling;
      Json extra;
      if (fill_loop_cmd->parsed()) {
        LoopFill f = fill_loop(ctx, c, quad);
        rep = f.report;
        filling = std::move(f.disk);
      } else {
        CycleFillOptions opts;
        opts.deform = deform;
        opts.grid.eps = rat_parse(eps_str);
        CycleFill f = fill_cycle(ctx, c, opts, quad);
        rep = f.report;
        filling = std::move(f.filling);
        if (f.deformed) {
          extra["deformation"] = grid_deformation_to_json(*f.deformed);
          if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            save_json_file(out_dir + "/deformed.json", chain_to_json(f.deformed->P_pl));
          }
        }
      }
      Json report = fill_report_to_json(rep);
      if (!extra.is_null()) report.update(extra);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        save_json_file(out_dir + "/filling.json", chain_to_json(filling));
        save_json_file(out_dir + "/report.json", report);
      }
      std::printf("%s\n", report.dump(2).c_str());
      return rep.certificate_ok ? 0 : 1;
    }
    if (dist_run->parsed()) {
      ExperimentConfig cfg;
      cfg.algebra = algebra_arg;
      cfg.family = "distortion";
      cfg.bfs_radius = bfs_radius;
      cfg.out_dir = out_dir;
      ExperimentResult res = run_experiment(cfg);
      std::printf("%s\n", res.report.dump(2).c_str());
      return res.all_certificates_ok ? 0 : 1;
    }
    if (exp_cmd->parsed()) {
      ExperimentConfig cfg = config_from_json(load_json_file(config_path));
      if (exp_cmd->count("--seed")) cfg.seed = seed;
      if (exp_cmd->count("--out-dir")) cfg.out_dir = out_dir;
      if (exp_cmd->count("--jobs")) cfg.jobs = jobs;
      ExperimentResult res = run_experiment(cfg);
      std::printf("slope = %.6g (exponent_bound = %.6g)\n", res.fit.slope, res.fit.exponent_bound);
      std::printf("certificates: %s, slope window: %s\n",
                  res.all_certificates_ok ? "ok" : "VIOLATED",
                  res.slope_in_window ? "ok" : "OUTSIDE");
      return (res.all_certificates_ok && res.slope_in_window) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
