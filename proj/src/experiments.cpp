#include "nilfill/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <thread>

#include "nilfill/rng.hpp"

namespace nilfill {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  if (j.contains("algebra")) c.algebra = j.at("algebra").get<std::string>();
  if (j.contains("family")) c.family = j.at("family").get<std::string>();
  if (j.contains("scales")) c.scales = j.at("scales").get<std::vector<long>>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("d")) c.d = j.at("d").get<int>();
  if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
  if (j.contains("bfs_radius")) c.bfs_radius = j.at("bfs_radius").get<int>();
  if (j.contains("quad")) {
    const auto& q = j.at("quad");
    if (q.contains("order")) c.quad.order = q.at("order").get<int>();
    if (q.contains("max_subdivision")) c.quad.max_subdivision = q.at("max_subdivision").get<int>();
    if (q.contains("tolerance")) c.quad.tolerance = q.at("tolerance").get<double>();
    if (q.contains("abs_floor")) c.quad.abs_floor = q.at("abs_floor").get<double>();
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.contains("eps")) c.grid.eps = rational_from_json(g.at("eps"));
    if (g.contains("k_max")) c.grid.k_max = g.at("k_max").get<int>();
  }
  if (j.contains("expected_slope")) {
    auto w = j.at("expected_slope").get<std::vector<double>>();
    if (w.size() != 2) throw ParseError("expected_slope needs [lo, hi]");
    c.expected_slope = {w[0], w[1]};
  }
  if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
  return c;
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["algebra"] = c.algebra;
  j["family"] = c.family;
  j["scales"] = c.scales;
  j["seed"] = c.seed;
  j["d"] = c.d;
  j["jobs"] = c.jobs;
  j["bfs_radius"] = c.bfs_radius;
  j["quad"] = {{"order", c.quad.order},
               {"max_subdivision", c.quad.max_subdivision},
               {"tolerance", c.quad.tolerance},
               {"abs_floor", c.quad.abs_floor}};
  j["grid"] = {{"eps", rat_to_string(c.grid.eps)}, {"k_max", c.grid.k_max}};
  if (c.expected_slope)
    j["expected_slope"] = {c.expected_slope->first, c.expected_slope->second};
  return j;
}

NilpotentAlgebra load_algebra(const std::string& name_or_path) {
  if (name_or_path.find('(') != std::string::npos) return catalog(name_or_path);
  return NilpotentAlgebra::validate(algebra_from_json(load_json_file(name_or_path)));
}

PLChain dehn_loop(const NilpotentAlgebra& a, long lambda) {
  const int n = a.dim();
  int g1 = -1, g2 = -1;
  for (int i = 0; i < n; ++i) {
    if (a.depth(i) != 1) continue;
    if (g1 < 0) {
      g1 = i;
    } else if (g2 < 0) {
      g2 = i;
      break;
    }
  }
  if (g2 < 0) throw Error("dehn_loop needs at least two depth-1 generators");

  GroupPoint ea(static_cast<std::size_t>(n), Rational(0)), eb = ea;
  ea[static_cast<std::size_t>(g1)] = 1;
  eb[static_cast<std::size_t>(g2)] = 1;

  std::vector<GroupPoint> path{GroupPoint(static_cast<std::size_t>(n), Rational(0))};
  auto walk = [&](const GroupPoint& step, long count) {
    for (long t = 0; t < count; ++t) path.push_back(bch(a, path.back(), step));
  };
  auto commutator_word = [&](const GroupPoint& u, const GroupPoint& v) {
    walk(u, lambda);
    walk(v, lambda);
    walk(group_inverse(u), lambda);
    walk(group_inverse(v), lambda);
  };
  commutator_word(ea, eb);
  // Close the central gap without backtracking: the inverse-generator
  // commutator word has the same value as [a^l, b^l] in class <= 2, so its
  // inverse word returns to the identity through fresh vertices.
  if (!is_zero(path.back())) commutator_word(group_inverse(eb), group_inverse(ea));
  if (!is_zero(path.back())) throw Error("dehn loop family needs nilpotency class <= 2");

  PLChain loop(1, n);
  for (std::size_t t = 0; t + 1 < path.size(); ++t) loop.add({path[t], path[t + 1]}, 1);
  return loop;
}

PLChain cycle_family(const NilpotentAlgebra& a, int d, long lambda, Rng& rng) {
  const int n = a.dim();
  if (d < 1 || d + 1 > n)
    throw DimensionUnsupported("cycle family needs d + 1 <= algebra dimension");

  // Random signed permutation of the coordinates (an exact isometry).
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(i + 1)))]);
  std::vector<int> sign(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sign[static_cast<std::size_t>(i)] = rng.next_below(2) ? 1 : -1;

  auto place = [&](const Point& v) {
    Point out(static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i)
      out[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] =
          Rational(sign[static_cast<std::size_t>(i)]) * v[static_cast<std::size_t>(i)];
    return out;
  };

  // Solid (d+1)-ball: the cross-polytope fan (0, s_0 r e_{c_0}, ..., s_d r e_{c_d})
  // over all sign patterns; its boundary is the scaled octahedral d-sphere.
  PLChain ball(d + 1, n);
  Rational r(lambda);
  std::vector<int> signs(static_cast<std::size_t>(d + 1), 1);
  while (true) {
    std::vector<Point> verts;
    Point origin(static_cast<std::size_t>(n), Rational(0));
    verts.push_back(origin);
    int orient = 1;
    for (int t = 0; t <= d; ++t) {
      Point v(static_cast<std::size_t>(n), Rational(0));
      v[static_cast<std::size_t>(t)] = Rational(signs[static_cast<std::size_t>(t)]) * r;
      verts.push_back(place(v));
      orient *= signs[static_cast<std::size_t>(t)];
    }
    ball.add(std::move(verts), orient);
    int t = 0;
    while (t <= d && signs[static_cast<std::size_t>(t)] == -1) {
      signs[static_cast<std::size_t>(t)] = 1;
      ++t;
    }
    if (t > d) break;
    signs[static_cast<std::size_t>(t)] = -1;
  }
  PLChain cycle = boundary(ball);

  // Exact group translation by a small random lattice element.
  GroupPoint g = rng.next_rational_vec(static_cast<std::size_t>(n), 2, 1);
  return translate_vertexwise(a, g, cycle);
}

double fit_slope_upper_half(const std::vector<std::pair<double, double>>& log_points,
                            double* intercept, double* residual, int* used) {
  const std::size_t total = log_points.size();
  const std::size_t start = total / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::size_t m = total - start;
  for (std::size_t i = start; i < total; ++i) {
    sx += log_points[i].first;
    sy += log_points[i].second;
    sxx += log_points[i].first * log_points[i].first;
    sxy += log_points[i].first * log_points[i].second;
  }
  double denom = static_cast<double>(m) * sxx - sx * sx;
  double slope = denom != 0 ? (static_cast<double>(m) * sxy - sx * sy) / denom : 0;
  double inter = (sy - slope * sx) / static_cast<double>(m);
  double res = 0;
  for (std::size_t i = start; i < total; ++i) {
    double e = log_points[i].second - (slope * log_points[i].first + inter);
    res += e * e;
  }
  if (intercept) *intercept = inter;
  if (residual) *residual = res;
  if (used) *used = static_cast<int>(m);
  return slope;
}

std::string render_loglog_svg(const std::vector<std::pair<double, double>>& pts, double slope,
                              double intercept, const std::string& title) {
  const int W = 480, H = 360, M = 48;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (auto [x, y] : pts) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (pts.empty()) xmin = ymin = 0, xmax = ymax = 1;
  if (xmax - xmin < 1e-9) xmax = xmin + 1;
  if (ymax - ymin < 1e-9) ymax = ymin + 1;
  auto sx = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
  auto sy = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">" << title
     << "</text>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 10
     << "\" text-anchor=\"middle\" font-size=\"11\">log input mass</text>\n";
  os << "<text x=\"14\" y=\"" << H / 2 << "\" font-size=\"11\" transform=\"rotate(-90 14 "
     << H / 2 << ")\" text-anchor=\"middle\">log filling mass</text>\n";
  os << "<line x1=\"" << fmt_double(sx(xmin)) << "\" y1=\"" << fmt_double(sy(slope * xmin + intercept))
     << "\" x2=\"" << fmt_double(sx(xmax)) << "\" y2=\"" << fmt_double(sy(slope * xmax + intercept))
     << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
  for (auto [x, y] : pts)
    os << "<circle cx=\"" << fmt_double(sx(x)) << "\" cy=\"" << fmt_double(sy(y))
       << "\" r=\"3.5\" fill=\"#1f77b4\"/>\n";
  os << "<text x=\"" << W - M << "\" y=\"" << M
     << "\" text-anchor=\"end\" font-size=\"11\">slope " << fmt_double(slope) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

namespace {

ExperimentResult run_distortion(const ExperimentConfig& cfg, const NilpotentAlgebra& alg) {
  ExperimentResult out;
  LatticeSpec spec = default_lattice(alg);
  DistortionFit fit = distortion_fit(spec, cfg.bfs_radius);
  BfsBall ball = bfs_ball(spec, cfg.bfs_radius);

  std::ostringstream csv;
  csv << "# nilfill distortion v1\n";
  csv << "r,ball_size\n";
  auto sizes = ball.ball_sizes();
  for (std::size_t r = 0; r < sizes.size(); ++r) csv << r << "," << sizes[r] << "\n";
  csv << "d,norm_log_g,phi\n";
  for (const auto& [x, dist] : ball.dist) {
    double nm = 0;
    auto xd = to_double(x);
    for (double v : xd) nm += v * v;
    csv << dist << "," << fmt_double(std::sqrt(nm)) << "," << fmt_double(phi(alg, xd)) << "\n";
  }
  out.csv = csv.str();
  out.distortion = fit;
  out.report = Json{{"config", config_to_json(cfg)}, {"fit", distortion_fit_to_json(fit)}};
  out.all_certificates_ok = fit.enclosing_valid;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t r = 1; r < sizes.size(); ++r)
    pts.emplace_back(std::log(static_cast<double>(r)),
                     std::log(static_cast<double>(sizes[r])));
  out.svg = render_loglog_svg(pts, fit.growth_slope, 0, "ball growth: " + cfg.algebra);
  out.fit.slope = fit.growth_slope;
  if (cfg.expected_slope)
    out.slope_in_window = fit.growth_slope >= cfg.expected_slope->first &&
                          fit.growth_slope <= cfg.expected_slope->second;
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  NilpotentAlgebra alg = load_algebra(cfg.algebra);
  ExperimentResult out;

  if (cfg.family == "distortion") {
    out = run_distortion(cfg, alg);
  } else if (cfg.family == "dehn_loops" || cfg.family == "cycles_d") {
    MetricContext ctx(alg);
    const bool loops = cfg.family == "dehn_loops";
    const int d = loops ? 1 : cfg.d;

    std::vector<ExperimentRow> rows(cfg.scales.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_text;
    std::mutex error_mutex;

    auto worker = [&] {
      while (true) {
        std::size_t idx = next.fetch_add(1);
        if (idx >= cfg.scales.size() || failed.load()) break;
        try {
          long lambda = cfg.scales[idx];
          Rng rng(cfg.seed + idx);
          ExperimentRow row;
          row.scale = lambda;
          if (loops) {
            PLChain loop = dehn_loop(alg, lambda);
            LoopFill f = fill_loop(ctx, loop, cfg.quad);
            row.v_pulled = f.report.input_mass_pulled;
            row.v_euclid = f.report.input_mass_euclid;
            row.radius = f.report.radius;
            row.fill_euclid = f.report.fill_mass_euclid;
            row.fill_pulled = f.report.fill_mass_pulled;
            row.r_d = f.report.per_component[0].r_d;
            row.r_d1 = f.report.per_component[0].r_d1;
            row.bound = f.report.disk_bound;
            row.certificate_ok = f.report.certificate_ok && f.report.cauchy_schwarz_ok;
          } else {
            PLChain cyc = cycle_family(alg, d, lambda, rng);
            CycleFill f = fill_cycle(ctx, cyc, {}, cfg.quad);
            row.v_pulled = f.report.input_mass_pulled;
            row.v_euclid = f.report.input_mass_euclid;
            row.radius = f.report.radius;
            row.fill_euclid = f.report.fill_mass_euclid;
            row.fill_pulled = f.report.fill_mass_pulled;
            row.r_d = f.report.per_component.empty() ? 0 : f.report.per_component[0].r_d;
            row.r_d1 = f.report.per_component.empty() ? 0 : f.report.per_component[0].r_d1;
            row.bound = f.report.bound_value;
            row.certificate_ok = f.report.certificate_ok;
          }
          rows[idx] = row;
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          error_text = e.what();
          failed.store(true);
        }
      }
    };
    int jobs = std::max(1, cfg.jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) throw Error("experiment aborted: " + error_text);
    out.rows = std::move(rows);

    std::vector<std::pair<double, double>> log_points;
    for (const auto& r : out.rows)
      if (r.v_pulled > 0 && r.fill_pulled > 0)
        log_points.emplace_back(std::log(r.v_pulled), std::log(r.fill_pulled));
    out.fit.slope = fit_slope_upper_half(log_points, &out.fit.intercept, &out.fit.residual,
                                         &out.fit.points_used);

    const int s = alg.nilpotency_class();
    const int deg_r1 = ctx.similarity_bound(1).R.degree();
    const int deg_r2 = ctx.similarity_bound(2).R.degree();
    out.fit.exponent_bound = static_cast<double>(s) * (2 * deg_r1 + deg_r2);
    out.fit.optimal = s + 1;

    for (const auto& r : out.rows)
      if (!r.certificate_ok) out.all_certificates_ok = false;
    if (cfg.expected_slope)
      out.slope_in_window = out.fit.slope >= cfg.expected_slope->first &&
                            out.fit.slope <= cfg.expected_slope->second;

    std::ostringstream csv;
    csv << "# nilfill results v1\n";
    csv << "family,algebra,scale,v_pulled,v_euclid,radius,fill_euclid,fill_pulled,r_d,r_d1,"
           "bound,certificate_ok\n";
    for (const auto& r : out.rows) {
      csv << cfg.family << "," << cfg.algebra << "," << r.scale << "," << fmt_double(r.v_pulled)
          << "," << fmt_double(r.v_euclid) << "," << fmt_double(r.radius) << ","
          << fmt_double(r.fill_euclid) << "," << fmt_double(r.fill_pulled) << ","
          << fmt_double(r.r_d) << "," << fmt_double(r.r_d1) << "," << fmt_double(r.bound) << ","
          << (r.certificate_ok ? 1 : 0) << "\n";
    }
    out.csv = csv.str();

    Json rows_json = Json::array();
    for (const auto& r : out.rows)
      rows_json.push_back(Json{{"scale", r.scale},
                               {"v_pulled", r.v_pulled},
                               {"v_euclid", r.v_euclid},
                               {"radius", r.radius},
                               {"fill_euclid", r.fill_euclid},
                               {"fill_pulled", r.fill_pulled},
                               {"r_d", r.r_d},
                               {"r_d1", r.r_d1},
                               {"bound", r.bound},
                               {"certificate_ok", r.certificate_ok}});
    out.report = Json{
        {"config", config_to_json(cfg)},
        {"rows", std::move(rows_json)},
        {"fit",
         Json{{"slope", out.fit.slope},
              {"intercept", out.fit.intercept},
              {"residual", out.fit.residual},
              {"points_used", out.fit.points_used},
              {"exponent_bound", out.fit.exponent_bound},
              {"optimal", out.fit.optimal}}},
        {"all_certificates_ok", out.all_certificates_ok},
        {"slope_in_window", out.slope_in_window},
        {"note", "slopes are observed on the sampled family, not the filling function"}};
    out.svg = render_loglog_svg(log_points, out.fit.slope, out.fit.intercept,
                                cfg.family + ": " + cfg.algebra);
  } else {
    throw ParseError("unknown experiment family '" + cfg.family + "'");
  }

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    write_text_file(cfg.out_dir + "/results.csv", out.csv);
    save_json_file(cfg.out_dir + "/report.json", out.report);
    write_text_file(cfg.out_dir + "/plot.svg", out.svg);
  }
  return out;
}

}  // namespace nilfill
