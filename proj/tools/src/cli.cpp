#include "hpasm_cli/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "hpasm/asm.hpp"
#include "hpasm/constants.hpp"
#include "hpasm/dyadic.hpp"
#include "hpasm/errors.hpp"
#include "hpasm/krylov.hpp"
#include "hpasm/lgl.hpp"
#include "hpasm/mesh.hpp"
#include "hpasm/sipg.hpp"

namespace hpasm::cli {

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

struct Output {
  std::string path;
  std::string gnuplot;
};

void add_output(CLI::App* app, Output& o) {
  app->add_option("--out", o.path, "Write CSV to FILE instead of stdout");
  app->add_option("--gnuplot", o.gnuplot, "Also write a gnuplot script plotting the CSV (needs --out)");
}

class Table {
 public:
  explicit Table(std::string header) : header_(std::move(header)) {}
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
    body_ << '\n';
  }
  void write(const Output& o, std::ostream& out) const {
    if (o.path.empty()) {
      out << header_ << '\n' << body_.str();
      return;
    }
    std::ofstream f(o.path, std::ios::binary);
    if (!f) throw Error("cannot open output file " + o.path);
    f << header_ << '\n' << body_.str();
    if (!f) throw Error("failed writing " + o.path);
  }

 private:
  std::string header_;
  std::ostringstream body_;
};

std::string str(int v) { return std::to_string(v); }
std::string str(Eigen::Index v) { return std::to_string(v); }
std::string num(double v) { return format_number(v); }

void write_gnuplot(const Output& o, const std::string& body) {
  if (o.gnuplot.empty()) return;
  if (o.path.empty()) throw CLI::ValidationError("--gnuplot", "requires --out");
  std::ofstream f(o.gnuplot);
  if (!f) throw Error("cannot open " + o.gnuplot);
  f << "set datafile separator ','\nset key autotitle columnhead\n" << body;
  f << (body.back() == '\n' ? "" : "\n");
}

std::string single_quoted(const std::string& s) { return "'" + s + "'"; }

RectMesh load_mesh(const std::string& path, int dim, int degree) {
  RectMesh mesh = path.empty() ? uniform_mesh(dim, 2, 2, 0.5, 0.5, {degree > 0 ? degree : 2, degree > 0 ? degree : 2})
                               : read_mesh_file(path);
  if (degree > 0) mesh = with_degrees(mesh, std::vector<std::array<int, 2>>(mesh.num_cells(), {degree, degree}));
  return mesh;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty()) throw CLI::ValidationError("--p-list", "not an integer: '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw CLI::ValidationError("--p-list", "empty list");
  return values;
}

SweepOptions sweep_options(unsigned threads) {
  SweepOptions so;
  so.cache_dir = cache_dir_from_env();
  so.threads = threads;
  return so;
}

void write_rows(const std::vector<SweepRow>& rows, const Output& o, std::ostream& out) {
  Table t("ineq,m,p,q,alpha,constant");
  for (const auto& r : rows) t.row({to_string(r.inequality), str(r.m), str(r.p), str(r.q), num(r.alpha), num(r.constant)});
  t.write(o, out);
}

struct SolverKnobs {
  double gamma = kDefaultGamma;
  double beta1 = 1.0, c1 = 1.0, rho1 = 1.0;
  double alpha = kDefaultAlpha;
  double c_aspect = kDefaultAspect;
  std::string inner = "exact";
  int stages = 2;
  double tol = 1e-8;
  int max_iter = 5000;
};

void add_knobs(CLI::App* app, SolverKnobs& k) {
  app->add_option("--gamma", k.gamma, "Penalty parameter")->check(CLI::PositiveNumber);
  app->add_option("--beta1", k.beta1, "Stage-1 smoother scale")->check(CLI::PositiveNumber);
  app->add_option("--c1", k.c1, "Stage-1 interior constant")->check(CLI::PositiveNumber);
  app->add_option("--rho1", k.rho1, "Stage-1 face constant")->check(CLI::PositiveNumber);
  app->add_option("--alpha", k.alpha, "Dyadic resolution parameter (> 1)")->check(CLI::Range(1.0, 1e6));
  app->add_option("--c-aspect", k.c_aspect, "Anisotropy threshold")->check(CLI::PositiveNumber);
  app->add_option("--inner", k.inner, "Dyadic solver")->check(CLI::IsMember({"exact", "cg"}));
  app->add_option("--stages", k.stages, "1: exact conforming solve after stage 1; 2: full stack")
      ->check(CLI::IsMember({1, 2}));
  app->add_option("--tol", k.tol, "PCG relative tolerance")->check(CLI::PositiveNumber);
  app->add_option("--max-iter", k.max_iter, "PCG iteration limit")->check(CLI::PositiveNumber);
}

AsmConfig to_config(const SolverKnobs& k) {
  AsmConfig c;
  c.gamma = k.gamma;
  c.beta1 = k.beta1;
  c.c1 = k.c1;
  c.rho1 = k.rho1;
  c.alpha = k.alpha;
  c.c_aspect = k.c_aspect;
  c.inner = k.inner == "cg" ? InnerKind::Cg : InnerKind::Exact;
  c.two_stage = k.stages == 2;
  return c;
}

OperatorFn as_operator(const SymSparseMatrix& a) {
  return [&a](const Vector& x) { return a.multiply(x); };
}

OperatorFn as_operator(const std::shared_ptr<PrecondStack>& c) {
  return [c](const Vector& x) { return c->apply(x); };
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hp-adaptive DG auxiliary space preconditioning experiments", "hpasm"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "hpasm 0.1.0");
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  app.add_option("--seed", seed, "Random seed")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads for sweeps (0: all cores)");

  int exit_code = kExitOk;

  // lgl
  auto* lgl = app.add_subcommand("lgl", "LGL nodes and weights");
  int lgl_p = 1;
  Output lgl_out;
  lgl->add_option("--p", lgl_p, "Degree")->required()->check(CLI::Range(1, 4096));
  add_output(lgl, lgl_out);
  lgl->callback([&] {
    const LglGrid& g = lgl_nodes(lgl_p);
    Table t("i,node,weight");
    for (std::size_t i = 0; i < g.size(); ++i) t.row({std::to_string(i), num(g.nodes[i]), num(g.weights[i])});
    t.write(lgl_out, out);
    write_gnuplot(lgl_out, "plot " + single_quoted(lgl_out.path) + " using 2:3 with linespoints\n");
  });

  // dyadic
  auto* dyadic = app.add_subcommand("dyadic", "Dyadic grid resolving the LGL grid");
  int dy_p = 1;
  double dy_alpha = kDefaultAlpha;
  Output dy_out;
  dyadic->add_option("--p", dy_p, "Degree")->required()->check(CLI::Range(1, 4096));
  dyadic->add_option("--alpha", dy_alpha, "Resolution parameter (> 1)")->capture_default_str();
  add_output(dyadic, dy_out);
  dyadic->callback([&] {
    if (!(dy_alpha > 1.0)) throw CLI::ValidationError("--alpha", "must exceed 1");
    const DyadicGrid& g = dyadic_grid(dy_p, dy_alpha);
    Table t("index,numerator,level,coordinate");
    for (std::size_t i = 0; i < g.breakpoints.size(); ++i) {
      const auto& b = g.breakpoints[i];
      t.row({std::to_string(i), std::to_string(b.numerator()), str(b.level()), num(b.coordinate())});
    }
    t.write(dy_out, out);
    write_gnuplot(dy_out, "plot " + single_quoted(dy_out.path) + " using 4:1 with points\n");
  });

  // constants
  auto* constants = app.add_subcommand("constants", "Constants of the basic interpolation inequalities");
  constants->require_subcommand(0, 1);
  std::string ineq_name = "basic0";
  int cm = 0, cp = 1, cq = 1, cz = 1;
  double c_alpha = kDefaultAlpha;
  Output c_out;
  constants->add_option("--ineq", ineq_name, "basic0 or basic1")->check(CLI::IsMember({"basic0", "basic1"}));
  constants->add_option("--m", cm, "Sobolev index")->check(CLI::IsMember({0, 1}));
  constants->add_option("--p", cp, "Source degree")->check(CLI::Range(1, 4096));
  constants->add_option("--q", cq, "Target degree")->check(CLI::Range(1, 4096));
  constants->add_option("--z", cz, "Vertex, -1 or +1")->check(CLI::IsMember({-1, 1}));
  constants->add_option("--alpha", c_alpha, "Dyadic resolution parameter")->capture_default_str();
  add_output(constants, c_out);

  auto* sweep = constants->add_subcommand("sweep", "All 1 <= p, q <= max");
  int sweep_max = 16;
  std::vector<std::string> sweep_ineq{"basic0", "basic1"};
  std::vector<int> sweep_m{0, 1};
  double sweep_alpha = kDefaultAlpha;
  Output sweep_out;
  sweep->add_option("--max", sweep_max, "Largest degree")->check(CLI::Range(1, 1024));
  sweep->add_option("--ineq", sweep_ineq, "Inequalities to sweep")->check(CLI::IsMember({"basic0", "basic1"}));
  sweep->add_option("--m", sweep_m, "Sobolev indices to sweep")->check(CLI::IsMember({0, 1}));
  sweep->add_option("--alpha", sweep_alpha, "Dyadic resolution parameter")->capture_default_str();
  add_output(sweep, sweep_out);

  auto* line = constants->add_subcommand("line", "Line p = ratio * q");
  int line_ratio = 2, line_qmax = 128;
  double line_alpha = kDefaultAlpha;
  Output line_out;
  line->add_option("--ratio", line_ratio, "p / q")->check(CLI::Range(1, 64));
  line->add_option("--qmax", line_qmax, "Largest q")->check(CLI::Range(1, 1024));
  line->add_option("--alpha", line_alpha, "Dyadic resolution parameter")->capture_default_str();
  add_output(line, line_out);

  sweep->callback([&] {
    std::vector<SweepRow> rows;
    std::vector<int> range;
    for (int i = 1; i <= sweep_max; ++i) range.push_back(i);
    for (const auto& name : sweep_ineq)
      for (int m : sweep_m) {
        const auto part = sweep_constants(parse_inequality(name), m, range, range, sweep_alpha, sweep_options(threads));
        rows.insert(rows.end(), part.begin(), part.end());
      }
    write_rows(rows, sweep_out, out);
    write_gnuplot(sweep_out, "set dgrid3d " + str(sweep_max) + "," + str(sweep_max) + "\nsplot " +
                                 single_quoted(sweep_out.path) + " using 3:4:6 with lines\n");
  });
  line->callback([&] {
    const auto rows = line_sweep(line_ratio, line_qmax, line_alpha, sweep_options(threads));
    write_rows(rows, line_out, out);
    write_gnuplot(line_out, "set logscale x\nplot " + single_quoted(line_out.path) + " using 4:6 with linespoints\n");
  });
  constants->final_callback([&] {
    if (!constants->get_subcommands().empty()) return;
    const ConstantQuery q{parse_inequality(ineq_name), cp, cq, cm, cz, c_alpha};
    const ConstantResult r = compute_constant(q);
    write_rows({{q.inequality, q.m, q.p, q.q, q.alpha, r.constant}}, c_out, out);
  });

  // solve
  auto* solve = app.add_subcommand("solve", "PCG solve of the SIPG system for sin(pi x) sin(pi y)");
  std::string solve_mesh;
  int solve_dim = 2, solve_p = 0;
  std::string solve_precond = "asm";
  SolverKnobs solve_knobs;
  Output solve_out;
  solve->add_option("--mesh", solve_mesh, "Mesh file (default: 2x2 cells on the unit square)")->check(CLI::ExistingFile);
  solve->add_option("--dim", solve_dim, "Dimension of the default mesh")->check(CLI::IsMember({1, 2}));
  solve->add_option("--p", solve_p, "Override all degrees")->check(CLI::Range(1, 256));
  solve->add_option("--precond", solve_precond, "asm, jacobi or none")->check(CLI::IsMember({"asm", "jacobi", "none"}));
  add_knobs(solve, solve_knobs);
  add_output(solve, solve_out);
  solve->callback([&] {
    const RectMesh mesh = load_mesh(solve_mesh, solve_dim, solve_p);
    const AsmConfig config = to_config(solve_knobs);
    const DiscreteSystem sys = assemble_sipg(mesh, {config.gamma});
    const double pi = std::numbers::pi;
    const int dim = mesh.dim();
    const ScalarField exact = [dim, pi](double x, double y) {
      return dim == 1 ? std::sin(pi * x) : std::sin(pi * x) * std::sin(pi * y);
    };
    const ScalarField f = [dim, exact, pi](double x, double y) { return dim * pi * pi * exact(x, y); };
    const Vector rhs = assemble_load(mesh, sys.dofs, f);
    OperatorFn c;
    if (solve_precond == "asm") {
      c = as_operator(compose_preconditioner(mesh, config));
    } else if (solve_precond == "jacobi") {
      const Vector inv = sys.matrix.diagonal().cwiseInverse();
      c = [inv](const Vector& x) { return Vector(inv.cwiseProduct(x)); };
    } else {
      c = [](const Vector& x) { return x; };
    }
    const PcgResult r = pcg(as_operator(sys.matrix), c, rhs, solve_knobs.tol, solve_knobs.max_iter);
    Table t("dofs,iterations,residual,l2_error");
    t.row({str(sys.dofs.num_dofs()), str(r.report.iterations), num(r.report.final_relative_residual),
           num(l2_error(mesh, sys.dofs, r.solution, exact))});
    t.write(solve_out, out);
    write_gnuplot(solve_out, "plot " + single_quoted(solve_out.path) + " using 1:4 with points\n");
  });

  // precond-bench
  auto* bench = app.add_subcommand("precond-bench", "Condition number estimates of the preconditioned system");
  std::string bench_mesh, bench_plist = "4,8,16,32";
  int bench_dim = 2;
  SolverKnobs bench_knobs;
  Output bench_out;
  bench->add_option("--mesh", bench_mesh, "Mesh file (default: 2x2 cells on the unit square)")->check(CLI::ExistingFile);
  bench->add_option("--dim", bench_dim, "Dimension of the default mesh")->check(CLI::IsMember({1, 2}));
  bench->add_option("--p-list", bench_plist, "Comma separated degrees")->capture_default_str();
  add_knobs(bench, bench_knobs);
  add_output(bench, bench_out);
  bench->callback([&] {
    const AsmConfig config = to_config(bench_knobs);
    Table t("p,dofs,kappa_est,pcg_iters");
    for (int p : parse_int_list(bench_plist)) {
      if (p < 1) throw CLI::ValidationError("--p-list", "degrees must be positive");
      const RectMesh mesh = load_mesh(bench_mesh, bench_dim, p);
      const DiscreteSystem sys = assemble_sipg(mesh, {config.gamma});
      const auto stack = compose_preconditioner(mesh, config);
      const Vector rhs = random_vector(sys.dofs.num_dofs(), seed);
      const PcgResult r = pcg(as_operator(sys.matrix), as_operator(stack), rhs, bench_knobs.tol, bench_knobs.max_iter);
      t.row({str(p), str(sys.dofs.num_dofs()), num(r.report.kappa_est), str(r.report.iterations)});
    }
    t.write(bench_out, out);
    write_gnuplot(bench_out, "plot " + single_quoted(bench_out.path) + " using 1:3 with linespoints\n");
  });

  // grading
  auto* grading = app.add_subcommand("grading", "Neighbor ratios of degrees and cell sizes");
  std::string grading_mesh;
  double grading_ratio = kDefaultGradingRatio;
  Output grading_out;
  grading->add_option("--mesh", grading_mesh, "Mesh file")->required()->check(CLI::ExistingFile);
  grading->add_option("--ratio", grading_ratio, "Largest admissible neighbor ratio")->capture_default_str();
  add_output(grading, grading_out);
  grading->callback([&] {
    const GradingReport r = check_grading(read_mesh_file(grading_mesh), grading_ratio);
    Table t("max_degree_ratio,max_size_ratio,violations");
    t.row({num(r.max_degree_ratio), num(r.max_size_ratio), std::to_string(r.violations.size())});
    t.write(grading_out, out);
    if (!r.ok()) {
      err << "grading bound " << grading_ratio << " violated on " << r.violations.size() << " face(s)\n";
      exit_code = kExitFailure;
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const MaxIterReached& e) {
    err << "error: " << e.what() << " after " << e.result.report.iterations << " iterations\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return exit_code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hpasm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hpasm::cli
