#include "asphdg/bench.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "asphdg/krylov.hpp"

namespace asphdg {

const char* const kCsvHeader =
    "problem,dim,k,N,tau1,tau2,smoother,aux,bc,dofs_global,iters,kappa_est,setup_ms,solve_ms,converged";

void validate(const ExperimentConfig& c) {
  if (c.n < 1) throw std::invalid_argument("N must be >= 1");
  if (c.k < 1) throw std::invalid_argument("k must be >= 1");
  if (c.tau1 < 0 || c.tau2 < 0) throw std::invalid_argument("tau must be non-negative");
  if (c.dim != 2 && c.dim != 3) throw std::invalid_argument("dim must be 2 or 3");
  if (c.problem != ProblemKind::scalar_rd && c.dim != 2)
    throw std::invalid_argument("vector and biharmonic problems are 2D only");
  if (!(c.alpha > 0)) throw std::invalid_argument("alpha must be positive");
  if (!(c.tol > 0)) throw std::invalid_argument("tol must be positive");
  if (c.problem != ProblemKind::biharmonic && c.smoother == SmootherKind::none)
    throw std::invalid_argument("reaction-diffusion preconditioners need a smoother");
  if (c.problem != ProblemKind::biharmonic && c.aux != AuxKind::direct)
    throw std::invalid_argument("aux=asp applies to the biharmonic problem only");
}

Discretization discretize(const ExperimentConfig& c) {
  validate(c);
  Discretization d;
  d.mesh = build_structured_mesh(c.dim, c.n);
  const TauField tau{c.tau1, c.tau2};
  switch (c.problem) {
    case ProblemKind::scalar_rd: d.problem = assemble_scalar_rd(d.mesh, c.k, tau, c.alpha); break;
    case ProblemKind::vector_rd: d.problem = assemble_vector_rd(d.mesh, c.k, tau, c.alpha); break;
    case ProblemKind::biharmonic: d.problem = assemble_cip_biharmonic(d.mesh, c.k, tau, c.alpha, c.bc); break;
  }
  d.system = condense(d.problem);
  return d;
}

PreconditionerConfig preconditioner_config(const ExperimentConfig& c) {
  PreconditionerConfig p;
  p.problem = c.problem;
  p.smoother = c.smoother;
  p.aux = c.aux;
  p.tau = TauField{c.tau1, c.tau2};
  p.alpha = c.alpha;
  p.bc = c.bc;
  return p;
}

ResultRow run_experiment(const ExperimentConfig& c) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  Discretization d = discretize(c);
  const LinearOperator b = build_preconditioner(d.mesh, d.problem, d.system, preconditioner_config(c));
  const auto t1 = clock::now();
  SolveReport rep;
  PcgOptions opt;
  opt.tol = c.tol;
  opt.maxit = c.maxit;
  pcg(matrix_operator(d.system.schur), b, d.system.lifted_rhs, rep, opt);
  const auto t2 = clock::now();
  ResultRow row;
  row.config = c;
  row.dofs_global = d.system.num_global;
  row.iters = rep.iterations;
  row.kappa_est = rep.kappa;
  row.converged = rep.converged;
  if (c.record_timings) {
    row.setup_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row.solve_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  }
  return row;
}

std::vector<ExperimentConfig> table_configs(int table, int n_max, const std::vector<int>& k_set) {
  if (table < 1 || table > 4) throw std::invalid_argument("table must be 1..4");
  const double taus[4][2] = {{1, 1}, {1, 1e4}, {1e4, 1}, {1e4, 1e4}};
  std::vector<ExperimentConfig> out;
  for (int k : k_set)
    for (int n = 8; n <= n_max; n *= 2)
      for (const auto& t : taus)
        for (int variant = 0; variant < 2; ++variant) {
          ExperimentConfig c;
          c.k = k;
          c.n = n;
          c.tau1 = t[0];
          c.tau2 = t[1];
          if (table <= 2) {
            c.problem = table == 1 ? ProblemKind::scalar_rd : ProblemKind::vector_rd;
            c.dim = table == 1 ? 3 : 2;
            c.smoother = variant == 0 ? SmootherKind::jacobi : SmootherKind::bgs;
            c.aux = AuxKind::direct;
          } else {
            c.problem = ProblemKind::biharmonic;
            c.dim = 2;
            c.bc = table == 3 ? PlateBoundary::simply_supported : PlateBoundary::clamped;
            c.smoother = variant == 0 ? SmootherKind::bgs : SmootherKind::none;
            c.aux = variant == 0 ? AuxKind::asp : AuxKind::direct;
          }
          out.push_back(c);
        }
  return out;
}

std::string reproduce_table(int table, int n_max, const std::vector<int>& k_set, bool record_timings) {
  std::vector<ResultRow> rows;
  for (ExperimentConfig c : table_configs(table, n_max, k_set)) {
    c.record_timings = record_timings;
    rows.push_back(run_experiment(c));
  }
  return to_csv(rows);
}

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, ',')) out.push_back(cur);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    const ExperimentConfig& c = r.config;
    os << to_string(c.problem) << ',' << c.dim << ',' << c.k << ',' << c.n << ',' << fmt("%.17g", c.tau1) << ','
       << fmt("%.17g", c.tau2) << ',' << to_string(c.smoother) << ',' << to_string(c.aux) << ','
       << (c.problem == ProblemKind::biharmonic ? to_string(c.bc) : std::string("none")) << ',' << r.dofs_global
       << ',' << r.iters << ',' << fmt("%.6g", r.kappa_est) << ',' << fmt("%.3f", r.setup_ms) << ','
       << fmt("%.3f", r.solve_ms) << ',' << (r.converged ? "true" : "false") << '\n';
  }
  return os.str();
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw std::invalid_argument("CSV header mismatch");
  std::vector<ResultRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 15) throw std::invalid_argument("CSV row needs 15 fields");
    ResultRow r;
    ExperimentConfig& c = r.config;
    try {
      c.problem = parse_problem(f[0]);
      c.dim = std::stoi(f[1]);
      c.k = std::stoi(f[2]);
      c.n = std::stoi(f[3]);
      c.tau1 = std::stod(f[4]);
      c.tau2 = std::stod(f[5]);
      c.smoother = parse_smoother(f[6]);
      c.aux = parse_aux(f[7]);
      c.bc = f[8] == "none" ? PlateBoundary::simply_supported : parse_plate_boundary(f[8]);
      r.dofs_global = std::stoi(f[9]);
      r.iters = std::stoi(f[10]);
      r.kappa_est = std::stod(f[11]);
      r.setup_ms = std::stod(f[12]);
      r.solve_ms = std::stod(f[13]);
    } catch (const std::logic_error& e) {
      throw std::invalid_argument(std::string("malformed CSV row: ") + e.what());
    }
    if (f[14] != "true" && f[14] != "false") throw std::invalid_argument("converged must be true/false");
    r.converged = f[14] == "true";
    rows.push_back(r);
  }
  return rows;
}

DenseOracle dense_oracle(const ExperimentConfig& c) {
  Discretization d = discretize(c);
  const int n = d.problem.layout.size();
  if (n > 2000) throw std::invalid_argument("dense oracle limited to 2000 unknowns");
  DenseOracle o;
  o.full = Eigen::MatrixXd(d.problem.matrix);
  const int nl = d.problem.layout.num_local, ng = d.problem.layout.num_global;
  const Eigen::MatrixXd all = o.full.topLeftCorner(nl, nl);
  const Eigen::MatrixXd alg = o.full.topRightCorner(nl, ng);
  o.schur = o.full.bottomRightCorner(ng, ng);
  if (nl > 0) o.schur -= alg.transpose() * all.ldlt().solve(alg);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (o.schur + o.schur.transpose()), Eigen::EigenvaluesOnly);
  o.schur_eigenvalues = eig.eigenvalues();
  o.kappa_schur = o.schur_eigenvalues.maxCoeff() / o.schur_eigenvalues.minCoeff();
  o.full_solution = o.full.ldlt().solve(d.problem.rhs);
  const LinearOperator b = build_preconditioner(d.mesh, d.problem, d.system, preconditioner_config(c));
  const Eigen::VectorXd ev = dense_preconditioned_spectrum(o.schur, b.materialize());
  o.kappa_preconditioned = ev.maxCoeff() / ev.minCoeff();
  return o;
}

}  // namespace asphdg
