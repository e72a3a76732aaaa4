#include "blockkrylov/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "blockkrylov/baselines.hpp"
#include "blockkrylov/dense.hpp"
#include "blockkrylov/error.hpp"
#include "blockkrylov/gpcmrh.hpp"
#include "blockkrylov/gpmr.hpp"
#include "blockkrylov/hessenberg.hpp"
#include "blockkrylov/matrix_market.hpp"
#include "blockkrylov/synthetic.hpp"

namespace blockkrylov {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_g(double v, int digits = 17) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool is_scaled_identity(const SparseMatrix& a, double scale) {
  if (a.nrows() != a.ncols()) return false;
  for (index_t i = 0; i < a.nrows(); ++i) {
    bool diag_seen = false;
    for (index_t p = a.row_offsets()[i]; p < a.row_offsets()[i + 1]; ++p) {
      const index_t j = a.col_indices()[p];
      const double v = a.values()[p];
      if (j == i) {
        diag_seen = true;
        if (v != scale) return false;
      } else if (v != 0.0) {
        return false;
      }
    }
    if (!diag_seen && scale != 0.0) return false;
  }
  return true;
}

}  // namespace

std::vector<index_t> read_partition_file(const std::filesystem::path& path, index_t size,
                                         PartitionFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open partition file " + path.string(), 0);
  std::vector<index_t> first;
  std::string line;
  std::size_t lineno = 0;
  index_t vertex = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      if (tok[0] == '%' || tok[0] == '#') break;
      long long v = 0;
      std::size_t used = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError("partition file: not an integer '" + tok + "'", lineno);
      if (format == PartitionFormat::indices) {
        if (v < 0 || static_cast<index_t>(v) >= size) {
          throw ParseError("partition file: index " + tok + " outside [0, " +
                               std::to_string(size) + ")",
                           lineno);
        }
        first.push_back(static_cast<index_t>(v));
      } else {
        if (v != 0 && v != 1) throw ParseError("partition file: part id must be 0 or 1", lineno);
        if (vertex >= size) throw ParseError("partition file: more entries than rows", lineno);
        if (v == 0) first.push_back(vertex);
        ++vertex;
      }
    }
  }
  if (format == PartitionFormat::metis && vertex != size) {
    throw ParseError("partition file: expected " + std::to_string(size) + " part ids, found " +
                         std::to_string(vertex),
                     lineno);
  }
  return first;
}

std::vector<index_t> partition_order(index_t size, const PartitionSpec& spec) {
  std::vector<index_t> order;
  order.reserve(size);
  if (spec.split) {
    if (!spec.first_block.empty()) {
      throw InvalidInputError("partition: give either a split index or a first-block list");
    }
    for (index_t i = 0; i < size; ++i) order.push_back(i);
    return order;
  }
  std::vector<char> taken(size, 0);
  for (index_t i : spec.first_block) {
    if (i >= size) throw InvalidInputError("partition: index " + std::to_string(i) + " out of range");
    if (taken[i]) throw InvalidInputError("partition: duplicate index " + std::to_string(i));
    taken[i] = 1;
    order.push_back(i);
  }
  for (index_t i = 0; i < size; ++i) {
    if (!taken[i]) order.push_back(i);
  }
  return order;
}

PartitionedSystem partition_system(const SparseMatrix& K, const PartitionSpec& spec,
                                   std::span<const double> rhs) {
  if (K.nrows() != K.ncols()) throw InvalidInputError("partition: matrix must be square");
  const index_t size = K.nrows();
  if (rhs.size() != size) throw InvalidInputError("partition: right-hand side length mismatch");
  const index_t m = spec.split ? *spec.split : spec.first_block.size();
  if (m == 0 || m >= size) {
    throw InvalidInputError("partition: both blocks must be nonempty (first block has " +
                            std::to_string(m) + " of " + std::to_string(size) + " rows)");
  }
  PartitionedSystem out;
  out.order = partition_order(size, spec);
  const SparseMatrix P = spec.split ? K : K.permute_symmetric(out.order);
  out.M = P.block(0, m, 0, m);
  out.A = P.block(0, m, m, size);
  out.B = P.block(m, size, 0, m);
  out.N = P.block(m, size, m, size);
  out.b.resize(m);
  out.c.resize(size - m);
  for (index_t i = 0; i < m; ++i) out.b[i] = rhs[out.order[i]];
  for (index_t i = m; i < size; ++i) out.c[i - m] = rhs[out.order[i]];
  return out;
}

void ExperimentConfig::validate() const {
  if (!(tol > 0.0)) throw InvalidInputError("tol must be positive");
  if (maxit < 1) throw InvalidInputError("maxit must be at least 1");
  if (solvers.empty()) throw InvalidInputError("no solvers selected");
  for (const auto& s : solvers) {
    if (s != "gpcmrh" && s != "gpmr" && s != "gmres" && s != "cmrh") {
      throw InvalidInputError("unknown solver '" + s + "'");
    }
  }
  if (matrix_path.empty() && (synthetic_m == 0 || synthetic_n == 0)) {
    throw InvalidInputError("either a matrix path or synthetic block sizes are required");
  }
  if (!matrix_path.empty() && !partition.split && partition.first_block.empty() &&
      partition_file.empty()) {
    throw InvalidInputError("a split index or a partition is required");
  }
}

namespace {

struct PreparedRun {
  std::string name;
  SparseMatrix K;  ///< original ordering
  Vector rhs;      ///< K * ones
  PartitionedSystem parts;
};

PreparedRun prepare(const ExperimentConfig& cfg) {
  PreparedRun run;
  PartitionSpec spec = cfg.partition;
  if (cfg.matrix_path.empty()) {
    run.name = "synthetic_m" + std::to_string(cfg.synthetic_m) + "_n" +
               std::to_string(cfg.synthetic_n) + "_s" + std::to_string(cfg.seed);
    run.K = random_partitioned_matrix(cfg.synthetic_m, cfg.synthetic_n, cfg.synthetic_density,
                                      cfg.seed);
    if (!spec.split && spec.first_block.empty()) spec.split = cfg.synthetic_m;
  } else {
    run.name = cfg.matrix_path.stem().string();
    run.K = read_matrix_market(cfg.matrix_path);
  }
  if (run.K.nrows() != run.K.ncols()) throw InvalidInputError("matrix must be square");
  if (!cfg.partition_file.empty()) {
    spec.split.reset();
    spec.first_block = read_partition_file(cfg.partition_file, run.K.nrows(), cfg.partition_format);
  }
  if (spec.split && *spec.split >= run.K.nrows()) {
    throw InvalidInputError("split index " + std::to_string(*spec.split) +
                            " must be below the matrix dimension " +
                            std::to_string(run.K.nrows()));
  }
  run.rhs = spmv(run.K, Vector(run.K.ncols(), 1.0));
  run.parts = partition_system(run.K, spec, run.rhs);
  return run;
}

double original_relative_residual(const PreparedRun& run, const Vector& x, const Vector& y) {
  const index_t m = x.size();
  Vector u(run.K.ncols());
  for (index_t i = 0; i < m; ++i) u[run.parts.order[i]] = x[i];
  for (index_t i = 0; i < y.size(); ++i) u[run.parts.order[m + i]] = y[i];
  Vector r = spmv(run.K, u);
  for (index_t i = 0; i < r.size(); ++i) r[i] = run.rhs[i] - r[i];
  const double rn = norm2(run.rhs);
  return rn > 0.0 ? norm2(r) / rn : norm2(r);
}

void write_run_info(const std::filesystem::path& path, const ExperimentConfig& cfg,
                    const PreparedRun& run, const ExperimentResult& res) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "name " << run.name << '\n'
      << "size " << run.K.nrows() << '\n'
      << "nnz " << run.K.nnz() << '\n'
      << "first_block_size " << run.parts.b.size() << '\n'
      << "precond " << (cfg.precond == Preconditioning::none ? "none" : "block_direct") << '\n'
      << "tol " << fmt_g(cfg.tol) << (cfg.absolute_tol ? " absolute" : " relative") << '\n'
      << "maxit " << cfg.maxit << '\n'
      << "seed " << cfg.seed << '\n'
      << "load_seconds " << fmt_g(res.load_seconds, 6) << '\n'
      << "setup_seconds " << fmt_g(res.setup_seconds, 6) << '\n';
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentResult res;
  auto t0 = Clock::now();
  const PreparedRun run = prepare(cfg);
  res.load_seconds = seconds_since(t0);
  const PartitionedSystem& p = run.parts;
  if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);

  auto base_row = [&](const std::string& solver) {
    SummaryRow row;
    row.name = run.name;
    row.size = run.K.nrows();
    row.nnz = run.K.nnz();
    row.solver = solver;
    row.final_relative_residual = std::numeric_limits<double>::quiet_NaN();
    return row;
  };

  std::optional<PreconditionedSystem> psys;
  std::string setup_error;
  std::optional<BlockSystem> plain;
  OperatorPtr whole;
  t0 = Clock::now();
  if (cfg.precond == Preconditioning::block_direct) {
    try {
      psys = preconditioned_system(p.M, p.N, p.A, p.B, p.b, p.c);
    } catch (const SetupError& e) {
      setup_error = std::string("setup: ") + e.what();
    }
  } else {
    whole = make_operator(run.K.permute_symmetric(p.order));
    if (is_scaled_identity(p.M, cfg.lambda) && is_scaled_identity(p.N, cfg.mu)) {
      plain = BlockSystem::make(cfg.lambda, cfg.mu, p.A, p.B, p.b, p.c);
    }
  }
  res.setup_seconds = seconds_since(t0);

  SolveOptions opts;
  opts.tol = cfg.tol;
  opts.maxit = cfg.maxit;
  opts.track_true_residual = cfg.track_true_residual;
  opts.absolute_tol = cfg.absolute_tol;

  for (const auto& solver : cfg.solvers) {
    SummaryRow row = base_row(solver);
    try {
      if (!setup_error.empty()) throw SetupError(setup_error);
      SolveReport rep;
      const bool block_method = solver == "gpcmrh" || solver == "gpmr";
      if (psys) {
        const BlockSystem& sys = psys->system;
        if (solver == "gpcmrh") rep = gpcmrh_solve(sys, opts);
        else if (solver == "gpmr") rep = gpmr_solve(sys, opts);
        else if (solver == "gmres") rep = gmres_solve(MonolithicOperator(sys), sys.rhs(), opts);
        else rep = cmrh_solve(MonolithicOperator(sys), sys.rhs(), opts);
        auto [x, y] = psys->back_map(rep.x, rep.y);
        rep.x = std::move(x);
        rep.y = std::move(y);
      } else if (block_method) {
        if (!plain) {
          throw InvalidInputError(
              "config: without preconditioning the diagonal blocks must equal lambda*I and mu*I");
        }
        rep = solver == "gpcmrh" ? gpcmrh_solve(*plain, opts) : gpmr_solve(*plain, opts);
      } else {
        Vector g = p.b;
        g.insert(g.end(), p.c.begin(), p.c.end());
        rep = solver == "gmres" ? gmres_solve(*whole, g, p.b.size(), opts)
                                : cmrh_solve(*whole, g, p.b.size(), opts);
      }
      row.iterations = rep.iterations;
      row.runtime_seconds = rep.solve_seconds;
      row.final_relative_residual = original_relative_residual(run, rep.x, rep.y);
      row.status = to_string(rep.status);
      if (!cfg.out_dir.empty()) {
        write_convergence_csv(cfg.out_dir / ("convergence_" + solver + ".csv"), rep);
      }
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    res.rows.push_back(std::move(row));
  }

  if (!cfg.out_dir.empty()) {
    std::ofstream csv(cfg.out_dir / "summary.csv");
    write_summary_csv(csv, res.rows);
    std::ofstream txt(cfg.out_dir / "summary.txt");
    write_summary_table(txt, res.rows);
    write_run_info(cfg.out_dir / "run_info.txt", cfg, run, res);
  }
  return res;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "name,size,nnz,solver,iterations,runtime_seconds,final_relative_residual,status\n";
  for (const auto& r : rows) {
    out << csv_field(r.name) << ',' << r.size << ',' << r.nnz << ',' << r.solver << ','
        << r.iterations << ',' << fmt_g(r.runtime_seconds, 6) << ','
        << fmt_g(r.final_relative_residual, 6) << ',' << csv_field(r.status) << '\n';
  }
}

void write_summary_table(std::ostream& out, const std::vector<SummaryRow>& rows) {
  const std::vector<std::string> header{"name", "size", "nnz", "solver", "iter", "time[s]",
                                        "rel.res", "status"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.name, std::to_string(r.size), std::to_string(r.nnz), r.solver,
                     std::to_string(r.iterations), fmt_g(r.runtime_seconds, 4),
                     fmt_g(r.final_relative_residual, 3), r.status});
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) {
    width[j] = header[j].size();
    for (const auto& row : cells) width[j] = std::max(width[j], row[j].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t j = 0; j < row.size(); ++j) {
      // Text columns left-aligned, numbers right-aligned.
      const bool text = j == 0 || j == 3 || j == 7;
      const std::string pad(width[j] - row[j].size(), ' ');
      line += text ? row[j] + pad : pad + row[j];
      if (j + 1 < row.size()) line += "  ";
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  emit(header);
  for (const auto& row : cells) emit(row);
}

std::vector<LotkinRow> lotkin_conditioning(index_t n, std::size_t kmax) {
  if (kmax < 1 || n < kmax) throw InvalidInputError("lotkin: need n >= kmax >= 1");
  const auto A = make_operator(lotkin_matrix(n));
  const auto B = make_operator(lotkin_matrix(n).transpose());
  const Vector ones(n, 1.0);

  auto run = [&](bool pivoted) {
    SimHessState s = sim_hess_init(ones, ones, pivoted);
    // The study follows the process past the numerical rank of the Krylov
    // space, so only exactly vanishing pivots stop it.
    s.breakdown_scale = 0.0;
    while (s.D.size() < kmax && s.breakdown == Breakdown::none) {
      if (pivoted) sim_hess_pivoted_step(s, *A, *B);
      else sim_hess_step(s, *A, *B);
    }
    return s;
  };
  const SimHessState piv = run(true);
  const SimHessState unpiv = run(false);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<LotkinRow> rows;
  for (std::size_t k = 1; k <= kmax; ++k) {
    LotkinRow row;
    row.k = k;
    row.cond_pivoted = k <= piv.D.size() ? basis_condition(piv.D, k) : inf;
    row.cond_unpivoted = k <= unpiv.D.size() ? basis_condition(unpiv.D, k) : inf;
    rows.push_back(row);
  }
  return rows;
}

void write_lotkin_csv(std::ostream& out, const std::vector<LotkinRow>& rows) {
  out << "k,cond_pivoted,cond_unpivoted\n";
  for (const auto& r : rows) {
    out << r.k << ',' << fmt_g(r.cond_pivoted) << ',' << fmt_g(r.cond_unpivoted) << '\n';
  }
}

}  // namespace blockkrylov
