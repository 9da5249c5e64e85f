#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hpasm/dyadic.hpp"
#include "hpasm/tensor_ops.hpp"

namespace hpasm {

/// basic0: |I_q(Phi_z v)|_{H^m} <= C ||v||_{H^m} for v in Q_p.
/// basic1: the same with dyadic P1 interpolation on both sides.
enum class Inequality { Basic0, Basic1 };

std::string to_string(Inequality ineq);
Inequality parse_inequality(const std::string& name);

struct ConstantQuery {
  Inequality inequality = Inequality::Basic0;
  int p = 1;
  int q = 1;
  int m = 0;
  int z = 1;
  double alpha = kDefaultAlpha;
};

struct ConstantResult {
  double constant = 0.0;        // sqrt of the largest generalized eigenvalue
  double eigvec_residual = 0.0;  // ||A v - lambda M v|| / ||A v||
  double lambda_max = 0.0;
};

/// The pencil (A, M) whose largest eigenvalue is the squared constant.
std::pair<DenseMatrix, DenseMatrix> constant_pencil(const ConstantQuery& query);

ConstantResult constant_basic0(const ConstantQuery& query);
ConstantResult constant_basic1(const ConstantQuery& query);
/// Dispatches on query.inequality.
ConstantResult compute_constant(const ConstantQuery& query);

/// Square roots of the extreme eigenvalues of the P1 Gramian on the LGL-p grid
/// against the spectral Gramian (full norm for m = 1).
std::pair<double, double> norm_equivalence_constants(int p, int m);

struct SweepRow {
  Inequality inequality;
  int m;
  int p;
  int q;
  double alpha;
  double constant;
};

/// Results are read from and written to `cache_dir` when given, one small
/// file per query keyed by a hash of the query.
struct SweepOptions {
  std::optional<std::filesystem::path> cache_dir;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// All (p, q) pairs in row-major (p outer) order.
std::vector<SweepRow> sweep_constants(Inequality ineq, int m, const std::vector<int>& p_range,
                                      const std::vector<int>& q_range, double alpha = kDefaultAlpha,
                                      const SweepOptions& options = {});

/// Queries in the given order, evaluated in parallel.
std::vector<SweepRow> evaluate_queries(const std::vector<ConstantQuery>& queries, const SweepOptions& options = {});

/// Line p = ratio * q for q = 1..q_max, for both inequalities and m = 0, 1.
std::vector<SweepRow> line_sweep(int ratio, int q_max, double alpha = kDefaultAlpha, const SweepOptions& options = {});

/// Cache directory from the HPASM_CACHE_DIR environment variable.
std::optional<std::filesystem::path> cache_dir_from_env();

/// Stable 64-bit key of a query.
std::uint64_t query_hash(const ConstantQuery& query);

}  // namespace hpasm
