#include "hpasm/constants.hpp"

#include <algorithm>
#include <cmath>

#include "hpasm/dense_eigen.hpp"
#include "hpasm/errors.hpp"
#include "hpasm/lgl.hpp"

namespace hpasm {

std::string to_string(Inequality ineq) { return ineq == Inequality::Basic0 ? "basic0" : "basic1"; }

Inequality parse_inequality(const std::string& name) {
  if (name == "basic0") return Inequality::Basic0;
  if (name == "basic1") return Inequality::Basic1;
  throw Error("unknown inequality '" + name + "'");
}

namespace {

void validate(const ConstantQuery& q) {
  if (q.p < 1 || q.q < 1) throw Error("degrees must be at least 1");
  if (q.m != 0 && q.m != 1) throw Error("m must be 0 or 1");
  if (q.z != 1 && q.z != -1) throw Error("z must be -1 or +1");
}

ConstantResult largest(const DenseMatrix& a, const DenseMatrix& m) {
  const GeneralizedEigen ge = generalized_eigen(a, m);
  const Eigen::Index top = ge.values.size() - 1;
  ConstantResult r;
  r.lambda_max = ge.values[top];
  r.constant = std::sqrt(std::max(r.lambda_max, 0.0));
  const Vector v = ge.vectors.col(top);
  const Vector av = a * v;
  const double scale = av.norm();
  r.eigvec_residual = scale > 0.0 ? (av - r.lambda_max * (m * v)).norm() / scale : 0.0;
  return r;
}

}  // namespace

std::pair<DenseMatrix, DenseMatrix> constant_pencil(const ConstantQuery& query) {
  validate(query);
  if (query.inequality == Inequality::Basic0) {
    const Grid1D gp = Grid1D::from(lgl_nodes(query.p));
    const Grid1D gq = Grid1D::from(lgl_nodes(query.q));
    const DenseMatrix t = shape_product_matrix(query.z, gq) * lagrange_eval_matrix(gp, gq.points());
    const DenseMatrix a = t.transpose() * gram_spectral(query.q, query.m) * t;
    DenseMatrix m = gram_spectral(query.p, 0);
    if (query.m == 1) m += gram_spectral(query.p, 1);
    return {a, m};
  }
  const Grid1D gp = Grid1D::from(dyadic_grid(query.p, query.alpha));
  const Grid1D gq = Grid1D::from(dyadic_grid(query.q, query.alpha));
  const DenseMatrix t = shape_product_matrix(query.z, gq) * p1_eval_matrix(gp, gq.points());
  const DenseMatrix a = t.transpose() * gram_p1(gq, query.m) * t;
  DenseMatrix m = gram_p1(gp, 0);
  if (query.m == 1) m += gram_p1(gp, 1);
  return {a, m};
}

ConstantResult constant_basic0(const ConstantQuery& query) {
  if (query.inequality != Inequality::Basic0) throw Error("query is not for basic0");
  const auto [a, m] = constant_pencil(query);
  return largest(a, m);
}

ConstantResult constant_basic1(const ConstantQuery& query) {
  if (query.inequality != Inequality::Basic1) throw Error("query is not for basic1");
  const auto [a, m] = constant_pencil(query);
  return largest(a, m);
}

ConstantResult compute_constant(const ConstantQuery& query) {
  return query.inequality == Inequality::Basic0 ? constant_basic0(query) : constant_basic1(query);
}

std::pair<double, double> norm_equivalence_constants(int p, int m) {
  if (p < 1) throw Error("degree must be at least 1");
  if (m != 0 && m != 1) throw Error("m must be 0 or 1");
  const Grid1D g = Grid1D::from(lgl_nodes(p));
  DenseMatrix a = gram_p1(g, 0);
  DenseMatrix s = gram_spectral(p, 0);
  if (m == 1) {
    a += gram_p1(g, 1);
    s += gram_spectral(p, 1);
  }
  const GeneralizedEigen ge = generalized_eigen(a, s);
  return {std::sqrt(ge.values[0]), std::sqrt(ge.values[ge.values.size() - 1])};
}

}  // namespace hpasm
