// Copyright 2026 The irsopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "irsopt/conic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>
#include <cstdio>
#include <cstdlib>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

// Homogeneous self-dual model for  min c'x  s.t.  Ax = b, x in K:
//
//   A x - b tau              = 0
//   -A'y + c tau - z         = 0
//   b'y - c'x - kappa        = 0
//   x, z in K,  tau, kappa >= 0.
//
// tau > 0 at a solution yields the optimum (x, y, z)/tau; kappa > 0 yields an
// infeasibility certificate. Directions come from Newton steps on the scaled
// central-path equations with Nesterov-Todd scalings per cone; each step
// factors the Schur complement A W^2 A' once and reuses it for the
// predictor and the Mehrotra corrector.

namespace irsopt::conic {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using SparseRM = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct NormCone {
  ConeType type;  // Nonnegative, SecondOrder or Psd after normalization
  Index offset = 0;
  Index dim = 0;      // cone dimension (Psd: matrix dimension)
  Index foot = 0;     // scalar footprint in x
};

// J v = (v0, -v1) for second-order cones.
inline VecX socJ(const VecX& v) {
  VecX r = -v;
  r[0] = v[0];
  return r;
}

inline double soc_residual2(const VecX& v) {
  return v[0] * v[0] - v.tail(v.size() - 1).squaredNorm();
}

// Nesterov-Todd scaling state for one cone.
struct ConeScaling {
  const NormCone* cone = nullptr;
  // Nonnegative: w = sqrt(x/z)
  VecX w;
  // Second-order: W = eta (2 v v' - J) with v the Jordan square root of
  // the scaling point wbar (both of unit hyperbolic norm)
  double eta = 1.0;
  VecX vhalf;
  // Psd: r such that r' Z r = rinv X rinv' = diag(sigma); S = r r'
  MatX r, rinv, S;
  VecX sigma;
  // Scaled point lambda = W^{-1} x = W z, stored in cone coordinates.
  VecX lambda;

  bool compute(const VecX& x, const VecX& z);

  // v |-> W^{-1} v (primal side scaling).
  VecX scale_x(const VecX& v) const;
  // v |-> W v (dual side scaling).
  VecX scale_z(const VecX& v) const;
  // v |-> W v applied on the primal side (inverse of scale_x).
  VecX unscale_x(const VecX& v) const;
  // v |-> W^2 v.
  VecX apply_w2(const VecX& v) const;

  VecX jordan_mul(const VecX& a, const VecX& b) const;
  VecX jordan_div_lambda(const VecX& v) const;  // solve lambda o u = v
  VecX identity() const;
  double degree() const;
  double max_step(const VecX& d) const;  // sup {a : lambda + a d in K}
};

bool ConeScaling::compute(const VecX& x, const VecX& z) {
  switch (cone->type) {
    case ConeType::Nonnegative: {
      if ((x.array() <= 0.0).any() || (z.array() <= 0.0).any()) return false;
      w = (x.array() / z.array()).sqrt();
      lambda = (x.array() * z.array()).sqrt();
      return true;
    }
    case ConeType::SecondOrder: {
      const double rx2 = soc_residual2(x);
      const double rz2 = soc_residual2(z);
      if (!(rx2 > 0.0) || !(rz2 > 0.0) || !(x[0] > 0.0) || !(z[0] > 0.0)) return false;
      const double rx = std::sqrt(rx2), rz = std::sqrt(rz2);
      const VecX xb = x / rx, zb = z / rz;
      const double gamma = std::sqrt(0.5 * (1.0 + xb.dot(zb)));
      const VecX wbar = (xb + socJ(zb)) / (2.0 * gamma);
      vhalf = wbar;
      vhalf[0] += 1.0;
      vhalf /= std::sqrt(2.0 * (1.0 + wbar[0]));
      eta = std::sqrt(rx / rz);
      lambda = scale_z(z);
      return true;
    }
    case ConeType::Psd: {
      const Index d = cone->dim;
      MatX X = smat(x), Z = smat(z);
      Eigen::LLT<MatX> lx, lz;
      double jitter = 0.0;
      for (int attempt = 0;; ++attempt) {
        MatX Xj = X, Zj = Z;
        if (jitter > 0.0) {
          Xj.diagonal().array() += jitter * (1.0 + X.diagonal().maxCoeff());
          Zj.diagonal().array() += jitter * (1.0 + Z.diagonal().maxCoeff());
        }
        lx.compute(Xj);
        lz.compute(Zj);
        if (lx.info() == Eigen::Success && lz.info() == Eigen::Success) break;
        if (attempt >= 3) return false;
        jitter = jitter == 0.0 ? 1e-14 : jitter * 100.0;
      }
      const MatX Lx = lx.matrixL();
      const MatX Lz = lz.matrixL();
      Eigen::BDCSVD<MatX> svd(Lz.transpose() * Lx,
                              Eigen::ComputeThinU | Eigen::ComputeThinV);
      sigma = svd.singularValues();
      if (!(sigma.minCoeff() > 0.0)) return false;
      const VecX isq = sigma.array().sqrt().inverse();
      r = Lx * svd.matrixV() * isq.asDiagonal();
      rinv = isq.asDiagonal() * svd.matrixU().transpose() * Lz.transpose();
      S = r * r.transpose();
      MatX L = MatX::Zero(d, d);
      L.diagonal() = sigma;
      lambda = svec(L);
      return true;
    }
    default:
      return false;
  }
}

VecX ConeScaling::scale_x(const VecX& v) const {
  switch (cone->type) {
    case ConeType::Nonnegative:
      return v.array() / w.array();
    case ConeType::SecondOrder: {
      const VecX jw = socJ(vhalf);
      return (2.0 * jw * jw.dot(v) - socJ(v)) / eta;
    }
    default: {
      const MatX V = smat(v);
      return svec(MatX(rinv * V * rinv.transpose()));
    }
  }
}

VecX ConeScaling::scale_z(const VecX& v) const {
  switch (cone->type) {
    case ConeType::Nonnegative:
      return w.array() * v.array();
    case ConeType::SecondOrder:
      return eta * (2.0 * vhalf * vhalf.dot(v) - socJ(v));
    default: {
      const MatX V = smat(v);
      return svec(MatX(r.transpose() * V * r));
    }
  }
}

VecX ConeScaling::unscale_x(const VecX& v) const {
  switch (cone->type) {
    case ConeType::Nonnegative:
      return w.array() * v.array();
    case ConeType::SecondOrder:
      return scale_z(v);  // W is symmetric for this cone
    default: {
      const MatX V = smat(v);
      return svec(MatX(r * V * r.transpose()));
    }
  }
}

VecX ConeScaling::apply_w2(const VecX& v) const {
  switch (cone->type) {
    case ConeType::Nonnegative:
      return w.array().square() * v.array();
    case ConeType::SecondOrder:
      return scale_z(scale_z(v));
    default: {
      const MatX V = smat(v);
      return svec(MatX(S * V * S));
    }
  }
}

VecX ConeScaling::jordan_mul(const VecX& a, const VecX& b) const {
  switch (cone->type) {
    case ConeType::Nonnegative:
      return a.array() * b.array();
    case ConeType::SecondOrder: {
      VecX r2(a.size());
      r2[0] = a.dot(b);
      r2.tail(a.size() - 1) =
          a[0] * b.tail(b.size() - 1) + b[0] * a.tail(a.size() - 1);
      return r2;
    }
    default: {
      const MatX A = smat(a), B = smat(b);
      return svec(MatX(0.5 * (A * B + B * A)));
    }
  }
}

VecX ConeScaling::jordan_div_lambda(const VecX& v) const {
  switch (cone->type) {
    case ConeType::Nonnegative:
      return v.array() / lambda.array();
    case ConeType::SecondOrder: {
      const Index q = v.size();
      const double l0 = lambda[0];
      const auto l1 = lambda.tail(q - 1);
      const double det = l0 * l0 - l1.squaredNorm();
      VecX u(q);
      u[0] = (l0 * v[0] - l1.dot(v.tail(q - 1))) / det;
      u.tail(q - 1) = (v.tail(q - 1) - u[0] * l1) / l0;
      return u;
    }
    default: {
      const MatX V = smat(v);
      MatX U(V.rows(), V.cols());
      for (Index j = 0; j < V.cols(); ++j)
        for (Index i = 0; i < V.rows(); ++i)
          U(i, j) = 2.0 * V(i, j) / (sigma[i] + sigma[j]);
      return svec(U);
    }
  }
}

VecX ConeScaling::identity() const {
  switch (cone->type) {
    case ConeType::Nonnegative:
      return VecX::Ones(cone->dim);
    case ConeType::SecondOrder: {
      VecX e = VecX::Zero(cone->dim);
      e[0] = 1.0;
      return e;
    }
    default:
      return svec(MatX::Identity(cone->dim, cone->dim));
  }
}

double ConeScaling::degree() const {
  switch (cone->type) {
    case ConeType::Nonnegative:
      return static_cast<double>(cone->dim);
    case ConeType::SecondOrder:
      return 1.0;
    default:
      return static_cast<double>(cone->dim);
  }
}

double ConeScaling::max_step(const VecX& d) const {
  switch (cone->type) {
    case ConeType::Nonnegative: {
      double a = kInf;
      for (Index i = 0; i < d.size(); ++i) {
        if (d[i] < 0.0) a = std::min(a, -lambda[i] / d[i]);
      }
      return a;
    }
    case ConeType::SecondOrder: {
      const Index q = d.size();
      const double a = d[0] * d[0] - d.tail(q - 1).squaredNorm();
      const double bh = lambda[0] * d[0] - lambda.tail(q - 1).dot(d.tail(q - 1));
      const double c = soc_residual2(lambda);
      // first positive root of a t^2 + 2 bh t + c = 0 (c > 0 inside the cone)
      double best = kInf;
      if (std::abs(a) < 1e-300) {
        if (bh < 0.0) best = -c / (2.0 * bh);
      } else {
        const double disc = bh * bh - a * c;
        if (disc >= 0.0) {
          const double sq = std::sqrt(disc);
          for (double root : {(-bh - sq) / a, (-bh + sq) / a}) {
            if (root > 0.0) best = std::min(best, root);
          }
        }
      }
      return best;
    }
    default: {
      const MatX D = smat(d);
      MatX Ds(D.rows(), D.cols());
      const VecX isq = sigma.array().sqrt().inverse();
      for (Index j = 0; j < D.cols(); ++j)
        for (Index i = 0; i < D.rows(); ++i) Ds(i, j) = D(i, j) * isq[i] * isq[j];
      Eigen::SelfAdjointEigenSolver<MatX> es(Ds, Eigen::EigenvaluesOnly);
      const double lmin = es.eigenvalues().minCoeff();
      return lmin < 0.0 ? 1.0 / (-lmin) : kInf;
    }
  }
}

// Scaling machinery over the whole cone product.
struct ScalingSet {
  const std::vector<NormCone>* cones = nullptr;
  std::vector<ConeScaling> parts;

  void init(const std::vector<NormCone>& cs) {
    cones = &cs;
    parts.resize(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) parts[i].cone = &cs[i];
  }

  bool compute(const VecX& x, const VecX& z) {
    for (auto& part : parts) {
      const auto& cn = *part.cone;
      if (!part.compute(x.segment(cn.offset, cn.foot), z.segment(cn.offset, cn.foot)))
        return false;
    }
    return true;
  }

  template <typename F>
  VecX map(const VecX& v, F&& f) const {
    VecX out(v.size());
    for (const auto& part : parts) {
      const auto& cn = *part.cone;
      out.segment(cn.offset, cn.foot) = f(part, VecX(v.segment(cn.offset, cn.foot)));
    }
    return out;
  }

  VecX scale_x(const VecX& v) const {
    return map(v, [](const ConeScaling& s, const VecX& u) { return s.scale_x(u); });
  }
  VecX scale_z(const VecX& v) const {
    return map(v, [](const ConeScaling& s, const VecX& u) { return s.scale_z(u); });
  }
  VecX unscale_x(const VecX& v) const {
    return map(v, [](const ConeScaling& s, const VecX& u) { return s.unscale_x(u); });
  }
  VecX apply_w2(const VecX& v) const {
    return map(v, [](const ConeScaling& s, const VecX& u) { return s.apply_w2(u); });
  }
  VecX jordan_mul(const VecX& a, const VecX& b) const {
    VecX out(a.size());
    for (const auto& part : parts) {
      const auto& cn = *part.cone;
      out.segment(cn.offset, cn.foot) = part.jordan_mul(
          VecX(a.segment(cn.offset, cn.foot)), VecX(b.segment(cn.offset, cn.foot)));
    }
    return out;
  }
  VecX jordan_div_lambda(const VecX& v) const {
    return map(v, [](const ConeScaling& s, const VecX& u) { return s.jordan_div_lambda(u); });
  }
  VecX lambda() const {
    Index n = 0;
    for (const auto& part : parts) n += part.cone->foot;
    VecX out(n);
    for (const auto& part : parts)
      out.segment(part.cone->offset, part.cone->foot) = part.lambda;
    return out;
  }
  double max_step(const VecX& d) const {
    double a = kInf;
    for (const auto& part : parts) {
      a = std::min(a, part.max_step(VecX(d.segment(part.cone->offset, part.cone->foot))));
    }
    return a;
  }
};

VecX cone_identity(const std::vector<NormCone>& cones, Index n) {
  VecX e = VecX::Zero(n);
  for (const auto& cn : cones) {
    switch (cn.type) {
      case ConeType::Nonnegative:
        e.segment(cn.offset, cn.foot).setOnes();
        break;
      case ConeType::SecondOrder:
        e[cn.offset] = 1.0;
        break;
      default: {
        for (Index j = 0; j < cn.dim; ++j)
          e[cn.offset + svec_index(cn.dim, j, j)] = 1.0;
        break;
      }
    }
  }
  return e;
}

double total_degree(const std::vector<NormCone>& cones) {
  double nu = 0.0;
  for (const auto& cn : cones) {
    nu += cn.type == ConeType::SecondOrder ? 1.0 : static_cast<double>(cn.dim);
  }
  return nu;
}

// Per-row entries grouped by cone, for the Schur assembly.
struct RowLayout {
  struct Slice {
    int cone;
    std::vector<std::pair<Index, double>> entries;  // (local index, value)
  };
  std::vector<std::vector<Slice>> rows;
};

int cone_of(const std::vector<NormCone>& cones, Index var) {
  int lo = 0, hi = static_cast<int>(cones.size()) - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (cones[mid].offset <= var) lo = mid;
    else hi = mid - 1;
  }
  return lo;
}

RowLayout build_row_layout(const SparseRM& A, const std::vector<NormCone>& cones) {
  RowLayout layout;
  layout.rows.resize(A.rows());
  for (Index i = 0; i < A.rows(); ++i) {
    auto& slices = layout.rows[i];
    for (SparseRM::InnerIterator it(A, i); it; ++it) {
      const int ci = cone_of(cones, it.col());
      if (slices.empty() || slices.back().cone != ci) {
        slices.push_back({ci, {}});
      }
      slices.back().entries.emplace_back(it.col() - cones[ci].offset, it.value());
    }
  }
  return layout;
}

// B(i, :) = "half-scaled" row i, so that B B' = A W^2 A'.
void assemble_scaled_rows(const RowLayout& layout, const ScalingSet& scal, MatX& B) {
  B.setZero();
  for (Index i = 0; i < static_cast<Index>(layout.rows.size()); ++i) {
    for (const auto& slice : layout.rows[i]) {
      const auto& part = scal.parts[slice.cone];
      const auto& cn = *part.cone;
      switch (cn.type) {
        case ConeType::Nonnegative:
          for (const auto& [l, v] : slice.entries) B(i, cn.offset + l) = part.w[l] * v;
          break;
        case ConeType::SecondOrder: {
          VecX tmp = VecX::Zero(cn.dim);
          for (const auto& [l, v] : slice.entries) tmp[l] = v;
          B.row(i).segment(cn.offset, cn.foot) = part.scale_z(tmp);
          break;
        }
        default: {
          const Index d = cn.dim;
          const Index nnz = static_cast<Index>(slice.entries.size());
          MatX T(d, d);
          if (nnz <= 2 * d) {
            // r' (sum of sparse symmetric rank-ones) r, assembled from rows of r.
            T.setZero();
            constexpr double inv_sqrt2 = 0.70710678118654752;
            for (const auto& [l, v] : slice.entries) {
              // recover (p, q) from the svec index
              Index j = 0, rem = l;
              while (rem >= d - j) {
                rem -= d - j;
                ++j;
              }
              const Index p = j + rem;
              if (p == j) {
                T.noalias() += v * (part.r.row(p).transpose() * part.r.row(p));
              } else {
                const double s = v * inv_sqrt2;
                T.noalias() += s * (part.r.row(p).transpose() * part.r.row(j));
                T.noalias() += s * (part.r.row(j).transpose() * part.r.row(p));
              }
            }
          } else {
            VecX tmp = VecX::Zero(cn.foot);
            for (const auto& [l, v] : slice.entries) tmp[l] = v;
            const MatX M = smat(tmp);
            T.noalias() = part.r.transpose() * M * part.r;
          }
          B.row(i).segment(cn.offset, cn.foot) = svec(T);
        }
      }
    }
  }
}

struct ScaledData {
  VecX c, b;
  SparseRM A;
  std::vector<NormCone> cones;
  // recovery factors
  VecX d_col;   // per-variable (uniform within a cone)
  VecX d_row;
  double sig_b = 1.0, sig_c = 1.0;
};

}  // namespace

ConicSolution solve(const ConicProgram& prog, const SolverOptions& opts) {
  prog.validate();

  const Index n = prog.num_vars();
  const Index m = prog.num_rows();

  // --- normalize rotated cones to plain second-order cones ----------------
  // (y, z, x) with x'x <= yz maps to u = (y+z, y-z, 2x) in a plain cone;
  // substituting x = S u into the data keeps variable count and rows.
  std::vector<NormCone> cones;
  cones.reserve(prog.cones().size());
  std::vector<char> rotated(n, 0);
  for (const auto& cn : prog.cones()) {
    NormCone nc;
    nc.type = cn.type == ConeType::RotatedSecondOrder ? ConeType::SecondOrder : cn.type;
    nc.offset = cn.offset;
    nc.dim = cn.dim;
    nc.foot = cn.footprint();
    cones.push_back(nc);
    if (cn.type == ConeType::RotatedSecondOrder) {
      for (Index i = 0; i < cn.dim; ++i) rotated[cn.offset + i] = 1;
    }
  }

  const VecX c0 = prog.objective_vector();
  const VecX b0 = prog.rhs_vector();
  const SparseRM A0 = prog.row_matrix();

  // Column substitution for rotated blocks applied to [A; c'].
  auto substitute = [&](Index col, double val, auto&& emit) {
    if (!rotated[col]) {
      emit(col, val);
      return;
    }
    const int ci = cone_of(cones, col);
    const Index off = cones[ci].offset;
    const Index local = col - off;
    if (local == 0) {  // y = (u0 + u1)/2
      emit(off, 0.5 * val);
      emit(off + 1, 0.5 * val);
    } else if (local == 1) {  // z = (u0 - u1)/2
      emit(off, 0.5 * val);
      emit(off + 1, -0.5 * val);
    } else {  // x_i = u_{i+1}/2 ... local index is preserved
      emit(col, 0.5 * val);
    }
  };

  ScaledData sd;
  sd.cones = cones;
  sd.b = b0;
  sd.c = VecX::Zero(n);
  {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(A0.nonZeros() * 2);
    for (Index i = 0; i < m; ++i) {
      for (SparseRM::InnerIterator it(A0, i); it; ++it) {
        substitute(it.col(), it.value(), [&](Index cidx, double v) {
          trips.emplace_back(static_cast<int>(i), static_cast<int>(cidx), v);
        });
      }
    }
    sd.A.resize(m, n);
    sd.A.setFromTriplets(trips.begin(), trips.end());
    for (Index jj = 0; jj < n; ++jj) {
      if (c0[jj] != 0.0) {
        substitute(jj, c0[jj], [&](Index cidx, double v) { sd.c[cidx] += v; });
      }
    }
  }

  // --- Ruiz equilibration (rows; cone-uniform columns) --------------------
  sd.d_row = VecX::Ones(m);
  sd.d_col = VecX::Ones(n);
  if (opts.equilibrate && m > 0) {
    for (int pass = 0; pass < 4; ++pass) {
      VecX rmax = VecX::Zero(m), cmax = VecX::Zero(static_cast<Index>(cones.size()));
      for (Index i = 0; i < m; ++i) {
        for (SparseRM::InnerIterator it(sd.A, i); it; ++it) {
          const double a = std::abs(it.value());
          rmax[i] = std::max(rmax[i], a);
          const int ci = cone_of(cones, it.col());
          cmax[ci] = std::max(cmax[ci], a);
        }
      }
      VecX rs(m), cs(n);
      for (Index i = 0; i < m; ++i) rs[i] = rmax[i] > 0.0 ? 1.0 / std::sqrt(rmax[i]) : 1.0;
      for (std::size_t ci = 0; ci < cones.size(); ++ci) {
        const double s = cmax[static_cast<Index>(ci)] > 0.0
                             ? 1.0 / std::sqrt(cmax[static_cast<Index>(ci)])
                             : 1.0;
        cs.segment(cones[ci].offset, cones[ci].foot).setConstant(s);
      }
      for (Index i = 0; i < m; ++i) {
        for (SparseRM::InnerIterator it(sd.A, i); it; ++it) {
          it.valueRef() *= rs[i] * cs[it.col()];
        }
      }
      sd.d_row.array() *= rs.array();
      sd.d_col.array() *= cs.array();
    }
    sd.b.array() *= sd.d_row.array();
    sd.c.array() *= sd.d_col.array();
  }
  sd.sig_b = std::max(1.0, sd.b.size() ? sd.b.cwiseAbs().maxCoeff() : 0.0);
  sd.sig_c = std::max(1.0, sd.c.size() ? sd.c.cwiseAbs().maxCoeff() : 0.0);
  sd.b /= sd.sig_b;
  sd.c /= sd.sig_c;

  const RowLayout layout = build_row_layout(sd.A, cones);
  const VecX e = cone_identity(cones, n);
  const double nu = total_degree(cones);
  const double norm_b = std::max(1.0, sd.b.norm());
  const double norm_c = std::max(1.0, sd.c.norm());

  // --- iterate -------------------------------------------------------------
  VecX x = e, z = e, y = VecX::Zero(m);
  double tau = 1.0, kappa = 1.0;

  ScalingSet scal;
  scal.init(cones);
  MatX B(m, n), M(m, m);
  Eigen::LDLT<MatX> schur;

  SolveStatus status = SolveStatus::NumericalFailure;
  int iters = 0;

  auto schur_solve = [&](const VecX& rhs) {
    VecX s = schur.solve(rhs);
    for (int k = 0; k < opts.refine_steps; ++k) {
      s += schur.solve(VecX(rhs - M.selfadjointView<Eigen::Lower>() * s));
    }
    return s;
  };

  const bool debug = std::getenv("IRSOPT_SOLVER_DEBUG") != nullptr;

  for (iters = 0; iters < opts.max_iters; ++iters) {
    // residuals of the self-dual model
    const VecX rp = sd.A * x - sd.b * tau;
    const VecX rd = -sd.A.transpose() * y + sd.c * tau - z;
    const double rg = sd.b.dot(y) - sd.c.dot(x) - kappa;

    // de-homogenized convergence measures
    const double pcost = sd.c.dot(x) / tau;
    const double dcost = sd.b.dot(y) / tau;
    const double gap = x.dot(z) / (tau * tau);
    double relgap = kInf;
    if (pcost < 0.0) relgap = gap / (-pcost);
    else if (dcost > 0.0) relgap = gap / dcost;
    const double pres = (sd.A * (x / tau) - sd.b).norm() / norm_b;
    const double dres = (sd.c - sd.A.transpose() * (y / tau) - z / tau).norm() / norm_c;

    if (debug) {
      std::fprintf(stderr,
                   "it %2d pres %9.2e dres %9.2e gap %9.2e relgap %9.2e tau %9.2e "
                   "kappa %9.2e\n",
                   iters, pres, dres, gap, relgap, tau, kappa);
    }
    if (pres <= opts.feas_tol && dres <= opts.feas_tol &&
        (gap <= opts.abs_gap_tol || relgap <= opts.rel_gap_tol)) {
      status = SolveStatus::Optimal;
      break;
    }
    const double by = sd.b.dot(y);
    if (by > 0.0) {
      const double pinfres = (sd.A.transpose() * y + z).norm() / by / norm_c;
      if (pinfres <= opts.feas_tol) {
        status = SolveStatus::Infeasible;
        break;
      }
    }
    const double cx = sd.c.dot(x);
    if (cx < 0.0) {
      const double dinfres = (sd.A * x).norm() / (-cx) / norm_b;
      if (dinfres <= opts.feas_tol) {
        status = SolveStatus::Unbounded;
        break;
      }
    }

    if (!scal.compute(x, z)) break;  // lost interiority
    const VecX lambda = scal.lambda();
    const double mu = (x.dot(z) + tau * kappa) / (nu + 1.0);

    // Schur complement M = A W^2 A' (factor once per iteration)
    assemble_scaled_rows(layout, scal, B);
    M.noalias() = B * B.transpose();
    if (m > 0) {
      const double reg = 1e-14 * (1.0 + M.diagonal().maxCoeff());
      M.diagonal().array() += reg;
      schur.compute(M);
      if (schur.info() != Eigen::Success) break;
    }

    const VecX w2c = scal.apply_w2(sd.c);
    VecX dy1 = VecX::Zero(m);
    if (m > 0) dy1 = schur_solve(sd.b + sd.A * w2c);
    const VecX dz1 = sd.c - sd.A.transpose() * dy1;
    const VecX dx1 = -scal.apply_w2(dz1);
    const double denom = sd.b.dot(dy1) - sd.c.dot(dx1) + kappa / tau;

    // generic KKT solve for rhs (r1, r2, r3, r4, r5)
    auto newton = [&](const VecX& r1, const VecX& r2, double r3, const VecX& r4,
                      double r5, VecX& dx, VecX& dy, VecX& dz, double& dtau,
                      double& dkappa) {
      const VecX g = scal.jordan_div_lambda(r4);
      const VecX wg = scal.unscale_x(g);
      const VecX rhs2 = wg + scal.apply_w2(r2);
      VecX dy2 = VecX::Zero(m);
      if (m > 0) dy2 = schur_solve(r1 - sd.A * rhs2);
      const VecX dz2 = -sd.A.transpose() * dy2 - r2;
      const VecX dx2 = wg - scal.apply_w2(dz2);
      dtau = (r3 + r5 / tau - sd.b.dot(dy2) + sd.c.dot(dx2)) / denom;
      dy = dy2 + dtau * dy1;
      dz = dz2 + dtau * dz1;
      dx = dx2 + dtau * dx1;
      dkappa = (r5 - kappa * dtau) / tau;
    };

    auto step_bound = [&](const VecX& dx, const VecX& dz, double dtau, double dkappa) {
      double a = std::min(scal.max_step(scal.scale_x(dx)), scal.max_step(scal.scale_z(dz)));
      if (dtau < 0.0) a = std::min(a, -tau / dtau);
      if (dkappa < 0.0) a = std::min(a, -kappa / dkappa);
      return a;
    };

    // predictor
    VecX dxa, dya, dza;
    double dtaua, dkappaa;
    newton(-rp, -rd, -rg, VecX(-scal.jordan_mul(lambda, lambda)), -tau * kappa, dxa,
           dya, dza, dtaua, dkappaa);
    const double alpha_aff = std::min(1.0, step_bound(dxa, dza, dtaua, dkappaa));
    const double sigma = std::pow(1.0 - alpha_aff, 3);

    // corrector
    const VecX corr = scal.jordan_mul(scal.scale_x(dxa), scal.scale_z(dza));
    VecX r4 = -scal.jordan_mul(lambda, lambda) - corr + sigma * mu * e;
    const double r5 = -tau * kappa - dtaua * dkappaa + sigma * mu;
    VecX dx, dy, dz;
    double dtau, dkappa;
    newton(VecX(-(1.0 - sigma) * rp), VecX(-(1.0 - sigma) * rd), -(1.0 - sigma) * rg,
           r4, r5, dx, dy, dz, dtau, dkappa);

    double alpha = std::min(1.0, opts.step_scale * step_bound(dx, dz, dtau, dkappa));
    if (!std::isfinite(alpha) || alpha <= 1e-13) break;

    x += alpha * dx;
    y += alpha * dy;
    z += alpha * dz;
    tau += alpha * dtau;
    kappa += alpha * dkappa;
    if (!(tau > 0.0) || !(kappa > 0.0) || !x.allFinite() || !z.allFinite()) break;
  }

  // --- recover a solution in the original program coordinates -------------
  ConicSolution sol;
  sol.status = status;
  sol.iterations = iters;

  VecX xs = x / tau, ys = y / tau, zs = z / tau;
  if (status == SolveStatus::Infeasible || status == SolveStatus::Unbounded) {
    // report raw certificates instead of a primal point
    xs = x;
    ys = y;
    zs = z;
  }
  // undo equilibration
  VecX xn = sd.sig_b * (sd.d_col.array() * xs.array()).matrix();
  VecX yn = sd.sig_c * (sd.d_row.array() * ys.array()).matrix();
  VecX zn = sd.sig_c * (zs.array() / sd.d_col.array()).matrix();
  // undo the rotated-cone substitution
  sol.x = xn;
  sol.z = zn;
  for (const auto& cn : prog.cones()) {
    if (cn.type != ConeType::RotatedSecondOrder) continue;
    const Index o = cn.offset;
    const double u0 = xn[o], u1 = xn[o + 1];
    sol.x[o] = 0.5 * (u0 + u1);
    sol.x[o + 1] = 0.5 * (u0 - u1);
    sol.x.segment(o + 2, cn.dim - 2) = 0.5 * xn.segment(o + 2, cn.dim - 2);
    const double v0 = zn[o], v1 = zn[o + 1];
    sol.z[o] = v0 + v1;
    sol.z[o + 1] = v0 - v1;
    sol.z.segment(o + 2, cn.dim - 2) = 2.0 * zn.segment(o + 2, cn.dim - 2);
  }
  sol.y = yn;

  if (status == SolveStatus::Optimal || status == SolveStatus::NumericalFailure) {
    sol.objective = c0.dot(sol.x);
    sol.gap = std::abs(sol.objective - b0.dot(sol.y));
    // scaled residual of the returned primal point
    double viol = 0.0;
    const VecX resid = A0 * sol.x - b0;
    for (Index i = 0; i < m; ++i) {
      double rowscale = 1.0 + std::abs(b0[i]);
      for (SparseRM::InnerIterator it(A0, i); it; ++it) {
        rowscale += std::abs(it.value() * sol.x[it.col()]);
      }
      viol = std::max(viol, std::abs(resid[i]) / rowscale);
    }
    for (const auto& cn : prog.cones()) {
      const auto seg = sol.x.segment(cn.offset, cn.footprint());
      switch (cn.type) {
        case ConeType::Nonnegative:
          viol = std::max(viol, -seg.minCoeff() / (1.0 + seg.cwiseAbs().maxCoeff()));
          break;
        case ConeType::SecondOrder: {
          const double t = seg.tail(seg.size() - 1).norm() - seg[0];
          viol = std::max(viol, t / (1.0 + seg.norm()));
          break;
        }
        case ConeType::RotatedSecondOrder: {
          const double y0 = seg[0], z0 = seg[1];
          const double q = seg.tail(seg.size() - 2).squaredNorm();
          viol = std::max(viol, (q - y0 * z0) / (1.0 + q + std::abs(y0 * z0)));
          viol = std::max(viol, std::max(-y0, -z0) / (1.0 + seg.cwiseAbs().maxCoeff()));
          break;
        }
        case ConeType::Psd: {
          const MatX X = smat(VecX(seg));
          Eigen::SelfAdjointEigenSolver<MatX> es(X, Eigen::EigenvaluesOnly);
          viol = std::max(viol, -es.eigenvalues().minCoeff() / (1.0 + X.norm()));
          break;
        }
      }
    }
    sol.max_violation = viol;
  }
  return sol;
}

}  // namespace irsopt::conic
