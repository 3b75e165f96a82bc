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

#include "irsopt/conic/program.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace irsopt::conic {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

VecX svec(const MatX& S) {
  const Index d = S.rows();
  VecX v(svec_dim(d));
  Index k = 0;
  for (Index j = 0; j < d; ++j) {
    v[k++] = S(j, j);
    for (Index i = j + 1; i < d; ++i) v[k++] = kSqrt2 * 0.5 * (S(i, j) + S(j, i));
  }
  return v;
}

MatX smat(const VecX& v) {
  const Index d = static_cast<Index>((std::sqrt(8.0 * v.size() + 1.0) - 1.0) / 2.0 + 0.5);
  MatX S(d, d);
  Index k = 0;
  for (Index j = 0; j < d; ++j) {
    S(j, j) = v[k++];
    for (Index i = j + 1; i < d; ++i) {
      S(i, j) = S(j, i) = v[k++] / kSqrt2;
    }
  }
  return S;
}

MatX embed_hermitian(const MatXc& H) {
  const Index d = H.rows();
  MatX X(2 * d, 2 * d);
  X.topLeftCorner(d, d) = H.real();
  X.bottomRightCorner(d, d) = H.real();
  X.topRightCorner(d, d) = -H.imag();
  X.bottomLeftCorner(d, d) = H.imag();
  return X;
}

MatXc complexify_embedded(const MatX& X) {
  const Index d = X.rows() / 2;
  if (X.rows() != 2 * d || X.cols() != 2 * d) {
    throw std::invalid_argument("complexify_embedded: matrix must be 2d x 2d");
  }
  MatXc H(d, d);
  H.real() = 0.5 * (X.topLeftCorner(d, d) + X.bottomRightCorner(d, d));
  // For symmetric X the bottom-left and (negated) top-right blocks agree up
  // to transposition; averaging them yields the skew-symmetric part.
  H.imag() = 0.5 * (X.bottomLeftCorner(d, d) - X.topRightCorner(d, d));
  return H;
}

VecX hermitian_trace_coeffs(const MatXc& A) { return 0.5 * svec(embed_hermitian(A)); }

Index ConicProgram::add_block(const std::string& name, ConeType type, Index dim,
                              Index mat_dim, bool hermitian) {
  const Index offset = n_;
  Cone cone;
  cone.type = type;
  cone.offset = offset;
  cone.dim = type == ConeType::Psd ? mat_dim : dim;
  cones_.push_back(cone);
  blocks_.push_back({name, offset, cone.footprint(), mat_dim, hermitian});
  n_ += cone.footprint();
  return offset;
}

Index ConicProgram::add_nonneg_block(const std::string& name, Index len) {
  if (len < 1) throw std::invalid_argument("add_nonneg_block: empty block");
  return add_block(name, ConeType::Nonnegative, len, 0, false);
}

Index ConicProgram::add_soc_block(const std::string& name, Index dim) {
  if (dim < 2) throw std::invalid_argument("add_soc_block: dimension must be >= 2");
  return add_block(name, ConeType::SecondOrder, dim, 0, false);
}

Index ConicProgram::add_rotated_soc_block(const std::string& name, Index dim) {
  if (dim < 2) throw std::invalid_argument("add_rotated_soc_block: dimension must be >= 2");
  return add_block(name, ConeType::RotatedSecondOrder, dim, 0, false);
}

Index ConicProgram::add_psd_block(const std::string& name, Index mat_dim) {
  if (mat_dim < 1) throw std::invalid_argument("add_psd_block: dimension must be >= 1");
  return add_block(name, ConeType::Psd, 0, mat_dim, false);
}

Index ConicProgram::add_hermitian_psd_block(const std::string& name, Index cplx_dim) {
  if (cplx_dim < 1) {
    throw std::invalid_argument("add_hermitian_psd_block: dimension must be >= 1");
  }
  return add_block(name, ConeType::Psd, 0, 2 * cplx_dim, true);
}

Index ConicProgram::add_row(double rhs) {
  b_.push_back(rhs);
  return static_cast<Index>(b_.size()) - 1;
}

void ConicProgram::add_entry(Index row, Index var, double coeff) {
  if (coeff == 0.0) return;
  entries_.emplace_back(static_cast<int>(row), static_cast<int>(var), coeff);
}

void ConicProgram::set_objective(Index var, double coeff) {
  if (coeff != 0.0) obj_.emplace_back(var, coeff);
}

void ConicProgram::add_row_psd_trace(Index row, Index block_offset, const MatX& S,
                                     double scale) {
  const VecX v = svec(S);
  for (Index i = 0; i < v.size(); ++i) add_entry(row, block_offset + i, scale * v[i]);
}

void ConicProgram::add_obj_psd_trace(Index block_offset, const MatX& S, double scale) {
  const VecX v = svec(S);
  for (Index i = 0; i < v.size(); ++i) set_objective(block_offset + i, scale * v[i]);
}

void ConicProgram::add_row_hermitian_trace(Index row, Index block_offset, const MatXc& A,
                                           double scale) {
  const VecX v = hermitian_trace_coeffs(A);
  for (Index i = 0; i < v.size(); ++i) add_entry(row, block_offset + i, scale * v[i]);
}

void ConicProgram::add_obj_hermitian_trace(Index block_offset, const MatXc& A,
                                           double scale) {
  const VecX v = hermitian_trace_coeffs(A);
  for (Index i = 0; i < v.size(); ++i) set_objective(block_offset + i, scale * v[i]);
}

const VariableBlock& ConicProgram::block(const std::string& name) const {
  for (const auto& b : blocks_) {
    if (b.name == name) return b;
  }
  throw std::out_of_range("ConicProgram: no block named " + name);
}

VecX ConicProgram::objective_vector() const {
  VecX c = VecX::Zero(n_);
  for (const auto& [var, coeff] : obj_) c[var] += coeff;
  return c;
}

VecX ConicProgram::rhs_vector() const {
  return Eigen::Map<const VecX>(b_.data(), static_cast<Index>(b_.size()));
}

Eigen::SparseMatrix<double, Eigen::RowMajor> ConicProgram::row_matrix() const {
  Eigen::SparseMatrix<double, Eigen::RowMajor> A(num_rows(), n_);
  A.setFromTriplets(entries_.begin(), entries_.end());
  return A;
}

void ConicProgram::validate() const {
  Index expected = 0;
  for (const auto& cone : cones_) {
    if (cone.offset != expected) throw std::logic_error("cones do not tile the variables");
    expected += cone.footprint();
  }
  if (expected != n_) throw std::logic_error("cone footprints do not sum to num_vars");
  for (const auto& [var, coeff] : obj_) {
    if (var < 0 || var >= n_) throw std::logic_error("objective index out of range");
    if (!std::isfinite(coeff)) throw std::logic_error("objective coefficient not finite");
  }
  for (const auto& t : entries_) {
    if (t.col() < 0 || t.col() >= n_) throw std::logic_error("entry column out of range");
    if (t.row() < 0 || t.row() >= num_rows()) throw std::logic_error("entry row out of range");
    if (!std::isfinite(t.value())) throw std::logic_error("matrix entry not finite");
  }
  for (double v : b_) {
    if (!std::isfinite(v)) throw std::logic_error("rhs entry not finite");
  }
}

VecX ConicProgram::block_values(const VecX& x, const std::string& name) const {
  const auto& blk = block(name);
  return x.segment(blk.offset, blk.dim);
}

MatX ConicProgram::psd_block_matrix(const VecX& x, const std::string& name) const {
  const auto& blk = block(name);
  if (blk.mat_dim == 0) throw std::invalid_argument("block is not PSD: " + name);
  return smat(x.segment(blk.offset, blk.dim));
}

MatXc ConicProgram::hermitian_block_matrix(const VecX& x, const std::string& name) const {
  const auto& blk = block(name);
  if (!blk.hermitian) throw std::invalid_argument("block is not Hermitian: " + name);
  return complexify_embedded(smat(x.segment(blk.offset, blk.dim)));
}

std::string ConicProgram::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"num_vars\":" << n_ << ",\"num_rows\":" << num_rows() << ",\"objective\":[";
  const VecX c = objective_vector();
  for (Index i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "],\"rhs\":[";
  for (std::size_t i = 0; i < b_.size(); ++i) os << (i ? "," : "") << b_[i];
  os << "],\"triplets\":[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& t = entries_[i];
    os << (i ? "," : "") << "[" << t.row() << "," << t.col() << "," << t.value() << "]";
  }
  os << "],\"cones\":[";
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    const auto& cone = cones_[i];
    const char* kind = cone.type == ConeType::Nonnegative        ? "nonnegative"
                       : cone.type == ConeType::SecondOrder      ? "second-order"
                       : cone.type == ConeType::RotatedSecondOrder ? "rotated-second-order"
                                                                   : "psd";
    os << (i ? "," : "") << "{\"type\":\"" << kind << "\",\"offset\":" << cone.offset
       << ",\"dim\":" << cone.dim << "}";
  }
  os << "],\"blocks\":[";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto& blk = blocks_[i];
    os << (i ? "," : "") << "{\"name\":\"" << blk.name << "\",\"offset\":" << blk.offset
       << ",\"dim\":" << blk.dim << ",\"mat_dim\":" << blk.mat_dim
       << ",\"hermitian\":" << (blk.hermitian ? "true" : "false") << "}";
  }
  os << "]}";
  return os.str();
}

Index hyperbolic_to_soc(ConicProgram& p, const std::string& name,
                        const std::vector<Index>& x_vars, Index y_var, Index z_var) {
  const Index dim = static_cast<Index>(x_vars.size()) + 2;
  const Index u = p.add_soc_block(name, dim);
  // u0 = y + z
  Index r = p.add_row(0.0);
  p.add_entry(r, u, 1.0);
  p.add_entry(r, y_var, -1.0);
  p.add_entry(r, z_var, -1.0);
  // u_i = 2 x_i
  for (std::size_t i = 0; i < x_vars.size(); ++i) {
    r = p.add_row(0.0);
    p.add_entry(r, u + 1 + static_cast<Index>(i), 1.0);
    p.add_entry(r, x_vars[i], -2.0);
  }
  // u_last = y - z
  r = p.add_row(0.0);
  p.add_entry(r, u + dim - 1, 1.0);
  p.add_entry(r, y_var, -1.0);
  p.add_entry(r, z_var, 1.0);
  return u;
}

}  // namespace irsopt::conic
