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

#pragma once

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "irsopt/types.hpp"

namespace irsopt::conic {

// Standard-form cone program over a real variable vector x:
//
//   minimize    c' x
//   subject to  A x = b,   x in K,
//
// where K is a product of nonnegative, second-order, rotated second-order
// (x'x <= y z with y, z >= 0), and dense symmetric PSD cones that tile the
// variable vector. PSD blocks are stored in scaled lower-triangular form
// (svec: off-diagonal entries times sqrt(2)) so that inner products of
// coefficient vectors equal matrix trace inner products.

enum class ConeType { Nonnegative, SecondOrder, RotatedSecondOrder, Psd };

struct Cone {
  ConeType type = ConeType::Nonnegative;
  Index offset = 0;  // first variable index
  Index dim = 0;     // Nonnegative: count; SOC: cone dimension; Psd: matrix dimension
  Index footprint() const {
    return type == ConeType::Psd ? dim * (dim + 1) / 2 : dim;
  }
};

struct VariableBlock {
  std::string name;
  Index offset = 0;
  Index dim = 0;          // scalar variable count in x
  Index mat_dim = 0;      // PSD blocks: symmetric matrix dimension
  bool hermitian = false; // PSD blocks hosting an embedded complex matrix
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(SolveStatus s);

struct ConicSolution {
  SolveStatus status = SolveStatus::NumericalFailure;
  VecX x;  // primal variables (original program order)
  VecX y;  // row multipliers
  VecX z;  // dual cone variables
  double objective = 0.0;      // c' x
  double gap = 0.0;            // |primal - dual objective|
  int iterations = 0;
  double max_violation = 0.0;  // scaled row + cone residual of the primal point
};

// --- svec / symmetric helpers -------------------------------------------

inline Index svec_dim(Index d) { return d * (d + 1) / 2; }

// Index of entry (i, j), i >= j, in column-major lower-triangular order.
inline Index svec_index(Index d, Index i, Index j) {
  return j * (2 * d - j - 1) / 2 + i;
}

VecX svec(const MatX& S);
MatX smat(const VecX& v);

// --- complex Hermitian embedding ----------------------------------------

// emb(H) = [Re H, -Im H; Im H, Re H]; symmetric iff H is Hermitian, and
// PSD iff H is PSD (eigenvalues are those of H, doubled in multiplicity).
MatX embed_hermitian(const MatXc& H);

// Recovers the complex matrix represented by a real 2d x 2d symmetric X:
// H = (X11 + X22)/2 + j (X21 - X12')/2. For any symmetric PSD X this is
// Hermitian PSD and satisfies Tr(A H) = Tr(emb(A) X) / 2 for Hermitian A,
// which is why no extra structure rows are needed on embedded blocks.
MatXc complexify_embedded(const MatX& X);

// Coefficients over svec(X_emb) representing the real-valued trace form
// Tr(A H) of the hosted complex variable: (1/2) svec(emb(A)).
VecX hermitian_trace_coeffs(const MatXc& A);

// --- program --------------------------------------------------------------

class ConicProgram {
 public:
  // Block creation; returns the block's variable offset.
  Index add_nonneg_block(const std::string& name, Index len);
  Index add_soc_block(const std::string& name, Index dim);
  Index add_rotated_soc_block(const std::string& name, Index dim);
  Index add_psd_block(const std::string& name, Index mat_dim);
  // Complex Hermitian PSD variable of dimension d, hosted as an embedded
  // real symmetric PSD block of dimension 2d.
  Index add_hermitian_psd_block(const std::string& name, Index cplx_dim);

  Index add_row(double rhs);
  void add_entry(Index row, Index var, double coeff);
  void set_objective(Index var, double coeff);  // accumulates

  // Tr(S X) coefficients (S real symmetric) on a PSD block given by offset.
  void add_row_psd_trace(Index row, Index block_offset, const MatX& S,
                         double scale = 1.0);
  void add_obj_psd_trace(Index block_offset, const MatX& S, double scale = 1.0);

  // Tr(A H) coefficients (A complex Hermitian) on an embedded block.
  void add_row_hermitian_trace(Index row, Index block_offset, const MatXc& A,
                               double scale = 1.0);
  void add_obj_hermitian_trace(Index block_offset, const MatXc& A,
                               double scale = 1.0);

  Index num_vars() const { return n_; }
  Index num_rows() const { return static_cast<Index>(b_.size()); }
  const std::vector<Cone>& cones() const { return cones_; }
  const std::vector<VariableBlock>& blocks() const { return blocks_; }
  const VariableBlock& block(const std::string& name) const;

  VecX objective_vector() const;
  VecX rhs_vector() const;
  Eigen::SparseMatrix<double, Eigen::RowMajor> row_matrix() const;

  // Checks the block/cone tiling invariants; throws std::logic_error.
  void validate() const;

  // Slices a solution vector by block name; PSD helpers reconstruct the
  // matrix forms.
  VecX block_values(const VecX& x, const std::string& name) const;
  MatX psd_block_matrix(const VecX& x, const std::string& name) const;
  MatXc hermitian_block_matrix(const VecX& x, const std::string& name) const;

  // Debug dump (objective, rhs, sparse triplets, cones, blocks) for
  // cross-checking against external solvers.
  std::string to_json() const;

 private:
  Index add_block(const std::string& name, ConeType type, Index dim, Index mat_dim,
                  bool hermitian);

  Index n_ = 0;
  std::vector<Cone> cones_;
  std::vector<VariableBlock> blocks_;
  std::vector<Eigen::Triplet<double>> entries_;
  std::vector<double> b_;
  std::vector<std::pair<Index, double>> obj_;
};

// Encodes the restricted hyperbolic constraint x'x <= y z (y, z >= 0) over
// existing variables as || [2x; y - z] || <= y + z: adds one plain
// second-order cone block plus the equality rows wiring it to the given
// variables. Returns the new block's offset.
Index hyperbolic_to_soc(ConicProgram& p, const std::string& name,
                        const std::vector<Index>& x_vars, Index y_var, Index z_var);

}  // namespace irsopt::conic
