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

#include <cmath>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "irsopt/conic/solver.hpp"
#include "irsopt/rng.hpp"

using namespace irsopt;
using namespace irsopt::conic;

namespace {

MatXc random_hermitian_psd(Index d, Rng& rng) {
  MatXc G(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) G(i, j) = rng.cnormal();
  return G * G.adjoint();
}

}  // namespace

TEST_CASE("hermitian embedding basics") {
  SUBCASE("scalar") {
    MatXc H(1, 1);
    H(0, 0) = 2.5;
    const MatX X = embed_hermitian(H);
    CHECK(X.rows() == 2);
    CHECK(X(0, 0) == 2.5);
    CHECK(X(1, 1) == 2.5);
    CHECK(X(0, 1) == 0.0);
    CHECK(X(1, 0) == 0.0);
  }

  SUBCASE("identity maps to identity") {
    const MatXc H = MatXc::Identity(3, 3);
    CHECK((embed_hermitian(H) - MatX::Identity(6, 6)).norm() == 0.0);
  }

  SUBCASE("eigenvalues are preserved (dense oracle on 3x3)") {
    Rng rng(5);
    for (int t = 0; t < 8; ++t) {
      const MatXc A = random_hermitian_psd(3, rng);
      Eigen::SelfAdjointEigenSolver<MatXc> ec(A);
      Eigen::SelfAdjointEigenSolver<MatX> er(embed_hermitian(A));
      CHECK(er.eigenvalues().minCoeff() ==
            doctest::Approx(ec.eigenvalues().minCoeff()).epsilon(1e-10));
    }
  }

  SUBCASE("complexify inverts the embedding and trace forms agree") {
    Rng rng(6);
    const MatXc H = random_hermitian_psd(4, rng);
    const MatXc A = random_hermitian_psd(4, rng);
    const MatX X = embed_hermitian(H);
    CHECK((complexify_embedded(X) - H).norm() < 1e-12 * H.norm());

    const double tr_complex = std::real((A * H).trace());
    const double tr_embedded = 0.5 * (embed_hermitian(A) * X).trace();
    CHECK(tr_complex == doctest::Approx(tr_embedded).epsilon(1e-12));
    CHECK(hermitian_trace_coeffs(A).dot(svec(X)) ==
          doctest::Approx(tr_complex).epsilon(1e-12));
  }
}

TEST_CASE("svec round trip and isometry") {
  Rng rng(8);
  MatX S(4, 4);
  for (Index j = 0; j < 4; ++j)
    for (Index i = 0; i < 4; ++i) S(i, j) = rng.normal();
  S = MatX(0.5 * (S + S.transpose()));
  CHECK((smat(svec(S)) - S).norm() < 1e-14);

  MatX T(4, 4);
  for (Index j = 0; j < 4; ++j)
    for (Index i = 0; i < 4; ++i) T(i, j) = rng.normal();
  T = MatX(0.5 * (T + T.transpose()));
  CHECK(svec(S).dot(svec(T)) == doctest::Approx((S * T).trace()).epsilon(1e-12));
}

TEST_CASE("restricted hyperbolic constraint and its SOC form agree") {
  auto hyperbolic = [](double x, double y, double z) { return x * x <= y * z; };
  auto soc_form = [](double x, double y, double z) {
    return std::hypot(2.0 * x, y - z) <= y + z;
  };

  // degenerate x = 0 holds for all nonnegative y, z
  CHECK(hyperbolic(0.0, 3.0, 0.0) == soc_form(0.0, 3.0, 0.0));
  CHECK(hyperbolic(0.0, 0.5, 7.0) == soc_form(0.0, 0.5, 7.0));
  // boundary point 1 <= 1
  CHECK(hyperbolic(1.0, 1.0, 1.0));
  CHECK(soc_form(1.0, 1.0, 1.0));
  // x = 1, y = 4: feasible at z = 1/4, infeasible at z = 0.2
  CHECK(hyperbolic(1.0, 4.0, 0.25) == soc_form(1.0, 4.0, 0.25));
  CHECK(soc_form(1.0, 4.0, 0.25));
  CHECK_FALSE(hyperbolic(1.0, 4.0, 0.2));
  CHECK_FALSE(soc_form(1.0, 4.0, 0.2));

  Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    const double x = rng.uniform(-2.0, 2.0);
    const double y = rng.uniform(0.0, 3.0);
    const double z = rng.uniform(0.0, 3.0);
    CHECK(hyperbolic(x, y, z) == soc_form(x, y, z));
  }
}

TEST_CASE("hyperbolic_to_soc encoding solves to the right feasibility verdict") {
  auto feasibility = [](double x, double y, double z) {
    ConicProgram p;
    const Index vars = p.add_nonneg_block("vars", 3);  // (x, y, z), x pinned >= 0 is fine here
    const Index cone = hyperbolic_to_soc(p, "hyp", {vars + 0}, vars + 1, vars + 2);
    (void)cone;
    for (int i = 0; i < 3; ++i) {
      const Index r = p.add_row(i == 0 ? x : i == 1 ? y : z);
      p.add_entry(r, vars + i, 1.0);
    }
    return conic::solve(p).status;
  };
  CHECK(feasibility(1.0, 4.0, 0.25) == SolveStatus::Optimal);
  CHECK(feasibility(1.0, 4.0, 0.2) == SolveStatus::Infeasible);
  CHECK(feasibility(0.0, 3.0, 0.0) == SolveStatus::Optimal);
}

TEST_CASE("LP sanity: min x subject to x >= 1") {
  ConicProgram p;
  const Index v = p.add_nonneg_block("x_and_slack", 2);
  p.set_objective(v, 1.0);
  const Index r = p.add_row(1.0);
  p.add_entry(r, v, 1.0);
  p.add_entry(r, v + 1, -1.0);

  const auto sol = conic::solve(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(sol.max_violation < 1e-7);
  CHECK(std::abs(sol.gap) <= 1e-6 * (1.0 + std::abs(sol.objective)));
}

TEST_CASE("rotated cone: min t subject to t * rho >= delta^2") {
  ConicProgram p;
  const Index cone = p.add_rotated_soc_block("hyp", 3);  // (t, rho, d)
  p.set_objective(cone, 1.0);
  Index r = p.add_row(0.5);  // rho = 1/2
  p.add_entry(r, cone + 1, 1.0);
  r = p.add_row(1.0);  // d = 1, so t * rho >= 1
  p.add_entry(r, cone + 2, 1.0);

  const auto sol = conic::solve(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(sol.x[cone] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("PSD: trace minimization with pinned entries") {
  // X = [1, 0.5; 0.5, 1] is already PSD, so the optimum keeps it.
  ConicProgram p;
  const Index X = p.add_psd_block("X", 2);
  p.add_obj_psd_trace(X, MatX::Identity(2, 2));
  MatX E11 = MatX::Zero(2, 2), E22 = MatX::Zero(2, 2), E12 = MatX::Zero(2, 2);
  E11(0, 0) = 1.0;
  E22(1, 1) = 1.0;
  E12(0, 1) = E12(1, 0) = 0.5;  // Tr(E12 X) = X12 + X21 = 2 X12
  p.add_row_psd_trace(p.add_row(1.0), X, E11);
  p.add_row_psd_trace(p.add_row(1.0), X, E22);
  p.add_row_psd_trace(p.add_row(0.5), X, E12);

  const auto sol = conic::solve(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-7));
  const MatX Xv = p.psd_block_matrix(sol.x, "X");
  CHECK(Xv(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(Xv(0, 1) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("complex Hermitian SDP solved through the embedding") {
  // H 2x2 Hermitian PSD with H11 = H22 = 1 and Im H12 = -0.6;
  // minimizing 2 Re H12 drives |H12| to the PSD boundary: Re H12 = -0.8.
  ConicProgram p;
  const Index H = p.add_hermitian_psd_block("H", 2);
  MatXc E11 = MatXc::Zero(2, 2), E22 = MatXc::Zero(2, 2);
  E11(0, 0) = 1.0;
  E22(1, 1) = 1.0;
  MatXc Aim(2, 2);
  Aim << cxd(0, 0), cxd(0, -0.5), cxd(0, 0.5), cxd(0, 0);  // Tr(Aim H) = -Im H12
  MatXc Are(2, 2);
  Are << cxd(0, 0), cxd(1, 0), cxd(1, 0), cxd(0, 0);  // Tr(Are H) = 2 Re H12

  p.add_row_hermitian_trace(p.add_row(1.0), H, E11);
  p.add_row_hermitian_trace(p.add_row(1.0), H, E22);
  p.add_row_hermitian_trace(p.add_row(0.6), H, Aim);
  p.add_obj_hermitian_trace(H, Are);

  const auto sol = conic::solve(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(-1.6).epsilon(1e-6));

  const MatXc Hv = p.hermitian_block_matrix(sol.x, "H");
  CHECK(std::abs(Hv(0, 0) - cxd(1.0, 0.0)) < 1e-6);
  CHECK(std::abs(Hv(1, 1) - cxd(1.0, 0.0)) < 1e-6);
  CHECK(std::abs(Hv(0, 1) - cxd(-0.8, -0.6)) < 1e-5);
  // recovered complex point satisfies the original complex constraints
  CHECK(std::real((E11 * Hv).trace()) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(std::real((Aim * Hv).trace()) == doctest::Approx(0.6).epsilon(1e-7));
  Eigen::SelfAdjointEigenSolver<MatXc> es(Hv);
  CHECK(es.eigenvalues().minCoeff() > -1e-7);
}

TEST_CASE("solver determinism") {
  // random program made feasible by construction (rhs from a PSD witness)
  ConicProgram p;
  const Index X = p.add_psd_block("X", 3);
  p.add_obj_psd_trace(X, MatX::Identity(3, 3));
  Rng rng(77);
  MatX W0(3, 3);
  for (Index j = 0; j < 3; ++j)
    for (Index i = 0; i < 3; ++i) W0(i, j) = rng.normal();
  const MatX X0 = W0 * W0.transpose();
  for (int r = 0; r < 3; ++r) {
    MatX A(3, 3);
    for (Index j = 0; j < 3; ++j)
      for (Index i = 0; i < 3; ++i) A(i, j) = rng.normal();
    A = MatX(0.5 * (A + A.transpose()));
    p.add_row_psd_trace(p.add_row((A * X0).trace()), X, A);
  }
  const auto s1 = conic::solve(p);
  const auto s2 = conic::solve(p);
  REQUIRE(s1.status == SolveStatus::Optimal);
  CHECK(std::abs(s1.objective - s2.objective) <= 1e-10);
  CHECK((s1.x - s2.x).norm() == 0.0);
}

TEST_CASE("infeasible and unbounded detection") {
  SUBCASE("x >= 0 with x = -1 is infeasible") {
    ConicProgram p;
    const Index v = p.add_nonneg_block("x", 1);
    const Index r = p.add_row(-1.0);
    p.add_entry(r, v, 1.0);
    CHECK(conic::solve(p).status == SolveStatus::Infeasible);
  }
  SUBCASE("min -x over x >= 0 is unbounded") {
    ConicProgram p;
    const Index v = p.add_nonneg_block("x", 1);
    p.set_objective(v, -1.0);
    CHECK(conic::solve(p).status == SolveStatus::Unbounded);
  }
  SUBCASE("iteration cap reports numerical failure with an iterate") {
    ConicProgram p;
    const Index v = p.add_nonneg_block("x", 2);
    p.set_objective(v, 1.0);
    const Index r = p.add_row(1.0);
    p.add_entry(r, v, 1.0);
    p.add_entry(r, v + 1, -1.0);
    SolverOptions opts;
    opts.max_iters = 1;
    const auto sol = conic::solve(p, opts);
    CHECK(sol.status == SolveStatus::NumericalFailure);
    CHECK(sol.x.size() == 2);
  }
}

TEST_CASE("badly scaled data still solves to tolerance") {
  // power-style scales: constraints around 1e-8, variables around 1e+1
  ConicProgram p;
  const Index v = p.add_nonneg_block("p_and_slack", 2);
  p.set_objective(v, 1.0);
  const Index r = p.add_row(3.4e-8);
  p.add_entry(r, v, 1.7e-9);
  p.add_entry(r, v + 1, -1.0);
  const auto sol = conic::solve(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(20.0).epsilon(1e-6));
}

TEST_CASE("program JSON dump carries the full structure") {
  ConicProgram p;
  const Index v = p.add_nonneg_block("x", 1);
  p.set_objective(v, 1.0);
  const Index r = p.add_row(1.0);
  p.add_entry(r, v, 1.0);
  const std::string js = p.to_json();
  CHECK(js.find("\"num_vars\":1") != std::string::npos);
  CHECK(js.find("\"cones\"") != std::string::npos);
  CHECK(js.find("\"nonnegative\"") != std::string::npos);
  CHECK(js.find("\"blocks\"") != std::string::npos);
  CHECK(js.find("\"triplets\"") != std::string::npos);
}
