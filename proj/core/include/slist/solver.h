/*
 * Copyright 2026 The slist Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SLIST_SOLVER_H_
#define SLIST_SOLVER_H_

// Closed-form item-item models.
//
// With D = diagMat(w^2) for the matching row weights and
// P = (Gram + lambda I)^-1:
//
//   SLIS   B = I - P diagMat(gamma),  gamma_j = lambda         if 1 - lambda
//   P_jj <= xi
//                                             = (1 - xi)/P_jj  otherwise
//          Gram = X' D_full X. The diagonal of B is capped at xi.
//   SLIT   B = P (S' D_par T),        Gram = S' D_par S. No diagonal cap.
//   SLIST  B = I - lambda P - (1 - alpha) P S' D_par (S - T),
//          Gram = alpha X' D_full X + (1 - alpha) S' D_par S.
//   EASE   B_ij = -P_ij / P_jj, B_jj = 0, Gram = X' X (unit weights).

#include <Eigen/Dense>
#include <limits>
#include <optional>
#include <string_view>

#include "slist/representation.h"
#include "slist/sessions.h"

namespace slist {

enum class ModelKind { kSlis, kSlit, kSlist, kEase };

std::string_view ModelKindName(ModelKind kind);
std::optional<ModelKind> ParseModelKind(std::string_view name);

struct HyperParams {
  double lambda = 10.0;
  double xi = std::numeric_limits<double>::infinity();
  double alpha = 0.2;
  DecayParams decay;

  bool operator==(const HyperParams&) const = default;
};

// Throws kUsage for lambda < 0, alpha outside [0, 1], xi < 0 or NaN, or
// invalid decays.
void Validate(const HyperParams& hyper);

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct ItemModel {
  RowMajorMatrix weights;  // B, n x n
  Vocabulary vocab;
  HyperParams hyper;
  ModelKind kind = ModelKind::kSlist;

  Eigen::Index num_items() const { return weights.rows(); }
};

// M' diagMat(row_weights^2) M as a dense, exactly symmetric matrix.
Eigen::MatrixXd Gram(const SparseRows& m, const Eigen::VectorXd& row_weights);

struct SpdInverse {
  Eigen::MatrixXd inverse;
  // max |A A^-1 - I|; NaN when not requested.
  double residual_max = std::numeric_limits<double>::quiet_NaN();
  // The first Cholesky attempt failed and the diagonal was bumped by
  // 1e-8 trace(A)/n before retrying.
  bool regularized = false;
};

// Inverse of a symmetric positive-definite matrix via Cholesky. Throws
// kNumerical when A is not symmetric (1e-10 relative) or the bumped retry
// also fails.
SpdInverse InvertSpd(const Eigen::MatrixXd& a, bool compute_residual = true);

struct SolveStats {
  double gram_seconds = 0.0;       // Gram accumulation
  double inversion_seconds = 0.0;  // Cholesky + inverse
  double product_seconds = 0.0;    // forming B from P
  double residual_max = std::numeric_limits<double>::quiet_NaN();
  bool regularized = false;
  Eigen::Index peak_dimension = 0;
};

struct SolveOptions {
  bool check_residual = false;  // costs one extra n^3 product
};

ItemModel SolveSlis(const DesignMatrices& dm, const HyperParams& hyper,
                    SolveStats* stats = nullptr,
                    const SolveOptions& options = {});
ItemModel SolveSlit(const DesignMatrices& dm, const HyperParams& hyper,
                    SolveStats* stats = nullptr,
                    const SolveOptions& options = {});
ItemModel SolveSlist(const DesignMatrices& dm, const HyperParams& hyper,
                     SolveStats* stats = nullptr,
                     const SolveOptions& options = {});
// Ignores the row weights and xi; uses hyper.lambda only.
ItemModel SolveEase(const DesignMatrices& dm, const HyperParams& hyper,
                    SolveStats* stats = nullptr,
                    const SolveOptions& options = {});

ItemModel Solve(ModelKind kind, const DesignMatrices& dm,
                const HyperParams& hyper, SolveStats* stats = nullptr,
                const SolveOptions& options = {});

}  // namespace slist

#endif  // SLIST_SOLVER_H_
