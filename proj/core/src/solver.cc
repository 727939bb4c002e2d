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

#include "slist/solver.h"

#include <Eigen/Cholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "slist/error.h"
#include "slist/format.h"

namespace slist {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Cholesky that also rejects numerically singular pivots, which LLT would
// otherwise accept as tiny positive values.
bool TryCholesky(const Eigen::MatrixXd& a, Eigen::LLT<Eigen::MatrixXd>& llt) {
  llt.compute(a);
  if (llt.info() != Eigen::Success) return false;
  const double scale = a.diagonal().cwiseAbs().maxCoeff();
  const double floor = static_cast<double>(a.rows()) *
                       std::numeric_limits<double>::epsilon() * scale;
  const Eigen::VectorXd pivots = llt.matrixLLT().diagonal();
  return (pivots.array().square() > floor).all();
}

// S' diagMat(w^2) Y accumulated row by row into a dense n x n matrix. The
// cross term fills in as sessions accumulate, so later products with it
// run as dense GEMM whose cost does not depend on the number of rows.
Eigen::MatrixXd WeightedCross(const SparseRows& s,
                              const Eigen::VectorXd& weights,
                              const SparseRows& y) {
  Eigen::MatrixXd cross = Eigen::MatrixXd::Zero(s.cols(), y.cols());
  for (Eigen::Index r = 0; r < s.outerSize(); ++r) {
    const double w2 = weights[r] * weights[r];
    for (SparseRows::InnerIterator a(s, r); a; ++a) {
      const double va = w2 * a.value();
      for (SparseRows::InnerIterator b(y, r); b; ++b) {
        cross(a.index(), b.index()) += va * b.value();
      }
    }
  }
  return cross;
}

void CheckShapes(const DesignMatrices& dm) {
  const Eigen::Index n = dm.num_items();
  if (dm.past.cols() != n || dm.future.cols() != n ||
      dm.past.rows() != dm.future.rows() ||
      dm.full_weights.size() != dm.full.rows() ||
      dm.partial_weights.size() != dm.past.rows() ||
      static_cast<std::size_t>(n) != dm.vocab.size()) {
    throw Error(ErrorCode::kUsage, "inconsistent design matrix shapes");
  }
  if (n == 0) throw Error(ErrorCode::kData, "no items to train on");
}

// (gram + lambda I)^-1; λ = 0 with a singular Gram is an error rather
// than silently regularized.
Eigen::MatrixXd RegularizedInverse(Eigen::MatrixXd gram, double lambda,
                                   SolveStats& stats,
                                   const SolveOptions& options) {
  const auto start = Clock::now();
  gram.diagonal().array() += lambda;
  SpdInverse inv = InvertSpd(gram, options.check_residual);
  stats.inversion_seconds = SecondsSince(start);
  stats.residual_max = inv.residual_max;
  stats.regularized = inv.regularized;
  if (inv.regularized && lambda == 0.0) {
    throw Error(ErrorCode::kNumerical,
                "singular Gram matrix with lambda = 0; use lambda > 0");
  }
  return std::move(inv.inverse);
}

ItemModel Finish(RowMajorMatrix weights, const DesignMatrices& dm,
                 const HyperParams& hyper, ModelKind kind) {
  if (!weights.allFinite()) {
    throw Error(ErrorCode::kNumerical, "non-finite entries in learned matrix");
  }
  ItemModel model;
  model.weights = std::move(weights);
  model.vocab = dm.vocab;
  model.hyper = hyper;
  model.kind = kind;
  return model;
}

}  // namespace

std::string_view ModelKindName(ModelKind kind) {
  switch (kind) {
    case ModelKind::kSlis:
      return "slis";
    case ModelKind::kSlit:
      return "slit";
    case ModelKind::kSlist:
      return "slist";
    case ModelKind::kEase:
      return "ease";
  }
  return "unknown";
}

std::optional<ModelKind> ParseModelKind(std::string_view name) {
  for (ModelKind kind : {ModelKind::kSlis, ModelKind::kSlit, ModelKind::kSlist,
                         ModelKind::kEase}) {
    if (ModelKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

void Validate(const HyperParams& hyper) {
  if (!(hyper.lambda >= 0.0) || std::isinf(hyper.lambda)) {
    throw Error(ErrorCode::kUsage, "lambda must be finite and >= 0, got " +
                                       FormatDouble(hyper.lambda));
  }
  if (!(hyper.alpha >= 0.0 && hyper.alpha <= 1.0)) {
    throw Error(ErrorCode::kUsage,
                "alpha must lie in [0, 1], got " + FormatDouble(hyper.alpha));
  }
  if (!(hyper.xi >= 0.0)) {
    throw Error(ErrorCode::kUsage,
                "xi must be >= 0 or inf, got " + FormatDouble(hyper.xi));
  }
  Validate(hyper.decay);
}

Eigen::MatrixXd Gram(const SparseRows& m, const Eigen::VectorXd& row_weights) {
  if (row_weights.size() != m.rows()) {
    throw Error(ErrorCode::kUsage,
                "row weight count " + std::to_string(row_weights.size()) +
                    " does not match " + std::to_string(m.rows()) + " rows");
  }
  const Eigen::Index n = m.cols();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  const int* outer = m.outerIndexPtr();
  const int* inner = m.innerIndexPtr();
  const double* values = m.valuePtr();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double w2 = row_weights[r] * row_weights[r];
    const int begin = outer[r];
    const int end =
        m.isCompressed() ? outer[r + 1] : begin + m.innerNonZeroPtr()[r];
    for (int a = begin; a < end; ++a) {
      const double va = w2 * values[a];
      for (int b = a; b < end; ++b) {
        // Inner indices are sorted, so (inner[a], inner[b]) is upper.
        gram(inner[a], inner[b]) += va * values[b];
      }
    }
  }
  gram.triangularView<Eigen::StrictlyLower>() = gram.transpose();
  return gram;
}

SpdInverse InvertSpd(const Eigen::MatrixXd& a, bool compute_residual) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kNumerical, "matrix is not square");
  }
  const Eigen::Index n = a.rows();
  SpdInverse result;
  if (n == 0) return result;
  const double scale = a.cwiseAbs().maxCoeff();
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorCode::kNumerical, "matrix is not symmetric");
  }

  Eigen::LLT<Eigen::MatrixXd> llt;
  if (!TryCholesky(a, llt)) {
    Eigen::MatrixXd bumped = a;
    bumped.diagonal().array() += 1e-8 * a.trace() / static_cast<double>(n);
    if (!TryCholesky(bumped, llt)) {
      throw Error(ErrorCode::kNumerical,
                  "Cholesky factorization failed after diagonal bump");
    }
    result.regularized = true;
  }
  result.inverse = llt.solve(Eigen::MatrixXd::Identity(n, n));
  if (compute_residual) {
    result.residual_max = (a * result.inverse - Eigen::MatrixXd::Identity(n, n))
                              .cwiseAbs()
                              .maxCoeff();
  }
  return result;
}

ItemModel SolveSlis(const DesignMatrices& dm, const HyperParams& hyper,
                    SolveStats* stats, const SolveOptions& options) {
  Validate(hyper);
  CheckShapes(dm);
  SolveStats local;
  local.peak_dimension = dm.num_items();

  auto start = Clock::now();
  Eigen::MatrixXd gram = Gram(dm.full, dm.full_weights);
  local.gram_seconds = SecondsSince(start);

  const Eigen::MatrixXd p =
      RegularizedInverse(std::move(gram), hyper.lambda, local, options);

  start = Clock::now();
  const Eigen::Index n = dm.num_items();
  Eigen::VectorXd gamma(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pjj = p(j, j);
    gamma[j] = (1.0 - hyper.lambda * pjj <= hyper.xi) ? hyper.lambda
                                                      : (1.0 - hyper.xi) / pjj;
  }
  RowMajorMatrix b = -(p * gamma.asDiagonal());
  b.diagonal().array() += 1.0;
  local.product_seconds = SecondsSince(start);

  if (stats != nullptr) *stats = local;
  return Finish(std::move(b), dm, hyper, ModelKind::kSlis);
}

ItemModel SolveSlit(const DesignMatrices& dm, const HyperParams& hyper,
                    SolveStats* stats, const SolveOptions& options) {
  Validate(hyper);
  CheckShapes(dm);
  SolveStats local;
  local.peak_dimension = dm.num_items();

  auto start = Clock::now();
  Eigen::MatrixXd gram = Gram(dm.past, dm.partial_weights);
  const Eigen::MatrixXd cross =
      WeightedCross(dm.past, dm.partial_weights, dm.future);
  local.gram_seconds = SecondsSince(start);

  const Eigen::MatrixXd p =
      RegularizedInverse(std::move(gram), hyper.lambda, local, options);

  start = Clock::now();
  RowMajorMatrix b(p.rows(), cross.cols());
  b.noalias() = p * cross;
  local.product_seconds = SecondsSince(start);

  if (stats != nullptr) *stats = local;
  return Finish(std::move(b), dm, hyper, ModelKind::kSlit);
}

ItemModel SolveSlist(const DesignMatrices& dm, const HyperParams& hyper,
                     SolveStats* stats, const SolveOptions& options) {
  Validate(hyper);
  CheckShapes(dm);
  SolveStats local;
  local.peak_dimension = dm.num_items();
  const double alpha = hyper.alpha;

  auto start = Clock::now();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dm.num_items(), dm.num_items());
  if (alpha > 0.0) gram += alpha * Gram(dm.full, dm.full_weights);
  Eigen::MatrixXd cross;
  if (alpha < 1.0) {
    // S'D(S - T) = S'DS - S'DT, reusing the past-side Gram.
    cross = Gram(dm.past, dm.partial_weights);
    gram += (1.0 - alpha) * cross;
    cross -= WeightedCross(dm.past, dm.partial_weights, dm.future);
  }
  local.gram_seconds = SecondsSince(start);

  const Eigen::MatrixXd p =
      RegularizedInverse(std::move(gram), hyper.lambda, local, options);

  start = Clock::now();
  RowMajorMatrix b = -hyper.lambda * p;
  if (alpha < 1.0) b.noalias() -= (1.0 - alpha) * (p * cross);
  b.diagonal().array() += 1.0;
  local.product_seconds = SecondsSince(start);

  if (stats != nullptr) *stats = local;
  return Finish(std::move(b), dm, hyper, ModelKind::kSlist);
}

ItemModel SolveEase(const DesignMatrices& dm, const HyperParams& hyper,
                    SolveStats* stats, const SolveOptions& options) {
  Validate(hyper);
  CheckShapes(dm);
  SolveStats local;
  local.peak_dimension = dm.num_items();

  auto start = Clock::now();
  Eigen::MatrixXd gram =
      Gram(dm.full, Eigen::VectorXd::Ones(dm.num_sessions()));
  local.gram_seconds = SecondsSince(start);

  const Eigen::MatrixXd p =
      RegularizedInverse(std::move(gram), hyper.lambda, local, options);

  start = Clock::now();
  const Eigen::Index n = dm.num_items();
  RowMajorMatrix b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i, j) = i == j ? 0.0 : -p(i, j) / p(j, j);
    }
  }
  local.product_seconds = SecondsSince(start);

  if (stats != nullptr) *stats = local;
  return Finish(std::move(b), dm, hyper, ModelKind::kEase);
}

ItemModel Solve(ModelKind kind, const DesignMatrices& dm,
                const HyperParams& hyper, SolveStats* stats,
                const SolveOptions& options) {
  switch (kind) {
    case ModelKind::kSlis:
      return SolveSlis(dm, hyper, stats, options);
    case ModelKind::kSlit:
      return SolveSlit(dm, hyper, stats, options);
    case ModelKind::kSlist:
      return SolveSlist(dm, hyper, stats, options);
    case ModelKind::kEase:
      return SolveEase(dm, hyper, stats, options);
  }
  throw Error(ErrorCode::kUsage, "unknown model kind");
}

}  // namespace slist
