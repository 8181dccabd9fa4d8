// Pair-level design matrices and the projection machinery behind the
// regression-assisted variance estimator. The hat matrix is never formed from
// an explicit inverse; everything goes through an orthonormal basis of the
// column space.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "clusteriv/study.hpp"

namespace clusteriv {

enum class DesignKind { kInterceptOnly, kClusterCovariates, kClusterAndIndividual };

DesignKind parse_design_kind(const std::string& name);  // "e" | "q1" | "q2"
std::string design_kind_name(DesignKind kind);

struct DesignMatrix {
  DesignKind kind = DesignKind::kInterceptOnly;
  Eigen::MatrixXd columns;      // K x p, after dropping collinear columns
  Eigen::MatrixXd basis;        // K x r orthonormal basis of the column space
  Eigen::VectorXd leverages;    // diagonal of the hat matrix
  std::vector<std::string> dropped_columns;

  int num_pairs() const { return static_cast<int>(columns.rows()); }
  int rank() const { return static_cast<int>(basis.cols()); }

  // v' (I - H_Q) v, clamped at zero against roundoff.
  double residual_quadform(const Eigen::VectorXd& v) const;
  // (I - H_Q) v
  Eigen::VectorXd residual(const Eigen::VectorXd& v) const;
  // Dense hat matrix; only for small K (tests, problem assembly).
  Eigen::MatrixXd hat_matrix() const { return basis * basis.transpose(); }
};

// Builds the requested design on the study's pairs, in stored slot order.
// Collinear columns are dropped greedily left to right and reported.
DesignMatrix build_design(const Study& study, DesignKind kind);

// Builds a design from an explicit column matrix (intercept prepended when
// add_intercept). Used by internal callers with custom covariates.
DesignMatrix build_design_from_columns(const Eigen::MatrixXd& cols,
                                       const std::vector<std::string>& names,
                                       DesignKind kind);

// Regression-assisted variance: (1/K) y_Q' (I - H_Q) y_Q with
// y_Q[k] = y[k] / sqrt(1 - h_k). Throws when a leverage reaches 1.
double s2_q(const Eigen::VectorXd& y, const DesignMatrix& design);

}  // namespace clusteriv
