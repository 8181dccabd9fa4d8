// Matched-pair cluster data: ingestion, aggregation, validation. Every
// statistic downstream reads cluster-level sums, so individual rows are
// optional when the sums are supplied directly.
#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "clusteriv/csv.hpp"

namespace clusteriv {

struct IndividualRecord {
  int pair = 0;        // k, 1-based
  int slot = 0;        // j in {1, 2}
  int treated = 0;     // D in {0, 1}
  double outcome = 0;  // R
  std::vector<double> covariates;
};

struct ClusterRecord {
  int pair = 0;
  int slot = 0;
  double dose = 0;      // continuous encouragement dose
  int encouraged = 0;   // Z: 1 iff dose is the pair maximum
  long n = 0;
  double sum_d = 0;
  double sum_r = 0;
  std::vector<double> cluster_covariates;  // cluster-level x
  std::vector<double> covariate_means;     // within-cluster means of individual x
};

// Simulation-only potential outcomes for one cluster.
struct PotentialOutcomeCluster {
  double sum_d_t = 0, sum_d_c = 0;
  double sum_r_t = 0, sum_r_c = 0;
  long n = 0;
  double compliance() const { return sum_d_t - sum_d_c; }
  // Cluster effect ratio; only defined when compliance > 0.
  double beta() const { return (sum_r_t - sum_r_c) / (sum_d_t - sum_d_c); }
};

struct Study {
  std::vector<std::array<ClusterRecord, 2>> pairs;
  std::vector<IndividualRecord> individuals;  // may be empty
  std::vector<std::string> cluster_covariate_names;
  std::vector<std::string> individual_covariate_names;
  std::string provenance;

  int num_pairs() const { return static_cast<int>(pairs.size()); }
  const ClusterRecord& encouraged(int k) const;
  const ClusterRecord& control(int k) const;
  // Sets the encouragement indicators from the doses; throws on a dose tie.
  void assign_encouragement();
  Study subset(const std::vector<int>& pair_indices) const;
};

struct Diagnostic {
  std::string code;
  std::string message;
  int pair = 0;  // 0 when not pair-specific
  int slot = 0;
};

// Aggregates rows sharing one (pair, slot) key into a partial ClusterRecord
// (n, sums, covariate means). Throws on empty input, mixed keys, or a
// non-binary treatment value.
ClusterRecord aggregate_cluster(const std::vector<IndividualRecord>& rows);

struct ValidateOptions {
  long min_cluster_size = 1;
};

// Non-mutating consistency scan; returns diagnostics, never throws.
std::vector<Diagnostic> validate_study(const Study& study,
                                       const ValidateOptions& options = {});

// Cluster-level schema: pair,slot,dose,n,sum_d,sum_r,xt1..,xbar1..
Study study_from_cluster_table(const CsvTable& table);
// Individual-level schema: pair,slot,dose,treated,outcome,x1..
Study study_from_individual_table(const CsvTable& table);
Study load_study_csv(const std::string& path);  // dispatches on the header

std::vector<std::string> cluster_csv_header(const Study& study);
std::vector<std::vector<double>> cluster_csv_rows(const Study& study);

}  // namespace clusteriv
