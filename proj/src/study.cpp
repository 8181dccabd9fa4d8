#include "clusteriv/study.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace clusteriv {

const ClusterRecord& Study::encouraged(int k) const {
  const auto& p = pairs.at(static_cast<std::size_t>(k));
  return p[0].encouraged ? p[0] : p[1];
}

const ClusterRecord& Study::control(int k) const {
  const auto& p = pairs.at(static_cast<std::size_t>(k));
  return p[0].encouraged ? p[1] : p[0];
}

void Study::assign_encouragement() {
  for (auto& p : pairs) {
    if (p[0].dose == p[1].dose)
      throw std::runtime_error("dose tie in pair " + std::to_string(p[0].pair) +
                               ": encouragement is undefined when doses are equal");
    p[0].encouraged = p[0].dose > p[1].dose ? 1 : 0;
    p[1].encouraged = 1 - p[0].encouraged;
  }
}

Study Study::subset(const std::vector<int>& pair_indices) const {
  Study out;
  out.cluster_covariate_names = cluster_covariate_names;
  out.individual_covariate_names = individual_covariate_names;
  out.provenance = provenance;
  for (int k : pair_indices) out.pairs.push_back(pairs.at(static_cast<std::size_t>(k)));
  if (!individuals.empty()) {
    for (const auto& row : individuals)
      for (int k : pair_indices)
        if (row.pair == pairs[static_cast<std::size_t>(k)][0].pair)
          out.individuals.push_back(row);
  }
  return out;
}

ClusterRecord aggregate_cluster(const std::vector<IndividualRecord>& rows) {
  if (rows.empty()) throw std::invalid_argument("aggregate_cluster: no rows");
  ClusterRecord c;
  c.pair = rows.front().pair;
  c.slot = rows.front().slot;
  std::size_t p = rows.front().covariates.size();
  c.covariate_means.assign(p, 0.0);
  for (const auto& row : rows) {
    if (row.pair != c.pair || row.slot != c.slot)
      throw std::invalid_argument("aggregate_cluster: mixed (pair,slot) keys");
    if (row.treated != 0 && row.treated != 1)
      throw std::invalid_argument("aggregate_cluster: treatment must be 0 or 1");
    if (row.covariates.size() != p)
      throw std::invalid_argument("aggregate_cluster: covariate length mismatch");
    c.n += 1;
    c.sum_d += row.treated;
    c.sum_r += row.outcome;
    for (std::size_t i = 0; i < p; ++i) c.covariate_means[i] += row.covariates[i];
  }
  for (auto& m : c.covariate_means) m /= static_cast<double>(c.n);
  return c;
}

std::vector<Diagnostic> validate_study(const Study& study, const ValidateOptions& options) {
  std::vector<Diagnostic> out;
  auto add = [&](std::string code, std::string msg, int pair, int slot) {
    out.push_back({std::move(code), std::move(msg), pair, slot});
  };
  std::size_t xt_len = std::string::npos, xb_len = std::string::npos;
  for (const auto& p : study.pairs) {
    if (p[0].dose == p[1].dose)
      add("dose_tie", "pair " + std::to_string(p[0].pair) + " has equal doses", p[0].pair, 0);
    if (p[0].encouraged + p[1].encouraged != 1)
      add("encouragement", "pair " + std::to_string(p[0].pair) +
          " does not have exactly one encouraged cluster", p[0].pair, 0);
    for (const auto& c : p) {
      if (c.n < 1)
        add("empty_cluster", "cluster (" + std::to_string(c.pair) + "," +
            std::to_string(c.slot) + ") has size " + std::to_string(c.n), c.pair, c.slot);
      else if (c.n < options.min_cluster_size)
        add("small_cluster", "cluster (" + std::to_string(c.pair) + "," +
            std::to_string(c.slot) + ") has size " + std::to_string(c.n) +
            " below the configured floor " + std::to_string(options.min_cluster_size),
            c.pair, c.slot);
      if (c.sum_d < 0 || c.sum_d > static_cast<double>(c.n))
        add("treated_count", "cluster (" + std::to_string(c.pair) + "," +
            std::to_string(c.slot) + ") has treated sum outside [0,n]", c.pair, c.slot);
      if (c.encouraged && c.sum_d == 0)
        add("uninformative", "encouraged cluster (" + std::to_string(c.pair) + "," +
            std::to_string(c.slot) + ") has no treated individuals; it carries no "
            "effect information and would be dropped from compliance analyses",
            c.pair, c.slot);
      if (!c.encouraged && c.sum_d == static_cast<double>(c.n))
        add("uninformative", "control cluster (" + std::to_string(c.pair) + "," +
            std::to_string(c.slot) + ") has all individuals treated; it carries no "
            "effect information and would be dropped from compliance analyses",
            c.pair, c.slot);
      if (xt_len == std::string::npos) xt_len = c.cluster_covariates.size();
      else if (c.cluster_covariates.size() != xt_len)
        add("covariate_length", "cluster covariate length mismatch at (" +
            std::to_string(c.pair) + "," + std::to_string(c.slot) + ")", c.pair, c.slot);
      if (xb_len == std::string::npos) xb_len = c.covariate_means.size();
      else if (c.covariate_means.size() != xb_len)
        add("covariate_length", "individual covariate-mean length mismatch at (" +
            std::to_string(c.pair) + "," + std::to_string(c.slot) + ")", c.pair, c.slot);
    }
  }
  // Cross-check stored sums against individual rows where present.
  if (!study.individuals.empty()) {
    std::map<std::pair<int, int>, std::vector<IndividualRecord>> groups;
    for (const auto& row : study.individuals) groups[{row.pair, row.slot}].push_back(row);
    for (const auto& p : study.pairs)
      for (const auto& c : p) {
        auto it = groups.find({c.pair, c.slot});
        if (it == groups.end()) continue;
        ClusterRecord agg = aggregate_cluster(it->second);
        if (agg.n != c.n || std::fabs(agg.sum_d - c.sum_d) > 1e-9 ||
            std::fabs(agg.sum_r - c.sum_r) > 1e-9)
          add("sum_mismatch", "stored sums for cluster (" + std::to_string(c.pair) + "," +
              std::to_string(c.slot) + ") disagree with individual rows", c.pair, c.slot);
      }
  }
  return out;
}

namespace {

int require_column(const CsvTable& t, const std::string& name, const std::string& what) {
  int c = t.column(name);
  if (c < 0) throw std::runtime_error(what + ": missing required column '" + name + "'");
  return c;
}

int as_int(double v, const std::string& what) {
  if (v != std::floor(v)) throw std::runtime_error(what + ": expected an integer, got non-integral value");
  return static_cast<int>(v);
}

Study pair_up(std::map<int, std::vector<ClusterRecord>>&& by_pair) {
  Study study;
  for (auto& [pair_id, clusters] : by_pair) {
    if (clusters.size() != 2)
      throw std::runtime_error("pair " + std::to_string(pair_id) + " has " +
                               std::to_string(clusters.size()) + " clusters, expected 2");
    std::sort(clusters.begin(), clusters.end(),
              [](const ClusterRecord& a, const ClusterRecord& b) { return a.slot < b.slot; });
    study.pairs.push_back({clusters[0], clusters[1]});
  }
  study.assign_encouragement();
  return study;
}

}  // namespace

Study study_from_cluster_table(const CsvTable& table) {
  const std::string what = "cluster csv";
  int c_pair = require_column(table, "pair", what);
  int c_slot = require_column(table, "slot", what);
  int c_dose = require_column(table, "dose", what);
  int c_n = require_column(table, "n", what);
  int c_sd = require_column(table, "sum_d", what);
  int c_sr = require_column(table, "sum_r", what);
  auto xt = table.prefixed_columns("xt");
  auto xb = table.prefixed_columns("xbar");

  std::map<int, std::vector<ClusterRecord>> by_pair;
  for (const auto& row : table.rows) {
    ClusterRecord c;
    c.pair = as_int(row[c_pair], what + " pair");
    c.slot = as_int(row[c_slot], what + " slot");
    if (c.slot != 1 && c.slot != 2)
      throw std::runtime_error(what + ": slot must be 1 or 2");
    c.dose = row[c_dose];
    c.n = as_int(row[c_n], what + " n");
    if (c.n < 1) throw std::runtime_error(what + ": cluster size must be >= 1");
    c.sum_d = row[c_sd];
    c.sum_r = row[c_sr];
    for (int col : xt) c.cluster_covariates.push_back(row[col]);
    for (int col : xb) c.covariate_means.push_back(row[col]);
    by_pair[c.pair].push_back(std::move(c));
  }
  Study study = pair_up(std::move(by_pair));
  for (std::size_t i = 0; i < xt.size(); ++i)
    study.cluster_covariate_names.push_back("xt" + std::to_string(i + 1));
  for (std::size_t i = 0; i < xb.size(); ++i)
    study.individual_covariate_names.push_back("xbar" + std::to_string(i + 1));
  return study;
}

Study study_from_individual_table(const CsvTable& table) {
  const std::string what = "individual csv";
  int c_pair = require_column(table, "pair", what);
  int c_slot = require_column(table, "slot", what);
  int c_dose = require_column(table, "dose", what);
  int c_treated = require_column(table, "treated", what);
  int c_outcome = require_column(table, "outcome", what);
  auto xcols = table.prefixed_columns("x");

  std::map<std::pair<int, int>, std::vector<IndividualRecord>> groups;
  std::map<std::pair<int, int>, double> doses;
  for (const auto& row : table.rows) {
    IndividualRecord r;
    r.pair = as_int(row[c_pair], what + " pair");
    r.slot = as_int(row[c_slot], what + " slot");
    if (r.slot != 1 && r.slot != 2) throw std::runtime_error(what + ": slot must be 1 or 2");
    r.treated = as_int(row[c_treated], what + " treated");
    r.outcome = row[c_outcome];
    for (int col : xcols) r.covariates.push_back(row[col]);
    auto key = std::make_pair(r.pair, r.slot);
    auto [it, inserted] = doses.try_emplace(key, row[c_dose]);
    if (!inserted && it->second != row[c_dose])
      throw std::runtime_error(what + ": dose differs within cluster (" +
                               std::to_string(r.pair) + "," + std::to_string(r.slot) + ")");
    groups[key].push_back(std::move(r));
  }

  std::map<int, std::vector<ClusterRecord>> by_pair;
  Study pre;
  for (auto& [key, rows] : groups) {
    ClusterRecord c = aggregate_cluster(rows);
    c.dose = doses[key];
    by_pair[key.first].push_back(std::move(c));
    for (auto& r : rows) pre.individuals.push_back(std::move(r));
  }
  Study study = pair_up(std::move(by_pair));
  study.individuals = std::move(pre.individuals);
  for (std::size_t i = 0; i < xcols.size(); ++i)
    study.individual_covariate_names.push_back("x" + std::to_string(i + 1));
  return study;
}

Study load_study_csv(const std::string& path) {
  CsvTable table = read_csv_file(path);
  if (table.column("treated") >= 0) return study_from_individual_table(table);
  return study_from_cluster_table(table);
}

std::vector<std::string> cluster_csv_header(const Study& study) {
  std::vector<std::string> h = {"pair", "slot", "dose", "n", "sum_d", "sum_r"};
  for (std::size_t i = 0; i < study.cluster_covariate_names.size(); ++i)
    h.push_back("xt" + std::to_string(i + 1));
  std::size_t nb = study.pairs.empty() ? 0 : study.pairs[0][0].covariate_means.size();
  for (std::size_t i = 0; i < nb; ++i) h.push_back("xbar" + std::to_string(i + 1));
  return h;
}

std::vector<std::vector<double>> cluster_csv_rows(const Study& study) {
  std::vector<std::vector<double>> rows;
  for (const auto& p : study.pairs)
    for (const auto& c : p) {
      std::vector<double> row = {static_cast<double>(c.pair), static_cast<double>(c.slot),
                                 c.dose, static_cast<double>(c.n), c.sum_d, c.sum_r};
      row.insert(row.end(), c.cluster_covariates.begin(), c.cluster_covariates.end());
      row.insert(row.end(), c.covariate_means.begin(), c.covariate_means.end());
      rows.push_back(std::move(row));
    }
  return rows;
}

}  // namespace clusteriv
