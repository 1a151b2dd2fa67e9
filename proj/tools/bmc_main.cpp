//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: dataset generation, bounded recovery, spectral
// embedding, and embedding-quality metrics, with a JSON run manifest per
// command for reproducibility.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bmc/bmc.hpp"

namespace {

using json = nlohmann::json;
using bmc::Index;
using bmc::Matrix;
using bmc::Vector;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// "a:b,c:d" -> {(a,b), (c,d)}.
std::vector<std::pair<double, double>> parse_ranges(const std::string& text) {
  std::vector<std::pair<double, double>> ranges;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string part = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t colon = part.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("ranges: expected lo:hi pairs, got '" +
                                  part + "'");
    }
    try {
      ranges.emplace_back(std::stod(part.substr(0, colon)),
                          std::stod(part.substr(colon + 1)));
    } catch (const std::exception&) {
      throw std::invalid_argument("ranges: bad number in '" + part + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return ranges;
}

std::vector<int> to_int_labels(const Matrix& column, const std::string& path) {
  if (column.cols() != 1) {
    throw bmc::data_error(path + ": labels must be a single column");
  }
  std::vector<int> labels(static_cast<std::size_t>(column.rows()));
  for (Index i = 0; i < column.rows(); ++i) {
    const double v = column(i, 0);
    if (v != std::floor(v)) {
      throw bmc::data_error(path + ": non-integer label at row " +
                            std::to_string(i + 1));
    }
    labels[static_cast<std::size_t>(i)] = static_cast<int>(v);
  }
  return labels;
}

void write_labels_csv(const std::string& path, const std::vector<int>& labels) {
  Matrix column(static_cast<Index>(labels.size()), 1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    column(static_cast<Index>(i), 0) = labels[i];
  }
  bmc::save_csv_matrix(path, column);
}

/// Collects the fields of a run manifest and renders/persists it.
class ManifestBuilder {
 public:
  ManifestBuilder(std::string command, std::vector<std::string> argv)
      : start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["argv"] = std::move(argv);
    doc_["library_version"] = bmc::kVersion;
  }

  json& parameters() { return doc_["parameters"]; }

  void set_seed(std::uint64_t seed) { doc_["seed"] = seed; }

  void add_output(const std::string& path) {
    doc_["outputs"].push_back(path);
  }

  void set_solver_result(const bmc::Recovery& rec) {
    doc_["iterations"] = rec.iters_run;
    if (!rec.residual_history.empty()) {
      const auto& last = rec.residual_history.back();
      doc_["final_residual"] = {{"primal", last.primal},
                                {"max_violation", last.max_violation}};
    }
  }

  json finish() {
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start_);
    doc_["wall_time_s"] = elapsed.count();
    if (!doc_.contains("outputs")) doc_["outputs"] = json::array();
    return doc_;
  }

  /// Writes the manifest file (listing itself as an output first) and echoes
  /// the document to stdout.
  void write_and_echo(const std::string& manifest_path) {
    add_output(manifest_path);
    const json doc = finish();
    std::ofstream out(manifest_path);
    if (!out) {
      throw bmc::data_error(manifest_path + ": cannot open for writing");
    }
    out << doc.dump(2) << "\n";
    std::cout << doc.dump(2) << std::endl;
  }

  void echo_only() { std::cout << finish().dump(2) << std::endl; }

 private:
  json doc_;
  std::chrono::steady_clock::time_point start_;
};

/// Shared solver flag block for `solve` and `sweep-r`.
struct SolverFlags {
  double alpha_l = 0.1;
  double alpha_u = 10.0;
  double rho_growth = 1.01;
  double rho_init = 0.05;
  std::optional<double> rho_eta_init;
  int iters = 500;
  double tol = 0.0;
  double init_mix = 0.8;
  int record_every = 1;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--alpha-l", alpha_l,
                    "Lower-bound scale on squared distances");
    cmd->add_option("--alpha-u", alpha_u,
                    "Upper-bound scale on squared distances");
    cmd->add_option("--rho", rho_growth, "Penalty growth factor per iteration");
    cmd->add_option("--rho-init", rho_init, "Initial penalty (both multipliers)");
    cmd->add_option("--rho-eta-init", rho_eta_init,
                    "Initial bound penalty (defaults to --rho-init)");
    cmd->add_option("--iters", iters, "Iteration count");
    cmd->add_option("--tol", tol, "Relative residual tolerance (0 = run all)");
    cmd->add_option("--init-mix", init_mix, "Weight on the lower bound in the start point");
    cmd->add_option("--record-every", record_every, "Residual sampling stride");
    cmd->add_option("--seed", seed, "Seed recorded in the manifest");
  }

  bmc::SolverConfig config(int r) const {
    bmc::SolverConfig cfg;
    cfg.r = r;
    cfg.rho_zeta_init = rho_init;
    cfg.rho_eta_init = rho_eta_init.value_or(rho_init);
    cfg.rho_growth = rho_growth;
    cfg.max_iters = iters;
    cfg.rel_residual_tol = tol;
    cfg.init_mix = init_mix;
    cfg.record_every = record_every;
    return cfg;
  }

  void echo(json& params) const {
    params["alpha_l"] = alpha_l;
    params["alpha_u"] = alpha_u;
    params["rho_growth"] = rho_growth;
    params["rho_zeta_init"] = rho_init;
    params["rho_eta_init"] = rho_eta_init.value_or(rho_init);
    params["iters"] = iters;
    params["tol"] = tol;
    params["init_mix"] = init_mix;
    params["record_every"] = record_every;
  }
};

bmc::BoundedDistanceProblem problem_from_files(const std::string& lower_path,
                                               const std::string& upper_path,
                                               int r) {
  bmc::BoundedDistanceProblem problem;
  problem.lower = bmc::load_csv_matrix(lower_path);
  problem.upper = bmc::load_csv_matrix(upper_path);
  problem.r = r;
  if (problem.lower.rows() != problem.lower.cols() ||
      problem.upper.rows() != problem.lower.rows() ||
      problem.upper.cols() != problem.lower.rows()) {
    throw bmc::data_error("bound matrices must be square and equally sized");
  }
  const auto violations = bmc::validate(problem);
  if (!violations.empty()) {
    std::string msg = "infeasible bounds (" +
                      std::to_string(violations.size()) + " violations):";
    const std::size_t shown = std::min<std::size_t>(violations.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
      msg += "\n  " + bmc::describe(violations[i]);
    }
    throw bmc::data_error(msg);
  }
  return problem;
}

void write_residuals_csv(const std::string& path,
                         const std::vector<bmc::ResidualSample>& history) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bmc::data_error(path + ": cannot open for writing");
  for (const auto& s : history) {
    out << s.iter << ',' << format_full(s.primal) << ','
        << format_full(s.max_violation) << '\n';
  }
}

void write_spectrum_csv(const std::string& path, const Vector& values) {
  Matrix column(values.size(), 1);
  column.col(0) = values;
  bmc::save_csv_matrix(path, column);
}

// ---------------------------------------------------------------------------
// Subcommand payloads
// ---------------------------------------------------------------------------

int run_args(const std::vector<std::string>& args);

struct GenerateCylinderCmd {
  Index n = 500;
  double radius = 4.0;
  std::string theta_ranges = "0:1.0471975511965976,2.0943951023931953:3.141592653589793";
  std::string z_ranges = "0:3,7:10";
  std::uint64_t seed = 0;
  std::string out;

  int run(const std::vector<std::string>& argv) const {
    ManifestBuilder manifest("generate semi-cylinder", argv);
    bmc::SemiCylinderSpec spec;
    spec.n = n;
    spec.radius = radius;
    spec.theta_ranges = parse_ranges(theta_ranges);
    spec.z_ranges = parse_ranges(z_ranges);
    spec.seed = seed;
    const bmc::PointCloud cloud = bmc::sample_semi_cylinder(spec);
    bmc::save_csv_matrix(out, cloud.coords);
    manifest.set_seed(seed);
    manifest.parameters() = {{"n", n},
                             {"radius", radius},
                             {"theta_ranges", theta_ranges},
                             {"z_ranges", z_ranges}};
    manifest.add_output(out);
    manifest.echo_only();
    return kExitOk;
  }
};

struct GenerateClustersCmd {
  int k = 4;
  Index per = 30;
  Index dim = 20;
  double center_sep = 10.0;
  double sigma = 0.5;
  std::uint64_t seed = 0;
  std::string out;
  std::string labels_out;

  int run(const std::vector<std::string>& argv) const {
    ManifestBuilder manifest("generate clusters", argv);
    const bmc::PointCloud cloud =
        bmc::sample_gaussian_clusters(k, per, dim, center_sep, sigma, seed);
    std::string labels_path = labels_out;
    if (labels_path.empty()) {
      const std::size_t dot = out.rfind('.');
      labels_path = dot == std::string::npos
                        ? out + "-labels"
                        : out.substr(0, dot) + "-labels" + out.substr(dot);
    }
    bmc::save_csv_matrix(out, cloud.coords);
    write_labels_csv(labels_path, *cloud.labels);
    manifest.set_seed(seed);
    manifest.parameters() = {{"k", k},
                             {"per", per},
                             {"dim", dim},
                             {"center_sep", center_sep},
                             {"sigma", sigma}};
    manifest.add_output(out);
    manifest.add_output(labels_path);
    manifest.echo_only();
    return kExitOk;
  }
};

struct GenerateMnistSampleCmd {
  std::string images_path;
  std::string labels_in;
  std::vector<int> digits = {0, 1, 3, 4};
  Index per = 30;
  std::uint64_t seed = 0;
  std::string out;
  std::string labels_out;

  int run(const std::vector<std::string>& argv) const {
    ManifestBuilder manifest("generate mnist-sample", argv);
    const bmc::IdxImageSet set = bmc::load_idx(images_path, labels_in);
    const bmc::PointCloud cloud =
        bmc::subsample_by_digit(set, digits, per, seed);
    std::string labels_path = labels_out;
    if (labels_path.empty()) {
      const std::size_t dot = out.rfind('.');
      labels_path = dot == std::string::npos
                        ? out + "-labels"
                        : out.substr(0, dot) + "-labels" + out.substr(dot);
    }
    bmc::save_csv_matrix(out, cloud.coords);
    write_labels_csv(labels_path, *cloud.labels);
    manifest.set_seed(seed);
    manifest.parameters() = {{"images", images_path},
                             {"labels", labels_in},
                             {"digits", digits},
                             {"per", per}};
    manifest.add_output(out);
    manifest.add_output(labels_path);
    manifest.echo_only();
    return kExitOk;
  }
};

struct SolveCmd {
  std::string points_path;
  std::string lower_path;
  std::string upper_path;
  int r = 4;
  SolverFlags flags;
  std::string out_prefix;

  int run(const std::vector<std::string>& argv) const {
    ManifestBuilder manifest("solve", argv);
    bmc::BoundedDistanceProblem problem;
    if (!points_path.empty()) {
      bmc::PointCloud cloud;
      cloud.coords = bmc::load_csv_matrix(points_path);
      if (r < 0 || r >= cloud.n()) {
        throw std::invalid_argument("solve: need 0 <= r < n");
      }
      problem = bmc::build_bounds(cloud, flags.alpha_l, flags.alpha_u,
                                  bmc::ObservedDistances{}, r);
      manifest.parameters()["points"] = points_path;
    } else {
      problem = problem_from_files(lower_path, upper_path, r);
      if (r < 0 || r >= problem.size()) {
        throw std::invalid_argument("solve: need 0 <= r < n");
      }
      manifest.parameters()["lower"] = lower_path;
      manifest.parameters()["upper"] = upper_path;
    }

    const bmc::Recovery rec = bmc::solve(problem, flags.config(r));

    const std::string l_path = out_prefix + "-L.csv";
    const std::string spectrum_path = out_prefix + "-spectrum.csv";
    const std::string gram_spectrum_path = out_prefix + "-gram-spectrum.csv";
    const std::string residuals_path = out_prefix + "-residuals.csv";
    bmc::save_csv_matrix(l_path, rec.L.entries);
    write_spectrum_csv(spectrum_path, bmc::svd(rec.L.entries).values);
    write_spectrum_csv(gram_spectrum_path, rec.spectrum.values);
    write_residuals_csv(residuals_path, rec.residual_history);

    manifest.set_seed(flags.seed);
    manifest.parameters()["r"] = r;
    flags.echo(manifest.parameters());
    manifest.set_solver_result(rec);
    manifest.add_output(l_path);
    manifest.add_output(spectrum_path);
    manifest.add_output(gram_spectrum_path);
    manifest.add_output(residuals_path);
    manifest.write_and_echo(out_prefix + "-manifest.json");
    return kExitOk;
  }
};

struct EmbedCmd {
  std::string matrix_path;
  int p = 2;
  std::string out;

  int run(const std::vector<std::string>& argv) const {
    ManifestBuilder manifest("embed", argv);
    const Matrix m = bmc::load_csv_matrix(matrix_path);
    if (m.rows() != m.cols()) {
      throw bmc::data_error(matrix_path + ": matrix must be square");
    }
    if (p < 1 || p > m.rows()) {
      throw std::invalid_argument("embed: need 1 <= p <= n");
    }
    std::optional<bmc::DistanceMatrix> dm;
    try {
      dm.emplace(m);
    } catch (const std::invalid_argument& e) {
      throw bmc::data_error(matrix_path + ": " + e.what());
    }
    const bmc::Embedding emb = bmc::embed(*dm, p);
    bmc::save_csv_matrix(out, emb.coords);
    manifest.parameters() = {{"matrix", matrix_path}, {"p", p}};
    manifest.add_output(out);
    manifest.echo_only();
    return kExitOk;
  }
};

struct MetricsCmd {
  std::string embedding_path;
  std::string points_path;
  std::string labels_path;
  int k_clusters = 0;
  int knn_max = 20;
  int restarts = 10;
  std::uint64_t seed = 0;
  std::string out;

  int run(const std::vector<std::string>& argv) const {
    ManifestBuilder manifest("metrics", argv);
    const Matrix emb = bmc::load_csv_matrix(embedding_path);
    const Matrix pts = bmc::load_csv_matrix(points_path);
    if (emb.rows() != pts.rows()) {
      throw bmc::data_error("embedding and points row counts differ (" +
                            std::to_string(emb.rows()) + " vs " +
                            std::to_string(pts.rows()) + ")");
    }

    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw bmc::data_error(out + ": cannot open for writing");

    if (!labels_path.empty()) {
      const std::vector<int> labels =
          to_int_labels(bmc::load_csv_matrix(labels_path), labels_path);
      if (static_cast<Index>(labels.size()) != emb.rows()) {
        throw bmc::data_error("label count does not match the embedding");
      }
      int k = k_clusters;
      if (k <= 0) {
        k = static_cast<int>(
            std::set<int>(labels.begin(), labels.end()).size());
      }
      const bmc::ClusteringResult clusters =
          bmc::kmeans(emb, k, restarts, seed);
      const double err = bmc::clustering_error(clusters.assignments, labels);
      csv << "clustering," << format_full(err) << '\n';
      manifest.parameters()["k_clusters"] = k;
      manifest.parameters()["clustering_error_percent"] = err;
    }

    for (int delta = 1; delta <= knn_max; ++delta) {
      const double err = bmc::neighborhood_error(
          bmc::knn_adjacency(pts, delta), bmc::knn_adjacency(emb, delta));
      csv << delta << ',' << format_full(err) << '\n';
    }
    csv.close();

    manifest.set_seed(seed);
    manifest.parameters()["embedding"] = embedding_path;
    manifest.parameters()["points"] = points_path;
    manifest.parameters()["knn_max"] = knn_max;
    manifest.parameters()["restarts"] = restarts;
    if (!labels_path.empty()) manifest.parameters()["labels"] = labels_path;
    manifest.add_output(out);
    manifest.echo_only();
    return kExitOk;
  }
};

struct SweepRCmd {
  std::string points_path;
  std::vector<int> r_list;
  SolverFlags flags;
  std::string out_prefix;

  int run(const std::vector<std::string>& argv) const {
    ManifestBuilder manifest("sweep-r", argv);
    bmc::PointCloud cloud;
    cloud.coords = bmc::load_csv_matrix(points_path);
    for (int r : r_list) {
      if (r < 0 || r >= cloud.n()) {
        throw std::invalid_argument("sweep-r: need 0 <= r < n for every r");
      }
    }

    // Independent solves; run them concurrently, write from this thread.
    std::vector<std::future<bmc::Recovery>> runs;
    runs.reserve(r_list.size());
    for (int r : r_list) {
      runs.push_back(std::async(std::launch::async, [this, &cloud, r] {
        const auto problem = bmc::build_bounds(
            cloud, flags.alpha_l, flags.alpha_u, bmc::ObservedDistances{}, r);
        return bmc::solve(problem, flags.config(r));
      }));
    }

    std::ofstream summary(out_prefix + "-summary.csv", std::ios::binary);
    if (!summary) {
      throw bmc::data_error(out_prefix + "-summary.csv: cannot open");
    }
    for (std::size_t i = 0; i < r_list.size(); ++i) {
      const bmc::Recovery rec = runs[i].get();
      const Vector sv = bmc::svd(rec.L.entries).values;
      const std::string path =
          out_prefix + "-r" + std::to_string(r_list[i]) + "-spectrum.csv";
      write_spectrum_csv(path, sv);
      manifest.add_output(path);
      const double total = sv.sum();
      const double tail = sv.tail(sv.size() - r_list[i]).sum();
      summary << r_list[i] << ','
              << format_full(total > 0.0 ? tail / total : 0.0) << '\n';
    }
    summary.close();

    manifest.set_seed(flags.seed);
    manifest.parameters()["points"] = points_path;
    manifest.parameters()["r_list"] = r_list;
    flags.echo(manifest.parameters());
    manifest.add_output(out_prefix + "-summary.csv");
    manifest.write_and_echo(out_prefix + "-manifest.json");
    return kExitOk;
  }
};

int replay_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bmc::data_error(path + ": cannot open");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw bmc::data_error(path + ": " + e.what());
  }
  if (!doc.contains("argv") || !doc["argv"].is_array()) {
    throw bmc::data_error(path + ": manifest has no argv array");
  }
  std::vector<std::string> args;
  for (const auto& a : doc["argv"]) args.push_back(a.get<std::string>());
  return run_args(args);
}

int run_args(const std::vector<std::string>& args) {
  CLI::App app{"Bounded manifold completion: low-rank squared-distance "
               "recovery, embedding, and metrics"};
  app.set_version_flag("--version", std::string(bmc::kVersion));
  app.require_subcommand(0, 1);

  std::string manifest_in;
  app.add_option("--manifest-in", manifest_in,
                 "Re-execute the argv recorded in a previous run manifest");

  // generate
  auto* generate = app.add_subcommand("generate", "Produce benchmark datasets");
  generate->require_subcommand(1);

  GenerateCylinderCmd cyl;
  auto* cyl_cmd = generate->add_subcommand(
      "semi-cylinder", "Sample the hollowed semi-cylinder benchmark");
  cyl_cmd->add_option("--n", cyl.n, "Point count")->required();
  cyl_cmd->add_option("--seed", cyl.seed, "RNG seed");
  cyl_cmd->add_option("--radius", cyl.radius, "Cylinder radius");
  cyl_cmd->add_option("--theta-ranges", cyl.theta_ranges,
                      "Angular intervals as lo:hi[,lo:hi...] (radians)");
  cyl_cmd->add_option("--z-ranges", cyl.z_ranges,
                      "Axial intervals as lo:hi[,lo:hi...]");
  cyl_cmd->add_option("--out", cyl.out, "Output CSV path")->required();

  GenerateClustersCmd clusters;
  auto* clusters_cmd = generate->add_subcommand(
      "clusters", "Sample separated Gaussian blobs with labels");
  clusters_cmd->add_option("--k", clusters.k, "Number of blobs")->required();
  clusters_cmd->add_option("--per", clusters.per, "Points per blob")
      ->required();
  clusters_cmd->add_option("--dim", clusters.dim, "Ambient dimension")
      ->required();
  clusters_cmd->add_option("--seed", clusters.seed, "RNG seed");
  clusters_cmd->add_option("--center-sep", clusters.center_sep,
                           "Minimum center separation");
  clusters_cmd->add_option("--sigma", clusters.sigma, "Blob standard deviation");
  clusters_cmd->add_option("--out", clusters.out, "Points CSV path")
      ->required();
  clusters_cmd->add_option("--labels-out", clusters.labels_out,
                           "Labels CSV path (default: <out>-labels.csv)");

  GenerateMnistSampleCmd mnist;
  auto* mnist_cmd = generate->add_subcommand(
      "mnist-sample", "Stratified sample of an IDX image/label pair");
  mnist_cmd->add_option("--images", mnist.images_path, "IDX images file")
      ->required();
  mnist_cmd->add_option("--labels", mnist.labels_in, "IDX labels file")
      ->required();
  mnist_cmd->add_option("--digits", mnist.digits,
                        "Digits to sample (comma-separated)")
      ->delimiter(',');
  mnist_cmd->add_option("--per", mnist.per, "Images per digit");
  mnist_cmd->add_option("--seed", mnist.seed, "RNG seed");
  mnist_cmd->add_option("--out", mnist.out, "Points CSV path")->required();
  mnist_cmd->add_option("--labels-out", mnist.labels_out,
                        "Labels CSV path (default: <out>-labels.csv)");

  // solve
  SolveCmd solve;
  auto* solve_cmd = app.add_subcommand(
      "solve", "Recover a squared-distance matrix from bounds");
  auto* points_opt =
      solve_cmd->add_option("--points", solve.points_path,
                            "Point-cloud CSV; bounds come from the alphas");
  auto* lower_opt =
      solve_cmd->add_option("--lower", solve.lower_path, "Lower-bound CSV");
  auto* upper_opt =
      solve_cmd->add_option("--upper", solve.upper_path, "Upper-bound CSV");
  lower_opt->needs(upper_opt);
  upper_opt->needs(lower_opt);
  points_opt->excludes(lower_opt);
  solve_cmd->add_option("--r", solve.r, "Truncation rank");
  solve.flags.attach(solve_cmd);
  solve_cmd->add_option("--out-prefix", solve.out_prefix, "Output file prefix")
      ->required();
  solve_cmd->callback([&] {
    if (solve.points_path.empty() && solve.lower_path.empty()) {
      throw CLI::RequiredError("--points or --lower/--upper");
    }
  });

  // embed
  EmbedCmd embed;
  auto* embed_cmd = app.add_subcommand(
      "embed", "Extract latent coordinates from a squared-distance matrix");
  embed_cmd->add_option("--matrix", embed.matrix_path, "Distance-matrix CSV")
      ->required();
  embed_cmd->add_option("--p", embed.p, "Embedding dimension")->required();
  embed_cmd->add_option("--out", embed.out, "Coordinates CSV path")
      ->required();

  // metrics
  MetricsCmd metrics;
  auto* metrics_cmd = app.add_subcommand(
      "metrics", "Clustering and neighborhood-preservation errors");
  metrics_cmd
      ->add_option("--embedding", metrics.embedding_path, "Embedding CSV")
      ->required();
  metrics_cmd->add_option("--points", metrics.points_path, "Original points CSV")
      ->required();
  metrics_cmd->add_option("--labels", metrics.labels_path,
                          "Labels CSV (enables the clustering row)");
  metrics_cmd->add_option("--k-clusters", metrics.k_clusters,
                          "Cluster count (default: distinct labels)");
  metrics_cmd->add_option("--knn-max", metrics.knn_max,
                          "Largest neighborhood size in the sweep");
  metrics_cmd->add_option("--restarts", metrics.restarts, "k-means restarts");
  metrics_cmd->add_option("--seed", metrics.seed, "k-means seed");
  metrics_cmd->add_option("--out", metrics.out, "Metrics CSV path")
      ->required();

  // sweep-r
  SweepRCmd sweep;
  auto* sweep_cmd = app.add_subcommand(
      "sweep-r", "Run the solver across truncation ranks and compare tails");
  sweep_cmd->add_option("--points", sweep.points_path, "Point-cloud CSV")
      ->required();
  sweep_cmd->add_option("--r-list", sweep.r_list, "Comma-separated ranks")
      ->required()
      ->delimiter(',');
  sweep.flags.attach(sweep_cmd);
  sweep_cmd
      ->add_option("--out-prefix", sweep.out_prefix, "Output file prefix")
      ->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("bmc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (!manifest_in.empty()) {
    return replay_manifest(manifest_in);
  }
  if (cyl_cmd->parsed()) return cyl.run(args);
  if (clusters_cmd->parsed()) return clusters.run(args);
  if (mnist_cmd->parsed()) return mnist.run(args);
  if (solve_cmd->parsed()) return solve.run(args);
  if (embed_cmd->parsed()) return embed.run(args);
  if (metrics_cmd->parsed()) return metrics.run(args);
  if (sweep_cmd->parsed()) return sweep.run(args);
  std::cerr << app.help() << std::endl;
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run_args(args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const bmc::numeric_error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitNumeric;
  } catch (const bmc::data_error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  }
}
