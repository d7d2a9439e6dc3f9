#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "resd/errors.hpp"
#include "resd/timeseries/pipeline.hpp"
#include "resd/timeseries/synth.hpp"

using namespace resd;
using namespace resd::ts;

namespace {

std::string csv_for(int days, int steps, int skip_day = -1, int skip_hour = -1, double demand_override = -1.0) {
  std::ostringstream os;
  os << "date,hour,ghi_kw_m2,wind_speed_10m_ms,demand_kw\n";
  for (int d = 0; d < days; ++d) {
    for (int h = 0; h < steps; ++h) {
      if (d == skip_day && h == skip_hour) continue;
      const double demand = (d == 0 && h == 0 && demand_override != -1.0) ? demand_override : 1000.0 + 10 * h + d;
      os << "2020-01-0" << d + 1 << ',' << h << ',' << 0.02 * h << ',' << 3.0 + 0.1 * h << ',' << demand << '\n';
    }
  }
  return os.str();
}

TimeSeriesDataset tiny_dataset(int days, int steps, const std::vector<double>& solar, const std::vector<double>& wind,
                               const std::vector<double>& demand) {
  TimeSeriesDataset ds;
  ds.days = days;
  ds.steps = steps;
  ds.values.assign(static_cast<std::size_t>(days) * 3 * steps, 0.0);
  for (int d = 0; d < days; ++d) {
    for (int t = 0; t < steps; ++t) {
      ds.at(d, kSolar, t) = solar[d * steps + t];
      ds.at(d, kWind, t) = wind[d * steps + t];
      ds.at(d, kDemand, t) = demand[d * steps + t];
    }
  }
  return ds;
}

}  // namespace

TEST_CASE("CSV ingest shape and errors") {
  const TimeSeriesDataset ds = parse_csv(csv_for(2, 24));
  CHECK(ds.days == 2);
  CHECK(ds.steps == 24);
  CHECK(ds.num_quantities() == 3);
  CHECK(ds.at(1, kDemand, 3) == 1031.0);
  CHECK(ds.at(0, kSolar, 0) == 0.0);

  try {
    parse_csv(csv_for(2, 24, 1, 13), IngestOptions{24, {}});
    FAIL("expected GapError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kGapError);
    CHECK(std::string(e.what()).find("day 2") != std::string::npos);
    CHECK(std::string(e.what()).find("hour 13") != std::string::npos);
  }
  try {
    parse_csv(csv_for(2, 24, -1, -1, -5.0));
    FAIL("expected RangeError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kRangeError);
  }
  try {
    parse_csv("date,hour,ghi\n");
    FAIL("expected SchemaError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchemaError);
  }
  const std::string path = "test_ingest_tmp.csv";
  std::ofstream(path) << csv_for(3, 4);
  CHECK(ingest_csv(path).days == 3);
  std::remove(path.c_str());
}

TEST_CASE("z-normalization") {
  const auto ds = tiny_dataset(2, 2, {0.1, 0.2, 0.3, 0.4}, {0.5, 0.1, 0.2, 0.3}, {0.0, 2.0, 0.0, 2.0});
  const Normalized nz = znormalize(ds);
  CHECK(nz.data.at(0, kDemand, 0) == doctest::Approx(-1.0));
  CHECK(nz.data.at(0, kDemand, 1) == doctest::Approx(1.0));
  CHECK(nz.data.at(1, kDemand, 0) == doctest::Approx(-1.0));
  CHECK(nz.model.mean[kDemand] == 1.0);
  CHECK(nz.model.stddev[kDemand] == 1.0);

  const Normalized twice = znormalize(nz.data);
  for (std::size_t i = 0; i < nz.data.values.size(); ++i) {
    CHECK(std::abs(twice.data.values[i] - nz.data.values[i]) <= 1e-12);
  }
  const TimeSeriesDataset back = denormalize(nz.data, nz.model);
  for (std::size_t i = 0; i < ds.values.size(); ++i) CHECK(std::abs(back.values[i] - ds.values[i]) <= 1e-10);

  const auto flat = tiny_dataset(2, 1, {0.1, 0.2}, {0.3, 0.3}, {1.0, 2.0});
  try {
    znormalize(flat);
    FAIL("expected ConstantSeries");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConstantSeries);
  }
}

TEST_CASE("k-means on two well separated pairs") {
  // Days 0 and 2 form one pair, days 1 and 3 the other.
  const auto ds = tiny_dataset(4, 1, {0.1, 0.9, 0.12, 0.88}, {0.2, 0.8, 0.21, 0.79}, {10, 90, 11, 91});
  const Normalized nz = znormalize(ds);
  const KMeansResult km = kmeans_scenarios(nz.data, nz.model, 2, 42);

  // Oracle: minimum inertia over every 2-partition.
  const Eigen::MatrixXd m = normalized_day_matrix(nz.data);
  double best = 1e300;
  for (int mask = 1; mask < 15; ++mask) {
    double inertia = 0.0;
    for (int side = 0; side < 2; ++side) {
      Eigen::RowVectorXd c = Eigen::RowVectorXd::Zero(m.cols());
      int count = 0;
      for (int i = 0; i < 4; ++i) {
        if (((mask >> i) & 1) == side) {
          c += m.row(i);
          ++count;
        }
      }
      c /= count;
      for (int i = 0; i < 4; ++i) {
        if (((mask >> i) & 1) == side) inertia += (m.row(i) - c).squaredNorm();
      }
    }
    best = std::min(best, inertia);
  }
  CHECK(km.inertia == doctest::Approx(best).epsilon(1e-12));
  CHECK(km.assignment[0] == km.assignment[2]);
  CHECK(km.assignment[1] == km.assignment[3]);
  CHECK(km.assignment[0] != km.assignment[1]);
  CHECK(km.scenarios.weights == std::vector<double>{0.5, 0.5});
  for (std::size_t i = 1; i < km.inertia_history.size(); ++i) {
    CHECK(km.inertia_history[i] <= km.inertia_history[i - 1] + 1e-12);
  }
}

TEST_CASE("k-means extremes") {
  const TimeSeriesDataset ds = synth_generate(3, 12, 4);
  const Normalized nz = znormalize(ds);
  const KMeansResult all = kmeans_scenarios(nz.data, nz.model, 12, 1);
  CHECK(all.inertia == doctest::Approx(0.0));
  for (double w : all.scenarios.weights) CHECK(w == doctest::Approx(1.0 / 12));

  const KMeansResult one = kmeans_scenarios(nz.data, nz.model, 1, 1);
  for (int j = 0; j < ds.day_length(); ++j) {
    double mean = 0.0;
    for (int d = 0; d < ds.days; ++d) mean += ds.values[static_cast<std::size_t>(d) * ds.day_length() + j];
    mean /= ds.days;
    CHECK(one.scenarios.days[0][j] == doctest::Approx(mean).epsilon(1e-10));
  }
  const KMeansResult five = kmeans_scenarios(nz.data, nz.model, 5, 9);
  const double total = std::accumulate(five.scenarios.weights.begin(), five.scenarios.weights.end(), 0.0);
  CHECK(std::abs(total - 1.0) <= 1e-12);
  CHECK_THROWS_AS(kmeans_scenarios(nz.data, nz.model, 13, 1), Error);
}

TEST_CASE("Jacobi agrees with a library eigensolver") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(7, 7);
  a = a * a.transpose();
  Eigen::VectorXd evals;
  Eigen::MatrixXd evecs;
  jacobi_eigen(a, evals, evecs);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
  for (int k = 0; k < 7; ++k) CHECK(evals(k) == doctest::Approx(ref.eigenvalues()(6 - k)).epsilon(1e-10));
  CHECK((evecs.transpose() * evecs - Eigen::MatrixXd::Identity(7, 7)).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((a * evecs - evecs * evals.asDiagonal()).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("PCA examples") {
  Eigen::MatrixXd line(5, 3);
  for (int i = 0; i < 5; ++i) line.row(i) << 1.0 + i, 2.0 - 2.0 * i, 0.5 * i;
  const PcaModel rank1 = pca_fit(line, 1);
  CHECK(rank1.explained_variance_ratio[0] == doctest::Approx(1.0));
  CHECK(explained_variance_report(rank1) == std::vector<double>{rank1.explained_variance_ratio[0]});

  Eigen::MatrixXd cross(4, 2);
  cross << 1, 0, -1, 0, 0, 0.5, 0, -0.5;
  const PcaModel p2 = pca_fit(cross, 2);
  // Scatter matrix diag(1 + 1, 0.25 + 0.25).
  CHECK(p2.explained_variance_ratio[0] == doctest::Approx(2.0 / 2.5));
  CHECK(p2.explained_variance_ratio[1] == doctest::Approx(0.5 / 2.5));
  CHECK(p2.components(0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(p2.components(1, 0)) <= 1e-12);

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  CHECK(pca_reconstruct(p2, zero) == p2.mean);
  CHECK_THROWS_AS(pca_project(p2, Eigen::VectorXd::Zero(3)), Error);
  CHECK_THROWS_AS(pca_reconstruct(p2, Eigen::VectorXd::Zero(3)), Error);

  PcaModel ratios;
  ratios.explained_variance_ratio = {0.6, 0.3, 0.1};
  const auto cum = explained_variance_report(ratios);
  CHECK(cum[0] == doctest::Approx(0.6));
  CHECK(cum[1] == doctest::Approx(0.9));
  CHECK(cum[2] == doctest::Approx(1.0));
}

TEST_CASE("PCA round trip and truncation error on synthetic data") {
  const TimeSeriesDataset ds = synth_generate(11, 60, 6);
  const Normalized nz = znormalize(ds);
  const Eigen::MatrixXd m = normalized_day_matrix(nz.data);
  const Eigen::MatrixXd train = m.topRows(59);
  const Eigen::VectorXd held = m.row(59).transpose();
  const int full = static_cast<int>(m.cols());
  const PcaModel model = pca_fit(train, full);
  CHECK((model.components.transpose() * model.components - Eigen::MatrixXd::Identity(full, full)).cwiseAbs().maxCoeff() <=
        1e-10);
  CHECK((pca_reconstruct(model, pca_project(model, held)) - held).cwiseAbs().maxCoeff() <= 1e-10);
  Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(full, -1.0, 2.0);
  CHECK((pca_project(model, pca_reconstruct(model, p)) - p).cwiseAbs().maxCoeff() <= 1e-10);

  const auto cum = explained_variance_report(model);
  CHECK(cum.back() == doctest::Approx(1.0));
  double previous = 1e300;
  for (int n = 1; n <= full; ++n) {
    CHECK(cum[n - 1] >= (n > 1 ? cum[n - 2] : 0.0));
    const PcaModel trunc = pca_fit(train, n);
    const double err = (pca_reconstruct(trunc, pca_project(trunc, held)) - held).norm();
    CHECK(err <= previous + 1e-10);
    previous = err;
  }
  const int n95 = components_for_variance(model.all_variance_ratio, 0.95);
  CHECK(n95 >= 1);
  CHECK(n95 < full);
  MESSAGE("synthetic data reaches 95% explained variance at n_dim = " << n95);
}

TEST_CASE("generator pruning") {
  Eigen::MatrixXd square(5, 2);
  square << 0, 0, 1, 0, 1, 1, 0, 1, 0.5, 0.5;
  const GeneratorSet g = prune_generators(square);
  CHECK(g.size() == 4);
  CHECK_FALSE(g.retained[4]);
  REQUIRE(g.certificates.size() == 1);
  CHECK(g.certificates[0].residual <= 1e-6);

  Eigen::MatrixXd simplex(3, 2);
  simplex << 0, 0, 1, 0, 0, 1;
  CHECK(prune_generators(simplex).size() == 3);

  Eigen::MatrixXd interval(4, 1);
  interval << 0, 0.3, 0.7, 1;
  const GeneratorSet gi = prune_generators(interval);
  CHECK(gi.source_index == std::vector<int>{0, 3});

  Eigen::MatrixXd dup(4, 1);
  dup << 0, 1, 1, 0.5;
  const GeneratorSet gd = prune_generators(dup);
  CHECK(gd.duplicate_of[2] == 1);
  CHECK(gd.size() == 2);
  for (const auto& c : gd.certificates) {
    double v = 0.0;
    for (int r = 0; r < gd.size(); ++r) v += c.alpha[r] * gd.points(r, 0);
    CHECK(v == doctest::Approx(dup(c.point, 0)).epsilon(1e-6));
  }
}

TEST_CASE("synthetic generator invariants") {
  const TimeSeriesDataset a = synth_generate(5, 30, 24);
  const TimeSeriesDataset b = synth_generate(5, 30, 24);
  CHECK(a.values == b.values);
  CHECK(synth_generate(6, 30, 24).values != a.values);
  double dmin = 1e300;
  double dmax = 0.0;
  for (int d = 0; d < a.days; ++d) {
    CHECK(a.at(d, kSolar, 0) == 0.0);
    CHECK(a.at(d, kSolar, 1) == 0.0);
    CHECK(a.at(d, kSolar, 23) == 0.0);
    for (int t = 0; t < a.steps; ++t) {
      dmin = std::min(dmin, a.at(d, kDemand, t));
      dmax = std::max(dmax, a.at(d, kDemand, t));
    }
  }
  CHECK(dmin >= 200.0);
  CHECK(dmax <= 44800.0);
  CHECK_NOTHROW(a.validate());
}

TEST_CASE("preprocess bundle round trip") {
  const TimeSeriesDataset ds = synth_generate(7, 40, 4);
  const PreprocessBundle b = preprocess(ds, 5, 3, 7);
  CHECK(b.scenarios.size() == 5);
  CHECK(b.pca.n_dim() == 3);
  const std::string text = bundle_to_json(b);
  const PreprocessBundle back = bundle_from_json(text);
  CHECK(bundle_to_json(back) == text);
  CHECK(back.pca.components == b.pca.components);
  CHECK(back.generators.points == b.generators.points);
  CHECK(bundle_to_json(preprocess(ds, 5, 3, 7)) == text);
  CHECK_THROWS_AS(bundle_from_json("{}"), Error);

  // Every historical day lies in the generator hull at full rank.
  const PreprocessBundle full = preprocess(ds, 5, ds.day_length(), 7);
  const auto day = latent_to_day(full, full.generators.points.row(0).transpose());
  const auto orig = ds.day_vector(full.generators.source_index[0]);
  for (std::size_t j = 0; j < day.size(); ++j) CHECK(day[j] == doctest::Approx(orig[j]).epsilon(1e-9));
}
