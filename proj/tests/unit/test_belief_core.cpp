#include <cmath>
#include <random>

#include "doctest.h"

#include "sacontrol/belief.hpp"
#include "sacontrol/controlled_hmm.hpp"
#include "sacontrol/errors.hpp"
#include "sacontrol/hmm_filter.hpp"
#include "sacontrol/model_io.hpp"
#include "sacontrol/verify_suite.hpp"

#include "models.hpp"
#include "oracle_values.hpp"

using namespace sacontrol;

TEST_CASE("belief validation") {
  CHECK_THROWS_AS(Belief(Eigen::VectorXd::Zero(0)), DomainError);
  CHECK_THROWS_AS(Belief(Eigen::Vector2d(0.6, 0.6)), DomainError);
  CHECK_THROWS_AS(Belief(Eigen::Vector2d(1.1, -0.1)), DomainError);
  CHECK_THROWS_AS(Belief::from_weights(Eigen::Vector2d::Zero()), DomainError);
  CHECK_THROWS_AS(Belief::point_mass(3, 3), DomainError);

  const Belief nearly(Eigen::Vector2d(0.5 + 4e-10, 0.5));
  CHECK(nearly.probs().sum() == doctest::Approx(1.0).epsilon(1e-15));

  const auto w = Belief::from_weights(Eigen::Vector3d(1, 2, 1));
  CHECK(w[1] == doctest::Approx(0.5));
  CHECK(Belief::uniform(4)[3] == doctest::Approx(0.25));
  CHECK(Belief::point_mass(3, 2).argmax() == 2);
  CHECK(Belief(Eigen::Vector3d(0.4, 0.2, 0.4)).argmax() == 0);
}

TEST_CASE("model validation") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0.5, 0.5, 0.6, 0.5;
  Eigen::MatrixXd like = Eigen::MatrixXd::Constant(2, 2, 0.5);
  CHECK_THROWS_AS(ControlledHmm({bad}, EmissionModel(DiscreteEmission{like}), Belief::uniform(2)), DomainError);
  CHECK_THROWS_AS(ControlledHmm({}, EmissionModel(DiscreteEmission{like}), Belief::uniform(2)), DomainError);
  CHECK_THROWS_AS(EmissionModel(GaussianEmission{{1.0}, 0.0}), DomainError);
  CHECK_THROWS_AS(ControlledHmm({Eigen::MatrixXd::Identity(3, 3)}, EmissionModel(DiscreteEmission{like}),
                                Belief::uniform(3)),
                  DomainError);

  const auto hmm = testmodels::paper_model();
  CHECK(hmm.n_controls() == 3);
  CHECK_THROWS_AS(hmm.transition(3), DomainError);
  CHECK_THROWS_AS(hmm.emissions().likelihood(0, NAN), DomainError);

  const auto toy = testmodels::toy_model();
  CHECK_THROWS_AS(toy.emissions().likelihood(0, 0.5), DomainError);
  CHECK_THROWS_AS(toy.emissions().likelihood(0, 2.0), DomainError);
}

TEST_CASE("predict_joint from the three-state model") {
  const auto hmm = testmodels::paper_model();
  const auto joint = predict_joint(hmm, Belief::uniform(3), 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(joint(i, j) == doctest::Approx(oracle::joint_a0_uniform[static_cast<std::size_t>(3 * i + j)]).epsilon(1e-15));
  CHECK(joint.sum() == doctest::Approx(1.0).epsilon(1e-15));

  // Identity dynamics leave the belief alone.
  const auto id = testmodels::uninformative(Eigen::MatrixXd::Identity(3, 3));
  const Belief b(Eigen::Vector3d(0.2, 0.3, 0.5));
  CHECK((predict_marginal(id, b, 0).probs() - b.probs()).norm() < 1e-15);
}

TEST_CASE("two-state Bayes update") {
  Eigen::MatrixXd a(2, 2), like(2, 2);
  a << 0.8, 0.1, 0.2, 0.9;
  like << 0.9, 0.1, 0.2, 0.8;
  const ControlledHmm hmm({a}, EmissionModel(DiscreteEmission{like}), Belief::uniform(2));
  const auto post = filter_update(hmm, Belief::uniform(2), 0, 0.0);
  CHECK(post[0] == doctest::Approx(oracle::two_state_posterior[0]).epsilon(1e-14));
  CHECK(post[1] == doctest::Approx(oracle::two_state_posterior[1]).epsilon(1e-14));
  CHECK(post[0] == doctest::Approx(0.786407767).epsilon(1e-9));
}

TEST_CASE("degenerate measurement") {
  Eigen::MatrixXd like(2, 2);
  like << 1.0, 0.0, 1.0, 0.0;
  const ControlledHmm hmm({Eigen::MatrixXd::Identity(2, 2)}, EmissionModel(DiscreteEmission{like}), Belief::uniform(2));
  CHECK_THROWS_AS(filter_update(hmm, Belief::uniform(2), 0, 1.0), DegenerateMeasurementError);
  CHECK(measurement_likelihood(hmm, Belief::uniform(2), 0, 1.0) == 0.0);
}

TEST_CASE("Gaussian mixture likelihood") {
  const auto hmm = testmodels::paper_model();
  CHECK(measurement_likelihood(hmm, Belief::uniform(3), 2, 3.0) ==
        doctest::Approx(oracle::mixture_density_u2_y3).epsilon(1e-13));
}

TEST_CASE("entropies") {
  CHECK(discrete_entropy(Belief::point_mass(3, 1)) == 0.0);
  CHECK(discrete_entropy(Belief::uniform(5)) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  CHECK(discrete_entropy(Belief(Eigen::Vector3d(0.5, 0.5, 0.0))) == doctest::Approx(std::log(2.0)));

  const auto hmm = testmodels::paper_model();
  const auto prev = Belief::point_mass(3, 0);
  CHECK(conditional_entropy_of_joint(predict_joint(hmm, prev, 2), prev) ==
        doctest::Approx(oracle::column_entropy_a2_e0).epsilon(1e-14));
  CHECK(oracle::column_entropy_a2_e0 == doctest::Approx(0.3944).epsilon(1e-4));

  const auto joint = predict_joint(hmm, Belief::uniform(3), 1);
  CHECK_THROWS_AS(conditional_entropy_of_joint(joint, Belief::point_mass(3, 0)), ConsistencyError);
  CHECK_THROWS_AS(conditional_entropy_of_joint(joint, Belief::uniform(2)), ConsistencyError);
}

TEST_CASE("filter properties over random models") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 40; ++k) {
    const std::size_t n = 2 + k % 3, m = 2 + k % 4;
    const auto hmm = random_discrete_hmm(n, m, 2, rng);
    const Belief b = hmm.initial();
    for (std::size_t u = 0; u < 2; ++u) {
      double total = 0.0;
      Eigen::VectorXd mix = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
      for (std::size_t y = 0; y < m; ++y) {
        const double p = measurement_likelihood(hmm, b, u, static_cast<double>(y));
        total += p;
        const auto post = filter_update(hmm, b, u, static_cast<double>(y));
        CHECK(post.probs().sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(post.probs().minCoeff() >= 0.0);
        mix += p * post.probs();
        const double h = discrete_entropy(post);
        CHECK(h >= 0.0);
        CHECK(h <= std::log(static_cast<double>(n)) + 1e-12);
      }
      CHECK(std::abs(total - 1.0) < 1e-10);
      // Posteriors average back to the prediction.
      CHECK((mix - predict_marginal(hmm, b, u).probs()).norm() < 1e-10);
      const double hc = conditional_entropy_of_joint(predict_joint(hmm, b, u), b);
      CHECK(hc >= 0.0);
      CHECK(hc <= std::log(static_cast<double>(n)) + 1e-12);
    }
  }
}

TEST_CASE("model json round trip and errors") {
  const auto hmm = testmodels::paper_model();
  const auto back = hmm_from_json(hmm_to_json(hmm));
  CHECK(back.n_states() == 3);
  CHECK((back.transition(1) - hmm.transition(1)).norm() == 0.0);
  CHECK(back.emissions().gaussian()->means[2] == 5.0);

  const auto toy = hmm_from_json(hmm_to_json(testmodels::toy_model()));
  CHECK(toy.emissions().is_discrete());

  auto doc = hmm_to_json(hmm);
  doc["transitions"][0][0][0] = 0.7;
  CHECK_THROWS_AS(hmm_from_json(doc), ConfigError);
  doc = hmm_to_json(hmm);
  doc["emissions"]["type"] = "poisson";
  CHECK_THROWS_AS(hmm_from_json(doc), ConfigError);
  doc = hmm_to_json(hmm);
  doc.erase("initial");
  CHECK_THROWS_AS(hmm_from_json(doc), ConfigError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/model.json"), ConfigError);
}
