#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <random>

#include "oracles.hpp"
#include "synatt/controller.hpp"
#include "synatt/measurement.hpp"
#include "synatt/warping.hpp"

using namespace synatt;

namespace {

std::shared_ptr<const CshFamily> csh() {
  static const auto F = std::make_shared<const CshFamily>(
      WarpParams(QuadraticPotential::diagonal(Vec3(0.6, 0.8, 1.0)), Vec3::Ones().normalized(), 0.54));
  return F;
}

std::shared_ptr<const NcshFamily> ncsh() {
  static const auto F = std::make_shared<const NcshFamily>(0.5);
  return F;
}

UnitQuaternion with_eta(double eta) { return UnitQuaternion(eta, Vec3(0.0, std::sqrt(1 - eta * eta), 0.0)); }

constexpr LogicState kBoth[2] = {LogicState::plus(), LogicState::minus()};

}  // namespace

TEST(SwitchConfig, Validation) {
  EXPECT_NO_THROW(SwitchConfig(*csh(), 0.1));
  EXPECT_NO_THROW(SwitchConfig(*csh(), *csh()->certified_delta()));
  EXPECT_THROW(SwitchConfig(*csh(), 0.0), std::invalid_argument);
  EXPECT_THROW(SwitchConfig(*csh(), 0.2), std::invalid_argument);
  EXPECT_THROW(SwitchConfig(*csh(), -0.1), std::invalid_argument);
  EXPECT_THROW(SwitchConfig(*csh(), std::nan("")), std::invalid_argument);
  EXPECT_NO_THROW(SwitchConfig(*ncsh(), 0.5));
  EXPECT_THROW(SwitchConfig(*ncsh(), 0.6), std::invalid_argument);

  const SwitchConfig zero(*csh(), 0.0, true);
  EXPECT_EQ(zero.delta_h(), 0.0);
  EXPECT_TRUE(zero.experiment_mode());
  EXPECT_NO_THROW(SwitchConfig(*csh(), 5.0, true));
  EXPECT_THROW(SwitchConfig(*csh(), -1.0, true), std::invalid_argument);
}

TEST(SwitchDecision, NcshExamples) {
  const SwitchConfig C(*ncsh(), 0.1);
  EXPECT_EQ(switch_decision(*ncsh(), C, with_eta(-0.5), LogicState::plus()), SwitchDecision(JumpTo{LogicState::minus()}));
  EXPECT_EQ(switch_decision(*ncsh(), C, with_eta(-0.5), LogicState::minus()), SwitchDecision(Flow{}));
  EXPECT_EQ(switch_decision(*ncsh(), C, with_eta(-0.04), LogicState::plus()), SwitchDecision(Flow{}));
  EXPECT_EQ(switch_decision(*ncsh(), C, UnitQuaternion::identity(), LogicState::plus()), SwitchDecision(Flow{}));
}

TEST(SwitchDecision, BoundaryFollowsPolicy) {
  // mu = 1.25 - 0.75 = delta_h exactly at eta = -0.25.
  const SwitchConfig C(*ncsh(), 0.5);
  const UnitQuaternion Q = with_eta(-0.25);
  ASSERT_EQ(ncsh()->synergy_gap(Q, LogicState::plus()), 0.5);
  EXPECT_EQ(switch_decision(*ncsh(), C, Q, LogicState::plus(), JumpPolicy::jump_priority),
            SwitchDecision(JumpTo{LogicState::minus()}));
  EXPECT_EQ(switch_decision(*ncsh(), C, Q, LogicState::plus(), JumpPolicy::flow_priority), SwitchDecision(Flow{}));
}

TEST(SwitchDecision, JumpLandsInFlowSetAndLowersUByDeltaH) {
  for (const std::shared_ptr<const SpfFamily>& F : {std::shared_ptr<const SpfFamily>(csh()),
                                                    std::shared_ptr<const SpfFamily>(ncsh())}) {
    const SwitchConfig C(*F, 0.1);
    std::mt19937_64 g(31);
    int jumps = 0;
    for (int n = 0; n < 10000; ++n) {
      const UnitQuaternion Q = UnitQuaternion::project(oracle::random_unit4(g));
      for (LogicState q : kBoth) {
        const SwitchDecision d = switch_decision(*F, C, Q, q);
        if (const auto* j = std::get_if<JumpTo>(&d)) {
          ++jumps;
          EXPECT_EQ(F->synergy_gap(Q, j->q), 0.0);
          EXPECT_LE(F->value(Q, j->q), F->value(Q, q) - 0.1);
        } else {
          EXPECT_LT(F->synergy_gap(Q, q), 0.1);
        }
      }
    }
    EXPECT_GT(jumps, 0);
  }
}

TEST(SwitchDecision, CshIgnoresSignOfMeasurement) {
  const SwitchConfig C(*csh(), 0.1);
  std::mt19937_64 g(32);
  for (int n = 0; n < 10000; ++n) {
    const UnitQuaternion Q = UnitQuaternion::project(oracle::random_unit4(g));
    for (LogicState q : kBoth) EXPECT_EQ(switch_decision(*csh(), C, Q, q), switch_decision(*csh(), C, -Q, q));
  }
}

TEST(SwitchDecision, NcshNegationSwapsIndex) {
  const SwitchConfig C(*ncsh(), 0.1);
  std::mt19937_64 g(33);
  for (int n = 0; n < 10000; ++n) {
    const UnitQuaternion Q = UnitQuaternion::project(oracle::random_unit4(g));
    for (LogicState q : kBoth) {
      const SwitchDecision a = switch_decision(*ncsh(), C, -Q, q);
      const SwitchDecision b = switch_decision(*ncsh(), C, Q, q.opposite());
      ASSERT_EQ(a.index(), b.index());
      if (const auto* j = std::get_if<JumpTo>(&a)) EXPECT_EQ(j->q, std::get<JumpTo>(b).q.opposite());
    }
  }
}

TEST(Feedback, ProjectedFormAgreesOnSphere) {
  std::mt19937_64 g(34);
  for (int n = 0; n < 1000; ++n) {
    const UnitQuaternion Q = UnitQuaternion::project(oracle::random_unit4(g));
    for (LogicState q : kBoth) {
      EXPECT_LT((feedback_kappa(*csh(), Q, q) - feedback_kappa_projected(*csh(), Q, q)).norm(), 1e-12);
      EXPECT_LT((feedback_kappa(*ncsh(), Q, q) - feedback_kappa_projected(*ncsh(), Q, q)).norm(), 1e-12);
    }
  }
}

TEST(Control, KinematicExamples) {
  for (LogicState q : kBoth) {
    EXPECT_EQ(kinematic_control(*csh(), UnitQuaternion::identity(), q, 2.0), Vec3::Zero());
    EXPECT_EQ(kinematic_control(*csh(), -UnitQuaternion::identity(), q, 2.0), Vec3::Zero());
  }
  std::mt19937_64 g(35);
  for (int n = 0; n < 1000; ++n) {
    const UnitQuaternion Q = UnitQuaternion::project(oracle::random_unit4(g));
    for (LogicState q : kBoth) {
      EXPECT_LT((kinematic_control(*csh(), Q, q, 2.0) - kinematic_control(*csh(), -Q, q, 2.0)).norm(), 1e-12);
      EXPECT_LT((kinematic_control(*ncsh(), Q, q, 2.0) + kinematic_control(*ncsh(), -Q, q, 2.0)).norm(), 1e-15);
      EXPECT_LT((kinematic_control(*csh(), Q, q, 2.0) + 2.0 * feedback_kappa(*csh(), Q, q)).norm(), 1e-15);
    }
  }
}

TEST(Control, DynamicExamples) {
  EXPECT_EQ(dynamic_control(*csh(), UnitQuaternion::identity(), Vec3::Zero(), LogicState::plus(), 30, 15),
            Vec3::Zero());
  EXPECT_EQ(dynamic_control(*csh(), -UnitQuaternion::identity(), Vec3::Zero(), LogicState::minus(), 30, 15),
            Vec3::Zero());
  EXPECT_EQ(dynamic_control(*csh(), UnitQuaternion::identity(), Vec3(1, 0, 0), LogicState::plus(), 30, 15),
            Vec3(-15, 0, 0));
  const UnitQuaternion Q = UnitQuaternion::from_vector(Vec4(0, 0.6, 0.8, 0));
  EXPECT_LT((dynamic_control(*ncsh(), Q, Vec3::Zero(), LogicState::plus(), 30, 15) - Vec3(-18, -24, 0)).norm(), 1e-14);
}

TEST(HybridController, ValidatesAndHoldsLogicWhenNotSwitching) {
  const SwitchConfig C(*ncsh(), 0.1);
  EXPECT_THROW(HybridController(ncsh(), C, Gains{0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(HybridController(ncsh(), C, Gains{1.0, -1.0}), std::invalid_argument);
  EXPECT_THROW(HybridController(nullptr, C, Gains{}), std::invalid_argument);

  const HybridController fixed(ncsh(), C, Gains{30, 15}, false);
  const HybridController sw(ncsh(), C, Gains{30, 15}, true);
  EXPECT_EQ(fixed.decide(with_eta(-0.5), LogicState::plus()), SwitchDecision(Flow{}));
  EXPECT_EQ(sw.decide(with_eta(-0.5), LogicState::plus()), SwitchDecision(JumpTo{LogicState::minus()}));
  const UnitQuaternion Q = with_eta(0.3);
  EXPECT_EQ(sw.torque(Q, Vec3(1, 2, 3), LogicState::plus()),
            dynamic_control(*ncsh(), Q, Vec3(1, 2, 3), LogicState::plus(), 30, 15));
  EXPECT_EQ(sw.angular_velocity(Q, LogicState::plus()), kinematic_control(*ncsh(), Q, LogicState::plus(), 30));
}

TEST(Measurement, RngFollowsDocumentedAlgorithm) {
  Rng r(7);
  std::mt19937_64 e(7);
  for (int n = 0; n < 100; ++n) EXPECT_EQ(r.uniform01(), static_cast<double>(e() >> 11) * 0x1.0p-53);
  for (int n = 0; n < 100; ++n) {
    const double a = static_cast<double>(e() >> 11) * 0x1.0p-53;
    const double b = static_cast<double>(e() >> 11) * 0x1.0p-53;
    EXPECT_EQ(r.normal(), std::sqrt(-2.0 * std::log(1.0 - a)) * std::cos(2.0 * M_PI * b));
  }
}

TEST(Measurement, RngMomentsAreSane) {
  Rng r(8);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

TEST(Measurement, SquareWavePhase) {
  EXPECT_EQ(square_wave(5.0, 0.0), 1.0);
  EXPECT_EQ(square_wave(5.0, 0.05), 1.0);
  EXPECT_EQ(square_wave(5.0, 0.099), 1.0);
  EXPECT_EQ(square_wave(5.0, 0.1), -1.0);
  EXPECT_EQ(square_wave(5.0, 0.15), -1.0);
  EXPECT_EQ(square_wave(5.0, 0.2), 1.0);
  EXPECT_EQ(square_wave(5.0, 1.05), 1.0);
  EXPECT_EQ(square_wave(5.0, 1.15), -1.0);

  const UnitQuaternion Q = UnitQuaternion::from_vector(Vec4(0, 0.6, 0.8, 0));
  Rng r(1);
  EXPECT_EQ(measure(SignFlipMeasurement{}, Q, 0.05, r), Q);
  EXPECT_EQ(measure(SignFlipMeasurement{}, Q, 0.15, r), -Q);
}

TEST(Measurement, CleanAndZeroNoiseAreIdentity) {
  std::mt19937_64 g(36);
  Rng r(2);
  for (int n = 0; n < 1000; ++n) {
    const UnitQuaternion Q = UnitQuaternion::project(oracle::random_unit4(g));
    EXPECT_EQ(measure(CleanMeasurement{}, Q, 0.01 * n, r), Q);
    EXPECT_EQ(measure(GaussianDirectionMeasurement{0.0}, Q, 0.01 * n, r), Q);
  }
}

TEST(Measurement, GaussianDirectionStaysWithinNoiseLevel) {
  std::mt19937_64 g(37);
  Rng r(3);
  for (int n = 0; n < 10000; ++n) {
    const UnitQuaternion Q = UnitQuaternion::project(oracle::random_unit4(g));
    const MeasurementSample s = draw_measurement(GaussianDirectionMeasurement{0.13}, 0.0, r);
    EXPECT_GE(s.n, 0.0);
    EXPECT_LE(s.n, 0.13);
    EXPECT_NEAR(s.e.norm(), 1.0, 1e-15);
    const UnitQuaternion M = apply_measurement(s, Q);
    EXPECT_NEAR(M.vec().norm(), 1.0, 1e-15);
    // Normalizing Q + n e turns Q by at most asin(n).
    EXPECT_LE((M.vec() - Q.vec()).norm(), 2 * std::sin(std::asin(0.13) / 2) + 1e-12);
  }
}

TEST(Measurement, SeededStreamIsReproducible) {
  Rng a(42), b(42);
  const UnitQuaternion Q = UnitQuaternion::from_vector(Vec4(0.5, 0.5, 0.5, 0.5));
  for (int n = 0; n < 100; ++n) {
    EXPECT_EQ(measure(GaussianDirectionMeasurement{0.05}, Q, 0.0, a),
              measure(GaussianDirectionMeasurement{0.05}, Q, 0.0, b));
  }
}
