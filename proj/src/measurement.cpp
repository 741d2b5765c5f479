#include "synatt/measurement.hpp"

#include <cmath>
#include <numbers>

namespace synatt {

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  const double a = uniform01();
  const double b = uniform01();
  return std::sqrt(-2.0 * std::log(1.0 - a)) * std::cos(2.0 * std::numbers::pi * b);
}

double square_wave(double frequency_hz, double t) {
  const double half_periods = std::floor(2.0 * frequency_hz * t);
  return std::fmod(half_periods, 2.0) == 0.0 ? 1.0 : -1.0;
}

namespace {

struct Drawer {
  double t;
  Rng& rng;

  MeasurementSample operator()(const CleanMeasurement&) const { return {}; }
  MeasurementSample operator()(const SignFlipMeasurement& m) const {
    MeasurementSample s;
    s.sign = square_wave(m.frequency_hz, t);
    return s;
  }
  MeasurementSample operator()(const GaussianDirectionMeasurement& m) const {
    MeasurementSample s;
    Vec4 v;
    for (int i = 0; i < 4; ++i) v(i) = rng.normal();
    const double n = v.norm();
    s.e = n > 0.0 ? Vec4(v / n) : Vec4(1.0, 0.0, 0.0, 0.0);
    s.n = m.n_max * rng.uniform01();
    return s;
  }
};

}  // namespace

MeasurementSample draw_measurement(const MeasurementModel& M, double t, Rng& rng) {
  return std::visit(Drawer{t, rng}, M);
}

UnitQuaternion apply_measurement(const MeasurementSample& s, const UnitQuaternion& Q) {
  const UnitQuaternion signed_q = s.sign < 0.0 ? -Q : Q;
  if (s.n == 0.0) return signed_q;
  return UnitQuaternion::project(signed_q.vec() + s.n * s.e);
}

UnitQuaternion measure(const MeasurementModel& M, const UnitQuaternion& Q_true, double t, Rng& rng) {
  return apply_measurement(draw_measurement(M, t, rng), Q_true);
}

}  // namespace synatt
