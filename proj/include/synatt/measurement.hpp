// Quaternion measurement models and the seeded random stream behind them.

#ifndef SYNATT_MEASUREMENT_HPP_
#define SYNATT_MEASUREMENT_HPP_

#include <cstdint>
#include <random>
#include <variant>

#include "synatt/quat.hpp"

namespace synatt {

/// Seeded random stream with a fully specified algorithm:
///  - bits: std::mt19937_64 (its output sequence is fixed by the C++ standard);
///  - uniform01: top 53 bits scaled by 2^-53, giving [0, 1);
///  - normal: Box-Muller cosine branch, z = sqrt(-2 ln(1 - a)) cos(2 pi b) for
///    two consecutive uniforms a, b (the sine branch is discarded).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform01();
  double normal();

 private:
  std::mt19937_64 engine_;
};

struct CleanMeasurement {};

/// Q_m = s(t) Q with s a +-1 square wave: +1 on the first half of each
/// period (s(0) = +1), -1 on the second half.
struct SignFlipMeasurement {
  double frequency_hz = 5.0;
};

/// Q_m = (Q + n e)/|Q + n e|, e a uniformly random unit 4-vector and n
/// uniform on [0, n_max], drawn fresh per sample.
struct GaussianDirectionMeasurement {
  double n_max = 0.0;
};

using MeasurementModel = std::variant<CleanMeasurement, SignFlipMeasurement, GaussianDirectionMeasurement>;

/// One draw of a measurement model, held constant over an integration step.
struct MeasurementSample {
  double sign = 1.0;
  double n = 0.0;
  Vec4 e = Vec4::Zero();
};

double square_wave(double frequency_hz, double t);

/// Draws the sample for time t. GaussianDirection consumes four normals and
/// one uniform per call, in the order e_0..e_3 then n; other models draw
/// nothing.
MeasurementSample draw_measurement(const MeasurementModel& M, double t, Rng& rng);

/// Applies a frozen sample to a (true) quaternion.
UnitQuaternion apply_measurement(const MeasurementSample& s, const UnitQuaternion& Q);

UnitQuaternion measure(const MeasurementModel& M, const UnitQuaternion& Q_true, double t, Rng& rng);

}  // namespace synatt

#endif  // SYNATT_MEASUREMENT_HPP_
