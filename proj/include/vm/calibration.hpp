#pragma once

// Envelope constants, measured by vm_calibrate (tools/calibrate.cpp) and
// frozen here; tests/fixtures/calibration.json holds the same numbers.
// Upper-bound constants are the measured maximum times kCalibrationMargin,
// lower-bound constants the measured minimum divided by it.

namespace vm::calibration {

inline constexpr double kCalibrationMargin = 4.0;
inline constexpr unsigned kCalibrationSeed = 7;
inline constexpr unsigned kCheckSeed = 11;

// |Delta(x) - R1(x, x)| <= C x^0.05 on [1e3, 1e5]
inline constexpr double kTruncationExponent = 0.05;
inline constexpr double kTruncationConstant = 82.09;

// |Delta*(x) - R1*(x, 4x)| <= C x^0.05 on [100, 1000]
inline constexpr double kAlternatingConstant = 26.47;

// int_T^{2T} R2^2 <= C T^{3/2} log^3 T / y^{1/2}, measured at (T, y) = (1e4, 10)
inline constexpr double kMeanSquareConstant = 0.01462;

// |int_1^T Delta - T/4| <= C T^{3/4}
inline constexpr double kFirstMomentConstant = 50;

// min_gap(3, "11", N) N^{3/2} >= c, measured at N = 20
inline constexpr double kGapConstant = 0.1469;

// count <= C (delta E^{-1/2} prod N + E^{-1} prod N)
inline constexpr double kCountConstant = 13.47;

}  // namespace vm::calibration
