// Frozen reference values.  Closed forms are written out by hand; the
// four-digit table entries are the published ones, copied verbatim.
#pragma once

#include <array>
#include <cmath>

namespace expected {

inline constexpr double pi = 3.14159265358979323846;

// d_{2,1} chain value and d_{4,1} lower bound.
inline const double dnk_lower_2_1 = std::sqrt(3.0) * pi / 8;
inline const double dnk_lower_4_1 = 25 * pi * pi / 256;

inline constexpr std::array<int, 7> table_dims{3, 4, 5, 6, 7, 8, 24};
inline constexpr std::array<double, 7> conjecture_general{0.08335,    0.01302,      0.001562, 0.0001519,
                                                           0.00001240, 0.0000008717, 2.402e-30};
inline constexpr std::array<double, 7> conjecture_symmetric{0.1667,     0.04167,     0.008333, 0.001389,
                                                             0.0001984, 0.00002480, 1.612e-24};
inline constexpr std::array<double, 7> first_general{0.04538,      0.004548,       0.0003558, 0.00001974,
                                                      0.0000008751, 0.00000002909, 4.673e-38};
inline constexpr std::array<double, 7> first_symmetric{0.1179,     0.02083,     0.002947, 0.0003007,
                                                        0.00002482, 0.000001550, 9.607e-32};

// Planar bounds.
inline constexpr double max_d21_upper = 0.6910;
inline constexpr double previous_d21_bound = 0.6999;
inline constexpr double circle_conjecture = 0.6802;
inline constexpr double tammela = 0.8926;

// Packing and covering densities.
inline const double delta_a2 = pi / std::sqrt(12.0);
inline const double delta_d3 = pi / (3 * std::sqrt(2.0));
inline const double delta_d4 = pi * pi / 16;
inline const double theta_a2star = 2 * pi / std::sqrt(27.0);

// Cylinder floors for unit balls.
inline const double fcc_floor = 3 * std::sqrt(2.0) / 4 - 1;
inline const double d4_floor = std::sqrt(5.0) / 2 - 1;

// d_{3,1} (Bambah-Woods) and d_{3,2}.
inline const double d31 = 9 * pi / 32;
inline const double d32 = pi / (6 * std::sqrt(2.0));

inline double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline double kappa(int n) { return std::pow(pi, n / 2.0) / std::tgamma(1 + n / 2.0); }

}  // namespace expected
