#pragma once

// Published reference values used by `report tables` and the acceptance
// suite. Tuples are [J2, J4, J6, J10].

#include <array>
#include <cstdint>

namespace g2ml::reference {

using Tuple = std::array<std::int64_t, 4>;

/// Genus 2 curves with moduli height <= h, h = 1..10.
inline constexpr std::array<std::int64_t, 10> kCurveCounts = {
    40,          24862,         1781202,        39251668,        440104780,
    3195496050,  17146927462,   73657853512,    266816523888,    844626323110,
};

/// One representative per moduli class of height 1.
inline constexpr std::array<Tuple, 27> kHeightOne = {{
    {0, -1, 0, 1},   {0, 1, 0, 1},    {0, -1, 1, 1},   {0, 0, 0, 1},    {0, 0, 1, -1},
    {0, 0, 1, 1},    {1, 0, -1, 1},   {1, 0, 0, -1},   {1, 0, 0, 1},    {1, 0, 1, 1},
    {1, -1, -1, 1},  {1, 1, -1, 1},   {1, 1, 1, -1},   {1, -1, 1, -1},  {1, 1, 1, 1},
    {1, 0, -1, -1},  {0, -1, 1, -1},  {0, 1, 1, -1},   {0, 1, 1, 1},    {1, 0, 1, -1},
    {1, -1, -1, -1}, {1, 1, -1, -1},  {1, -1, 0, -1},  {1, 1, 0, -1},   {1, 1, 0, 1},
    {1, -1, 0, 1},   {1, -1, 1, 1},
}};

/// Normalized points of L2 with height <= 3 (both sign representatives).
inline constexpr std::array<Tuple, 34> kL2HeightThree = {{
    {4, -14, 2, 1},     {2, -11, 5, 1},     {-2, -8, 14, 1},    {-2, 16, -14, 1},
    {2, 13, -3, 1},     {4, 16, 0, 2},      {4, -8, 16, 2},     {0, -3, 27, 2},
    {-4, 4, 28, 2},     {-4, -9, 30, 3},    {2, 4, 54, 3},      {-2, 13, 57, 3},
    {-3, -15, 42, 6},   {4, -9, 42, 6},     {0, -15, 45, 8},    {-4, -8, 56, 8},
    {3, -15, 48, 10},   {-3, -15, -48, -10}, {4, -8, -56, -8},  {0, -15, -45, -8},
    {3, -15, -42, -6},  {-4, -9, -42, -6},  {2, 13, -57, -3},   {-2, 4, -54, -3},
    {4, -9, -30, -3},   {-4, 16, 0, -2},    {4, 4, -28, -2},    {0, -3, -27, -2},
    {-4, -8, -16, -2},  {-2, 13, 3, -1},    {2, 16, 14, -1},    {2, -8, -14, -1},
    {-2, -11, -5, -1},  {-4, -14, -2, -1},
}};

/// Printed list of L3 points with height <= 3, in printed order. Entries
/// 40-44 repeat entries 3, 4, 10, 12 and 16.
inline constexpr std::array<Tuple, 44> kL3HeightThree = {{
    {6, 18, 27, 2},      {-6, -18, 45, 2},    {3, 18, 0, 4},       {-3, -18, 36, 4},
    {5, -26, 56, 4},     {-3, 27, 315, 4},    {-5, 58, -76, 4},    {-5, 31, -49, 4},
    {5, 29, -9, 4},      {-2, -18, 39, 6},    {-2, -18, 165, 6},   {2, 18, -15, 6},
    {-8, -80, 429, 8},   {-8, 49, -101, 8},   {8, -47, -59, 8},    {-1, -18, 60, 12},
    {8, 36, 69, 12},     {-1, -45, 105, 12},  {-8, -36, 123, 12},  {-5, 67, -55, 12},
    {1, 18, -48, 12},    {1, 63, -15, 12},    {5, -65, -15, 12},   {6, 36, 36, 16},
    {-6, -36, 108, 16},  {8, -63, 3, 24},     {-4, -36, 102, 24},  {-8, 81, -171, 24},
    {4, 36, -6, 24},     {5, -59, 16, 32},    {5, -68, 100, 32},   {-3, -36, 108, 32},
    {-3, -27, 504, 32},  {-5, 61, -132, 32},  {3, 36, -36, 32},    {9, 54, 108, 36},
    {-9, -54, 216, 36},  {-2, -36, 132, 48},  {-2, -72, 336, 48},  {3, 18, 0, 4},
    {-3, -18, 36, 4},    {-2, -18, 39, 6},    {2, 18, -15, 6},     {-1, -18, 60, 12},
}};

/// Conflicting published sizes of the L3 list.
inline constexpr int kL3CountShort = 44;
inline constexpr int kL3CountLong = 46;

struct ReportRow {
  double precision;
  double recall;
  double f1;
  int support;
};

/// Neural network classification report, classes 1..3.
inline constexpr std::array<ReportRow, 3> kNetworkReport = {{
    {0.87, 1.00, 0.93, 6255},
    {1.00, 0.90, 0.95, 9593},
    {1.00, 1.00, 1.00, 10074},
}};

using Confusion3 = std::array<std::array<std::int64_t, 3>, 3>;

inline constexpr Confusion3 kForestConfusion = {{{9315, 0, 0}, {2, 14513, 2}, {0, 0, 15051}}};
inline constexpr Confusion3 kKnnConfusion = {{{9312, 3, 0}, {4, 14511, 2}, {0, 0, 15051}}};

}  // namespace g2ml::reference
