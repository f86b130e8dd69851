#pragma once

#include <array>
#include <string_view>

namespace crncomp::library {

// Same text as the files under data/.

inline constexpr std::string_view kExample1 =
    "# Reversible isomerization.\n"
    "species Z1 Z2\n"
    "Z1 <=> Z2 ; k=1,2\n";

inline constexpr std::string_view kExample2 =
    "# Autocatalytic input, predator-style output.\n"
    "species X Y\n"
    "inputs X\n"
    "outputs Y\n"
    "X -> 2 X ; k=1\n"
    "X + Y -> 2 Y ; k=1\n"
    "Y -> 0 ; k=1\n";

inline constexpr std::string_view kCrn15 =
    "# Upstream layer: y1 = x1 + x2, y2 = x3 + x4.\n"
    "species X1 X2 X3 X4 Y1 Y2\n"
    "inputs X1 X2 X3 X4\n"
    "outputs Y1 Y2\n"
    "X1 -> X1 + Y1 ; k=1\n"
    "X2 -> X2 + Y1 ; k=1\n"
    "Y1 -> 0 ; k=1\n"
    "X3 -> X3 + Y2 ; k=1\n"
    "X4 -> X4 + Y2 ; k=1\n"
    "Y2 -> 0 ; k=1\n";

inline constexpr std::string_view kCrn16 =
    "# Downstream layer: Y1, Y2 catalyze the exchange Z1 <-> Z2.\n"
    "species Y1 Y2 Z1 Z2\n"
    "inputs Y1 Y2\n"
    "outputs Z1 Z2\n"
    "Y1 + Z1 -> Y1 + Z2 ; k=1\n"
    "Y2 + Z2 -> Y2 + Z1 ; k=1\n";

/// Variant of kCrn16 with the catalysts exchanged, so that Z_j tends to
/// y_j / (y1 + y2).
inline constexpr std::string_view kCrn16Swapped =
    "species Y1 Y2 Z1 Z2\n"
    "inputs Y1 Y2\n"
    "outputs Z1 Z2\n"
    "Y2 + Z1 -> Y2 + Z2 ; k=1\n"
    "Y1 + Z2 -> Y1 + Z1 ; k=1\n";

/// Initial values of the two-layer demo.
inline constexpr std::array<double, 4> kDemoX0{0.2, 0.3, 0.6, 0.1};
inline constexpr std::array<double, 2> kDemoY0{0.0, 0.0};
inline constexpr std::array<double, 2> kDemoZ0{0.5, 0.5};

}  // namespace crncomp::library
