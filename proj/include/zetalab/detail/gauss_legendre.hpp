#ifndef ZETALAB_DETAIL_GAUSS_LEGENDRE_HPP
#define ZETALAB_DETAIL_GAUSS_LEGENDRE_HPP

#include <array>

namespace zetalab::detail {

// 8-point Gauss-Legendre on [-1, 1].
inline constexpr std::array<double, 8> kGaussLegendre8Nodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGaussLegendre8Weights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace zetalab::detail

#endif  // ZETALAB_DETAIL_GAUSS_LEGENDRE_HPP
