#pragma once
/**
 * @file   quadrature.hpp
 * @brief  Gauss-Legendre rules.
 */

#include <cstddef>
#include <vector>

namespace halfdisk
{
    struct QuadratureRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };

    /// n-point Gauss-Legendre rule on [-1, 1]. Nodes ascending.
    [[nodiscard]] QuadratureRule gauss_legendre (std::size_t n);

    /// Rule mapped affinely onto [a, b].
    [[nodiscard]] QuadratureRule gauss_legendre (std::size_t n, double a, double b);

} // namespace halfdisk
