#pragma once

#include <cmath>
#include <vector>

#include "platelab/errors.hpp"

namespace platelab {

struct QuadratureRule {
    std::vector<double> points;   // on [0, 1]
    std::vector<double> weights;  // sum to 1
};

/// Gauss-Legendre rule with `order` points, mapped to [0, 1].
/// Nodes by Newton iteration on Legendre polynomials with the Chebyshev guess.
inline QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw Error("gauss_legendre: order must be >= 1");
    QuadratureRule rule;
    rule.points.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.points[order - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[order - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace platelab
