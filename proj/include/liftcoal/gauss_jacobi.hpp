#ifndef LIFTCOAL_GAUSS_JACOBI_HPP
#define LIFTCOAL_GAUSS_JACOBI_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace liftcoal {

struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;
};

/// Gauss-Jacobi rule on [0,1] for the weight x^beta (1-x)^alpha, built by
/// the Golub-Welsch method from the three-term recurrence of the Jacobi
/// polynomials. Exact for polynomial factors of degree <= 2n-1.
inline QuadratureRule gauss_jacobi01(int n, double alpha, double beta) {
    if (n < 1) throw std::invalid_argument("gauss_jacobi01: n must be >= 1");
    if (alpha <= -1.0 || beta <= -1.0)
        throw std::invalid_argument("gauss_jacobi01: exponents must exceed -1");

    const double ab = alpha + beta;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double diag;
        if (k == 0) {
            diag = (beta - alpha) / (ab + 2.0);
        } else {
            double d = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
            diag = (beta * beta - alpha * alpha) / d;
        }
        J(k, k) = diag;
        if (k + 1 < n) {
            double b2;
            int m = k + 1;
            if (m == 1) {
                b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) /
                     ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
            } else {
                double c = 2.0 * m + ab;
                b2 = 4.0 * m * (m + alpha) * (m + beta) * (m + ab) /
                     (c * c * (c + 1.0) * (c - 1.0));
            }
            double off = std::sqrt(b2);
            J(k, k + 1) = off;
            J(k + 1, k) = off;
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_jacobi01: eigensolver failed");

    // mu0 = int_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
    double log_mu0 = (ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                     std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0);
    double mu0 = std::exp(log_mu0);

    QuadratureRule rule;
    rule.points.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double xi = es.eigenvalues()(i);            // node on [-1,1]
        double v0 = es.eigenvectors()(0, i);
        // Map to [0,1]: x = (1+xi)/2; the weight transforms with a factor
        // 2^{-(alpha+beta+1)} already absorbed into mu0's normalization below.
        rule.points[static_cast<std::size_t>(i)] = 0.5 * (1.0 + xi);
        rule.weights[static_cast<std::size_t>(i)] =
            mu0 * v0 * v0 / std::pow(2.0, ab + 1.0);
    }
    return rule;
}

}  // namespace liftcoal

#endif
