// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerical paths.
#ifndef GPEI_TESTS_ORACLES_HPP
#define GPEI_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <functional>

namespace oracle {

inline long double pdf(long double z) {
    return std::exp(-0.5L * z * z) / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
}

/// Composite Simpson on [a, b] with n (even) panels, long double.
inline long double simpson(const std::function<long double(long double)>& f, long double a, long double b, int n) {
    const long double h = (b - a) / n;
    long double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0L : 2.0L);
    return s * h / 3.0L;
}

/// Lower-tail normal probability by quadrature of the density over [z - 40, z].
inline long double cdf(long double z) {
    return simpson([](long double x) { return pdf(x); }, z - 40.0L, z, 200000);
}

inline long double tau(long double z) { return z * cdf(z) + pdf(z); }

/// GP posterior by explicit dense inverse of K + noise I (no Cholesky).
struct DensePosterior {
    double mu;
    double var;
};

inline DensePosterior dense_posterior(const Eigen::MatrixXd& K, const Eigen::VectorXd& k, const Eigen::VectorXd& y,
                                      double noise_var) {
    Eigen::MatrixXd A = K;
    A.diagonal().array() += noise_var;
    const Eigen::MatrixXd Ainv = A.fullPivLu().inverse();
    return {k.dot(Ainv * y), 1.0 - k.dot(Ainv * k)};
}

}  // namespace oracle

#endif  // GPEI_TESTS_ORACLES_HPP
