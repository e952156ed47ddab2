#ifndef GPEI_KERNEL_HPP
#define GPEI_KERNEL_HPP

#include <Eigen/Dense>

#include <string>

namespace gpei {

using Point = Eigen::VectorXd;
/// One point per row.
using Points = Eigen::MatrixXd;

enum class KernelFamily { SquaredExponential, Matern12, Matern32, Matern52 };

/// Stationary, unit-variance covariance: k(x, x) = 1 and 0 < k <= 1.
struct KernelSpec {
    KernelFamily family = KernelFamily::SquaredExponential;
    double lengthscale = 0.2;

    void validate() const;

    /// Parses "se", "matern12", "matern32", "matern52" (also "matern-1/2" etc).
    static KernelFamily parse_family(const std::string& name);
    static std::string family_name(KernelFamily family);
    /// Smoothness nu of the Matérn families; infinity for SE.
    static double smoothness(KernelFamily family);
};

namespace kernel {

/// Covariance as a function of r = ||x - x'|| / lengthscale.
double eval_scaled_distance(KernelFamily family, double r);

double eval(const KernelSpec& spec, const Eigen::Ref<const Point>& x, const Eigen::Ref<const Point>& x2);

/// t x t Gram matrix over the rows of X. Symmetric by construction.
Eigen::MatrixXd gram(const KernelSpec& spec, const Points& X);

/// Vector of k(X_i, x).
Eigen::VectorXd cross(const KernelSpec& spec, const Points& X, const Eigen::Ref<const Point>& x);

/// t x n matrix of k(X_i, Q_j).
Eigen::MatrixXd cross_matrix(const KernelSpec& spec, const Points& X, const Points& Q);

}  // namespace kernel
}  // namespace gpei

#endif  // GPEI_KERNEL_HPP
