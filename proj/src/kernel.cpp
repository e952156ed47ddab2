#include "gpei/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gpei {

void KernelSpec::validate() const {
    if (!(lengthscale > 0.0) || !std::isfinite(lengthscale)) {
        throw std::invalid_argument("KernelSpec: lengthscale must be positive and finite");
    }
}

KernelFamily KernelSpec::parse_family(const std::string& name) {
    std::string key;
    for (char c : name) {
        if (c != '-' && c != '_' && c != '/' && c != ' ') {
            key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (key == "se" || key == "squaredexponential" || key == "rbf") return KernelFamily::SquaredExponential;
    if (key == "matern12") return KernelFamily::Matern12;
    if (key == "matern32") return KernelFamily::Matern32;
    if (key == "matern52") return KernelFamily::Matern52;
    throw std::invalid_argument("unknown kernel family '" + name + "'");
}

std::string KernelSpec::family_name(KernelFamily family) {
    switch (family) {
        case KernelFamily::SquaredExponential: return "se";
        case KernelFamily::Matern12: return "matern12";
        case KernelFamily::Matern32: return "matern32";
        case KernelFamily::Matern52: return "matern52";
    }
    return "?";
}

double KernelSpec::smoothness(KernelFamily family) {
    switch (family) {
        case KernelFamily::Matern12: return 0.5;
        case KernelFamily::Matern32: return 1.5;
        case KernelFamily::Matern52: return 2.5;
        case KernelFamily::SquaredExponential: break;
    }
    return std::numeric_limits<double>::infinity();
}

namespace kernel {

double eval_scaled_distance(KernelFamily family, double r) {
    switch (family) {
        case KernelFamily::SquaredExponential:
            return std::exp(-0.5 * r * r);
        case KernelFamily::Matern12:
            return std::exp(-r);
        case KernelFamily::Matern32: {
            const double s = std::sqrt(3.0) * r;
            return (1.0 + s) * std::exp(-s);
        }
        case KernelFamily::Matern52: {
            const double s = std::sqrt(5.0) * r;
            return (1.0 + s + 5.0 * r * r / 3.0) * std::exp(-s);
        }
    }
    throw std::logic_error("unreachable kernel family");
}

double eval(const KernelSpec& spec, const Eigen::Ref<const Point>& x, const Eigen::Ref<const Point>& x2) {
    if (x.size() != x2.size()) {
        throw std::invalid_argument("kernel::eval: dimension mismatch");
    }
    const double r = (x - x2).norm() / spec.lengthscale;
    return eval_scaled_distance(spec.family, r);
}

Eigen::MatrixXd gram(const KernelSpec& spec, const Points& X) {
    const Eigen::Index t = X.rows();
    Eigen::MatrixXd K(t, t);
    for (Eigen::Index i = 0; i < t; ++i) {
        K(i, i) = 1.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double v = eval(spec, X.row(i).transpose(), X.row(j).transpose());
            K(i, j) = v;
            K(j, i) = v;
        }
    }
    return K;
}

Eigen::VectorXd cross(const KernelSpec& spec, const Points& X, const Eigen::Ref<const Point>& x) {
    if (X.rows() > 0 && X.cols() != x.size()) {
        throw std::invalid_argument("kernel::cross: dimension mismatch");
    }
    Eigen::VectorXd k(X.rows());
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        k(i) = eval(spec, X.row(i).transpose(), x);
    }
    return k;
}

Eigen::MatrixXd cross_matrix(const KernelSpec& spec, const Points& X, const Points& Q) {
    if (X.rows() > 0 && Q.rows() > 0 && X.cols() != Q.cols()) {
        throw std::invalid_argument("kernel::cross_matrix: dimension mismatch");
    }
    Eigen::MatrixXd K(X.rows(), Q.rows());
    for (Eigen::Index j = 0; j < Q.rows(); ++j) {
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            K(i, j) = eval(spec, X.row(i).transpose(), Q.row(j).transpose());
        }
    }
    return K;
}

}  // namespace kernel
}  // namespace gpei
