#include "magshell/material.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace magshell {

void MaterialModel::validate() const {
    if (!(p > 3.0)) throw std::invalid_argument("MaterialModel: growth exponent p must exceed 3");
    if (!(coupling >= 0.0) || !std::isfinite(coupling))
        throw std::invalid_argument("MaterialModel: coupling must be finite and nonnegative");
    if (!(k > 0.0) || !std::isfinite(k))
        throw std::invalid_argument("MaterialModel: penalization weight k must be positive");
    if (!(delta > 0.0)) throw std::invalid_argument("MaterialModel: delta must be positive");
}

namespace {

void check_unit(const Vec3& nu) {
    if (std::abs(nu.norm() - 1.0) > 1e-8)
        throw std::invalid_argument("material: magnetization direction must be a unit vector");
}

// Closest rotation via SVD; handles singular and negative-determinant input.
Mat3 rotation_by_svd(const Mat3& F, double* dist_out) {
    Eigen::JacobiSVD<Mat3> svd(F, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 U = svd.matrixU(), V = svd.matrixV();
    Vec3 s = svd.singularValues(); // sorted descending
    double sign = (U * V.transpose()).determinant(); // +1 or -1
    Vec3 d(1.0, 1.0, sign);
    if (dist_out) {
        double q = 0.0;
        for (int i = 0; i < 3; ++i) q += (s[i] - d[i]) * (s[i] - d[i]);
        *dist_out = std::sqrt(q);
    }
    return U * d.asDiagonal() * V.transpose();
}

} // namespace

Mat3 closest_rotation(const Mat3& F) {
    double det = F.determinant();
    if (det > 0.1) {
        // Newton iteration for the orthogonal polar factor
        Mat3 X = F;
        for (int it = 0; it < 20; ++it) {
            Mat3 Xn = 0.5 * (X + X.inverse().transpose());
            double change = (Xn - X).norm();
            X = Xn;
            if (change < 1e-12) break;
        }
        if ((X.transpose() * X - Mat3::Identity()).norm() < 1e-9 && X.determinant() > 0.0) return X;
        // fall through to SVD on slow convergence
    }
    double d = 0.0;
    Mat3 R = rotation_by_svd(F, &d);
    if (R.determinant() <= 0.0)
        throw std::domain_error("closest_rotation: projection landed on the improper branch");
    return R;
}

double dist_SO3(const Mat3& F) {
    double det = F.determinant();
    if (det > 0.1) {
        Mat3 R = closest_rotation(F);
        return (F - R).norm();
    }
    double d = 0.0;
    rotation_by_svd(F, &d);
    return d;
}

double density_W(const MaterialModel& model, const Mat3& F, const Vec3& nu) {
    check_unit(nu);
    double d = dist_SO3(F);
    double elastic = std::max(d * d, std::pow(d, model.p));
    // |F^T nu|^2 - 1 in factored form, exact at F = Id
    Vec3 n = nu.normalized();
    Vec3 t = F.transpose() * n;
    double m2 = (t - n).dot(t + n);
    return elastic + model.coupling * m2 * m2;
}

double density_W_inc(const MaterialModel& model, const Mat3& F, const Vec3& nu) {
    if (std::abs(F.determinant() - 1.0) > kDetTol)
        return std::numeric_limits<double>::infinity();
    return density_W(model, F, nu);
}

double density_W_k(const MaterialModel& model, const Mat3& F, const Vec3& nu) {
    double d = F.determinant() - 1.0;
    return density_W(model, F, nu) + 0.5 * model.k * d * d;
}

double q3(const MaterialModel& model, const Mat3& G, const Vec3& nu) {
    check_unit(nu);
    double s = sym(G).squaredNorm();
    double t = nu.dot(G * nu);
    return 2.0 * s + 8.0 * model.coupling * t * t;
}

double q3_bilinear(const MaterialModel& model, const Mat3& G1, const Mat3& G2, const Vec3& nu) {
    return 0.25 * (q3(model, G1 + G2, nu) - q3(model, G1 - G2, nu));
}

ElasticTensor::ElasticTensor(const MaterialModel& model, const Vec3& nu) {
    check_unit(nu);
    nu_ = nu;
    // C_abcd = delta_ac delta_bd + delta_ad delta_bc + 8 coupling nu_a nu_b nu_c nu_d
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    double v = 0.0;
                    if (a == c && b == d) v += 1.0;
                    if (a == d && b == c) v += 1.0;
                    v += 8.0 * model.coupling * nu[a] * nu[b] * nu[c] * nu[d];
                    c_[((a * 3 + b) * 3 + c) * 3 + d] = v;
                }
}

ElasticTensor ElasticTensor::from_finite_differences(const MaterialModel& model, const Vec3& nu,
                                                     double step) {
    check_unit(nu);
    ElasticTensor t;
    t.nu_ = nu;
    auto basis = [](int a, int b) {
        Mat3 E = Mat3::Zero();
        E(a, b) = 1.0;
        return E;
    };
    const Mat3 I = Mat3::Identity();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    Mat3 E1 = basis(a, b), E2 = basis(c, d);
                    double v;
                    if (a == c && b == d) {
                        v = (density_W(model, I + step * E1, nu) - 2.0 * density_W(model, I, nu) +
                             density_W(model, I - step * E1, nu)) /
                            (step * step);
                    } else {
                        v = (density_W(model, I + step * (E1 + E2), nu) -
                             density_W(model, I + step * (E1 - E2), nu) -
                             density_W(model, I + step * (E2 - E1), nu) +
                             density_W(model, I - step * (E1 + E2), nu)) /
                            (4.0 * step * step);
                    }
                    t.c_[((a * 3 + b) * 3 + c) * 3 + d] = v;
                }
    return t;
}

double ElasticTensor::apply(const Mat3& G1, const Mat3& G2) const {
    double s = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    s += entry(a, b, c, d) * G1(a, b) * G2(c, d);
    return s;
}

Eigen::VectorXd ElasticTensor::eigenvalues_full() const {
    Eigen::MatrixXd M(9, 9);
    for (int ab = 0; ab < 9; ++ab)
        for (int cd = 0; cd < 9; ++cd) M(ab, cd) = c_[ab * 9 + cd];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
    return es.eigenvalues();
}

Eigen::VectorXd ElasticTensor::eigenvalues_symmetric() const {
    // orthonormal basis of symmetric 3x3 matrices
    std::array<Mat3, 6> basis;
    int n = 0;
    for (int a = 0; a < 3; ++a) {
        Mat3 E = Mat3::Zero();
        E(a, a) = 1.0;
        basis[n++] = E;
    }
    const double r = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            Mat3 E = Mat3::Zero();
            E(a, b) = E(b, a) = r;
            basis[n++] = E;
        }
    Eigen::MatrixXd M(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) M(i, j) = apply(basis[i], basis[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()));
    return es.eigenvalues();
}

} // namespace magshell
