#pragma once

#include <array>

#include "magshell/linalg.hpp"

namespace magshell {

/// Parameters of the prototype magnetoelastic energy density
///   W(F, nu) = max(dist^2(F,SO(3)), dist^p(F,SO(3))) + coupling * (|F^T nu|^2 - 1)^2.
/// The first term is frame indifferent, vanishes exactly on SO(3) and dominates
/// both dist^2 and dist^p with constant 1; the coupling term injects genuine
/// nu-dependence while preserving frame indifference, since (RF)^T(R nu) = F^T nu.
struct MaterialModel {
    double p = 4.0;        // growth exponent, > 3
    double coupling = 1.0; // magnetoelastic coupling weight, >= 0
    double k = 100.0;      // penalization weight for W^k, > 0
    double delta = 1.0;    // radius of C^2 regularity around SO(3)

    void validate() const;
};

/// Closest rotation to F in Frobenius norm (polar factor, det +1 branch).
/// Newton iteration on X -> (X + X^-T)/2 for well-conditioned F, singular value
/// decomposition otherwise. Throws std::domain_error if the projection lands on
/// the improper branch (det of the polar factor <= 0).
Mat3 closest_rotation(const Mat3& F);

/// Frobenius distance of F to SO(3), via the singular values when F is singular
/// or has negative determinant.
double dist_SO3(const Mat3& F);

/// Prototype energy density. Rejects |nu| != 1 beyond 1e-8.
double density_W(const MaterialModel& model, const Mat3& F, const Vec3& nu);

/// Incompressible variant: equals density_W when |det F - 1| <= det_tol (1e-8),
/// +infinity otherwise.
double density_W_inc(const MaterialModel& model, const Mat3& F, const Vec3& nu);

/// Penalized variant W + (k/2)(det F - 1)^2.
double density_W_k(const MaterialModel& model, const Mat3& F, const Vec3& nu);

/// Tolerance of the incompressible branch.
inline constexpr double kDetTol = 1e-8;

/// The quadratic form Q3(G, nu) = C^nu G : G of the second-order expansion of W
/// at the identity, evaluated directly from the prototype:
///   Q3(G, nu) = 2 |sym G|^2 + 8 coupling (nu^T G nu)^2.
double q3(const MaterialModel& model, const Mat3& G, const Vec3& nu);

/// Symmetric bilinear form of q3 by polarization.
double q3_bilinear(const MaterialModel& model, const Mat3& G1, const Mat3& G2, const Vec3& nu);

/// Fourth-order tensor C^nu = d^2_F W(Id, nu), stored densely. Analytic for the
/// prototype; from_finite_differences builds the same object by central second
/// differences of density_W (test oracle).
class ElasticTensor {
public:
    ElasticTensor(const MaterialModel& model, const Vec3& nu);
    static ElasticTensor from_finite_differences(const MaterialModel& model, const Vec3& nu,
                                                 double step = 1e-4);

    const Vec3& nu() const { return nu_; }
    double entry(int a, int b, int c, int d) const { return c_[((a * 3 + b) * 3 + c) * 3 + d]; }
    double apply(const Mat3& G1, const Mat3& G2) const; // C G1 : G2
    double quadratic(const Mat3& G) const { return apply(G, G); }

    /// Eigenvalues of the tensor as a symmetric operator on 3x3 matrices (9-dim space).
    Eigen::VectorXd eigenvalues_full() const;
    /// Eigenvalues restricted to the 6-dim space of symmetric matrices.
    Eigen::VectorXd eigenvalues_symmetric() const;

private:
    ElasticTensor() = default;
    Vec3 nu_ = Vec3::UnitZ();
    std::array<double, 81> c_{};
};

} // namespace magshell
