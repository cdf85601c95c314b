#pragma once

#include <functional>
#include <string>

#include "magshell/grid.hpp"
#include "magshell/linalg.hpp"

namespace magshell {

/// Profile function theta over the reference rectangle omega, together with its
/// first and second derivatives. Builtin profiles carry analytic derivatives;
/// sampled profiles fall back to finite differences of the nodal values.
class Midsurface {
public:
    /// Builtin profiles: "flat", "linear" (theta = a*x1), "sines"
    /// (theta = a*sin(pi x1/lx)*sin(pi x2/ly)), "bump" (radial bump centered in omega).
    static Midsurface builtin(const std::string& profile, double amplitude, double lx, double ly);

    /// Arbitrary profile from nodal samples; derivatives by central differences.
    static Midsurface sampled(const Grid2& grid, const std::vector<double>& theta_nodes);

    /// Fully analytic profile.
    static Midsurface analytic(double lx, double ly,
                               std::function<double(const Vec2&)> theta,
                               std::function<Vec2(const Vec2&)> grad,
                               std::function<Mat2(const Vec2&)> hess);

    double lx() const { return lx_; }
    double ly() const { return ly_; }
    bool contains(const Vec2& x, double tol = 1e-12) const {
        return x[0] >= -tol && x[0] <= lx_ + tol && x[1] >= -tol && x[1] <= ly_ + tol;
    }

    double theta(const Vec2& x) const { return theta_(x); }
    Vec2 grad_theta(const Vec2& x) const { return grad_(x); }
    Mat2 hess_theta(const Vec2& x) const { return hess_(x); }

private:
    Midsurface() = default;
    double lx_ = 1.0, ly_ = 1.0;
    std::function<double(const Vec2&)> theta_;
    std::function<Vec2(const Vec2&)> grad_;
    std::function<Mat2(const Vec2&)> hess_;
};

/// The shallow shell of thickness h over a midsurface, sampled on an Omega grid.
struct ShellFrame {
    Midsurface midsurface;
    double h = 0.1;
    Grid3 grid;

    ShellFrame(Midsurface ms, double h_, int n1, int n2, int n3)
        : midsurface(std::move(ms)), h(h_), grid(n1, n2, n3, midsurface.lx(), midsurface.ly()) {
        if (h <= 0.0) throw std::invalid_argument("ShellFrame: h must be positive");
    }
};

/// Unit normal of the graph of h*theta, oriented with positive third component.
Vec3 shell_normal(const Midsurface& ms, const Vec2& xp, double h);

/// Derivative of the normal with respect to the in-plane coordinates: columns
/// d(n_h)/dx1, d(n_h)/dx2 (3x2, returned as a 3x3 with zero last column).
Mat3 shell_normal_grad(const Midsurface& ms, const Vec2& xp, double h);

/// The chart x -> (x', h theta(x')) + h x3 n_h(x') on Omega.
Vec3 shell_map(const ShellFrame& frame, const Vec3& x);

/// Jacobian of Theta_h evaluated at z_h(x), i.e. the matrix expanded by
/// Id - h A(x') + O(h^2). Throws std::domain_error when x is outside Omega.
Mat3 shell_jacobian(const ShellFrame& frame, const Vec3& x);

/// The skew matrix A(x') of the first-order Jacobian expansion.
Mat3 shell_A(const Midsurface& ms, const Vec2& xp);

struct MetricFactors {
    Mat3 Mh;        // inverse Jacobian
    double kappa_h; // |det Jacobian|
};

/// Inverse Jacobian and volume factor. Throws std::domain_error when the
/// Jacobian is not invertible (h too large for this profile).
MetricFactors metric_factors(const ShellFrame& frame, const Vec3& x);

/// Largest h <= h_request with min-node det(jacobian) > 0.5, found by bisection
/// from the requested value. Detects the diffeomorphism threshold empirically.
double detect_h0(const Midsurface& ms, double h_request, int n1, int n2, int n3);

} // namespace magshell
