#include "magshell/geometry.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace magshell {

Midsurface Midsurface::builtin(const std::string& profile, double amplitude, double lx, double ly) {
    Midsurface ms;
    ms.lx_ = lx;
    ms.ly_ = ly;
    const double a = amplitude;
    if (profile == "flat") {
        ms.theta_ = [](const Vec2&) { return 0.0; };
        ms.grad_ = [](const Vec2&) { return Vec2::Zero().eval(); };
        ms.hess_ = [](const Vec2&) { return Mat2::Zero().eval(); };
    } else if (profile == "linear") {
        ms.theta_ = [a](const Vec2& x) { return a * x[0]; };
        ms.grad_ = [a](const Vec2&) { return Vec2(a, 0.0); };
        ms.hess_ = [](const Vec2&) { return Mat2::Zero().eval(); };
    } else if (profile == "sines") {
        const double k1 = M_PI / lx, k2 = M_PI / ly;
        ms.theta_ = [=](const Vec2& x) { return a * std::sin(k1 * x[0]) * std::sin(k2 * x[1]); };
        ms.grad_ = [=](const Vec2& x) {
            return Vec2(a * k1 * std::cos(k1 * x[0]) * std::sin(k2 * x[1]),
                        a * k2 * std::sin(k1 * x[0]) * std::cos(k2 * x[1]));
        };
        ms.hess_ = [=](const Vec2& x) {
            Mat2 H;
            H(0, 0) = -a * k1 * k1 * std::sin(k1 * x[0]) * std::sin(k2 * x[1]);
            H(1, 1) = -a * k2 * k2 * std::sin(k1 * x[0]) * std::sin(k2 * x[1]);
            H(0, 1) = H(1, 0) = a * k1 * k2 * std::cos(k1 * x[0]) * std::cos(k2 * x[1]);
            return H;
        };
    } else if (profile == "bump") {
        // smooth radial bump a*exp(-r^2/(2 s^2)) centered in omega, s = min(lx,ly)/4
        const double cx = lx / 2, cy = ly / 2;
        const double s2 = std::pow(std::min(lx, ly) / 4.0, 2);
        ms.theta_ = [=](const Vec2& x) {
            double r2 = (x[0] - cx) * (x[0] - cx) + (x[1] - cy) * (x[1] - cy);
            return a * std::exp(-r2 / (2 * s2));
        };
        ms.grad_ = [=](const Vec2& x) {
            double r2 = (x[0] - cx) * (x[0] - cx) + (x[1] - cy) * (x[1] - cy);
            double e = a * std::exp(-r2 / (2 * s2));
            return Vec2(-e * (x[0] - cx) / s2, -e * (x[1] - cy) / s2);
        };
        ms.hess_ = [=](const Vec2& x) {
            double u = x[0] - cx, v = x[1] - cy;
            double e = a * std::exp(-(u * u + v * v) / (2 * s2));
            Mat2 H;
            H(0, 0) = e * (u * u / (s2 * s2) - 1.0 / s2);
            H(1, 1) = e * (v * v / (s2 * s2) - 1.0 / s2);
            H(0, 1) = H(1, 0) = e * u * v / (s2 * s2);
            return H;
        };
    } else {
        throw std::invalid_argument("Midsurface: unknown profile '" + profile + "'");
    }
    return ms;
}

Midsurface Midsurface::sampled(const Grid2& grid, const std::vector<double>& theta_nodes) {
    if (theta_nodes.size() != grid.size())
        throw std::invalid_argument("Midsurface::sampled: node count mismatch");
    auto data = std::make_shared<std::vector<double>>(theta_nodes);
    auto g = grid;

    auto clampi = [g](int i) { return std::max(0, std::min(g.n1 - 1, i)); };
    auto clampj = [g](int j) { return std::max(0, std::min(g.n2 - 1, j)); };
    auto nearest = [g, clampi, clampj](const Vec2& x) {
        int i = clampi(int(std::lround(x[0] / g.dx())));
        int j = clampj(int(std::lround(x[1] / g.dy())));
        return std::pair<int, int>(i, j);
    };

    Midsurface ms;
    ms.lx_ = grid.lx;
    ms.ly_ = grid.ly;
    ms.theta_ = [data, g, nearest](const Vec2& x) {
        auto [i, j] = nearest(x);
        return (*data)[g.idx(i, j)];
    };
    ms.grad_ = [data, g, nearest](const Vec2& x) {
        auto [i, j] = nearest(x);
        auto fx = [&](int ii) { return (*data)[g.idx(ii, j)]; };
        auto fy = [&](int jj) { return (*data)[g.idx(i, jj)]; };
        return Vec2(diff1d(fx, i, g.n1, g.dx()), diff1d(fy, j, g.n2, g.dy()));
    };
    ms.hess_ = [data, g, nearest](const Vec2& x) {
        auto [i, j] = nearest(x);
        auto f = [&](int ii, int jj) { return (*data)[g.idx(ii, jj)]; };
        // second differences, one-sided at the boundary
        auto d2 = [](auto f1, int m, int n, double d) {
            if (m == 0) return (f1(0) - 2 * f1(1) + f1(2)) / (d * d);
            if (m == n - 1) return (f1(n - 1) - 2 * f1(n - 2) + f1(n - 3)) / (d * d);
            return (f1(m + 1) - 2 * f1(m) + f1(m - 1)) / (d * d);
        };
        Mat2 H;
        auto fx = [&](int ii) { return f(ii, j); };
        auto fy = [&](int jj) { return f(i, jj); };
        H(0, 0) = d2(fx, i, g.n1, g.dx());
        H(1, 1) = d2(fy, j, g.n2, g.dy());
        auto dtheta_dy = [&](int ii) {
            auto col = [&](int jj) { return f(ii, jj); };
            return diff1d(col, j, g.n2, g.dy());
        };
        H(0, 1) = H(1, 0) = diff1d(dtheta_dy, i, g.n1, g.dx());
        return H;
    };
    return ms;
}

Midsurface Midsurface::analytic(double lx, double ly,
                                std::function<double(const Vec2&)> theta,
                                std::function<Vec2(const Vec2&)> grad,
                                std::function<Mat2(const Vec2&)> hess) {
    Midsurface ms;
    ms.lx_ = lx;
    ms.ly_ = ly;
    ms.theta_ = std::move(theta);
    ms.grad_ = std::move(grad);
    ms.hess_ = std::move(hess);
    return ms;
}

Vec3 shell_normal(const Midsurface& ms, const Vec2& xp, double h) {
    Vec2 w = ms.grad_theta(xp);
    Vec3 n(-h * w[0], -h * w[1], 1.0);
    return n / n.norm();
}

Mat3 shell_normal_grad(const Midsurface& ms, const Vec2& xp, double h) {
    Vec2 w = ms.grad_theta(xp);
    Mat2 H = ms.hess_theta(xp);
    double c = 1.0 / std::sqrt(1.0 + h * h * w.squaredNorm());
    Vec3 ntil(-h * w[0], -h * w[1], 1.0);
    Mat3 out = Mat3::Zero();
    for (int i = 0; i < 2; ++i) {
        Vec2 Hi = H.col(i);
        double dc = -h * h * w.dot(Hi) * c * c * c;
        Vec3 dntil(-h * Hi[0], -h * Hi[1], 0.0);
        out.col(i) = dc * ntil + c * dntil;
    }
    return out;
}

Vec3 shell_map(const ShellFrame& frame, const Vec3& x) {
    const Vec2 xp(x[0], x[1]);
    if (!frame.midsurface.contains(xp) || x[2] < -0.5 - 1e-12 || x[2] > 0.5 + 1e-12)
        throw std::domain_error("shell_map: point outside Omega");
    const double h = frame.h;
    Vec3 n = shell_normal(frame.midsurface, xp, h);
    return Vec3(xp[0], xp[1], h * frame.midsurface.theta(xp)) + h * x[2] * n;
}

Mat3 shell_A(const Midsurface& ms, const Vec2& xp) {
    Vec2 w = ms.grad_theta(xp);
    Mat3 A = Mat3::Zero();
    A(0, 2) = w[0];
    A(1, 2) = w[1];
    A(2, 0) = -w[0];
    A(2, 1) = -w[1];
    return A;
}

Mat3 shell_jacobian(const ShellFrame& frame, const Vec3& x) {
    const Vec2 xp(x[0], x[1]);
    if (!frame.midsurface.contains(xp) || x[2] < -0.5 - 1e-12 || x[2] > 0.5 + 1e-12)
        throw std::domain_error("shell_jacobian: point outside Omega");
    const double h = frame.h;
    const double s = h * x[2]; // coordinate along the normal of the plate of thickness h
    Vec2 w = frame.midsurface.grad_theta(xp);
    Mat3 dn = shell_normal_grad(frame.midsurface, xp, h);
    Mat3 J;
    J.col(0) = Vec3(1.0, 0.0, h * w[0]) + s * dn.col(0);
    J.col(1) = Vec3(0.0, 1.0, h * w[1]) + s * dn.col(1);
    J.col(2) = shell_normal(frame.midsurface, xp, h);
    return J;
}

MetricFactors metric_factors(const ShellFrame& frame, const Vec3& x) {
    Mat3 J = shell_jacobian(frame, x);
    double det = J.determinant();
    if (!(std::abs(det) > 1e-12))
        throw std::domain_error("metric_factors: jacobian not invertible (h too large)");
    MetricFactors mf;
    mf.Mh = J.inverse();
    mf.kappa_h = std::abs(det);
    return mf;
}

double detect_h0(const Midsurface& ms, double h_request, int n1, int n2, int n3) {
    auto min_det = [&](double h) {
        ShellFrame f(ms, h, n1, n2, n3);
        double m = std::numeric_limits<double>::max();
        for (int k = 0; k < n3; ++k)
            for (int j = 0; j < n2; ++j)
                for (int i = 0; i < n1; ++i)
                    m = std::min(m, shell_jacobian(f, f.grid.node(i, j, k)).determinant());
        return m;
    };
    double h = h_request;
    for (int it = 0; it < 60 && !(min_det(h) > 0.5); ++it) h *= 0.5;
    if (!(min_det(h) > 0.5)) throw std::domain_error("detect_h0: no admissible thickness found");
    return h;
}

} // namespace magshell
