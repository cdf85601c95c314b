#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "magshell/linalg.hpp"

namespace magshell {

/// Uniform node grid over the rectangle [0,lx] x [0,ly].
struct Grid2 {
    int n1 = 0, n2 = 0;
    double lx = 1.0, ly = 1.0;

    Grid2() = default;
    Grid2(int n1_, int n2_, double lx_, double ly_) : n1(n1_), n2(n2_), lx(lx_), ly(ly_) {
        if (n1 < 2 || n2 < 2) throw std::invalid_argument("Grid2: need at least 2 nodes per axis");
        if (lx <= 0 || ly <= 0) throw std::invalid_argument("Grid2: nonpositive extent");
    }

    double dx() const { return lx / (n1 - 1); }
    double dy() const { return ly / (n2 - 1); }
    std::size_t size() const { return std::size_t(n1) * n2; }
    std::size_t idx(int i, int j) const { return std::size_t(j) * n1 + i; }
    Vec2 node(int i, int j) const { return {i * dx(), j * dy()}; }

    /// Trapezoidal weight of node (i,j), including the cell area.
    double weight(int i, int j) const {
        double w = dx() * dy();
        if (i == 0 || i == n1 - 1) w *= 0.5;
        if (j == 0 || j == n2 - 1) w *= 0.5;
        return w;
    }
};

/// Uniform node grid over Omega = [0,lx] x [0,ly] x (-1/2, 1/2), inclusive endpoints.
struct Grid3 {
    int n1 = 0, n2 = 0, n3 = 0;
    double lx = 1.0, ly = 1.0;

    Grid3() = default;
    Grid3(int n1_, int n2_, int n3_, double lx_, double ly_)
        : n1(n1_), n2(n2_), n3(n3_), lx(lx_), ly(ly_) {
        if (n1 < 2 || n2 < 2 || n3 < 2) throw std::invalid_argument("Grid3: need at least 2 nodes per axis");
        if (lx <= 0 || ly <= 0) throw std::invalid_argument("Grid3: nonpositive extent");
    }

    double dx() const { return lx / (n1 - 1); }
    double dy() const { return ly / (n2 - 1); }
    double dz() const { return 1.0 / (n3 - 1); }
    std::size_t size() const { return std::size_t(n1) * n2 * n3; }
    std::size_t idx(int i, int j, int k) const { return (std::size_t(k) * n2 + j) * n1 + i; }
    Vec3 node(int i, int j, int k) const { return {i * dx(), j * dy(), -0.5 + k * dz()}; }
    Grid2 plane() const { return Grid2(n1, n2, lx, ly); }

    double weight(int i, int j, int k) const {
        double w = dx() * dy() * dz();
        if (i == 0 || i == n1 - 1) w *= 0.5;
        if (j == 0 || j == n2 - 1) w *= 0.5;
        if (k == 0 || k == n3 - 1) w *= 0.5;
        return w;
    }
};

/// Central difference along one axis of a nodal field, second-order one-sided at the ends.
/// Access is through a sampler f(i) with n nodes and spacing d.
template <class F>
double diff1d(const F& f, int i, int n, double d) {
    if (n < 3) throw std::invalid_argument("diff1d: degenerate grid");
    if (i == 0) return (-1.5 * f(0) + 2.0 * f(1) - 0.5 * f(2)) / d;
    if (i == n - 1) return (1.5 * f(n - 1) - 2.0 * f(n - 2) + 0.5 * f(n - 3)) / d;
    return (f(i + 1) - f(i - 1)) / (2.0 * d);
}

} // namespace magshell
