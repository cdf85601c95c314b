#include "magshell/maxwell.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

namespace magshell {

namespace {

using cplx = std::complex<double>;

struct FftBuffer {
    std::array<int, 3> n;
    fftw_complex* data = nullptr;

    explicit FftBuffer(const std::array<int, 3>& dims) : n(dims) {
        data = fftw_alloc_complex(count());
        if (!data) throw std::bad_alloc();
    }
    ~FftBuffer() { fftw_free(data); }
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;

    std::size_t count() const { return std::size_t(n[0]) * n[1] * n[2]; }
    cplx* c() { return reinterpret_cast<cplx*>(data); }
    void zero() { std::fill(c(), c() + count(), cplx(0.0, 0.0)); }

    void fft(int sign) {
        fftw_plan plan = fftw_plan_dft_3d(n[0], n[1], n[2], data, data, sign, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
};

// Angular frequency of index t on an axis with nt cells of size d.
double freq(int t, int nt, double d) {
    int f = (t <= nt / 2) ? t : t - nt;
    return 2.0 * M_PI * f / (nt * d);
}

bool is_nyquist(int t, int nt) { return nt % 2 == 0 && t == nt / 2; }

// Every axis is padded to `pad` times the largest support extent, so the
// periodic images of strongly anisotropic supports (thin films) stay as far
// away as those of isotropic ones. This keeps the factor >= pad per axis.
std::array<int, 3> padded_dims(const std::array<int, 3>& n, const Vec3& spacing, double pad) {
    if (!(pad >= 1.5)) throw std::invalid_argument("solve_stray: padding factor must be >= 1.5");
    double ext = 0.0;
    for (int a = 0; a < 3; ++a) ext = std::max(ext, n[a] * spacing[a]);
    std::array<int, 3> np;
    for (int a = 0; a < 3; ++a) {
        int m = int(std::ceil(pad * ext / spacing[a]));
        m = std::max(m, int(std::ceil(pad * n[a])));
        if (m % 2) ++m;
        np[a] = m;
    }
    return np;
}

} // namespace

void MagnetizationField::validate() const {
    if (values.size() != size() || mask.size() != size())
        throw std::invalid_argument("MagnetizationField: value/mask size mismatch");
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (mask[t]) {
            if (std::abs(values[t].norm() - 1.0) > 1e-9)
                throw std::invalid_argument("MagnetizationField: non-unit magnetization on mask");
        } else if (values[t].norm() != 0.0) {
            throw std::invalid_argument("MagnetizationField: nonzero magnetization off mask");
        }
    }
}

double MagnetizationField::source_norm_sq() const {
    double s = 0.0;
    for (std::size_t t = 0; t < values.size(); ++t)
        if (mask[t]) s += values[t].squaredNorm();
    return s * cell_volume();
}

MagnetizationField MagnetizationField::ball(double radius, const Vec3& direction,
                                            int cells_across) {
    if (radius <= 0.0 || cells_across < 4)
        throw std::invalid_argument("MagnetizationField::ball: bad parameters");
    MagnetizationField f;
    f.n = {cells_across, cells_across, cells_across};
    double box = 2.0 * radius * 1.05; // small margin around the sphere
    f.spacing = Vec3::Constant(box / cells_across);
    f.origin = Vec3::Constant(-box / 2.0);
    f.values.assign(f.size(), Vec3::Zero());
    f.mask.assign(f.size(), 0);
    Vec3 m0 = direction.normalized();
    for (int i = 0; i < f.n[0]; ++i)
        for (int j = 0; j < f.n[1]; ++j)
            for (int k = 0; k < f.n[2]; ++k) {
                Vec3 c = f.cell_center(i, j, k);
                int inside = 0;
                for (int a = -1; a <= 1; a += 2)
                    for (int b = -1; b <= 1; b += 2)
                        for (int d = -1; d <= 1; d += 2) {
                            Vec3 q =
                                c + 0.25 * Vec3(a * f.spacing[0], b * f.spacing[1], d * f.spacing[2]);
                            if (q.norm() <= radius) ++inside;
                        }
                if (inside >= 4) {
                    f.mask[f.idx(i, j, k)] = 1;
                    f.values[f.idx(i, j, k)] = m0;
                }
            }
    return f;
}

MagnetizationField MagnetizationField::slab(double lx, double ly, double h, const Vec3& direction,
                                            int inplane_cells, int thickness_cells) {
    if (lx <= 0 || ly <= 0 || h <= 0 || inplane_cells < 2 || thickness_cells < 1)
        throw std::invalid_argument("MagnetizationField::slab: bad parameters");
    MagnetizationField f;
    double dmax = std::max(lx, ly) / inplane_cells;
    int nx = std::max(2, int(std::lround(lx / dmax)));
    int ny = std::max(2, int(std::lround(ly / dmax)));
    f.n = {nx, ny, thickness_cells};
    f.spacing = Vec3(lx / nx, ly / ny, h / thickness_cells);
    f.origin = Vec3(0.0, 0.0, -h / 2.0);
    f.values.assign(f.size(), direction.normalized());
    f.mask.assign(f.size(), 1);
    return f;
}

StrayField solve_stray(const MagnetizationField& field, double pad) {
    field.validate();
    const auto np = padded_dims(field.n, field.spacing, pad);
    const double dV = field.cell_volume();

    StrayField out;
    out.n = np;
    out.spacing = field.spacing;
    // support box centered in the padded box
    std::array<int, 3> off;
    for (int a = 0; a < 3; ++a) off[a] = (np[a] - field.n[a]) / 2;
    out.origin = field.origin - Vec3(off[0] * field.spacing[0], off[1] * field.spacing[1],
                                     off[2] * field.spacing[2]);

    const std::size_t nc = std::size_t(np[0]) * np[1] * np[2];
    out.psi.assign(nc, 0.0);
    out.grad.assign(nc, Vec3::Zero());

    FftBuffer tmp(np), kdotm(np);
    kdotm.zero();

    // accumulate k . m_hat over the three components
    for (int comp = 0; comp < 3; ++comp) {
        tmp.zero();
        for (int i = 0; i < field.n[0]; ++i)
            for (int j = 0; j < field.n[1]; ++j)
                for (int k = 0; k < field.n[2]; ++k) {
                    const auto src = field.idx(i, j, k);
                    if (!field.mask[src]) continue;
                    std::size_t dst =
                        (std::size_t(i + off[0]) * np[1] + (j + off[1])) * np[2] + (k + off[2]);
                    tmp.c()[dst] = field.values[src][comp];
                }
        tmp.fft(FFTW_FORWARD);
        std::size_t t = 0;
        for (int i = 0; i < np[0]; ++i) {
            double k0 = freq(i, np[0], field.spacing[0]);
            for (int j = 0; j < np[1]; ++j) {
                double k1 = freq(j, np[1], field.spacing[1]);
                for (int k = 0; k < np[2]; ++k, ++t) {
                    double kv[3] = {k0, k1, freq(k, np[2], field.spacing[2])};
                    kdotm.c()[t] += kv[comp] * tmp.c()[t];
                }
            }
        }
    }

    const double inv_n = 1.0 / double(nc);

    // gradient components: g_hat_j = k_j (k . m_hat) / |k|^2. Nyquist planes are
    // dropped: the odd spectral derivative has no consistent sign there, and
    // keeping them breaks the Hermitian symmetry of the spectrum.
    for (int comp = 0; comp < 3; ++comp) {
        std::size_t t = 0;
        for (int i = 0; i < np[0]; ++i) {
            double k0 = freq(i, np[0], field.spacing[0]);
            for (int j = 0; j < np[1]; ++j) {
                double k1 = freq(j, np[1], field.spacing[1]);
                for (int k = 0; k < np[2]; ++k, ++t) {
                    double kv[3] = {k0, k1, freq(k, np[2], field.spacing[2])};
                    double k2 = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
                    bool nyq = is_nyquist(i, np[0]) || is_nyquist(j, np[1]) || is_nyquist(k, np[2]);
                    tmp.c()[t] = (k2 == 0.0 || nyq) ? cplx(0.0, 0.0)
                                                    : kdotm.c()[t] * (kv[comp] / k2) * inv_n;
                }
            }
        }
        tmp.fft(FFTW_BACKWARD);
        for (std::size_t s = 0; s < nc; ++s) out.grad[s][comp] = tmp.c()[s].real();
    }

    // potential: psi_hat = -i (k . m_hat) / |k|^2, Nyquist planes dropped, zero mean
    {
        std::size_t t = 0;
        for (int i = 0; i < np[0]; ++i) {
            double k0 = freq(i, np[0], field.spacing[0]);
            for (int j = 0; j < np[1]; ++j) {
                double k1 = freq(j, np[1], field.spacing[1]);
                for (int k = 0; k < np[2]; ++k, ++t) {
                    double kv[3] = {k0, k1, freq(k, np[2], field.spacing[2])};
                    double k2 = kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2];
                    bool nyq = is_nyquist(i, np[0]) || is_nyquist(j, np[1]) || is_nyquist(k, np[2]);
                    tmp.c()[t] = (k2 == 0.0 || nyq) ? cplx(0.0, 0.0)
                                                    : cplx(0.0, -1.0) * kdotm.c()[t] / k2 * inv_n;
                }
            }
        }
        tmp.fft(FFTW_BACKWARD);
        for (std::size_t s = 0; s < nc; ++s) out.psi[s] = tmp.c()[s].real();
    }

    double e = 0.0;
    for (const auto& g : out.grad) e += g.squaredNorm();
    out.energy = 0.5 * e * dV;

    // stability (structural for the spectral projector; asserted on every solve)
    double src = field.source_norm_sq();
    if (2.0 * out.energy > src * (1.0 + 1e-10) + 1e-14)
        throw std::runtime_error("solve_stray: stability bound violated");
    return out;
}

double mag_energy_rescaled(const MagnetizationField& field, double h, double pad) {
    if (!(h > 0.0)) throw std::invalid_argument("mag_energy_rescaled: h must be positive");
    return solve_stray(field, pad).energy / h;
}

namespace {

// chi m sampled on the padded grid of `stray`.
Vec3 source_at(const MagnetizationField& field, const StrayField& stray, int i, int j, int k) {
    Vec3 c = stray.origin + Vec3((i + 0.5) * stray.spacing[0], (j + 0.5) * stray.spacing[1],
                                 (k + 0.5) * stray.spacing[2]);
    Vec3 rel = c - field.origin;
    int fi = int(std::floor(rel[0] / field.spacing[0]));
    int fj = int(std::floor(rel[1] / field.spacing[1]));
    int fk = int(std::floor(rel[2] / field.spacing[2]));
    if (fi < 0 || fj < 0 || fk < 0 || fi >= field.n[0] || fj >= field.n[1] || fk >= field.n[2])
        return Vec3::Zero();
    auto t = field.idx(fi, fj, fk);
    return field.mask[t] ? field.values[t] : Vec3::Zero();
}

std::vector<Vec3> spectral_gradient(const StrayField& stray, const std::vector<double>& phi) {
    const auto np = stray.n;
    const std::size_t nc = std::size_t(np[0]) * np[1] * np[2];
    if (phi.size() != nc) throw std::invalid_argument("spectral_gradient: size mismatch");
    std::vector<Vec3> out(nc, Vec3::Zero());
    FftBuffer hat(np), tmp(np);
    for (std::size_t t = 0; t < nc; ++t) hat.c()[t] = phi[t];
    hat.fft(FFTW_FORWARD);
    const double inv_n = 1.0 / double(nc);
    for (int comp = 0; comp < 3; ++comp) {
        std::size_t t = 0;
        for (int i = 0; i < np[0]; ++i) {
            double k0 = freq(i, np[0], stray.spacing[0]);
            for (int j = 0; j < np[1]; ++j) {
                double k1 = freq(j, np[1], stray.spacing[1]);
                for (int k = 0; k < np[2]; ++k, ++t) {
                    double kv[3] = {k0, k1, freq(k, np[2], stray.spacing[2])};
                    bool nyq = is_nyquist(i, np[0]) || is_nyquist(j, np[1]) || is_nyquist(k, np[2]);
                    tmp.c()[t] = nyq ? cplx(0.0, 0.0) : cplx(0.0, kv[comp]) * hat.c()[t] * inv_n;
                }
            }
        }
        tmp.fft(FFTW_BACKWARD);
        for (std::size_t s = 0; s < nc; ++s) out[s][comp] = tmp.c()[s].real();
    }
    return out;
}

} // namespace

double weak_form_residual(const MagnetizationField& field, const StrayField& stray, int trials,
                          unsigned seed) {
    const std::size_t nc = std::size_t(stray.n[0]) * stray.n[1] * stray.n[2];
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    const double dV = stray.cell_volume();
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> phi(nc);
        for (auto& v : phi) v = g(rng);
        auto gphi = spectral_gradient(stray, phi);
        double lhs = 0.0, scale = 0.0;
        std::size_t s = 0;
        for (int i = 0; i < stray.n[0]; ++i)
            for (int j = 0; j < stray.n[1]; ++j)
                for (int k = 0; k < stray.n[2]; ++k, ++s) {
                    Vec3 diff = stray.grad[s] - source_at(field, stray, i, j, k);
                    lhs += diff.dot(gphi[s]);
                    scale += gphi[s].squaredNorm();
                }
        double rel = std::abs(lhs) * dV / (std::sqrt(scale * dV) + 1e-300);
        worst = std::max(worst, rel);
    }
    return worst;
}

double variational_slack(const MagnetizationField& field, const StrayField& stray,
                         const std::vector<double>& trial_potential) {
    const double dV = stray.cell_volume();
    auto gphi = spectral_gradient(stray, trial_potential);
    double d_trial = 0.0, d_opt = 0.0;
    std::size_t s = 0;
    for (int i = 0; i < stray.n[0]; ++i)
        for (int j = 0; j < stray.n[1]; ++j)
            for (int k = 0; k < stray.n[2]; ++k, ++s) {
                Vec3 m = source_at(field, stray, i, j, k);
                d_trial += (gphi[s] - m).squaredNorm();
                d_opt += (stray.grad[s] - m).squaredNorm();
            }
    return (d_trial - d_opt) * dV;
}

} // namespace magshell
