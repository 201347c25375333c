#include "mixkin/collision_boltzmann.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <thread>

#include "mixkin/errors.hpp"
#include "mixkin/parallel.hpp"

namespace mixkin {

namespace {

struct DepositEntry {
    int ox, oy, oz; // lattice offset of the deposit corner relative to v
    double coef;    // angular weight * sigma * cell_weight * corner weight
};

// Fixed-capacity open-addressing accumulator for per-offset coefficients.
class DepositTable {
public:
    DepositTable() : keys_(kSlots, kEmpty), coefs_(kSlots, 0.0) { touched_.reserve(kSlots); }

    void clear() {
        for (std::uint32_t s : touched_) {
            keys_[s] = kEmpty;
            coefs_[s] = 0.0;
        }
        touched_.clear();
    }

    void add(int ox, int oy, int oz, double c) {
        std::uint32_t key = pack(ox, oy, oz);
        std::uint32_t slot = (key * 2654435761u) & (kSlots - 1);
        while (true) {
            if (keys_[slot] == key) {
                coefs_[slot] += c;
                return;
            }
            if (keys_[slot] == kEmpty) {
                keys_[slot] = key;
                coefs_[slot] = c;
                touched_.push_back(slot);
                return;
            }
            slot = (slot + 1) & (kSlots - 1);
        }
    }

    void extract(std::vector<DepositEntry>& out) const {
        out.clear();
        for (std::uint32_t s : touched_) {
            auto [ox, oy, oz] = unpack(keys_[s]);
            if (coefs_[s] != 0.0) out.push_back({ox, oy, oz, coefs_[s]});
        }
        // Group by (ox, oy) so the sweep reuses row targets.
        std::sort(out.begin(), out.end(), [](const DepositEntry& a, const DepositEntry& b) {
            if (a.ox != b.ox) return a.ox < b.ox;
            if (a.oy != b.oy) return a.oy < b.oy;
            return a.oz < b.oz;
        });
    }

private:
    static constexpr std::uint32_t kSlots = 2048;
    static constexpr std::uint32_t kEmpty = 0xffffffffu;
    static constexpr int kBias = 512; // offsets fit comfortably in +-511

    static std::uint32_t pack(int ox, int oy, int oz) {
        return (static_cast<std::uint32_t>(ox + kBias) << 20) |
               (static_cast<std::uint32_t>(oy + kBias) << 10) |
               static_cast<std::uint32_t>(oz + kBias);
    }
    static std::array<int, 3> unpack(std::uint32_t key) {
        return {static_cast<int>(key >> 20) - kBias,
                static_cast<int>((key >> 10) & 0x3ff) - kBias,
                static_cast<int>(key & 0x3ff) - kBias};
    }

    std::vector<std::uint32_t> keys_;
    std::vector<double> coefs_;
    std::vector<std::uint32_t> touched_;
};

// Per-axis shifted maxima of plane maxima: bound on max_v f_i(v) f_j(v+d) per axis.
struct AxisBounds {
    std::array<std::vector<double>, 3> pair_max; // indexed by shift + (N-1)

    AxisBounds(std::span<const double> fi, std::span<const double> fj, int n) {
        std::array<std::vector<double>, 3> mi, mj;
        for (int a = 0; a < 3; ++a) {
            mi[a].assign(n, 0.0);
            mj[a].assign(n, 0.0);
        }
        std::size_t k = 0;
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy)
                for (int iz = 0; iz < n; ++iz, ++k) {
                    double a = fi[k], b = fj[k];
                    mi[0][ix] = std::max(mi[0][ix], a);
                    mi[1][iy] = std::max(mi[1][iy], a);
                    mi[2][iz] = std::max(mi[2][iz], a);
                    mj[0][ix] = std::max(mj[0][ix], b);
                    mj[1][iy] = std::max(mj[1][iy], b);
                    mj[2][iz] = std::max(mj[2][iz], b);
                }
        for (int a = 0; a < 3; ++a) {
            pair_max[a].assign(2 * n - 1, 0.0);
            for (int d = -(n - 1); d <= n - 1; ++d) {
                double m = 0.0;
                int lo = std::max(0, -d), hi = std::min(n - 1, n - 1 - d);
                for (int i = lo; i <= hi; ++i) m = std::max(m, mi[a][i] * mj[a][i + d]);
                pair_max[a][d + n - 1] = m;
            }
        }
    }

    double bound(int dx, int dy, int dz, int n) const {
        return std::min({pair_max[0][dx + n - 1], pair_max[1][dy + n - 1],
                         pair_max[2][dz + n - 1]});
    }
};

} // namespace

void boltzmann_operator_into(std::span<const double> f_i, std::span<const double> f_j,
                             const CollisionPair& pair, const KernelModel& kernel,
                             const VelocityGrid& grid, const AngularQuadrature& ang,
                             std::span<double> out, const BoltzmannOptions& opt) {
    const int n = grid.points_per_axis();
    const std::size_t nv = grid.node_count();
    if (f_i.size() != nv || f_j.size() != nv || out.size() != nv)
        throw ConfigError("boltzmann operator: distribution/grid size mismatch");
    const Vec3 dv = grid.spacing();
    const double h = grid.cell_weight();
    const double alpha = pair.alpha_ji; // deposit factor for the species-i output
    const std::size_t n_ang = ang.nodes.size();

    std::fill(out.begin(), out.end(), 0.0);

    AxisBounds bounds(f_i, f_j, n);
    double peak = bounds.bound(0, 0, 0, n);
    double sigma_ref = 0.0;
    {
        double gmax = std::hypot((n - 1) * dv.x, (n - 1) * dv.y, (n - 1) * dv.z);
        sigma_ref = std::max(kernel_eval(kernel, 0.0), kernel_eval(kernel, gmax));
    }
    const double tau = opt.skip_threshold > 0.0 ? opt.skip_threshold * sigma_ref * peak : 0.0;

    // Enumerate the lattice offsets that survive the product bound.
    struct Offset { int dx, dy, dz; };
    std::vector<Offset> offsets;
    offsets.reserve(static_cast<std::size_t>(2 * n - 1) * (2 * n - 1));
    for (int dx = -(n - 1); dx <= n - 1; ++dx)
        for (int dy = -(n - 1); dy <= n - 1; ++dy)
            for (int dz = -(n - 1); dz <= n - 1; ++dz) {
                if (dx == 0 && dy == 0 && dz == 0) continue; // v = w: bracket vanishes
                double gmod = std::hypot(dx * dv.x, dy * dv.y, dz * dv.z);
                if (kernel_eval(kernel, gmod) * bounds.bound(dx, dy, dz, n) <= tau) continue;
                offsets.push_back({dx, dy, dz});
            }

    const int nthreads = opt.threads > 0 ? opt.threads : max_threads();
    std::vector<std::vector<double>> partial(nthreads);

    // Ready-to-sweep deposit entry: valid v sub-box plus an additive index shift so the
    // inner loops carry no multiplies.
    struct SweepEntry {
        int vlx, vhx, vly, vhy, vlz, len;
        std::ptrdiff_t qshift; // (ox n + oy) n + oz + vlz
        double coef;
    };

    // Interleaved offset assignment: adjacent offsets have similar overlap volume, so
    // strided subsets balance the threads while keeping each thread's accumulation
    // order fixed (deterministic merge below).
    auto worker = [&](int tid) {
        std::vector<double>& q = partial[tid];
        q.assign(nv, 0.0);
        DepositTable table;
        std::vector<DepositEntry> entries;
        std::vector<SweepEntry> sweep;
        std::vector<double> pblock; // products f_i(v) f_j(v+d) over the overlap box

        for (std::size_t oi = tid; oi < offsets.size(); oi += nthreads) {
            const auto [dx, dy, dz] = offsets[oi];
            const double Dx = dx * dv.x, Dy = dy * dv.y, Dz = dz * dv.z;
            const double gmod = std::sqrt(Dx * Dx + Dy * Dy + Dz * Dz);
            const double sigma = kernel_eval(kernel, gmod);
            if (sigma == 0.0) continue;

            const int lox = std::max(0, -dx), hix = std::min(n - 1, n - 1 - dx);
            const int loy = std::max(0, -dy), hiy = std::min(n - 1, n - 1 - dy);
            const int loz = std::max(0, -dz), hiz = std::min(n - 1, n - 1 - dz);
            const int ovy = hiy - loy + 1, ovz = hiz - loz + 1;

            table.clear();
            for (std::size_t a = 0; a < n_ang; ++a) {
                const Vec3& om = ang.nodes[a];
                double tx = alpha * (Dx + gmod * om.x) / dv.x;
                double ty = alpha * (Dy + gmod * om.y) / dv.y;
                double tz = alpha * (Dz + gmod * om.z) / dv.z;
                int bx = static_cast<int>(std::floor(tx));
                int by = static_cast<int>(std::floor(ty));
                int bz = static_cast<int>(std::floor(tz));
                double fx = tx - bx, fy = ty - by, fz = tz - bz;
                double wgt = ang.weights[a] * sigma * h;
                const double cx[2] = {1.0 - fx, fx}, cy[2] = {1.0 - fy, fy},
                             cz[2] = {1.0 - fz, fz};
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        for (int k = 0; k < 2; ++k) {
                            double c = wgt * cx[i] * cy[j] * cz[k];
                            if (c != 0.0) table.add(bx + i, by + j, bz + k, c);
                        }
            }
            table.add(0, 0, 0, -ang.total_weight * sigma * h); // loss, same per-d bracket
            table.extract(entries);

            sweep.clear();
            for (const DepositEntry& e : entries) {
                SweepEntry s;
                s.vlx = std::max(lox, -e.ox);
                s.vhx = std::min(hix, n - 1 - e.ox);
                s.vly = std::max(loy, -e.oy);
                s.vhy = std::min(hiy, n - 1 - e.oy);
                s.vlz = std::max(loz, -e.oz);
                int vhz = std::min(hiz, n - 1 - e.oz);
                if (s.vlx > s.vhx || s.vly > s.vhy || s.vlz > vhz) continue;
                s.len = vhz - s.vlz + 1;
                s.qshift = (static_cast<std::ptrdiff_t>(e.ox) * n + e.oy) * n + e.oz + s.vlz;
                s.coef = e.coef;
                sweep.push_back(s);
            }

            pblock.resize(static_cast<std::size_t>(hix - lox + 1) * ovy * ovz);
            for (int ix = lox; ix <= hix; ++ix)
                for (int iy = loy; iy <= hiy; ++iy) {
                    const double* __restrict fr = f_i.data() + grid.index(ix, iy, loz);
                    const double* __restrict gr =
                        f_j.data() + grid.index(ix + dx, iy + dy, loz + dz);
                    double* __restrict pr =
                        pblock.data() +
                        (static_cast<std::size_t>(ix - lox) * ovy + (iy - loy)) * ovz;
                    for (int iz = 0; iz < ovz; ++iz) pr[iz] = fr[iz] * gr[iz];
                }

            // Rows outer, entries inner: the product row stays in L1 while every
            // deposit row streams through once.
            for (int ix = lox; ix <= hix; ++ix) {
                const std::ptrdiff_t rowq = (static_cast<std::ptrdiff_t>(ix) * n) * n;
                const double* prow_x =
                    pblock.data() + static_cast<std::size_t>(ix - lox) * ovy * ovz;
                for (int iy = loy; iy <= hiy; ++iy) {
                    const double* __restrict pr = prow_x + static_cast<std::size_t>(iy - loy) * ovz - loz;
                    const std::ptrdiff_t rowbase = rowq + static_cast<std::ptrdiff_t>(iy) * n;
                    for (const SweepEntry& s : sweep) {
                        if (ix < s.vlx || ix > s.vhx || iy < s.vly || iy > s.vhy) continue;
                        const double c = s.coef;
                        const double* __restrict p = pr + s.vlz;
                        double* __restrict qr = q.data() + rowbase + s.qshift;
                        for (int iz = 0; iz < s.len; ++iz) qr[iz] += c * p[iz];
                    }
                }
            }
        }
    };

    if (nthreads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads - 1);
        for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
        worker(0);
        for (auto& th : pool) th.join();
    }

    // Deterministic merge in thread-subset order.
    for (int t = 0; t < nthreads; ++t) {
        if (partial[t].empty()) continue;
        const double* src = partial[t].data();
        for (std::size_t k = 0; k < nv; ++k) out[k] += src[k];
    }
}

std::vector<double> boltzmann_operator(std::span<const double> f_i,
                                       std::span<const double> f_j,
                                       const CollisionPair& pair, const KernelModel& kernel,
                                       const VelocityGrid& grid, const AngularQuadrature& ang,
                                       const BoltzmannOptions& opt) {
    std::vector<double> q(grid.node_count());
    boltzmann_operator_into(f_i, f_j, pair, kernel, grid, ang, q, opt);
    return q;
}

void boltzmann_operator_cross_into(std::span<const double> f_i, const VelocityGrid& grid_i,
                                   std::span<const double> f_j, const VelocityGrid& grid_j,
                                   const CollisionPair& pair, const KernelModel& kernel,
                                   const AngularQuadrature& ang, std::span<double> out,
                                   const BoltzmannOptions& opt) {
    if (grid_i.same_lattice(grid_j)) {
        boltzmann_operator_into(f_i, f_j, pair, kernel, grid_i, ang, out, opt);
        return;
    }
    const std::size_t nvi = grid_i.node_count(), nvj = grid_j.node_count();
    if (f_i.size() != nvi || f_j.size() != nvj || out.size() != nvi)
        throw ConfigError("boltzmann operator: distribution/grid size mismatch");
    std::fill(out.begin(), out.end(), 0.0);

    const double hi = grid_i.cell_weight(), hj = grid_j.cell_weight();
    const double alpha = pair.alpha_ji;
    const Vec3 dvi = grid_i.spacing();
    const Vec3 vmin = grid_i.bounds_min();
    const int ni = grid_i.points_per_axis();
    double peak_i = 0.0, peak_j = 0.0;
    for (double v : f_i) peak_i = std::max(peak_i, v);
    for (double v : f_j) peak_j = std::max(peak_j, v);
    const double tau = opt.skip_threshold > 0.0 ? opt.skip_threshold * peak_i * peak_j : 0.0;

    const int nthreads = opt.threads > 0 ? opt.threads : max_threads();
    std::vector<std::vector<double>> partial(nthreads);

    parallel_chunks(nvi, [&](std::size_t beg, std::size_t end, int tid) {
        std::vector<double>& q = partial[tid];
        q.assign(nvi, 0.0);
        for (std::size_t kv = beg; kv < end; ++kv) {
            const double fiv = f_i[kv];
            const Vec3 v = grid_i.node(kv);
            for (std::size_t kw = 0; kw < nvj; ++kw) {
                const double prod = fiv * f_j[kw];
                if (std::fabs(prod) <= tau) continue;
                const Vec3 w = grid_j.node(kw);
                const Vec3 D = w - v;
                const double gmod = D.norm();
                const double sigma = kernel_eval(kernel, gmod);
                if (sigma == 0.0) continue;
                const double base_wgt = hj * sigma;
                for (std::size_t a = 0; a < ang.nodes.size(); ++a) {
                    const Vec3& om = ang.nodes[a];
                    double c0 = base_wgt * ang.weights[a] * prod;
                    // gain deposit at v' = v + alpha (D + |D| omega)
                    double px = v.x + alpha * (D.x + gmod * om.x);
                    double py = v.y + alpha * (D.y + gmod * om.y);
                    double pz = v.z + alpha * (D.z + gmod * om.z);
                    double tx = (px - vmin.x) / dvi.x - 0.5;
                    double ty = (py - vmin.y) / dvi.y - 0.5;
                    double tz = (pz - vmin.z) / dvi.z - 0.5;
                    int bx = static_cast<int>(std::floor(tx));
                    int by = static_cast<int>(std::floor(ty));
                    int bz = static_cast<int>(std::floor(tz));
                    double fx = tx - bx, fy = ty - by, fz = tz - bz;
                    const double cx[2] = {1.0 - fx, fx}, cy[2] = {1.0 - fy, fy},
                                 cz[2] = {1.0 - fz, fz};
                    for (int i = 0; i < 2; ++i) {
                        int jx = bx + i;
                        if (jx < 0 || jx >= ni) continue;
                        for (int j = 0; j < 2; ++j) {
                            int jy = by + j;
                            if (jy < 0 || jy >= ni) continue;
                            for (int k = 0; k < 2; ++k) {
                                int jz = bz + k;
                                if (jz < 0 || jz >= ni) continue;
                                q[grid_i.index(jx, jy, jz)] += c0 * cx[i] * cy[j] * cz[k];
                            }
                        }
                    }
                    q[kv] -= c0; // loss
                }
            }
        }
    }, nthreads);

    for (int t = 0; t < nthreads; ++t) {
        if (partial[t].empty()) continue;
        const double* src = partial[t].data();
        for (std::size_t k = 0; k < nvi; ++k) out[k] += src[k];
    }
}

double trilinear_gather(std::span<const double> f, const VelocityGrid& grid, const Vec3& p) {
    const int n = grid.points_per_axis();
    const Vec3 dv = grid.spacing();
    const Vec3 vmin = grid.bounds_min();
    double tx = (p.x - vmin.x) / dv.x - 0.5;
    double ty = (p.y - vmin.y) / dv.y - 0.5;
    double tz = (p.z - vmin.z) / dv.z - 0.5;
    int bx = static_cast<int>(std::floor(tx));
    int by = static_cast<int>(std::floor(ty));
    int bz = static_cast<int>(std::floor(tz));
    double fx = tx - bx, fy = ty - by, fz = tz - bz;
    const double cx[2] = {1.0 - fx, fx}, cy[2] = {1.0 - fy, fy}, cz[2] = {1.0 - fz, fz};
    double s = 0.0;
    for (int i = 0; i < 2; ++i) {
        int jx = bx + i;
        if (jx < 0 || jx >= n) continue;
        for (int j = 0; j < 2; ++j) {
            int jy = by + j;
            if (jy < 0 || jy >= n) continue;
            for (int k = 0; k < 2; ++k) {
                int jz = bz + k;
                if (jz < 0 || jz >= n) continue;
                s += cx[i] * cy[j] * cz[k] * f[grid.index(jx, jy, jz)];
            }
        }
    }
    return s;
}

double weak_form_moment(std::span<const double> f_i, std::span<const double> f_j,
                        const std::function<double(Vec3)>& phi, const CollisionPair& pair,
                        const KernelModel& kernel, const VelocityGrid& grid,
                        const AngularQuadrature& ang) {
    const std::size_t nv = grid.node_count();
    if (f_i.size() != nv || f_j.size() != nv)
        throw ConfigError("weak form: distribution/grid size mismatch");
    const double h = grid.cell_weight();
    const int nthreads = max_threads();
    std::vector<double> partial(nthreads, 0.0);

    parallel_chunks(nv, [&](std::size_t beg, std::size_t end, int tid) {
        double acc = 0.0;
        for (std::size_t kv = beg; kv < end; ++kv) {
            const Vec3 v = grid.node(kv);
            const double fiv = f_i[kv];
            const double phiv = phi(v);
            for (std::size_t kw = 0; kw < nv; ++kw) {
                const Vec3 w = grid.node(kw);
                const double gmod = (v - w).norm();
                const double sigma = kernel_eval(kernel, gmod);
                if (sigma == 0.0) continue;
                const double loss = fiv * f_j[kw];
                for (std::size_t a = 0; a < ang.nodes.size(); ++a) {
                    auto [vp, wp] = post_collision_velocities(v, w, ang.nodes[a], pair);
                    double gain = trilinear_gather(f_i, grid, vp) *
                                  trilinear_gather(f_j, grid, wp);
                    acc += ang.weights[a] * sigma * (phi(vp) - phiv) * (gain - loss);
                }
            }
        }
        partial[tid] = acc;
    }, nthreads);

    double total = 0.0;
    for (double p : partial) total += p;
    return -0.5 * total * h * h;
}

} // namespace mixkin
