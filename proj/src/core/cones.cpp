#include "core/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace nsconic {

ConeSpec ConeSpec::orthant(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "orthant dimension must be >= 1");
    ConeSpec c;
    c.blocks_.push_back({ConeKind::NonnegOrthant, n, 0.0});
    c.dim_ = n;
    c.nu_ = n;
    return c;
}

ConeSpec ConeSpec::exponential() {
    ConeSpec c;
    c.blocks_.push_back({ConeKind::Exponential, 3, 0.0});
    c.dim_ = 3;
    c.nu_ = 3.0;
    return c;
}

ConeSpec ConeSpec::power(double a) {
    if (!(a > 0.0 && a < 1.0))
        throw Error(ErrorCode::UnknownConeType, "power cone exponent must lie in (0,1)");
    ConeSpec c;
    c.blocks_.push_back({ConeKind::Power, 3, a});
    c.dim_ = 3;
    c.nu_ = 3.0;
    return c;
}

ConeSpec &ConeSpec::append(const ConeSpec &other) {
    for (const ConeBlock &b : other.blocks_) blocks_.push_back(b);
    dim_ += other.dim_;
    nu_ += other.nu_;
    return *this;
}

namespace {

double block_margin(const ConeBlock &b, VecView x) {
    switch (b.kind) {
    case ConeKind::NonnegOrthant: {
        double m = x[0];
        for (int i = 1; i < b.dim; ++i) m = std::min(m, x[i]);
        return m;
    }
    case ConeKind::Exponential: {
        if (x[0] <= 0.0 || x[1] <= 0.0) return std::min(x[0], x[1]);
        return std::min({x[0], x[1], x[1] * std::log(x[0] / x[1]) - x[2]});
    }
    case ConeKind::Power: {
        if (x[0] <= 0.0 || x[1] <= 0.0) return std::min(x[0], x[1]);
        const double a = b.exponent;
        const double xi = std::pow(x[0], 2.0 * a) * std::pow(x[1], 2.0 * (1.0 - a));
        return std::min({x[0], x[1], xi - x[2] * x[2]});
    }
    }
    return -1.0;
}

double block_dual_margin(const ConeBlock &b, VecView s) {
    switch (b.kind) {
    case ConeKind::NonnegOrthant: {
        double m = s[0];
        for (int i = 1; i < b.dim; ++i) m = std::min(m, s[i]);
        return m;
    }
    case ConeKind::Exponential: {
        // {s : s1 >= -s3 e^{s2/s3 - 1}, s3 < 0} with the s3 = 0 face on the
        // boundary.
        if (s[2] >= 0.0) return std::min({s[0], s[1], -s[2]});
        return std::min({s[0], -s[2], s[0] - (-s[2]) * std::exp(s[1] / s[2] - 1.0)});
    }
    case ConeKind::Power: {
        if (s[0] <= 0.0 || s[1] <= 0.0) return std::min(s[0], s[1]);
        const double a = b.exponent;
        const double xi =
            std::pow(s[0] / a, 2.0 * a) * std::pow(s[1] / (1.0 - a), 2.0 * (1.0 - a));
        return std::min({s[0], s[1], xi - s[2] * s[2]});
    }
    }
    return -1.0;
}

// F, F', F'' of one block written into the product-level output.
void block_barrier(const ConeBlock &b, VecView x, int offset, BarrierEval &out) {
    switch (b.kind) {
    case ConeKind::NonnegOrthant: {
        for (int i = 0; i < b.dim; ++i) {
            const double xi = x[i];
            out.value -= std::log(xi);
            out.gradient[offset + i] = -1.0 / xi;
            out.hessian.at(offset + i, offset + i) = 1.0 / (xi * xi);
        }
        return;
    }
    case ConeKind::Exponential: {
        // F(x) = -log(x2 log(x1/x2) - x3) - log x1 - log x2
        const double u = std::log(x[0] / x[1]);
        const double r = x[1] * u - x[2];
        const double gr[3] = {x[1] / x[0], u - 1.0, -1.0};
        double hr[3][3] = {};
        hr[0][0] = -x[1] / (x[0] * x[0]);
        hr[0][1] = hr[1][0] = 1.0 / x[0];
        hr[1][1] = -1.0 / x[1];
        out.value += -std::log(r) - std::log(x[0]) - std::log(x[1]);
        for (int i = 0; i < 3; ++i) out.gradient[offset + i] = -gr[i] / r;
        out.gradient[offset + 0] -= 1.0 / x[0];
        out.gradient[offset + 1] -= 1.0 / x[1];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j <= i; ++j)
                out.hessian.at(offset + i, offset + j) = gr[i] * gr[j] / (r * r) - hr[i][j] / r;
        out.hessian.at(offset + 0, offset + 0) += 1.0 / (x[0] * x[0]);
        out.hessian.at(offset + 1, offset + 1) += 1.0 / (x[1] * x[1]);
        return;
    }
    case ConeKind::Power: {
        // F(x) = -log(x1^{2a} x2^{2(1-a)} - x3^2) - (1-a) log x1 - a log x2
        const double a = b.exponent;
        const double xi = std::pow(x[0], 2.0 * a) * std::pow(x[1], 2.0 * (1.0 - a));
        const double r = xi - x[2] * x[2];
        const double gr[3] = {2.0 * a * xi / x[0], 2.0 * (1.0 - a) * xi / x[1], -2.0 * x[2]};
        double hr[3][3] = {};
        hr[0][0] = 2.0 * a * (2.0 * a - 1.0) * xi / (x[0] * x[0]);
        hr[0][1] = hr[1][0] = 4.0 * a * (1.0 - a) * xi / (x[0] * x[1]);
        hr[1][1] = 2.0 * (1.0 - a) * (1.0 - 2.0 * a) * xi / (x[1] * x[1]);
        hr[2][2] = -2.0;
        out.value += -std::log(r) - (1.0 - a) * std::log(x[0]) - a * std::log(x[1]);
        for (int i = 0; i < 3; ++i) out.gradient[offset + i] = -gr[i] / r;
        out.gradient[offset + 0] -= (1.0 - a) / x[0];
        out.gradient[offset + 1] -= a / x[1];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j <= i; ++j)
                out.hessian.at(offset + i, offset + j) = gr[i] * gr[j] / (r * r) - hr[i][j] / r;
        out.hessian.at(offset + 0, offset + 0) += (1.0 - a) / (x[0] * x[0]);
        out.hessian.at(offset + 1, offset + 1) += a / (x[1] * x[1]);
        return;
    }
    }
}

struct BlockBarrier {
    double value;
    double grad[3];
    double hess[3][3]; // dense, dim <= 3 for non-orthant blocks
};

BlockBarrier eval3(const ConeBlock &b, const double *x) {
    BarrierEval tmp;
    tmp.gradient.assign(3, 0.0);
    tmp.hessian = SymMatrix(3);
    block_barrier(b, VecView(x, 3), 0, tmp);
    BlockBarrier r;
    r.value = tmp.value;
    for (int i = 0; i < 3; ++i) {
        r.grad[i] = tmp.gradient[i];
        for (int j = 0; j < 3; ++j) r.hess[i][j] = tmp.hessian.at(i, j);
    }
    return r;
}

bool solve3(const double m[3][3], const double rhs[3], double out[3]) {
    // Gaussian elimination with partial pivoting on a 3x3 copy.
    double a[3][4];
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) a[i][j] = m[i][j];
        a[i][3] = rhs[i];
    }
    for (int k = 0; k < 3; ++k) {
        int piv = k;
        for (int i = k + 1; i < 3; ++i)
            if (std::fabs(a[i][k]) > std::fabs(a[piv][k])) piv = i;
        if (std::fabs(a[piv][k]) < 1e-300) return false;
        if (piv != k)
            for (int j = k; j < 4; ++j) std::swap(a[k][j], a[piv][j]);
        for (int i = k + 1; i < 3; ++i) {
            const double f = a[i][k] / a[k][k];
            for (int j = k; j < 4; ++j) a[i][j] -= f * a[k][j];
        }
    }
    for (int i = 2; i >= 0; --i) {
        double acc = a[i][3];
        for (int j = i + 1; j < 3; ++j) acc -= a[i][j] * out[j];
        out[i] = acc / a[i][i];
    }
    return true;
}

// Damped Newton for F'(x) = -s on one 3-dimensional block. Minimizes
// h(x) = F(x) + <s, x>; steps are clipped to keep the iterate interior
// (backtracking factor 0.5, at most 60 cuts per step).
void shadow_newton3(const ConeBlock &b, const double *s, double *x) {
    const int max_iter = 200;
    const double tol = 1e-11;
    for (int it = 0; it < max_iter; ++it) {
        BlockBarrier be = eval3(b, x);
        double g[3];
        for (int i = 0; i < 3; ++i) g[i] = be.grad[i] + s[i];
        double d[3];
        if (!solve3(be.hess, g, d)) break;
        // Newton decrement^2 = g' H^{-1} g
        const double lambda2 = g[0] * d[0] + g[1] * d[1] + g[2] * d[2];
        if (lambda2 >= 0.0 && std::sqrt(std::max(lambda2, 0.0)) <= tol) return;
        const double h0 = be.value + (s[0] * x[0] + s[1] * x[1] + s[2] * x[2]);
        double t = 1.0;
        double trial[3];
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (int i = 0; i < 3; ++i) trial[i] = x[i] - t * d[i];
            if (block_margin(b, VecView(trial, 3)) > 0.0) {
                BlockBarrier bt_eval = eval3(b, trial);
                const double h1 =
                    bt_eval.value + (s[0] * trial[0] + s[1] * trial[1] + s[2] * trial[2]);
                if (h1 <= h0 + 1e-14 * (1.0 + std::fabs(h0))) {
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if (!accepted) break;
        for (int i = 0; i < 3; ++i) x[i] = trial[i];
    }
    // Final accuracy check.
    BlockBarrier be = eval3(b, x);
    double g[3];
    for (int i = 0; i < 3; ++i) g[i] = be.grad[i] + s[i];
    double d[3];
    if (!solve3(be.hess, g, d))
        throw Error(ErrorCode::NoConvergence, "conjugate shadow Hessian became singular");
    const double lambda2 = g[0] * d[0] + g[1] * d[1] + g[2] * d[2];
    if (!(lambda2 >= 0.0) || std::sqrt(std::max(lambda2, 0.0)) > tol)
        throw Error(ErrorCode::NoConvergence, "conjugate shadow Newton did not converge");
}

// Fixed point of x = -F'(x) on one block by Newton on g(x) = x + F'(x).
Vec block_initial_point(const ConeBlock &b) {
    switch (b.kind) {
    case ConeKind::NonnegOrthant: return Vec(b.dim, 1.0);
    case ConeKind::Power: {
        // Closed form: x3 = 0 forces x1 = sqrt(1+a), x2 = sqrt(2-a).
        return {std::sqrt(1.0 + b.exponent), std::sqrt(2.0 - b.exponent), 0.0};
    }
    case ConeKind::Exponential: {
        double x[3] = {1.0, 1.0, -1.0};
        for (int it = 0; it < 200; ++it) {
            BlockBarrier be = eval3(b, x);
            double g[3];
            for (int i = 0; i < 3; ++i) g[i] = x[i] + be.grad[i];
            if (std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]) <= 1e-13) break;
            double jac[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) jac[i][j] = be.hess[i][j] + (i == j ? 1.0 : 0.0);
            double d[3];
            if (!solve3(jac, g, d))
                throw Error(ErrorCode::NoConvergence, "initial point Newton became singular");
            double t = 1.0;
            double trial[3];
            for (int bt = 0; bt < 60; ++bt) {
                for (int i = 0; i < 3; ++i) trial[i] = x[i] - t * d[i];
                if (block_margin(b, VecView(trial, 3)) > 0.0) break;
                t *= 0.5;
            }
            for (int i = 0; i < 3; ++i) x[i] = trial[i];
        }
        BlockBarrier be = eval3(b, x);
        double g[3];
        for (int i = 0; i < 3; ++i) g[i] = x[i] + be.grad[i];
        if (std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]) > 1e-11)
            throw Error(ErrorCode::NoConvergence, "initial point Newton did not converge");
        return {x[0], x[1], x[2]};
    }
    }
    throw Error(ErrorCode::UnknownConeType, "unknown cone kind");
}

std::mutex g_initial_cache_mutex;
std::map<std::pair<int, double>, Vec> g_initial_cache;

Vec cached_block_initial_point(const ConeBlock &b) {
    const std::pair<int, double> key{static_cast<int>(b.kind),
                                     b.kind == ConeKind::Power ? b.exponent : 0.0};
    if (b.kind == ConeKind::NonnegOrthant) return Vec(b.dim, 1.0);
    std::lock_guard<std::mutex> lock(g_initial_cache_mutex);
    auto it = g_initial_cache.find(key);
    if (it != g_initial_cache.end()) return it->second;
    Vec v = block_initial_point(b);
    g_initial_cache.emplace(key, v);
    return v;
}

} // namespace

BarrierEval barrier_eval(const ConeSpec &cone, VecView x) {
    if (static_cast<int>(x.size()) != cone.dim())
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match cone");
    if (membership_margin(cone, x) <= 0.0)
        throw Error(ErrorCode::NotInterior, "point is not strictly interior to the cone");
    BarrierEval out;
    out.gradient.assign(cone.dim(), 0.0);
    out.hessian = SymMatrix(cone.dim());
    out.nu = cone.barrier_degree();
    int offset = 0;
    for (const ConeBlock &b : cone.blocks()) {
        block_barrier(b, x.subspan(offset, b.dim), offset, out);
        offset += b.dim;
    }
    return out;
}

double membership_margin(const ConeSpec &cone, VecView x) {
    if (static_cast<int>(x.size()) != cone.dim())
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match cone");
    double m = std::numeric_limits<double>::infinity();
    int offset = 0;
    for (const ConeBlock &b : cone.blocks()) {
        m = std::min(m, block_margin(b, x.subspan(offset, b.dim)));
        offset += b.dim;
    }
    return m;
}

double dual_membership_margin(const ConeSpec &cone, VecView s) {
    if (static_cast<int>(s.size()) != cone.dim())
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match cone");
    double m = std::numeric_limits<double>::infinity();
    int offset = 0;
    for (const ConeBlock &b : cone.blocks()) {
        m = std::min(m, block_dual_margin(b, s.subspan(offset, b.dim)));
        offset += b.dim;
    }
    return m;
}

Vec conjugate_shadow(const ConeSpec &cone, VecView s, VecView hint) {
    if (static_cast<int>(s.size()) != cone.dim())
        throw Error(ErrorCode::DimensionMismatch, "point dimension does not match cone");
    if (dual_membership_margin(cone, s) <= 0.0)
        throw Error(ErrorCode::NotInteriorDual, "point is not strictly interior to the dual cone");
    Vec x(cone.dim());
    int offset = 0;
    for (const ConeBlock &b : cone.blocks()) {
        VecView sb = s.subspan(offset, b.dim);
        if (b.kind == ConeKind::NonnegOrthant) {
            // F'(x) = -1/x componentwise, so the shadow is 1/s.
            for (int i = 0; i < b.dim; ++i) x[offset + i] = 1.0 / sb[i];
        } else {
            double xb[3];
            bool seeded = false;
            if (!hint.empty()) {
                VecView hb = hint.subspan(offset, b.dim);
                if (block_margin(b, hb) > 0.0) {
                    for (int i = 0; i < 3; ++i) xb[i] = hb[i];
                    seeded = true;
                }
            }
            if (!seeded) {
                // Log-homogeneity makes x0 * ||x0|| / ||s|| a scale-consistent seed.
                Vec x0 = cached_block_initial_point(b);
                const double t = norm2(x0) / std::max(norm2(sb), 1e-300);
                for (int i = 0; i < 3; ++i) xb[i] = x0[i] * t;
            }
            shadow_newton3(b, sb.data(), xb);
            for (int i = 0; i < 3; ++i) x[offset + i] = xb[i];
        }
        offset += b.dim;
    }
    return x;
}

Vec initial_point(const ConeSpec &cone) {
    Vec x(cone.dim());
    int offset = 0;
    for (const ConeBlock &b : cone.blocks()) {
        Vec xb = cached_block_initial_point(b);
        for (int i = 0; i < b.dim; ++i) x[offset + i] = xb[i];
        offset += b.dim;
    }
    return x;
}

} // namespace nsconic
