#include "slicevol/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace slicevol {

namespace {
constexpr double kUnitTol = 1e-12;
constexpr double kCanonicalBlockThreshold = 1e-8;
} // namespace

std::string algebra_name(AlgebraKind a) {
    return a == AlgebraKind::Complex ? "complex" : "quaternion";
}

double Phase::norm() const noexcept {
    if (algebra == AlgebraKind::Complex) return std::sqrt(q[0] * q[0] + q[1] * q[1]);
    return std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
}

Phase identity_phase(AlgebraKind a) noexcept { return Phase{a, {1.0, 0.0, 0.0, 0.0}}; }

Phase phase_from_angle(double theta) noexcept {
    return Phase{AlgebraKind::Complex, {std::cos(theta), std::sin(theta), 0.0, 0.0}};
}

Phase phase_from_quaternion(double w, double x, double y, double z) {
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n))
        throw std::invalid_argument("phase_from_quaternion: zero or non-finite quaternion");
    return Phase{AlgebraKind::Quaternion, {w / n, x / n, y / n, z / n}};
}

Phase phase_multiply(const Phase& a, const Phase& b) {
    if (a.algebra != b.algebra) throw std::invalid_argument("phase_multiply: algebra mismatch");
    if (a.algebra == AlgebraKind::Complex) {
        return Phase{a.algebra,
                     {a.q[0] * b.q[0] - a.q[1] * b.q[1], a.q[0] * b.q[1] + a.q[1] * b.q[0], 0.0,
                      0.0}};
    }
    // Hamilton product (ij = k).
    const double aw = a.q[0], ax = a.q[1], ay = a.q[2], az = a.q[3];
    const double bw = b.q[0], bx = b.q[1], by = b.q[2], bz = b.q[3];
    return Phase{a.algebra,
                 {aw * bw - ax * bx - ay * by - az * bz, aw * bx + ax * bw + ay * bz - az * by,
                  aw * by - ax * bz + ay * bw + az * bx, aw * bz + ax * by - ay * bx + az * bw}};
}

Phase phase_conjugate(const Phase& p) noexcept {
    return Phase{p.algebra, {p.q[0], -p.q[1], -p.q[2], -p.q[3]}};
}

Direction::Direction(AlgebraKind algebra, std::vector<double> coords)
    : algebra_(algebra), coords_(std::move(coords)) {
    const int d = block_dim(algebra_);
    if (coords_.empty() || coords_.size() % static_cast<std::size_t>(d) != 0)
        throw std::invalid_argument("Direction: coordinate count must be a positive multiple of " +
                                    std::to_string(d));
    const double n = norm();
    if (std::abs(n - 1.0) > kUnitTol)
        throw std::invalid_argument("Direction: vector is not unit (|norm - 1| = " +
                                    std::to_string(std::abs(n - 1.0)) + ")");
}

Direction Direction::unit(AlgebraKind algebra, std::vector<double> coords) {
    double s = 0.0;
    for (double c : coords) s += c * c;
    const double n = std::sqrt(s);
    if (!(n > 0.0) || !std::isfinite(n))
        throw std::invalid_argument("Direction::unit: zero or non-finite vector");
    for (double& c : coords) c /= n;
    return Direction(algebra, std::move(coords));
}

double Direction::norm() const noexcept {
    double s = 0.0;
    for (double c : coords_) s += c * c;
    return std::sqrt(s);
}

double Direction::block_norm(int block) const noexcept {
    const int d = block_dim(algebra_);
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        const double c = coords_[static_cast<std::size_t>(block * d + i)];
        s += c * c;
    }
    return std::sqrt(s);
}

Direction Direction::negated() const {
    std::vector<double> c(coords_);
    for (double& x : c) x = -x;
    return Direction(algebra_, std::move(c));
}

void phase_rotate_into(const Direction& omega, const Phase& q, Direction& out) {
    if (omega.algebra() != q.algebra || omega.algebra() != out.algebra_ ||
        omega.dim() != out.dim())
        throw std::invalid_argument("phase_rotate_into: algebra or dimension mismatch");
    const std::vector<double>& src = omega.coords();
    std::vector<double>& dst = out.coords_;
    if (q.algebra == AlgebraKind::Complex) {
        const double c = q.q[0], s = q.q[1];
        for (std::size_t i = 0; i < src.size(); i += 2) {
            const double x = src[i], y = src[i + 1];
            dst[i] = c * x - s * y;
            dst[i + 1] = c * y + s * x;
        }
    } else {
        const double w = q.q[0], x = q.q[1], y = q.q[2], z = q.q[3];
        for (std::size_t i = 0; i < src.size(); i += 4) {
            const double bw = src[i], bx = src[i + 1], by = src[i + 2], bz = src[i + 3];
            dst[i] = w * bw - x * bx - y * by - z * bz;
            dst[i + 1] = w * bx + x * bw + y * bz - z * by;
            dst[i + 2] = w * by - x * bz + y * bw + z * bx;
            dst[i + 3] = w * bz + x * by - y * bx + z * bw;
        }
    }
}

Direction phase_rotate(const Direction& omega, const Phase& q) {
    Direction out = omega;
    phase_rotate_into(omega, q, out);
    return out;
}

std::vector<double> plane_point(const Direction& omega, double s, const Phase& q) {
    if (s < 0.0) throw std::invalid_argument("plane_point: s must be >= 0");
    Direction rotated = phase_rotate(omega, q);
    std::vector<double> p = rotated.coords();
    for (double& c : p) c *= s;
    return p;
}

Direction canonical_representative(const Direction& omega) {
    const int d = block_dim(omega.algebra());
    const int blocks = omega.blocks();
    int anchor = -1;
    for (int b = 0; b < blocks; ++b) {
        if (omega.block_norm(b) > kCanonicalBlockThreshold) {
            anchor = b;
            break;
        }
    }
    if (anchor < 0)
        throw std::invalid_argument("canonical_representative: all blocks near zero");
    const std::size_t base = static_cast<std::size_t>(anchor * d);
    Phase q;
    if (omega.algebra() == AlgebraKind::Complex) {
        const double x = omega[base], y = omega[base + 1];
        const double n = std::sqrt(x * x + y * y);
        q = Phase{AlgebraKind::Complex, {x / n, -y / n, 0.0, 0.0}};
    } else {
        // conj(b)/|b| rotates block b onto (|b|, 0, 0, 0).
        const double w = omega[base], x = omega[base + 1], y = omega[base + 2],
                     z = omega[base + 3];
        const double n = std::sqrt(w * w + x * x + y * y + z * z);
        q = Phase{AlgebraKind::Quaternion, {w / n, -x / n, -y / n, -z / n}};
    }
    return phase_rotate(omega, q);
}

} // namespace slicevol
