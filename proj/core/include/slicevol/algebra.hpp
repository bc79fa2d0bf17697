#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace slicevol {

/// Scalar division algebra acting blockwise on the ambient space:
/// complex numbers (block dimension 2) or quaternions (block dimension 4).
enum class AlgebraKind { Complex, Quaternion };

constexpr int block_dim(AlgebraKind a) noexcept { return a == AlgebraKind::Complex ? 2 : 4; }

std::string algebra_name(AlgebraKind a);

/// Unit element of the scalar algebra. For Complex only q[0], q[1] are used
/// (cos t, sin t); for Quaternion the Hamilton convention (ij = k) applies,
/// components ordered (w, x, y, z).
struct Phase {
    AlgebraKind algebra = AlgebraKind::Complex;
    std::array<double, 4> q{1.0, 0.0, 0.0, 0.0};

    double norm() const noexcept;
};

Phase identity_phase(AlgebraKind a) noexcept;
Phase phase_from_angle(double theta) noexcept;
/// Normalizes the given components; throws on a (near) zero quaternion.
Phase phase_from_quaternion(double w, double x, double y, double z);
Phase phase_multiply(const Phase& a, const Phase& b);
Phase phase_conjugate(const Phase& p) noexcept;

/// Unit vector on S^{m-1}, m = block_dim(algebra) * blocks. The coordinate
/// layout is block-major: block i occupies coords [i*d, (i+1)*d).
class Direction {
public:
    Direction(AlgebraKind algebra, std::vector<double> coords);

    /// Normalizes `coords` (throws on zero vector) and constructs.
    static Direction unit(AlgebraKind algebra, std::vector<double> coords);

    AlgebraKind algebra() const noexcept { return algebra_; }
    int dim() const noexcept { return static_cast<int>(coords_.size()); }
    int blocks() const noexcept { return dim() / block_dim(algebra_); }

    const std::vector<double>& coords() const noexcept { return coords_; }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }

    double norm() const noexcept;
    double block_norm(int block) const noexcept;

    Direction negated() const;

private:
    friend void phase_rotate_into(const Direction&, const Phase&, Direction&);

    AlgebraKind algebra_;
    std::vector<double> coords_;
};

/// Multiplies every block of `omega` by `q` (left multiplication for
/// quaternions), writing into `out`. The action is an isometry. `out` must
/// have the same algebra and dimension; it may not alias `omega`.
void phase_rotate_into(const Direction& omega, const Phase& q, Direction& out);

Direction phase_rotate(const Direction& omega, const Phase& q);

/// Point s * (q . omega) of the d-plane spanned by the phase orbit of omega.
std::vector<double> plane_point(const Direction& omega, double s, const Phase& q);

/// Canonical representative of the phase orbit of `omega`: the first block
/// of norm > 1e-8 is rotated to (|b|, 0, ...). Two directions on the same
/// orbit map to the same representative (up to roundoff), which makes
/// orbit-anchored quadratures independent of the representative handed in.
Direction canonical_representative(const Direction& omega);

} // namespace slicevol
