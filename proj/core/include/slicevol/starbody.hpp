#pragma once

#include "slicevol/algebra.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace slicevol {

class StarBody;

/// Entry of the fixed perturbation catalog: a smooth even function
/// f : S^{m-1} -> [-1, 1] used to build reproducible non-circular bodies.
struct Perturbation {
    std::string name;
    bool phase_invariant = false;
    int min_blocks = 1;
    std::function<double(const Direction&)> fn;
};

/// Catalog lookup by name; throws std::invalid_argument for unknown names.
const Perturbation& perturbation_catalog(const std::string& name);
std::vector<std::string> perturbation_names();

// --- body variants -----------------------------------------------------

struct BallForm {
    double radius;
};
struct EllipsoidForm {
    Eigen::MatrixXd a; // region {x : x^T A x <= 1}, A symmetric positive definite
};
struct PolydiscForm {
    std::vector<double> radii; // block moduli |z_i| <= r_i
};
struct LpBallForm {
    double p; // in [1, inf]; std::numeric_limits<double>::infinity() for max norm
    double radius;
};
struct LinearImageForm {
    Eigen::MatrixXd t;     // invertible
    Eigen::MatrixXd t_inv; // cached
    double abs_det;
    std::shared_ptr<const StarBody> inner;
};
struct IntersectionForm {
    std::shared_ptr<const StarBody> left, right;
};
struct UnionForm {
    std::shared_ptr<const StarBody> left, right;
};
struct PerturbationForm {
    std::shared_ptr<const StarBody> inner;
    double amplitude; // in [0, 1)
    Perturbation f;
};
struct CustomRadialForm {
    std::function<double(const Direction&)> evaluator;
    std::string label;
};
/// Output of circularize(): radial is the L^d phase average of the inner
/// radial over the stored phase set, anchored at the canonical orbit
/// representative. Constant on phase orbits by construction.
struct PhaseAverageForm {
    std::shared_ptr<const StarBody> inner;
    std::shared_ptr<const std::vector<Phase>> phases;
};

using BodyForm = std::variant<BallForm, EllipsoidForm, PolydiscForm, LpBallForm, LinearImageForm,
                              IntersectionForm, UnionForm, PerturbationForm, CustomRadialForm,
                              PhaseAverageForm>;

const char* form_name(const BodyForm& form) noexcept;

/// Origin-star-shaped region represented by its radial function
/// rho(w) = max{t >= 0 : t w inside the region}. Immutable after
/// construction; radial evaluation is pure and thread-safe.
class StarBody {
public:
    static StarBody ball(AlgebraKind algebra, int n, double radius);
    static StarBody ellipsoid(AlgebraKind algebra, Eigen::MatrixXd a);
    static StarBody polydisc(AlgebraKind algebra, std::vector<double> radii);
    static StarBody lp_ball(AlgebraKind algebra, int n, double p, double radius);
    static StarBody linear_image(Eigen::MatrixXd t, StarBody inner);
    static StarBody intersection(StarBody left, StarBody right);
    static StarBody union_of(StarBody left, StarBody right);
    static StarBody radial_perturbation(StarBody inner, double amplitude,
                                        const std::string& perturbation_name);
    static StarBody custom(AlgebraKind algebra, int n,
                           std::function<double(const Direction&)> evaluator, std::string label);
    /// Used by circularize(); flagged circular.
    static StarBody phase_average(StarBody inner, std::shared_ptr<const std::vector<Phase>> phases);

    AlgebraKind algebra() const noexcept { return algebra_; }
    int blocks() const noexcept { return blocks_; }
    int dim() const noexcept { return block_dim(algebra_) * blocks_; }

    /// rho(omega); requires |omega| = 1 and matching algebra/dimension.
    /// Throws InvalidBodyError if the evaluation yields a non-finite or
    /// non-positive value.
    double radial(const Direction& omega) const;

    /// True only when construction rules guarantee phase invariance.
    bool known_circular() const noexcept { return known_circular_; }

    const BodyForm& form() const noexcept { return *form_; }
    const std::string& label() const noexcept { return label_; }
    StarBody with_label(std::string label) const;

private:
    StarBody(AlgebraKind algebra, int blocks, bool circular, BodyForm form, std::string label);

    AlgebraKind algebra_;
    int blocks_;
    bool known_circular_;
    std::shared_ptr<const BodyForm> form_;
    std::string label_;
};

/// True when `g` commutes with the whole blockwise phase action (checked
/// against the action's generators to 1e-12).
bool commutes_with_phase_action(const Eigen::MatrixXd& g, AlgebraKind algebra);

struct ValidationReport {
    bool ok = true;
    std::string issue;                       // empty when ok
    std::vector<double> worst_direction;     // offending direction, if any
    double worst_value = 0.0;                // radial there
    double worst_mirror_value = 0.0;         // radial at the negated direction
    double max_radial = 0.0;
    double min_radial = 0.0;
    double worst_symmetry_gap = 0.0;         // max |rho(-w)-rho(w)| / rho(w)
    std::uint64_t probes = 0;
};

/// Samples `probes` directions and checks positivity, boundedness and
/// origin symmetry |rho(-w) - rho(w)| <= 1e-9 rho(w).
ValidationReport validate_body(const StarBody& body, std::size_t probes, std::uint64_t seed);

} // namespace slicevol
