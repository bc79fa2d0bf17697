#include "slicevol/starbody.hpp"

#include "slicevol/errors.hpp"
#include "slicevol/rng.hpp"
#include "slicevol/sampling.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace slicevol {

namespace {

constexpr double kSymmetryTol = 1e-9;
constexpr double kBoundednessCap = 1e15;

Eigen::VectorXd to_eigen(const Direction& omega) {
    return Eigen::Map<const Eigen::VectorXd>(omega.coords().data(), omega.dim());
}

/// Generators of the blockwise phase action: multiplication by i for d=2,
/// left multiplication by i, j, k for d=4.
std::vector<Eigen::MatrixXd> phase_action_generators(AlgebraKind algebra, int m) {
    const int d = block_dim(algebra);
    std::vector<Eigen::MatrixXd> gens;
    auto block_generator = [&](auto&& fill) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(m, m);
        for (int b = 0; b < m / d; ++b) fill(g, b * d);
        return g;
    };
    if (algebra == AlgebraKind::Complex) {
        gens.push_back(block_generator([](Eigen::MatrixXd& g, int o) {
            g(o, o + 1) = -1;
            g(o + 1, o) = 1;
        }));
        return gens;
    }
    // Left multiplication by i: (w,x,y,z) -> (-x, w, -z, y), etc.
    gens.push_back(block_generator([](Eigen::MatrixXd& g, int o) {
        g(o, o + 1) = -1;
        g(o + 1, o) = 1;
        g(o + 2, o + 3) = -1;
        g(o + 3, o + 2) = 1;
    }));
    gens.push_back(block_generator([](Eigen::MatrixXd& g, int o) {
        g(o, o + 2) = -1;
        g(o + 2, o) = 1;
        g(o + 1, o + 3) = 1;
        g(o + 3, o + 1) = -1;
    }));
    gens.push_back(block_generator([](Eigen::MatrixXd& g, int o) {
        g(o, o + 3) = -1;
        g(o + 3, o) = 1;
        g(o + 1, o + 2) = -1;
        g(o + 2, o + 1) = 1;
    }));
    return gens;
}

double lp_norm(const Direction& omega, double p) {
    if (std::isinf(p)) {
        double mx = 0.0;
        for (double c : omega.coords()) mx = std::max(mx, std::abs(c));
        return mx;
    }
    if (p == 2.0) return omega.norm();
    if (p == 1.0) {
        double s = 0.0;
        for (double c : omega.coords()) s += std::abs(c);
        return s;
    }
    double s = 0.0;
    for (double c : omega.coords()) s += std::pow(std::abs(c), p);
    return std::pow(s, 1.0 / p);
}

} // namespace

// --- perturbation catalog ----------------------------------------------

const Perturbation& perturbation_catalog(const std::string& name) {
    static const std::map<std::string, Perturbation> catalog = [] {
        std::map<std::string, Perturbation> c;
        // Re of the squared first block: x^2 - y^2 for complex,
        // w^2 - |v|^2 for quaternions. Phase-dependent, even, |f| <= 1.
        c["re_block1_sq"] = Perturbation{
            "re_block1_sq", false, 1, [](const Direction& w) {
                double v = w[0] * w[0];
                for (int i = 1; i < block_dim(w.algebra()); ++i) v -= w[i] * w[i];
                return v;
            }};
        // Im part of the squared first block: 2 x y (first imaginary
        // component for quaternions).
        c["im_block1_sq"] = Perturbation{
            "im_block1_sq", false, 1,
            [](const Direction& w) { return 2.0 * w[0] * w[1]; }};
        // Product of the leading coordinates of the first two blocks.
        c["cross_block_product"] = Perturbation{
            "cross_block_product", false, 2, [](const Direction& w) {
                return 2.0 * w[0] * w[static_cast<std::size_t>(block_dim(w.algebra()))];
            }};
        // Block-norm imbalance; invariant under the phase action.
        c["block_norm_gap"] = Perturbation{
            "block_norm_gap", true, 2, [](const Direction& w) {
                const double a = w.block_norm(0), b = w.block_norm(1);
                return a * a - b * b;
            }};
        return c;
    }();
    auto it = catalog.find(name);
    if (it == catalog.end())
        throw std::invalid_argument("unknown perturbation '" + name + "'");
    return it->second;
}

std::vector<std::string> perturbation_names() {
    return {"re_block1_sq", "im_block1_sq", "cross_block_product", "block_norm_gap"};
}

// --- construction -------------------------------------------------------

const char* form_name(const BodyForm& form) noexcept {
    struct Namer {
        const char* operator()(const BallForm&) const { return "ball"; }
        const char* operator()(const EllipsoidForm&) const { return "ellipsoid"; }
        const char* operator()(const PolydiscForm&) const { return "polydisc"; }
        const char* operator()(const LpBallForm&) const { return "lp_ball"; }
        const char* operator()(const LinearImageForm&) const { return "linear_image"; }
        const char* operator()(const IntersectionForm&) const { return "intersection"; }
        const char* operator()(const UnionForm&) const { return "union"; }
        const char* operator()(const PerturbationForm&) const { return "radial_perturbation"; }
        const char* operator()(const CustomRadialForm&) const { return "custom"; }
        const char* operator()(const PhaseAverageForm&) const { return "circularized"; }
    };
    return std::visit(Namer{}, form);
}

StarBody::StarBody(AlgebraKind algebra, int blocks, bool circular, BodyForm form,
                   std::string label)
    : algebra_(algebra), blocks_(blocks), known_circular_(circular),
      form_(std::make_shared<const BodyForm>(std::move(form))), label_(std::move(label)) {}

StarBody StarBody::with_label(std::string label) const {
    StarBody copy = *this;
    copy.label_ = std::move(label);
    return copy;
}

StarBody StarBody::ball(AlgebraKind algebra, int n, double radius) {
    if (n < 1) throw std::invalid_argument("ball: n >= 1");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("ball: radius must be positive and finite");
    return StarBody(algebra, n, true, BallForm{radius}, "ball");
}

StarBody StarBody::ellipsoid(AlgebraKind algebra, Eigen::MatrixXd a) {
    const int d = block_dim(algebra);
    if (a.rows() != a.cols() || a.rows() < d || a.rows() % d != 0)
        throw std::invalid_argument("ellipsoid: A must be m x m with m a multiple of " +
                                    std::to_string(d));
    if (!a.isApprox(a.transpose(), 1e-12))
        throw std::invalid_argument("ellipsoid: A must be symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("ellipsoid: A must be positive definite");
    const bool circular = commutes_with_phase_action(a, algebra);
    const int n = static_cast<int>(a.rows()) / d;
    return StarBody(algebra, n, circular, EllipsoidForm{std::move(a)}, "ellipsoid");
}

StarBody StarBody::polydisc(AlgebraKind algebra, std::vector<double> radii) {
    if (radii.empty()) throw std::invalid_argument("polydisc: at least one block");
    for (double r : radii)
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("polydisc: radii must be positive and finite");
    const int n = static_cast<int>(radii.size());
    return StarBody(algebra, n, true, PolydiscForm{std::move(radii)}, "polydisc");
}

StarBody StarBody::lp_ball(AlgebraKind algebra, int n, double p, double radius) {
    if (n < 1) throw std::invalid_argument("lp_ball: n >= 1");
    if (!(p >= 1.0)) throw std::invalid_argument("lp_ball: p must be in [1, inf]");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("lp_ball: radius must be positive and finite");
    // The euclidean ball is phase invariant; other p are not.
    return StarBody(algebra, n, p == 2.0, LpBallForm{p, radius}, "lp_ball");
}

StarBody StarBody::linear_image(Eigen::MatrixXd t, StarBody inner) {
    const int m = inner.dim();
    if (t.rows() != m || t.cols() != m)
        throw std::invalid_argument("linear_image: T must be " + std::to_string(m) + " x " +
                                    std::to_string(m));
    Eigen::FullPivLU<Eigen::MatrixXd> lu(t);
    if (!lu.isInvertible()) throw std::invalid_argument("linear_image: T must be invertible");
    const double abs_det = std::abs(lu.determinant());
    const bool circular = inner.known_circular() && commutes_with_phase_action(t, inner.algebra());
    const AlgebraKind algebra = inner.algebra();
    const int blocks = inner.blocks();
    LinearImageForm form{std::move(t), lu.inverse(), abs_det,
                         std::make_shared<const StarBody>(std::move(inner))};
    return StarBody(algebra, blocks, circular, std::move(form), "linear_image");
}

StarBody StarBody::intersection(StarBody left, StarBody right) {
    if (left.algebra() != right.algebra() || left.dim() != right.dim())
        throw std::invalid_argument("intersection: operands must share algebra and dimension");
    const bool circular = left.known_circular() && right.known_circular();
    const AlgebraKind algebra = left.algebra();
    const int blocks = left.blocks();
    IntersectionForm form{std::make_shared<const StarBody>(std::move(left)),
                          std::make_shared<const StarBody>(std::move(right))};
    return StarBody(algebra, blocks, circular, std::move(form), "intersection");
}

StarBody StarBody::union_of(StarBody left, StarBody right) {
    if (left.algebra() != right.algebra() || left.dim() != right.dim())
        throw std::invalid_argument("union: operands must share algebra and dimension");
    const bool circular = left.known_circular() && right.known_circular();
    const AlgebraKind algebra = left.algebra();
    const int blocks = left.blocks();
    UnionForm form{std::make_shared<const StarBody>(std::move(left)),
                   std::make_shared<const StarBody>(std::move(right))};
    return StarBody(algebra, blocks, circular, std::move(form), "union");
}

StarBody StarBody::radial_perturbation(StarBody inner, double amplitude,
                                       const std::string& perturbation_name) {
    if (!(amplitude >= 0.0) || amplitude >= 1.0)
        throw std::invalid_argument("radial_perturbation: amplitude must be in [0, 1) so that "
                                    "1 + amplitude * f stays positive");
    const Perturbation& f = perturbation_catalog(perturbation_name);
    if (inner.blocks() < f.min_blocks)
        throw std::invalid_argument("radial_perturbation: '" + perturbation_name + "' needs >= " +
                                    std::to_string(f.min_blocks) + " blocks");
    const bool circular = inner.known_circular() && (f.phase_invariant || amplitude == 0.0);
    const AlgebraKind algebra = inner.algebra();
    const int blocks = inner.blocks();
    PerturbationForm form{std::make_shared<const StarBody>(std::move(inner)), amplitude, f};
    return StarBody(algebra, blocks, circular, std::move(form), "radial_perturbation");
}

StarBody StarBody::custom(AlgebraKind algebra, int n,
                          std::function<double(const Direction&)> evaluator, std::string label) {
    if (n < 1) throw std::invalid_argument("custom: n >= 1");
    if (!evaluator) throw std::invalid_argument("custom: evaluator required");
    return StarBody(algebra, n, false, CustomRadialForm{std::move(evaluator), label},
                    std::move(label));
}

StarBody StarBody::phase_average(StarBody inner,
                                 std::shared_ptr<const std::vector<Phase>> phases) {
    if (!phases || phases->empty())
        throw std::invalid_argument("phase_average: nonempty phase set required");
    const AlgebraKind algebra = inner.algebra();
    const int blocks = inner.blocks();
    PhaseAverageForm form{std::make_shared<const StarBody>(std::move(inner)), std::move(phases)};
    return StarBody(algebra, blocks, true, std::move(form), "circularized");
}

// --- radial evaluation ---------------------------------------------------

namespace {

struct RadialVisitor {
    const Direction& omega;

    double operator()(const BallForm& f) const { return f.radius; }

    double operator()(const EllipsoidForm& f) const {
        const Eigen::VectorXd w = to_eigen(omega);
        return 1.0 / std::sqrt(w.dot(f.a * w));
    }

    double operator()(const PolydiscForm& f) const {
        double rho = std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < f.radii.size(); ++b) {
            const double bn = omega.block_norm(static_cast<int>(b));
            if (bn > 0.0) rho = std::min(rho, f.radii[b] / bn);
        }
        return rho;
    }

    double operator()(const LpBallForm& f) const { return f.radius / lp_norm(omega, f.p); }

    double operator()(const LinearImageForm& f) const {
        const Eigen::VectorXd u = f.t_inv * to_eigen(omega);
        const double un = u.norm();
        std::vector<double> coords(u.data(), u.data() + u.size());
        for (double& c : coords) c /= un;
        const Direction dir(omega.algebra(), std::move(coords));
        return f.inner->radial(dir) / un;
    }

    double operator()(const IntersectionForm& f) const {
        return std::min(f.left->radial(omega), f.right->radial(omega));
    }

    double operator()(const UnionForm& f) const {
        return std::max(f.left->radial(omega), f.right->radial(omega));
    }

    double operator()(const PerturbationForm& f) const {
        return f.inner->radial(omega) * (1.0 + f.amplitude * f.f.fn(omega));
    }

    double operator()(const CustomRadialForm& f) const { return f.evaluator(omega); }

    double operator()(const PhaseAverageForm& f) const {
        const int d = block_dim(omega.algebra());
        const Direction anchor = canonical_representative(omega);
        Direction rotated = anchor;
        double acc = 0.0;
        for (const Phase& q : *f.phases) {
            phase_rotate_into(anchor, q, rotated);
            const double rho = f.inner->radial(rotated);
            double p = rho * rho;
            if (d == 4) p *= p;
            acc += p;
        }
        const double mean = acc / static_cast<double>(f.phases->size());
        return d == 2 ? std::sqrt(mean) : std::sqrt(std::sqrt(mean));
    }
};

} // namespace

double StarBody::radial(const Direction& omega) const {
    if (omega.algebra() != algebra_ || omega.dim() != dim())
        throw std::invalid_argument("radial: direction algebra/dimension mismatch");
    const double rho = std::visit(RadialVisitor{omega}, *form_);
    if (!std::isfinite(rho) || rho <= 0.0)
        throw InvalidBodyError(form_name(*form_),
                               "radial function returned " + std::to_string(rho));
    return rho;
}

bool commutes_with_phase_action(const Eigen::MatrixXd& g, AlgebraKind algebra) {
    const int m = static_cast<int>(g.rows());
    const double scale = g.cwiseAbs().maxCoeff();
    for (const Eigen::MatrixXd& gen : phase_action_generators(algebra, m)) {
        const double gap = (g * gen - gen * g).cwiseAbs().maxCoeff();
        if (gap > 1e-12 * std::max(1.0, scale)) return false;
    }
    return true;
}

ValidationReport validate_body(const StarBody& body, std::size_t probes, std::uint64_t seed) {
    if (probes < 1) throw std::invalid_argument("validate_body: probes >= 1");
    ValidationReport report;
    report.probes = probes;
    report.min_radial = std::numeric_limits<double>::infinity();

    const auto dirs = sample_sphere(body.algebra(), body.blocks(), probes,
                                    substream_seed(seed, "starbody/validate"));
    for (const Direction& w : dirs) {
        double rho = 0.0, rho_neg = 0.0;
        try {
            rho = body.radial(w);
            rho_neg = body.radial(w.negated());
        } catch (const InvalidBodyError& e) {
            report.ok = false;
            report.issue = e.what();
            report.worst_direction = w.coords();
            return report;
        }
        report.max_radial = std::max(report.max_radial, std::max(rho, rho_neg));
        report.min_radial = std::min(report.min_radial, std::min(rho, rho_neg));
        const double sym_gap = std::abs(rho_neg - rho) / rho;
        if (sym_gap > report.worst_symmetry_gap) {
            report.worst_symmetry_gap = sym_gap;
            report.worst_direction = w.coords();
            report.worst_value = rho;
            report.worst_mirror_value = rho_neg;
        }
    }
    if (report.max_radial > kBoundednessCap) {
        report.ok = false;
        report.issue = "radial function unbounded (max sampled " +
                       std::to_string(report.max_radial) + ")";
        return report;
    }
    if (report.worst_symmetry_gap > kSymmetryTol) {
        report.ok = false;
        report.issue = "origin symmetry violated: |rho(-w) - rho(w)| / rho(w) = " +
                       std::to_string(report.worst_symmetry_gap);
        return report;
    }
    return report;
}

} // namespace slicevol
