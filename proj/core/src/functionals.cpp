#include "slicevol/functionals.hpp"

#include "slicevol/errors.hpp"
#include "slicevol/rng.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slicevol {

namespace {

constexpr const char* kPhaseSetLabel = "sampling/phase_set";

/// Sequential integer power; one shared definition so identical quantities
/// are computed with identical roundoff everywhere.
double pow_i(double base, int exponent) {
    double r = 1.0;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i) r *= static_cast<double>(i);
    return r;
}

Estimate scaled(Estimate e, double c) {
    e.value *= c;
    e.std_error *= std::abs(c);
    return e;
}

/// Per-direction phase statistics: s_k = rho(q_k w_hat)^d over the phase
/// set, anchored at the canonical orbit representative.
struct PhaseStats {
    double mean_s = 0.0;  // slice integrand
    double mean_sn = 0.0; // volume integrand (s^n)
};

PhaseStats phase_stats(const StarBody& body, const Direction& omega,
                       const std::vector<Phase>& phases, Direction& scratch) {
    const int d = block_dim(body.algebra());
    const int n = body.blocks();
    const Direction anchor = canonical_representative(omega);
    double sum_s = 0.0, sum_sn = 0.0;
    for (const Phase& q : phases) {
        phase_rotate_into(anchor, q, scratch);
        const double rho = body.radial(scratch);
        double s = rho * rho;
        if (d == 4) s *= s;
        sum_s += s;
        sum_sn += pow_i(s, n);
    }
    const double inv = 1.0 / static_cast<double>(phases.size());
    return PhaseStats{sum_s * inv, sum_sn * inv};
}

} // namespace

double gamma_half(int twice_argument) {
    if (twice_argument < 1) throw std::invalid_argument("gamma_half: argument must be positive");
    if (twice_argument % 2 == 0) return factorial(twice_argument / 2 - 1);
    // Gamma(1/2) = sqrt(pi), then Gamma(x+1) = x Gamma(x).
    double g = std::sqrt(std::numbers::pi);
    for (int k = 1; k < twice_argument; k += 2) g *= static_cast<double>(k) / 2.0;
    return g;
}

double sphere_surface(int m) {
    if (m < 1) throw std::invalid_argument("sphere_surface: m >= 1");
    return 2.0 * std::pow(std::numbers::pi, static_cast<double>(m) / 2.0) / gamma_half(m);
}

double unit_ball_volume(int m) {
    if (m < 1) throw std::invalid_argument("unit_ball_volume: m >= 1");
    return std::pow(std::numbers::pi, static_cast<double>(m) / 2.0) / gamma_half(m + 2);
}

double functional_constant(int n, AlgebraKind algebra) {
    if (n < 1) throw std::invalid_argument("functional_constant: n >= 1");
    if (algebra == AlgebraKind::Complex) return 1.0 / factorial(n);
    return pow_i(2.0, n) / factorial(2 * n);
}

std::shared_ptr<const std::vector<Phase>> shared_phase_set(AlgebraKind algebra,
                                                           const QuadratureSpec& spec) {
    spec.validate();
    if (algebra == AlgebraKind::Complex) {
        auto set = std::make_shared<std::vector<Phase>>();
        set->reserve(static_cast<std::size_t>(spec.circle_nodes));
        for (const auto& [phase, weight] : circle_nodes(spec.circle_nodes)) set->push_back(phase);
        return set;
    }
    return std::make_shared<std::vector<Phase>>(sample_phase_group(
        algebra, spec.phase_samples, substream_seed(spec.seed, kPhaseSetLabel)));
}

Estimate volume_polar(const StarBody& body, const QuadratureSpec& spec) {
    spec.validate();
    const int m = body.dim();
    const auto dirs = sample_sphere(body.algebra(), body.blocks(), spec.sphere_samples,
                                    substream_seed(spec.seed, "functionals/volume_polar"));
    std::vector<double> values(dirs.size());
    parallel_fill(dirs.size(), spec.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) values[i] = pow_i(body.radial(dirs[i]), m);
    });
    return scaled(estimate_mean(values, spec.chunk_size), unit_ball_volume(m));
}

namespace {

struct ClosedFormVisitor {
    int m, d;
    std::optional<double> operator()(const BallForm& f) const {
        return unit_ball_volume(m) * pow_i(f.radius, m);
    }
    std::optional<double> operator()(const EllipsoidForm& f) const {
        return unit_ball_volume(m) / std::sqrt(f.a.determinant());
    }
    std::optional<double> operator()(const PolydiscForm& f) const {
        double v = 1.0;
        for (double r : f.radii) v *= unit_ball_volume(d) * pow_i(r, d);
        return v;
    }
    std::optional<double> operator()(const LpBallForm& f) const {
        if (f.p == 2.0) return unit_ball_volume(m) * pow_i(f.radius, m);
        if (f.p == 1.0) return pow_i(2.0 * f.radius, m) / factorial(m);
        if (std::isinf(f.p)) return pow_i(2.0 * f.radius, m);
        return std::nullopt;
    }
    std::optional<double> operator()(const LinearImageForm& f) const {
        if (auto inner = closed_form_volume(*f.inner)) return f.abs_det * *inner;
        return std::nullopt;
    }
    template <class Other> std::optional<double> operator()(const Other&) const {
        return std::nullopt;
    }
};

} // namespace

std::optional<double> closed_form_volume(const StarBody& body) {
    return std::visit(ClosedFormVisitor{body.dim(), block_dim(body.algebra())}, body.form());
}

SliceMeasure slice_measure(const StarBody& body, const Direction& omega,
                           const QuadratureSpec& spec) {
    spec.validate();
    if (omega.algebra() != body.algebra() || omega.dim() != body.dim())
        throw std::invalid_argument("slice_measure: direction mismatch");
    const int d = block_dim(body.algebra());
    const auto phases = shared_phase_set(body.algebra(), spec);
    const Direction anchor = canonical_representative(omega);
    Direction scratch = anchor;
    std::vector<double> profile;
    profile.reserve(phases->size());
    for (const Phase& q : *phases) {
        phase_rotate_into(anchor, q, scratch);
        const double rho = body.radial(scratch);
        double s = rho * rho;
        if (d == 4) s *= s;
        profile.push_back(s);
    }
    const Estimate mean = estimate_mean(profile, spec.chunk_size);
    const double vd = unit_ball_volume(d);
    SliceMeasure slice{anchor, vd * mean.value, 0.0, profile.size()};
    // The circle rule is deterministic; only the quaternionic Monte Carlo
    // phase average carries a standard error.
    if (d == 4) slice.std_error = vd * mean.std_error;
    return slice;
}

Estimate slice_functional(const StarBody& body, const QuadratureSpec& spec) {
    spec.validate();
    const int n = body.blocks();
    const double scale = functional_constant(n, body.algebra()) *
                         pow_i(unit_ball_volume(block_dim(body.algebra())), n);
    const auto phases = shared_phase_set(body.algebra(), spec);
    const auto dirs = sample_sphere(body.algebra(), body.blocks(), spec.sphere_samples,
                                    substream_seed(spec.seed, "functionals/slice_functional"));
    std::vector<double> values(dirs.size());
    parallel_fill(dirs.size(), spec.threads, [&](std::size_t begin, std::size_t end) {
        Direction scratch = dirs[begin];
        for (std::size_t i = begin; i < end; ++i)
            values[i] = pow_i(phase_stats(body, dirs[i], *phases, scratch).mean_s, n);
    });
    return scaled(estimate_mean(values, spec.chunk_size), scale);
}

DefectReport circularity_defect(const StarBody& body, const QuadratureSpec& spec) {
    spec.validate();
    const int n = body.blocks();
    const double scale = functional_constant(n, body.algebra()) *
                         pow_i(unit_ball_volume(block_dim(body.algebra())), n);
    const auto phases = shared_phase_set(body.algebra(), spec);
    const auto dirs = sample_sphere(body.algebra(), body.blocks(), spec.sphere_samples,
                                    substream_seed(spec.seed, "functionals/circularity_defect"));

    const std::size_t count = dirs.size();
    std::vector<double> vol_terms(count), fun_terms(count), gap_terms(count), raw_rel(count);
    parallel_fill(count, spec.threads, [&](std::size_t begin, std::size_t end) {
        Direction scratch = dirs[begin];
        for (std::size_t i = begin; i < end; ++i) {
            const PhaseStats st = phase_stats(body, dirs[i], *phases, scratch);
            const double v = st.mean_sn;
            const double f = pow_i(st.mean_s, n);
            const double gap = v - f;
            const double mag = std::max(std::abs(v), std::abs(f));
            vol_terms[i] = v;
            fun_terms[i] = f;
            raw_rel[i] = mag > 0.0 ? gap / mag : 0.0;
            // Gaps at roundoff scale are zeroed: the discrete Jensen gap of
            // the rule is exactly >= 0, and an exactly circular body must
            // report defect 0 rather than accumulated rounding dust.
            gap_terms[i] = std::abs(gap) <= kJensenGapRelFloor * mag ? 0.0 : gap;
        }
    });

    DefectReport report;
    report.volume = scaled(estimate_mean(vol_terms, spec.chunk_size), scale);
    report.functional = scaled(estimate_mean(fun_terms, spec.chunk_size), scale);
    report.defect = scaled(estimate_mean(gap_terms, spec.chunk_size), scale);
    report.defect_significance = significance(report.defect.value, report.defect.std_error);
    report.max_rel_jensen_gap = *std::max_element(raw_rel.begin(), raw_rel.end());
    report.min_jensen_gap = *std::min_element(gap_terms.begin(), gap_terms.end()) * scale;
    return report;
}

StarBody circularize(const StarBody& body, const QuadratureSpec& spec) {
    spec.validate();
    return StarBody::phase_average(body, shared_phase_set(body.algebra(), spec))
        .with_label("circularized(" + body.label() + ")");
}

} // namespace slicevol
