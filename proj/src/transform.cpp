#include "tabor/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tabor {

Box Box::interval(Rational lo, Rational hi) {
    if (hi < lo) throw std::invalid_argument("Box: hi < lo");
    Box b;
    b.bounds.emplace_back(std::move(lo), std::move(hi));
    return b;
}

Box Box::cube(int dim, const Rational& radius) {
    Box b;
    for (int i = 0; i < dim; ++i) b.bounds.emplace_back(-radius, radius);
    return b;
}

bool Box::contains(const RatVec& x) const {
    if (x.size() != bounds.size()) return false;
    for (std::size_t i = 0; i < bounds.size(); ++i)
        if (x[i] < bounds[i].first || x[i] > bounds[i].second) return false;
    return true;
}

Box Box::minus_self() const {
    Box b;
    for (const auto& [lo, hi] : bounds) b.bounds.emplace_back(lo - hi, hi - lo);
    return b;
}

PiecewisePoly PiecewisePoly::single(Rational lo, Rational hi, std::vector<Rational> coeffs) {
    PiecewisePoly p;
    p.pieces.push_back(Piece{std::move(lo), std::move(hi), std::move(coeffs)});
    return p;
}

Rational PiecewisePoly::operator()(const Rational& x) const {
    if (pieces.empty()) throw std::logic_error("PiecewisePoly: empty");
    const Piece* piece = nullptr;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        bool last = i + 1 == pieces.size();
        if (x >= pieces[i].lo && (x < pieces[i].hi || (last && x == pieces[i].hi))) {
            piece = &pieces[i];
            break;
        }
    }
    if (!piece) throw std::domain_error("PiecewisePoly: argument outside breakpoints");
    Rational acc, xp(1);
    for (const auto& c : piece->coeffs) {
        acc += c * xp;
        xp *= x;
    }
    return acc;
}

Rational PiecewisePoly::derivative_sup_bound() const {
    Rational bound;
    for (const auto& piece : pieces) {
        Rational m = max(piece.lo.abs(), piece.hi.abs());
        Rational b;
        for (std::size_t i = 1; i < piece.coeffs.size(); ++i)
            b += Rational(static_cast<long long>(i)) * piece.coeffs[i].abs() * m.pow(static_cast<unsigned>(i - 1));
        bound = max(bound, b);
    }
    return bound;
}

SetFamily SetFamily::epigraph(PiecewisePoly f, Box domain, int ray_sign) {
    if (domain.dim() != 1) throw std::invalid_argument("epigraph family: domain must be 1-D");
    SetFamily s;
    s.kind_ = Kind::Epigraph1D;
    s.domain_ = std::move(domain);
    s.f_ = std::move(f);
    s.ray_sign_ = ray_sign >= 0 ? 1 : -1;
    s.value_dim_ = 1;
    return s;
}

SetFamily SetFamily::from_template(PhiSpec phi, GeneratorSet s0, ConeSpec k, Box domain) {
    if (s0.dim != k.dim) throw std::invalid_argument("template family: S0/K dimension mismatch");
    SetFamily s;
    s.kind_ = Kind::Template;
    s.domain_ = std::move(domain);
    s.phi_ = std::move(phi);
    s.value_dim_ = s0.dim;
    s.s0_ = std::move(s0);
    s.k_ = std::move(k);
    return s;
}

SetFamily SetFamily::constant_set(GeneratorSet a, Box domain) {
    SetFamily s;
    s.kind_ = Kind::Constant;
    s.domain_ = std::move(domain);
    s.value_dim_ = a.dim;
    s.constant_ = std::move(a);
    return s;
}

SetFamily SetFamily::singleton_zero(int value_dim, Box domain) {
    SetFamily s;
    s.kind_ = Kind::Singleton0;
    s.domain_ = std::move(domain);
    s.value_dim_ = value_dim;
    return s;
}

GeneratorSet SetFamily::evaluate(const RatVec& x) const {
    if (!domain_.contains(x)) throw std::domain_error("SetFamily: argument outside domain");
    switch (kind_) {
        case Kind::Epigraph1D: {
            Rational v = f_(x[0]);
            return GeneratorSet(1, {{v}}, {{Rational(ray_sign_)}});
        }
        case Kind::Template: {
            if (!phi_.integer_alpha)
                throw std::domain_error("template family: non-integer alpha has no exact evaluation");
            auto p = norm_pow_exact(x, *phi_.integer_alpha, phi_.norm);
            if (!p)
                throw std::domain_error("template family: norm power not exactly representable");
            return minkowski_sum(scale(phi_.c * *p, *s0_), k_->as_set());
        }
        case Kind::Constant:
            return *constant_;
        case Kind::Singleton0:
            return GeneratorSet::origin(value_dim_);
    }
    throw std::logic_error("SetFamily: bad kind");
}

namespace {

Rational two_dz(const Rational& t, unsigned k) {
    return Rational(2) * dist_to_integers(pow2(static_cast<int>(k)) * t);
}

/// Union of the running partial sums; identical consecutive parts skipped.
struct PartialAccumulator {
    std::optional<GeneratorSet> sum;
    std::vector<GeneratorSet> parts;

    void add(const GeneratorSet& term) {
        bool degenerate_term =
            term.rays.empty() && term.points.size() == 1 && vec_is_zero(term.points[0]);
        if (!sum) {
            sum = term;
        } else if (!degenerate_term) {
            sum = minkowski_sum(*sum, term);
        } else if (!parts.empty()) {
            return;  // adding {0} repeats the previous partial
        }
        parts.push_back(*sum);
    }
};

double template_tail_bound(const SetFamily& s, const RatVec& x, unsigned n) {
    const PhiSpec& phi = s.phi();
    if (phi.form != PhiSpec::Form::Power) return 0.0;
    double xn = norm_real(x, phi.norm);
    double ratio = std::exp2(-phi.alpha);
    double scalar_tail =
        phi.c.to_double() * std::pow(xn, phi.alpha) * std::pow(ratio, n + 1) / (1.0 - ratio);
    double radius = 0.0;
    for (const auto& p : s.s0().points)
        for (const auto& c : p) radius = std::max(radius, std::abs(c.to_double()));
    return scalar_tail * radius;
}

}  // namespace

TransformResult tabor_transform(const SetFamily& s, const Rational& t, const RatVec& x,
                                unsigned n) {
    if (!s.domain().contains(x)) throw std::domain_error("tabor_transform: x outside domain");
    PartialAccumulator acc;
    for (unsigned k = 0; k <= n; ++k) {
        Rational coef = two_dz(t, k);
        GeneratorSet term = coef.is_zero()
                                ? GeneratorSet::origin(s.value_dim())
                                : scale(coef, s.evaluate(vec_scale(pow2(-static_cast<int>(k)), x)));
        acc.add(term);
    }

    TransformResult out{SetUnion(std::move(acc.parts)), static_cast<int>(n), {}, false};
    auto dy = DyadicRational::try_from_rational(t);
    if (dy) {
        out.exact = dy->exponent() == 0 || n >= dy->exponent() - 1;
    }
    if (s.kind() == SetFamily::Kind::Template)
        out.tail_certificate = out.exact ? 0.0 : template_tail_bound(s, x, n);
    return out;
}

TransformResult takagi_transform(const SetFamily& s, const Rational& t, const RatVec& u,
                                 unsigned n) {
    if (!s.domain().contains(u)) throw std::domain_error("takagi_transform: u outside domain");
    PartialAccumulator acc;
    for (unsigned k = 0; k <= n; ++k) {
        RatVec arg = vec_scale(two_dz(t, k), u);
        GeneratorSet term = scale(pow2(-static_cast<int>(k)), s.evaluate(arg));
        acc.add(term);
    }

    TransformResult out{SetUnion(std::move(acc.parts)), static_cast<int>(n), {}, false};
    auto dy = DyadicRational::try_from_rational(t);
    if (dy && (dy->exponent() == 0 || n >= dy->exponent() - 1)) {
        // Later terms are (1/2^k) S(0); exact only when they are absorbed.
        GeneratorSet at_zero = s.evaluate(RatVec(u.size()));
        bool zero_points = true;
        for (const auto& p : at_zero.points)
            if (!vec_is_zero(p)) zero_points = false;
        const GeneratorSet& last = out.value.parts.back();
        bool rays_absorbed = true;
        for (const auto& r : at_zero.rays)
            if (!cone_contains(last.rays, r, last.dim)) rays_absorbed = false;
        out.exact = zero_points && rays_absorbed;
    }
    if (s.kind() == SetFamily::Kind::Template)
        out.tail_certificate = out.exact ? 0.0 : template_tail_bound(s, u, n);
    return out;
}

ClosedFormResult tabor_closed_form(const PhiSpec& phi, const GeneratorSet& s0, const ConeSpec& k,
                                   const Rational& t, const RatVec& x) {
    if (t.is_integer())
        throw std::domain_error("tabor_closed_form: defined for t outside the integers");
    auto grid = default_t_grid();
    if (!is_closedly_K_convex(s0, k, grid))
        throw HypothesisFailure("tabor_closed_form: S0 is not closedly K-convex");
    if (!is_closedly_K_starshaped(s0, k, grid))
        throw HypothesisFailure("tabor_closed_form: S0 is not closedly K-starshaped");

    std::optional<Rational> exact;
    if (phi.form == PhiSpec::Form::Power && phi.integer_alpha) {
        if (auto dy = DyadicRational::try_from_rational(t)) {
            if (auto np = norm_pow_exact(x, *phi.integer_alpha, phi.norm))
                exact = phi.c * *np * tau_alpha_dyadic_exact(*phi.integer_alpha, *dy);
        }
    }

    ClosedFormResult res{GeneratorSet::origin(s0.dim), GeneratorSet::origin(s0.dim),
                         {}, Rational(0), Rational(0)};
    if (exact) {
        res.scalar_exact = *exact;
        res.scalar_lo = res.scalar_hi = *exact;
    } else {
        const double tol = 1e-13;
        SeriesValue sv = phi_perp(phi, t.to_double(), norm_real(x, phi.norm), tol);
        double slop = 1e-14 * (std::abs(sv.value) + 1.0) +
                      4e-16 * static_cast<double>(sv.terms_used) * std::abs(sv.value);
        res.scalar_lo = Rational::from_double(sv.value - sv.error_bound - slop);
        res.scalar_hi = Rational::from_double(sv.value + sv.error_bound + slop);
        if (res.scalar_lo.sign() < 0 && sv.value >= 0.0) res.scalar_lo = Rational(0);
    }
    res.set = minkowski_sum(scale(res.scalar_hi, s0), k.as_set());
    res.set_lo = exact ? res.set : minkowski_sum(scale(res.scalar_lo, s0), k.as_set());
    return res;
}

std::pair<InclusionReport, InclusionReport> prop_tab_equivalence_check(
    const PhiSpec& phi, const GeneratorSet& s0, const ConeSpec& k, const DyadicRational& t,
    const RatVec& x, unsigned n) {
    if (t.is_integer())
        throw std::domain_error("prop_tab_equivalence_check: t must not be an integer");
    Rational tr = t.to_rational();

    Rational reach(1);
    for (const auto& c : x) reach = max(reach, c.abs());
    Box domain = Box::cube(static_cast<int>(x.size()), reach + Rational(1));
    SetFamily family = SetFamily::from_template(phi, s0, k, domain);

    unsigned need = t.exponent() == 0 ? 0 : t.exponent() - 1;
    TransformResult transform = tabor_transform(family, tr, x, std::max(n, need));
    ClosedFormResult closed = tabor_closed_form(phi, s0, k, tr, x);

    InclusionReport forward = subset_of(transform.value, closed.set);
    forward.check_id = "prop_tab.forward";

    InclusionReport reverse;
    auto single = as_single_polyhedron(transform.value);
    if (single) {
        reverse = subset_of(closed.set_lo, *single);
    } else {
        reverse = subset_of(closed.set_lo, transform.value);
    }
    reverse.check_id = "prop_tab.reverse";

    if (!closed.exact()) {
        forward.exact = false;
        reverse.exact = false;
        double width = (closed.scalar_hi - closed.scalar_lo).to_double();
        double radius = 0.0;
        for (const auto& p : s0.points)
            for (const auto& c : p) radius = std::max(radius, std::abs(c.to_double()));
        double tolerance = width * (radius + 1.0);
        for (InclusionReport* rep : {&forward, &reverse}) {
            if (rep->verdict == Verdict::Fail && rep->margin &&
                rep->margin->to_double() > -tolerance)
                rep->verdict = Verdict::Approximate;
        }
    }
    return {forward, reverse};
}

std::vector<CauchyProbeRow> serially_k_cauchy_probe(const std::vector<GeneratorSet>& terms,
                                                    const ConeSpec& k,
                                                    const std::vector<Rational>& eps_list,
                                                    unsigned n_max) {
    if (terms.empty()) throw std::invalid_argument("serially_k_cauchy_probe: no terms");
    const unsigned last = std::min<unsigned>(n_max, static_cast<unsigned>(terms.size()) - 1);
    const int dim = terms.front().dim;

    std::vector<CauchyProbeRow> rows;
    for (const auto& eps : eps_list) {
        GeneratorSet rhs = minkowski_sum(GeneratorSet::box(dim, eps), k.as_set());
        CauchyProbeRow row{eps, false, 0};
        for (unsigned m = 0; m <= last && !row.found; ++m) {
            bool ok = true;
            std::optional<GeneratorSet> sum;
            for (unsigned j = m; j <= last && ok; ++j) {
                sum = sum ? minkowski_sum(*sum, terms[j]) : terms[j];
                if (!subset_of(*sum, rhs).passed()) ok = false;
            }
            if (ok) {
                row.found = true;
                row.m = m;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<GeneratorSet> kc_terms(const GeneratorSet& s, const ConeSpec& k,
                                   const std::vector<Rational>& lambdas) {
    std::vector<GeneratorSet> out;
    out.reserve(lambdas.size());
    for (const auto& l : lambdas) out.push_back(minkowski_sum(scale(l, s), k.as_set()));
    return out;
}

}  // namespace tabor
