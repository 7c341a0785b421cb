#include "tabor/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tabor {

namespace {

RatVec combo(const Rational& t, const RatVec& x, const RatVec& y) {
    return vec_add(vec_scale(t, x), vec_scale(Rational(1) - t, y));
}

Rational two_dz(const Rational& t, unsigned k) {
    return Rational(2) * dist_to_integers(pow2(static_cast<int>(k)) * t);
}

Rational inf_radius(const GeneratorSet& s) {
    Rational r;
    for (const auto& p : s.points)
        for (const auto& c : p) r = max(r, c.abs());
    return r;
}

Rational inf_norm(const RatVec& v) {
    Rational r;
    for (const auto& c : v) r = max(r, c.abs());
    return r;
}

void contextualize(InclusionReport& r, const RatVec& x, const RatVec& y,
                   std::optional<Rational> t, const std::string& cell = {}) {
    if (!r.witness) return;
    r.witness->x = x;
    r.witness->y = y;
    r.witness->t = std::move(t);
    if (!cell.empty()) r.witness->detail = cell + " " + r.witness->detail;
}

struct Aggregate {
    InclusionReport rep;

    void merge(const InclusionReport& r) {
        if (r.margin && (!rep.margin || *r.margin < *rep.margin)) rep.margin = r.margin;
        if (r.margin_real) {
            // negative values are failure sentinels (keep the worst); positive
            // ones are certified inflation radii (keep the largest)
            if (!rep.margin_real)
                rep.margin_real = r.margin_real;
            else if (*r.margin_real < 0.0 || *rep.margin_real < 0.0)
                rep.margin_real = std::min(*rep.margin_real, *r.margin_real);
            else
                rep.margin_real = std::max(*rep.margin_real, *r.margin_real);
        }
        if (!r.exact) rep.exact = false;
        if (r.verdict == Verdict::Fail) {
            if (rep.verdict != Verdict::Fail) {
                rep.verdict = Verdict::Fail;
                rep.witness = r.witness;
            }
        } else if (r.verdict == Verdict::Approximate && rep.verdict == Verdict::Pass) {
            rep.verdict = Verdict::Approximate;
        }
    }
};

GeneratorSet weighted_pair_sum(const Rational& t, const GeneratorSet& fx,
                               const GeneratorSet& fy) {
    return minkowski_sum(scale(t, fx), scale(Rational(1) - t, fy));
}

InclusionReport jensen_check(const Scenario& sc, bool convex) {
    Aggregate agg;
    for (const auto& [x, y] : sc.all_pairs()) {
        RatVec u = vec_sub(x, y);
        GeneratorSet fx = sc.F.evaluate(x);
        GeneratorSet fy = sc.F.evaluate(y);
        GeneratorSet fmid = sc.F.evaluate(combo(Rational(1, 2), x, y));
        GeneratorSet mean = weighted_pair_sum(Rational(1, 2), fx, fy);
        GeneratorSet a = sc.A.evaluate(u);
        GeneratorSet b = sc.B.evaluate(u);
        GeneratorSet lhs = minkowski_sum(convex ? mean : fmid, a);
        GeneratorSet rhs = minkowski_sum(convex ? fmid : mean, b);
        InclusionReport rep = subset_of(lhs, rhs);
        contextualize(rep, x, y, Rational(1, 2));
        agg.merge(rep);
    }
    agg.rep.check_id = convex ? "jensen_convexity" : "jensen_concavity";
    return agg.rep;
}

InclusionReport induction_check(const Scenario& sc, const RatVec& x, const RatVec& y,
                                unsigned n_max, bool convex) {
    if (n_max > sc.dyadic_depth)
        throw std::invalid_argument("induction check: n_max exceeds the scenario depth");
    RatVec u = vec_sub(x, y);
    std::vector<GeneratorSet> a_k, b_k;
    for (unsigned k = 0; k < std::max(1u, n_max); ++k) {
        RatVec uk = vec_scale(pow2(-static_cast<int>(k)), u);
        a_k.push_back(sc.A.evaluate(uk));
        b_k.push_back(sc.B.evaluate(uk));
    }
    GeneratorSet fx = sc.F.evaluate(x);
    GeneratorSet fy = sc.F.evaluate(y);
    if (!convex) {
        auto grid = default_t_grid();
        GeneratorSet fmid = sc.F.evaluate(combo(Rational(1, 2), x, y));
        if (!is_closedly_K_convex(fx, sc.K, grid) || !is_closedly_K_convex(fy, sc.K, grid) ||
            !is_closedly_K_convex(fmid, sc.K, grid))
            throw HypothesisFailure("concave induction: F values are not closedly K-convex");
    }

    Aggregate agg;
    for (unsigned n = 1; n <= n_max; ++n) {
        Int cells = Int(1) << n;
        for (Int mi = 0; mi <= cells; ++mi) {
            Rational t(mi, cells);
            GeneratorSet weighted = weighted_pair_sum(t, fx, fy);
            GeneratorSet fmid = sc.F.evaluate(combo(t, x, y));

            GeneratorSet lhs = convex ? weighted : fmid;
            for (unsigned k = 0; k < n; ++k) {
                Rational coef = two_dz(t, k);
                if (!coef.is_zero()) lhs = minkowski_sum(lhs, scale(coef, a_k[k]));
            }
            GeneratorSet rhs = convex ? fmid : weighted;
            for (unsigned k = 0; k < n; ++k) {
                Rational coef = two_dz(t, k);
                if (convex && sc.reading == CvnReading::PrintedHalfB)
                    coef = coef / Rational(2);
                if (!coef.is_zero()) rhs = minkowski_sum(rhs, scale(coef, b_k[k]));
            }
            InclusionReport rep = subset_of(lhs, rhs);
            contextualize(rep, x, y, t,
                          "(n=" + std::to_string(n) + ",m=" + mi.str() + ")");
            agg.merge(rep);
        }
    }
    agg.rep.check_id = convex ? "induction_convex" : "induction_concave";
    return agg.rep;
}

InclusionReport conclusion_check(const Scenario& sc, const RatVec& x, const RatVec& y,
                                 const DyadicRational& t, bool convex) {
    Rational tr = t.to_rational();
    if (tr < Rational(0) || tr > Rational(1))
        throw std::invalid_argument("conclusion check: t outside [0,1]");
    RatVec u = vec_sub(x, y);
    const unsigned m = t.exponent();
    const unsigned n = m > 0 ? m - 1 : 0;

    GeneratorSet k_set = sc.K.as_set();
    RatVec zero_value(static_cast<std::size_t>(sc.A.value_dim()));
    for (unsigned k = 0; k <= n; ++k) {
        GeneratorSet a = sc.A.evaluate(vec_scale(pow2(-static_cast<int>(k)), u));
        if (!contains_point(minkowski_sum(a, k_set), zero_value))
            throw HypothesisFailure("conclusion check: 0 not in cl(A(u/2^k)+K) at k=" +
                                    std::to_string(k));
    }

    GeneratorSet fx = sc.F.evaluate(x);
    GeneratorSet fy = sc.F.evaluate(y);
    GeneratorSet fmid = sc.F.evaluate(combo(tr, x, y));
    GeneratorSet weighted = weighted_pair_sum(tr, fx, fy);

    TransformResult at = tabor_transform(sc.A, tr, u, n);
    TransformResult bt = tabor_transform(sc.B, tr, u, n);

    SetUnion lhs = minkowski_sum(simplified(at.value), convex ? weighted : fmid);
    SetUnion rhs_union = minkowski_sum(simplified(bt.value), convex ? fmid : weighted);

    InclusionReport rep;
    if (auto rhs = as_single_polyhedron(rhs_union)) {
        rep = subset_of(lhs, *rhs);
    } else {
        rep = subset_of(lhs, rhs_union);
    }
    contextualize(rep, x, y, tr);
    rep.check_id = convex ? "conclusion_convex" : "conclusion_concave";
    return rep;
}

// ---- extension machinery ------------------------------------------------

/// Exact bound for sum_n 2*min(1/2, 2^n*delta)*2^(-alpha*n).
Rational dz_shift_series_bound(unsigned alpha, const Rational& delta) {
    const Rational half(1, 2);
    unsigned nstar = 0;
    Rational p = delta;
    while (p < half && nstar < 512) {
        p *= Rational(2);
        ++nstar;
    }
    Rational head, term = Rational(2) * delta;
    Rational step = pow2(1 - static_cast<int>(alpha));
    for (unsigned i = 0; i < nstar; ++i) {
        head += term;
        term *= step;
    }
    Int twoa = Int(1) << alpha;
    Rational tail = pow2(-static_cast<int>(alpha * nstar)) * Rational(twoa, twoa - 1);
    return head + tail;
}

/// Certified sup-displacement of fam^perp(t,u) against fam^perp(s,u) for
/// |t-s| <= delta.
Rational transform_shift_bound(const SetFamily& fam, const RatVec& u, const Rational& delta) {
    switch (fam.kind()) {
        case SetFamily::Kind::Singleton0:
            return Rational(0);
        case SetFamily::Kind::Constant: {
            for (const auto& p : fam.constant().points)
                if (!vec_is_zero(p))
                    throw HypothesisFailure(
                        "extension: constant family with nonzero points has no certified modulus");
            return Rational(0);  // pure cone, invariant in t outside the integers
        }
        case SetFamily::Kind::Template: {
            const PhiSpec& phi = fam.phi();
            if (phi.form != PhiSpec::Form::Power || !phi.integer_alpha)
                throw HypothesisFailure("extension: no certified modulus for this phi");
            auto npow = norm_pow_exact(u, *phi.integer_alpha, phi.norm);
            if (!npow)
                throw HypothesisFailure("extension: norm power not exactly representable");
            return phi.c * *npow * dz_shift_series_bound(*phi.integer_alpha, delta) *
                   max(inf_radius(fam.s0()), Rational(1));
        }
        case SetFamily::Kind::Epigraph1D:
            throw HypothesisFailure("extension: epigraph error families have no certified modulus");
    }
    throw std::logic_error("transform_shift_bound: bad kind");
}

Rational f_lipschitz_bound(const SetFamily& f) {
    switch (f.kind()) {
        case SetFamily::Kind::Epigraph1D:
            return f.poly().derivative_sup_bound();
        case SetFamily::Kind::Constant:
        case SetFamily::Kind::Singleton0:
            return Rational(0);
        case SetFamily::Kind::Template:
            throw HypothesisFailure("extension: template-valued F has no certified modulus");
    }
    throw std::logic_error("f_lipschitz_bound: bad kind");
}

Rational pair_gap(const GeneratorSet& fx, const GeneratorSet& fy) {
    Rational g;
    for (const auto& p : fx.points)
        for (const auto& q : fy.points) g = max(g, inf_norm(vec_sub(p, q)));
    return g;
}

void extension_regularity_gates(const Scenario& sc, const RatVec& x, const RatVec& y,
                                const Rational& s_rat, const Rational& tol, bool concave) {
    auto grid = default_t_grid();
    // (i) F(x') closedly K-starshaped w.r.t. some element, closedly K-lower bounded
    for (const RatVec& p : {x, y, combo(s_rat, x, y)}) {
        GeneratorSet fp = sc.F.evaluate(p);
        bool starshaped = false;
        for (const auto& anchor : fp.points)
            if (is_closedly_K_starshaped(fp, sc.K, anchor, grid)) {
                starshaped = true;
                break;
            }
        if (!starshaped)
            throw HypothesisFailure("extension: F value not closedly K-starshaped at a sample");
        if (!k_lower_bound_witness(fp, sc.K))
            throw HypothesisFailure("extension: F value not closedly K-lower bounded");
        if (concave && !is_closedly_K_convex(fp, sc.K, grid))
            throw HypothesisFailure("extension: F value not closedly K-convex");
    }
    // (ii) directional K-upper semicontinuity along y-x at the target point
    RatVec h = vec_sub(y, x);
    auto rows = directional_usc_probe(sc.F, combo(s_rat, x, y), h, sc.K, {max(tol, Rational(1, 1024))},
                                      pow2(-30));
    if (!rows.front().found)
        throw HypothesisFailure("extension: directional K-upper semicontinuity probe failed");
    // (iii) A(u), B(u) closedly K-starshaped and K-lower bounded
    RatVec u = vec_sub(x, y);
    for (const SetFamily* fam : {&sc.A, &sc.B}) {
        GeneratorSet v = fam->evaluate(u);
        if (!is_closedly_K_starshaped(v, sc.K, grid))
            throw HypothesisFailure("extension: error-family value not closedly K-starshaped");
        if (!k_lower_bound_witness(v, sc.K))
            throw HypothesisFailure("extension: error-family value not closedly K-lower bounded");
    }
    // (iv) serially K-Cauchy sequences A(u/2^k), B(u/2^k)
    for (const SetFamily* fam : {&sc.A, &sc.B}) {
        std::vector<GeneratorSet> terms;
        for (unsigned k = 0; k <= 24; ++k)
            terms.push_back(fam->evaluate(vec_scale(pow2(-static_cast<int>(k)), u)));
        auto rows2 = serially_k_cauchy_probe(terms, sc.K, {Rational(1, 2), max(tol, Rational(1, 4096))}, 24);
        for (const auto& row : rows2)
            if (!row.found)
                throw HypothesisFailure("extension: serially K-Cauchy probe failed");
    }
}

InclusionReport extension_check(const Scenario& sc, const RatVec& x, const RatVec& y,
                                const Rational& t, const Rational& tol, bool convex) {
    if (t < Rational(0) || t > Rational(1))
        throw std::invalid_argument("extension check: t outside [0,1]");
    if (auto dy = DyadicRational::try_from_rational(t)) {
        InclusionReport rep = conclusion_check(sc, x, y, *dy, convex);
        rep.check_id = convex ? "extension_convex" : "extension_concave";
        rep.margin_real = 0.0;  // zero inflation at dyadic t
        return rep;
    }

    // dyadic approximation s = round(t*2^q)/2^q, with q grown until the
    // certified inflation fits under tol
    RatVec u = vec_sub(x, y);
    unsigned q = sc.tol.dyadic_approx_exponent;
    DyadicRational s(0, 0);
    Rational inflation;
    for (;; q += 4) {
        Rational scaled = t * pow2(static_cast<int>(q));
        Int rounded = (scaled + Rational(1, 2)).floor();
        s = DyadicRational(rounded, q);
        Rational s_rat = s.to_rational();
        if (s_rat < Rational(0)) s = DyadicRational(0, 0);
        if (s_rat > Rational(1)) s = DyadicRational(1, 0);
        Rational delta = (t - s.to_rational()).abs();

        GeneratorSet fx = sc.F.evaluate(x);
        GeneratorSet fy = sc.F.evaluate(y);
        inflation = delta * pair_gap(fx, fy) +
                    f_lipschitz_bound(sc.F) * delta * inf_norm(u) +
                    transform_shift_bound(sc.A, u, delta) +
                    transform_shift_bound(sc.B, u, delta);
        if (inflation <= tol) break;
        if (q > 64)
            throw HypothesisFailure("extension: cannot certify the requested tolerance");
    }

    extension_regularity_gates(sc, x, y, s.to_rational(), tol, !convex);

    InclusionReport dyadic_rep = conclusion_check(sc, x, y, s, convex);
    InclusionReport rep = dyadic_rep;
    rep.check_id = convex ? "extension_convex" : "extension_concave";
    rep.margin_real = inflation.to_double();
    rep.exact = false;
    if (dyadic_rep.verdict != Verdict::Fail) {
        rep.verdict = Verdict::Approximate;  // approximate-pass with recorded inflation
    } else {
        rep.verdict = Verdict::Fail;
        contextualize(rep, x, y, t);
    }
    return rep;
}

}  // namespace

std::vector<std::pair<RatVec, RatVec>> Scenario::all_pairs() const {
    std::vector<RatVec> pts;
    if (domain.dim() == 1) {
        const auto& [a, b] = domain.bounds.front();
        pts = {{a}, {b}, {(a + b) / Rational(2)}, {a + Rational(13, 21) * (b - a)}};
    } else {
        RatVec center(static_cast<std::size_t>(domain.dim()));
        for (int c = 0; c < domain.dim(); ++c)
            center[c] = (domain.bounds[c].first + domain.bounds[c].second) / Rational(2);
        std::size_t corners = std::size_t{1} << domain.dim();
        for (std::size_t mask = 0; mask < corners; ++mask) {
            RatVec p(static_cast<std::size_t>(domain.dim()));
            for (int c = 0; c < domain.dim(); ++c)
                p[c] = (mask >> c) & 1 ? domain.bounds[c].second : domain.bounds[c].first;
            pts.push_back(std::move(p));
        }
        pts.push_back(std::move(center));
    }
    auto equal = [](const RatVec& a, const RatVec& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i])) return false;
        return true;
    };
    std::vector<RatVec> uniq;
    for (auto& p : pts) {
        bool seen = false;
        for (const auto& q : uniq) seen = seen || equal(p, q);
        if (!seen) uniq.push_back(std::move(p));
    }
    std::vector<std::pair<RatVec, RatVec>> pairs;
    for (std::size_t i = 0; i < uniq.size(); ++i)
        for (std::size_t j = i + 1; j < uniq.size(); ++j) pairs.emplace_back(uniq[i], uniq[j]);
    for (const auto& pr : sample_pairs) {
        bool seen = false;
        for (const auto& existing : pairs)
            seen = seen || (equal(existing.first, pr.first) && equal(existing.second, pr.second));
        if (!seen) pairs.push_back(pr);
    }
    return pairs;
}

std::vector<InclusionReport> scenario_hypothesis_checks(const Scenario& sc) {
    std::vector<InclusionReport> out;
    auto push = [&](std::string id, bool ok, std::optional<InclusionReport> base = {}) {
        InclusionReport rep = base ? *base : InclusionReport{};
        rep.check_id = std::move(id);
        if (!base) rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
        out.push_back(std::move(rep));
    };

    std::vector<RatVec> us;
    for (const auto& [x, y] : sc.all_pairs()) {
        us.push_back(vec_sub(x, y));
        us.push_back(vec_scale(Rational(1, 2), vec_sub(x, y)));
    }

    auto grid = default_t_grid();
    bool k_in_rec = true, b_convex = true, zero_a = true, zero_b = true, k_eq = true;
    RatVec zero_value(static_cast<std::size_t>(sc.B.value_dim()));
    GeneratorSet k_set = sc.K.as_set();
    for (const auto& u : us) {
        GeneratorSet b = sc.B.evaluate(u);
        ConeSpec rec_b = recession_cone(b);
        k_in_rec = k_in_rec && cone_subset(sc.K, rec_b);
        k_eq = k_eq && cone_subset(rec_b, sc.K);
        b_convex = b_convex && is_closedly_K_convex(b, sc.K, grid);
        zero_b = zero_b && contains_point(b, zero_value);
        GeneratorSet a = sc.A.evaluate(u);
        zero_a = zero_a && contains_point(minkowski_sum(a, k_set), zero_value);
    }
    push("hyp.K_subset_rec_B", k_in_rec);
    push("info.K_equals_rec_B", k_in_rec && k_eq);
    push("hyp.B_closedly_K_convex", b_convex);
    push("hyp.zero_in_A_plus_K", zero_a);
    push("info.zero_in_B", zero_b);

    if (sc.direction == Direction::Concave) {
        bool f_convex = true;
        for (const auto& [x, y] : sc.all_pairs()) {
            f_convex = f_convex && is_closedly_K_convex(sc.F.evaluate(x), sc.K, grid) &&
                       is_closedly_K_convex(sc.F.evaluate(y), sc.K, grid);
        }
        push("hyp.F_closedly_K_convex", f_convex);
    }

    InclusionReport jensen = sc.direction == Direction::Convex ? check_jensen_convexity(sc)
                                                               : check_jensen_concavity(sc);
    jensen.check_id = "hyp." + jensen.check_id;
    out.push_back(std::move(jensen));
    return out;
}

InclusionReport check_jensen_convexity(const Scenario& sc) { return jensen_check(sc, true); }
InclusionReport check_jensen_concavity(const Scenario& sc) { return jensen_check(sc, false); }

InclusionReport dyadic_induction_check_convex(const Scenario& sc, const RatVec& x,
                                              const RatVec& y, unsigned n_max) {
    return induction_check(sc, x, y, n_max, true);
}

InclusionReport dyadic_induction_check_concave(const Scenario& sc, const RatVec& x,
                                               const RatVec& y, unsigned n_max) {
    return induction_check(sc, x, y, n_max, false);
}

InclusionReport check_convexity_conclusion(const Scenario& sc, const RatVec& x, const RatVec& y,
                                           const DyadicRational& t) {
    return conclusion_check(sc, x, y, t, true);
}

InclusionReport check_concavity_conclusion(const Scenario& sc, const RatVec& x, const RatVec& y,
                                           const DyadicRational& t) {
    return conclusion_check(sc, x, y, t, false);
}

InclusionReport bernstein_doetsch_extension_convex(const Scenario& sc, const RatVec& x,
                                                   const RatVec& y, const Rational& t,
                                                   const Rational& tol) {
    return extension_check(sc, x, y, t, tol, true);
}

InclusionReport bernstein_doetsch_extension_concave(const Scenario& sc, const RatVec& x,
                                                    const RatVec& y, const Rational& t,
                                                    const Rational& tol) {
    return extension_check(sc, x, y, t, tol, false);
}

std::vector<UscProbeRow> directional_usc_probe(const SetFamily& f, const RatVec& p,
                                               const RatVec& h, const ConeSpec& k,
                                               const std::vector<Rational>& eps_list,
                                               const Rational& t_min) {
    if (!f.domain().contains(p)) throw std::domain_error("usc probe: p outside domain");
    GeneratorSet fp = f.evaluate(p);

    std::vector<UscProbeRow> rows;
    for (const auto& eps : eps_list) {
        GeneratorSet rhs = minkowski_sum(minkowski_sum(fp, GeneratorSet::box(fp.dim, eps)),
                                         k.as_set());
        auto mesh_ok = [&](const Rational& delta) {
            for (int j = 1; j <= 16; ++j) {
                Rational t = delta * Rational(j, 16);
                if (t < t_min) continue;
                RatVec pt = vec_add(p, vec_scale(t, h));
                if (!f.domain().contains(pt)) continue;
                if (!subset_of(f.evaluate(pt), rhs).passed()) return false;
            }
            return true;
        };

        UscProbeRow row{eps, false, Rational(0)};
        Rational delta(1);
        while (delta >= t_min && !mesh_ok(delta)) delta = delta / Rational(2);
        if (delta >= t_min) {
            // refine upward toward the largest passing delta
            Rational lo = delta, hi = min(Rational(1), delta * Rational(2));
            for (int round = 0; round < 6 && lo < hi; ++round) {
                Rational mid = (lo + hi) / Rational(2);
                if (mesh_ok(mid))
                    lo = mid;
                else
                    hi = mid;
            }
            row.found = true;
            row.delta = lo;
        }
        rows.push_back(row);
    }
    return rows;
}

const char* corollary_name(CorollaryCase c) {
    switch (c) {
        case CorollaryCase::ConvexPlus1: return "convex+1";
        case CorollaryCase::ConvexPlus2: return "convex+2";
        case CorollaryCase::ConcavePlus1: return "concave+1";
        case CorollaryCase::ConcavePlus2: return "concave+2";
        case CorollaryCase::ConvexPlus1Ext: return "convex+1+";
        case CorollaryCase::ConvexPlus2Ext: return "convex+2+";
        case CorollaryCase::ConcavePlus1Ext: return "concave+1+";
        case CorollaryCase::ConcavePlus2Ext: return "concave+2+";
    }
    return "?";
}

InclusionReport corollary_suite(const Scenario& sc, CorollaryCase which) {
    const bool convex = which == CorollaryCase::ConvexPlus1 || which == CorollaryCase::ConvexPlus2 ||
                        which == CorollaryCase::ConvexPlus1Ext ||
                        which == CorollaryCase::ConvexPlus2Ext;
    const bool ext = which == CorollaryCase::ConvexPlus1Ext || which == CorollaryCase::ConvexPlus2Ext ||
                     which == CorollaryCase::ConcavePlus1Ext ||
                     which == CorollaryCase::ConcavePlus2Ext;
    const bool template_on_b = which == CorollaryCase::ConvexPlus1 ||
                               which == CorollaryCase::ConcavePlus1 ||
                               which == CorollaryCase::ConvexPlus1Ext ||
                               which == CorollaryCase::ConcavePlus1Ext;

    // recipe shape: A = {0}, B = phi*S0+K  (plus variants 1) or
    //               A = phi*S0(+{0} cone), B = K  (variants 2)
    const SetFamily& templ = template_on_b ? sc.B : sc.A;
    const SetFamily& other = template_on_b ? sc.A : sc.B;
    if (templ.kind() != SetFamily::Kind::Template)
        throw HypothesisFailure(std::string(corollary_name(which)) +
                                ": scenario does not carry the template on the expected side");
    if (template_on_b) {
        if (other.kind() != SetFamily::Kind::Singleton0)
            throw HypothesisFailure(std::string(corollary_name(which)) + ": A must be {0}");
    } else {
        if (other.kind() != SetFamily::Kind::Constant ||
            !sets_equal(other.constant(), sc.K.as_set()))
            throw HypothesisFailure(std::string(corollary_name(which)) + ": B must equal K");
    }

    auto grid = default_t_grid();
    if (!is_closedly_K_convex(templ.s0(), sc.K, grid))
        throw HypothesisFailure("corollary: S0 is not closedly K-convex (H2)");
    if (!is_closedly_K_starshaped(templ.s0(), sc.K, grid))
        throw HypothesisFailure("corollary: S0 is not closedly K-starshaped (H2)");
    if (templ.phi().form == PhiSpec::Form::Table && !templ.phi().has_certificate)
        throw HypothesisFailure("corollary: phi lacks a summability certificate (H3)");
    if (ext && !k_lower_bound_witness(templ.s0(), sc.K))
        throw HypothesisFailure("corollary: S0 is not closedly K-lower bounded (H2*)");

    Aggregate agg;
    for (const auto& [x, y] : sc.all_pairs()) {
        if (ext) {
            for (const auto& t : sc.real_t_list)
                agg.merge(extension_check(sc, x, y, t, sc.tol.extension_tol, convex));
        } else {
            Int cells = Int(1) << sc.dyadic_depth;
            for (Int j = 0; j <= cells; ++j)
                agg.merge(conclusion_check(sc, x, y,
                                           DyadicRational(j, sc.dyadic_depth), convex));
        }
    }
    agg.rep.check_id = std::string("corollary.") + corollary_name(which);
    return agg.rep;
}

namespace {

SetFamily scaled_template(const SetFamily& fam, const Rational& factor) {
    PhiSpec phi = fam.phi();
    phi.c = phi.c * factor;
    return SetFamily::from_template(phi, fam.s0(), fam.cone(), fam.domain());
}

std::optional<InclusionReport> first_conclusion_failure(const Scenario& sc) {
    const bool convex = sc.direction == Direction::Convex;
    unsigned depth = std::min(sc.dyadic_depth, 6u);
    Int cells = Int(1) << depth;
    for (const auto& [x, y] : sc.all_pairs()) {
        for (Int j = 0; j <= cells; ++j) {
            try {
                InclusionReport rep =
                    conclusion_check(sc, x, y, DyadicRational(j, depth), convex);
                if (rep.verdict == Verdict::Fail) return rep;
            } catch (const HypothesisFailure& hf) {
                InclusionReport rep;
                rep.verdict = Verdict::Fail;
                rep.check_id = std::string("hypothesis: ") + hf.what();
                return rep;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<MutationOutcome> mutation_search(const Scenario& sc,
                                             const std::vector<Rational>& gammas) {
    std::vector<MutationOutcome> out;

    InclusionReport jensen = sc.direction == Direction::Convex ? check_jensen_convexity(sc)
                                                               : check_jensen_concavity(sc);
    if (jensen.verdict == Verdict::Fail) {
        MutationOutcome o;
        o.label = "hypothesis";
        o.perturbation_effective = true;
        o.failure_found = true;
        o.first_failure = std::move(jensen);
        o.first_failure.check_id = "mutation.hypothesis_flagged";
        out.push_back(std::move(o));
        return out;
    }

    {
        MutationOutcome control;
        control.label = "control";
        control.perturbation_effective = true;
        auto fail = first_conclusion_failure(sc);
        control.failure_found = fail.has_value();
        if (fail) control.first_failure = std::move(*fail);
        control.first_failure.check_id = "mutation.control";
        out.push_back(std::move(control));
    }

    for (const auto& gamma : gammas) {
        if (gamma.sign() <= 0) continue;
        {
            MutationOutcome o;
            o.label = "B*(1-" + gamma.str() + ")";
            if (sc.B.kind() == SetFamily::Kind::Template && sc.B.phi().c.sign() > 0) {
                o.perturbation_effective = true;
                Scenario mutated = sc;
                mutated.B = scaled_template(sc.B, Rational(1) - gamma);
                auto fail = first_conclusion_failure(mutated);
                o.failure_found = fail.has_value();
                if (fail) o.first_failure = std::move(*fail);
            }
            o.first_failure.check_id = "mutation.shrink_B";
            out.push_back(std::move(o));
        }
        {
            MutationOutcome o;
            o.label = "A*(1+" + gamma.str() + ")";
            if (sc.A.kind() == SetFamily::Kind::Template && sc.A.phi().c.sign() > 0) {
                o.perturbation_effective = true;
                Scenario mutated = sc;
                mutated.A = scaled_template(sc.A, Rational(1) + gamma);
                auto fail = first_conclusion_failure(mutated);
                o.failure_found = fail.has_value();
                if (fail) o.first_failure = std::move(*fail);
            }
            o.first_failure.check_id = "mutation.grow_A";
            out.push_back(std::move(o));
        }
    }
    return out;
}

ConclusionSets conclusion_sets(const Scenario& sc, const RatVec& x, const RatVec& y,
                               const DyadicRational& t) {
    Rational tr = t.to_rational();
    RatVec u = vec_sub(x, y);
    const unsigned n = t.exponent() > 0 ? t.exponent() - 1 : 0;
    const bool convex = sc.direction == Direction::Convex;

    GeneratorSet fx = sc.F.evaluate(x);
    GeneratorSet fy = sc.F.evaluate(y);
    GeneratorSet fmid = sc.F.evaluate(combo(tr, x, y));
    GeneratorSet weighted = weighted_pair_sum(tr, fx, fy);

    SetUnion a_perp = simplified(tabor_transform(sc.A, tr, u, n).value);
    SetUnion b_perp = simplified(tabor_transform(sc.B, tr, u, n).value);
    SetUnion lhs = minkowski_sum(a_perp, convex ? weighted : fmid);
    SetUnion rhs = minkowski_sum(b_perp, convex ? fmid : weighted);
    return ConclusionSets{std::move(a_perp), std::move(b_perp), std::move(lhs), std::move(rhs)};
}

RunResult run_scenario(const Scenario& sc, const RunOptions& opt) {
    Scenario scn = sc;
    scn.reading = opt.reading;
    scn.dyadic_depth = opt.depth;

    auto stage_enabled = [&](const char* name) {
        if (scn.checks.empty()) return true;
        for (const auto& c : scn.checks)
            if (c == name) return true;
        return false;
    };

    RunResult res;
    const bool convex = scn.direction == Direction::Convex;

    if (stage_enabled("hypotheses")) {
        std::vector<InclusionReport> hyp = scenario_hypothesis_checks(scn);
        for (const auto& rep : hyp) {
            if (rep.verdict == Verdict::Fail && rep.check_id.rfind("hyp.", 0) == 0)
                res.hypothesis_failure = true;
            res.reports.push_back(rep);
        }
    }
    if (res.hypothesis_failure || opt.depth == 0) return res;

    auto pairs = scn.all_pairs();
    try {
        if (stage_enabled("induction")) {
            for (const auto& [x, y] : pairs) {
                InclusionReport rep = convex
                                          ? dyadic_induction_check_convex(scn, x, y, opt.depth)
                                          : dyadic_induction_check_concave(scn, x, y, opt.depth);
                if (rep.verdict == Verdict::Fail) res.inclusion_failure = true;
                res.reports.push_back(std::move(rep));
            }
        }

        if (stage_enabled("conclusions")) {
            Aggregate conclusions;
            Int cells = Int(1) << opt.depth;
            for (const auto& [x, y] : pairs)
                for (Int j = 0; j <= cells; ++j)
                    conclusions.merge(
                        conclusion_check(scn, x, y, DyadicRational(j, opt.depth), convex));
            conclusions.rep.check_id = convex ? "conclusion_convex" : "conclusion_concave";
            if (conclusions.rep.verdict == Verdict::Fail) res.inclusion_failure = true;
            res.reports.push_back(conclusions.rep);
        }

        if (opt.run_extensions && stage_enabled("extensions") && !scn.real_t_list.empty()) {
            Aggregate extensions;
            for (const auto& [x, y] : pairs)
                for (const auto& t : scn.real_t_list)
                    extensions.merge(extension_check(scn, x, y, t, scn.tol.extension_tol, convex));
            extensions.rep.check_id = convex ? "extension_convex" : "extension_concave";
            if (extensions.rep.verdict == Verdict::Fail) res.inclusion_failure = true;
            res.reports.push_back(extensions.rep);
        }
    } catch (const HypothesisFailure& hf) {
        InclusionReport rep;
        rep.verdict = Verdict::Fail;
        rep.check_id = std::string("hyp.gate: ") + hf.what();
        res.reports.push_back(std::move(rep));
        res.hypothesis_failure = true;
        return res;
    }

    if (opt.run_mutations && stage_enabled("mutations")) {
        for (auto& o : mutation_search(scn, {Rational(1, 1000)})) {
            InclusionReport rep = o.first_failure;
            bool expected = o.label == "control" ? !o.failure_found : o.failure_found;
            rep.verdict = !o.perturbation_effective ? Verdict::Approximate
                                                    : (expected ? Verdict::Pass : Verdict::Approximate);
            rep.check_id = "mutation." + o.label +
                           (o.perturbation_effective ? (o.failure_found ? " [caught]" : " [no failure]")
                                                     : " [no-op]");
            res.reports.push_back(std::move(rep));
        }
    }
    return res;
}

}  // namespace tabor
