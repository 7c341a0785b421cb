#include "tabor/setarith.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace tabor {

RatVec vec_add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec vec_scale(const Rational& t, const RatVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = t * v[i];
    return r;
}

RatVec vec_neg(const RatVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

bool vec_is_zero(const RatVec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

namespace {

void check_dim(int dim) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("setarith: dim must be 1..3");
}

void check_vec(const RatVec& v, int dim, const char* what) {
    if (static_cast<int>(v.size()) != dim)
        throw std::invalid_argument(std::string("setarith: ") + what + " has wrong dimension");
}

/// Direction rescaled to a primitive integer vector, sign preserved.
RatVec primitive(const RatVec& v) {
    Int l = 1;
    for (const auto& c : v) l = boost::multiprecision::lcm(l, c.den());
    std::vector<Int> ints;
    Int g = 0;
    for (const auto& c : v) {
        Int x = c.num() * (l / c.den());
        ints.push_back(x);
        g = boost::multiprecision::gcd(g, x < 0 ? Int(-x) : x);
    }
    RatVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = g > 1 ? Rational(ints[i] / g) : Rational(ints[i]);
    return out;
}

Rational dot(const RatVec& a, const RatVec& b) {
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

bool vec_eq(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

void dedup_vecs(std::vector<RatVec>& vs) {
    std::vector<RatVec> out;
    for (auto& v : vs) {
        bool seen = false;
        for (const auto& w : out)
            if (vec_eq(v, w)) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(std::move(v));
    }
    vs = std::move(out);
}

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rational> farkas;  // y with y^T A <= 0, y^T b > 0 when infeasible
};

/// Phase-1 simplex with Bland's rule on { x >= 0 : A x = b }, exact.
FeasibilityResult feasible_eq(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    std::vector<int> row_sign(m, 1);
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < Rational(0)) {
            row_sign[i] = -1;
            b[i] = -b[i];
            for (auto& c : a[i]) c = -c;
        }
    }

    const std::size_t cols = n + m + 1;  // original, artificial, rhs
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = Rational(1);
        t[i][cols - 1] = b[i];
        basis[i] = n + i;
    }
    std::vector<Rational> obj(cols);  // reduced costs; artificials start basic
    for (std::size_t j = 0; j < cols; ++j) {
        Rational s;
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        obj[j] = (j >= n && j < n + m ? Rational(1) : Rational(0)) - s;
    }

    for (;;) {
        std::size_t enter = cols - 1;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (obj[j] < Rational(0)) {
                enter = j;
                break;
            }
        if (enter == cols - 1) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > Rational(0)) {
                Rational ratio = t[i][cols - 1] / t[i][enter];
                if (leave == m || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave == m) throw std::logic_error("simplex: phase-1 objective unbounded");

        Rational piv = t[leave][enter];
        for (auto& c : t[leave]) c /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter].is_zero()) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        if (!obj[enter].is_zero()) {
            Rational f = obj[enter];
            for (std::size_t j = 0; j < cols; ++j) obj[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    Rational value;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n && basis[i] < n + m) value += t[i][cols - 1];

    FeasibilityResult res;
    res.feasible = value.is_zero();
    if (!res.feasible) {
        res.farkas.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            Rational y = Rational(1) - obj[n + i];
            res.farkas[i] = row_sign[i] < 0 ? -y : y;
        }
    }
    return res;
}

/// Feasibility of lambda >= 0, mu >= 0 with
///   sum lambda_i p_i + sum mu_j r_j = p,  sum lambda_i = 1.
FeasibilityResult membership_lp(const GeneratorSet& s, const RatVec& p) {
    const std::size_t np = s.points.size(), nr = s.rays.size();
    const std::size_t rows = static_cast<std::size_t>(s.dim) + 1;
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(np + nr));
    std::vector<Rational> b(rows);
    for (int c = 0; c < s.dim; ++c) {
        for (std::size_t i = 0; i < np; ++i) a[c][i] = s.points[i][c];
        for (std::size_t j = 0; j < nr; ++j) a[c][np + j] = s.rays[j][c];
        b[c] = p[c];
    }
    for (std::size_t i = 0; i < np; ++i) a[s.dim][i] = Rational(1);
    b[s.dim] = Rational(1);
    return feasible_eq(std::move(a), std::move(b));
}

RatVec perp2(const RatVec& v) { return {-v[1], v[0]}; }

RatVec cross3(const RatVec& u, const RatVec& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

std::vector<RatVec> direction_pool(const GeneratorSet& g) {
    std::vector<RatVec> dirs;
    for (std::size_t i = 0; i < g.points.size(); ++i)
        for (std::size_t j = i + 1; j < g.points.size(); ++j) {
            RatVec d = vec_sub(g.points[j], g.points[i]);
            if (!vec_is_zero(d)) dirs.push_back(primitive(d));
        }
    for (const auto& r : g.rays) dirs.push_back(primitive(r));
    dedup_vecs(dirs);
    return dirs;
}

}  // namespace

GeneratorSet::GeneratorSet(int d, std::vector<RatVec> pts, std::vector<RatVec> rs)
    : dim(d), points(std::move(pts)), rays(std::move(rs)) {
    check_dim(dim);
    if (points.empty()) throw std::invalid_argument("GeneratorSet: needs at least one point");
    for (const auto& p : points) check_vec(p, dim, "point");
    for (const auto& r : rays) {
        check_vec(r, dim, "ray");
        if (vec_is_zero(r)) throw std::invalid_argument("GeneratorSet: zero ray");
    }
}

GeneratorSet GeneratorSet::singleton(RatVec p) {
    int d = static_cast<int>(p.size());
    return GeneratorSet(d, {std::move(p)});
}

GeneratorSet GeneratorSet::origin(int dim) {
    return GeneratorSet(dim, {RatVec(static_cast<std::size_t>(dim))});
}

GeneratorSet GeneratorSet::interval(const Rational& lo, const Rational& hi) {
    if (hi < lo) throw std::invalid_argument("GeneratorSet::interval: hi < lo");
    return GeneratorSet(1, {{lo}, {hi}});
}

GeneratorSet GeneratorSet::half_line(const Rational& anchor, int sign) {
    return GeneratorSet(1, {{anchor}}, {{Rational(sign >= 0 ? 1 : -1)}});
}

GeneratorSet GeneratorSet::box(int dim, const Rational& eps) {
    std::vector<RatVec> corners;
    std::size_t count = std::size_t{1} << dim;
    for (std::size_t mask = 0; mask < count; ++mask) {
        RatVec p(static_cast<std::size_t>(dim));
        for (int c = 0; c < dim; ++c) p[c] = (mask >> c) & 1 ? eps : -eps;
        corners.push_back(std::move(p));
    }
    return GeneratorSet(dim, std::move(corners));
}

ConeSpec::ConeSpec(int d, std::vector<RatVec> rs) : dim(d) {
    check_dim(dim);
    for (auto& r : rs) {
        check_vec(r, dim, "cone ray");
        if (!vec_is_zero(r)) rays.push_back(primitive(r));
    }
    dedup_vecs(rays);
}

GeneratorSet ConeSpec::as_set() const {
    return GeneratorSet(dim, {RatVec(static_cast<std::size_t>(dim))}, rays);
}

SetUnion::SetUnion(std::vector<GeneratorSet> ps) : parts(std::move(ps)) {
    if (parts.empty()) throw std::invalid_argument("SetUnion: needs at least one part");
    for (const auto& p : parts)
        if (p.dim != parts.front().dim)
            throw std::invalid_argument("SetUnion: mixed dimensions");
}

SetUnion::SetUnion(GeneratorSet single) : parts{std::move(single)} {}

GeneratorSet minkowski_sum(const GeneratorSet& a, const GeneratorSet& b) {
    if (a.dim != b.dim) throw std::invalid_argument("minkowski_sum: dimension mismatch");
    std::vector<RatVec> pts;
    pts.reserve(a.points.size() * b.points.size());
    for (const auto& p : a.points)
        for (const auto& q : b.points) pts.push_back(vec_add(p, q));
    dedup_vecs(pts);
    std::vector<RatVec> rays = a.rays;
    rays.insert(rays.end(), b.rays.begin(), b.rays.end());
    GeneratorSet out(a.dim, std::move(pts), std::move(rays));
    if (out.points.size() > 12 || out.rays.size() > 6) return pruned(std::move(out));
    return out;
}

SetUnion minkowski_sum(const SetUnion& a, const GeneratorSet& b) {
    std::vector<GeneratorSet> parts;
    parts.reserve(a.parts.size());
    for (const auto& p : a.parts) parts.push_back(minkowski_sum(p, b));
    return SetUnion(std::move(parts));
}

GeneratorSet scale(const Rational& t, const GeneratorSet& a) {
    if (t.sign() < 0) throw std::invalid_argument("scale: negative factor");
    if (t.is_zero()) return GeneratorSet::origin(a.dim);
    std::vector<RatVec> pts;
    pts.reserve(a.points.size());
    for (const auto& p : a.points) pts.push_back(vec_scale(t, p));
    return GeneratorSet(a.dim, std::move(pts), a.rays);
}

GeneratorSet negate(const GeneratorSet& a) {
    std::vector<RatVec> pts, rays;
    for (const auto& p : a.points) pts.push_back(vec_neg(p));
    for (const auto& r : a.rays) rays.push_back(vec_neg(r));
    return GeneratorSet(a.dim, std::move(pts), std::move(rays));
}

ConeSpec negate(const ConeSpec& k) {
    std::vector<RatVec> rays;
    for (const auto& r : k.rays) rays.push_back(vec_neg(r));
    return ConeSpec(k.dim, std::move(rays));
}

bool cone_contains(const std::vector<RatVec>& rays, const RatVec& r, int dim) {
    if (vec_is_zero(r)) return true;
    if (rays.empty()) return false;
    if (dim == 1) {
        for (const auto& g : rays)
            if (g[0].sign() == r[0].sign()) return true;
        return false;
    }
    std::vector<std::vector<Rational>> a(static_cast<std::size_t>(dim),
                                         std::vector<Rational>(rays.size()));
    std::vector<Rational> b(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) {
        for (std::size_t j = 0; j < rays.size(); ++j) a[c][j] = rays[j][c];
        b[c] = r[c];
    }
    return feasible_eq(std::move(a), std::move(b)).feasible;
}

bool cone_subset(const ConeSpec& a, const ConeSpec& b) {
    if (a.dim != b.dim) throw std::invalid_argument("cone_subset: dimension mismatch");
    for (const auto& r : a.rays)
        if (!cone_contains(b.rays, r, a.dim)) return false;
    return true;
}

bool contains_point(const GeneratorSet& a, const RatVec& p) {
    check_vec(p, a.dim, "query point");
    if (a.dim == 1) {
        bool up = false, down = false;
        for (const auto& r : a.rays) (r[0].sign() > 0 ? up : down) = true;
        Rational lo = a.points.front()[0], hi = lo;
        for (const auto& q : a.points) {
            lo = min(lo, q[0]);
            hi = max(hi, q[0]);
        }
        return (down || p[0] >= lo) && (up || p[0] <= hi);
    }
    return membership_lp(a, p).feasible;
}

std::vector<Facet> derive_facets(const GeneratorSet& g) {
    std::vector<RatVec> cands;
    auto axis = [&](int c, int sign) {
        RatVec v(static_cast<std::size_t>(g.dim));
        v[c] = Rational(sign);
        return v;
    };
    for (int c = 0; c < g.dim; ++c) {
        cands.push_back(axis(c, 1));
        cands.push_back(axis(c, -1));
    }
    std::vector<RatVec> pool = direction_pool(g);
    if (g.dim == 2) {
        for (const auto& d : pool) {
            cands.push_back(perp2(d));
            cands.push_back(vec_neg(perp2(d)));
            cands.push_back(d);
            cands.push_back(vec_neg(d));
        }
    } else if (g.dim == 3) {
        std::vector<RatVec> extended = pool;
        for (int c = 0; c < 3; ++c) extended.push_back(axis(c, 1));
        for (std::size_t i = 0; i < extended.size(); ++i)
            for (std::size_t j = i + 1; j < extended.size(); ++j) {
                RatVec n = cross3(extended[i], extended[j]);
                if (vec_is_zero(n)) continue;
                cands.push_back(primitive(n));
                cands.push_back(vec_neg(primitive(n)));
            }
        for (const auto& d : pool) {
            cands.push_back(d);
            cands.push_back(vec_neg(d));
        }
    }
    dedup_vecs(cands);

    std::vector<Facet> facets;
    for (const auto& n : cands) {
        bool unbounded = false;
        for (const auto& r : g.rays)
            if (dot(n, r) > Rational(0)) {
                unbounded = true;
                break;
            }
        if (unbounded) continue;
        Rational b = dot(n, g.points.front());
        for (const auto& p : g.points) b = max(b, dot(n, p));
        facets.push_back(Facet{n, b});
    }
    return facets;
}

namespace {

struct MarginAcc {
    bool has = false;
    Rational value;
    void merge(const Rational& m) {
        if (!has || m < value) {
            value = m;
            has = true;
        }
    }
    void merge(const MarginAcc& other) {
        if (other.has) merge(other.value);
    }
};

std::optional<Rational> facet_slack(const std::vector<Facet>& facets, const RatVec& p) {
    MarginAcc acc;
    for (const auto& f : facets) acc.merge(f.offset - dot(f.normal, p));
    if (!acc.has) return std::nullopt;
    return acc.value;
}

/// Margin of a failing point: negative of the largest hyperplane violation,
/// falling back to the Farkas certificate when no derived facet is violated.
Rational fail_margin(const GeneratorSet& b, const std::vector<Facet>& facets, const RatVec& p) {
    Rational worst;
    bool found = false;
    for (const auto& f : facets) {
        Rational v = dot(f.normal, p) - f.offset;
        if (v > Rational(0) && (!found || v > worst)) {
            worst = v;
            found = true;
        }
    }
    if (found) return -worst;
    FeasibilityResult lp = membership_lp(b, p);
    if (lp.feasible) throw std::logic_error("fail_margin called on a contained point");
    RatVec u(lp.farkas.begin(), lp.farkas.begin() + b.dim);
    u = primitive(u);
    Rational bound = dot(u, b.points.front());
    for (const auto& q : b.points) bound = max(bound, dot(u, q));
    return -(dot(u, p) - bound);
}

struct SubsetState {
    Verdict verdict = Verdict::Pass;
    std::optional<InclusionWitness> witness;
    MarginAcc margin;
    bool ray_escape = false;
};

void check_part_against(const GeneratorSet& part, const GeneratorSet& b,
                        const std::vector<Facet>& facets, const std::string& where,
                        SubsetState& st) {
    for (std::size_t j = 0; j < part.rays.size(); ++j) {
        if (!cone_contains(b.rays, part.rays[j], b.dim)) {
            st.verdict = Verdict::Fail;
            st.ray_escape = true;
            if (!st.witness)
                st.witness = InclusionWitness{part.rays[j],
                                              where + " ray " + std::to_string(j), {}, {}, {}};
        }
    }
    for (std::size_t i = 0; i < part.points.size(); ++i) {
        const RatVec& p = part.points[i];
        if (contains_point(b, p)) {
            auto s = facet_slack(facets, p);
            if (s) st.margin.merge(*s);
        } else {
            st.verdict = Verdict::Fail;
            st.margin.merge(fail_margin(b, facets, p));
            if (!st.witness)
                st.witness = InclusionWitness{p, where + " point " + std::to_string(i), {}, {}, {}};
        }
    }
}

InclusionReport finish(SubsetState st) {
    InclusionReport rep;
    rep.verdict = st.verdict;
    rep.witness = std::move(st.witness);
    if (st.margin.has) rep.margin = st.margin.value;
    if (st.ray_escape) rep.margin_real = -std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace

InclusionReport subset_of(const GeneratorSet& a, const GeneratorSet& b) {
    if (a.dim != b.dim) throw std::invalid_argument("subset_of: dimension mismatch");
    SubsetState st;
    auto facets = derive_facets(b);
    check_part_against(a, b, facets, "", st);
    return finish(std::move(st));
}

InclusionReport subset_of(const SetUnion& a, const GeneratorSet& b) {
    if (a.dim() != b.dim) throw std::invalid_argument("subset_of: dimension mismatch");
    SubsetState st;
    auto facets = derive_facets(b);
    for (std::size_t pi = 0; pi < a.parts.size(); ++pi)
        check_part_against(a.parts[pi], b, facets, "part " + std::to_string(pi), st);
    return finish(std::move(st));
}

InclusionReport subset_of(const GeneratorSet& a, const SetUnion& b) {
    return subset_of(SetUnion(a), b);
}

InclusionReport subset_of(const SetUnion& a, const SetUnion& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("subset_of: dimension mismatch");
    if (auto single = as_single_polyhedron(b)) {
        InclusionReport rep = subset_of(a, *single);
        return rep;
    }
    // Generator membership in the union: a Fail is definitive, a Pass is
    // reported as approximate (union containment needs polyhedral
    // subtraction in general).
    std::vector<std::vector<Facet>> facets;
    facets.reserve(b.parts.size());
    for (const auto& part : b.parts) facets.push_back(derive_facets(part));

    SubsetState st;
    for (std::size_t pi = 0; pi < a.parts.size(); ++pi) {
        const GeneratorSet& part = a.parts[pi];
        std::string where = "part " + std::to_string(pi);
        for (std::size_t j = 0; j < part.rays.size(); ++j) {
            bool ok = false;
            for (const auto& bp : b.parts)
                if (cone_contains(bp.rays, part.rays[j], bp.dim)) {
                    ok = true;
                    break;
                }
            if (!ok) {
                st.verdict = Verdict::Fail;
                st.ray_escape = true;
                if (!st.witness)
                    st.witness =
                        InclusionWitness{part.rays[j], where + " ray " + std::to_string(j),
                                         {}, {}, {}};
            }
        }
        for (std::size_t i = 0; i < part.points.size(); ++i) {
            const RatVec& p = part.points[i];
            MarginAcc best;  // best over parts: max of per-part margins
            bool inside = false;
            for (std::size_t bi = 0; bi < b.parts.size(); ++bi) {
                if (contains_point(b.parts[bi], p)) {
                    inside = true;
                    auto s = facet_slack(facets[bi], p);
                    if (s && (!best.has || *s > best.value)) {
                        best.value = *s;
                        best.has = true;
                    } else if (!s) {
                        best.has = false;  // unconstrained part: infinite slack
                        break;
                    }
                }
            }
            if (inside) {
                if (best.has) st.margin.merge(best.value);
            } else {
                st.verdict = Verdict::Fail;
                Rational m = fail_margin(b.parts[0], facets[0], p);
                for (std::size_t bi = 1; bi < b.parts.size(); ++bi)
                    m = max(m, fail_margin(b.parts[bi], facets[bi], p));
                st.margin.merge(m);
                if (!st.witness)
                    st.witness =
                        InclusionWitness{p, where + " point " + std::to_string(i), {}, {}, {}};
            }
        }
    }
    InclusionReport rep = finish(std::move(st));
    rep.exact = false;
    if (rep.verdict == Verdict::Pass) rep.verdict = Verdict::Approximate;
    return rep;
}

bool sets_equal(const GeneratorSet& a, const GeneratorSet& b) {
    return subset_of(a, b).passed() && subset_of(b, a).passed();
}

ConeSpec recession_cone(const GeneratorSet& a) { return ConeSpec(a.dim, a.rays); }

namespace {

void check_grid(const std::vector<Rational>& t_grid) {
    for (const auto& t : t_grid)
        if (t < Rational(0) || t > Rational(1))
            throw std::invalid_argument("t grid values must lie in [0,1]");
}

}  // namespace

bool is_closedly_K_convex(const GeneratorSet& a, const ConeSpec& k,
                          const std::vector<Rational>& t_grid) {
    check_grid(t_grid);
    GeneratorSet rhs = minkowski_sum(a, k.as_set());
    for (const auto& t : t_grid) {
        GeneratorSet lhs = minkowski_sum(scale(t, a), scale(Rational(1) - t, a));
        if (!subset_of(lhs, rhs).passed()) return false;
    }
    return true;
}

bool is_closedly_K_convex(const SetUnion& a, const ConeSpec& k,
                          const std::vector<Rational>& t_grid) {
    check_grid(t_grid);
    std::vector<GeneratorSet> rhs_parts;
    for (const auto& p : a.parts) rhs_parts.push_back(minkowski_sum(p, k.as_set()));
    SetUnion rhs(std::move(rhs_parts));
    for (const auto& t : t_grid) {
        for (const auto& pi : a.parts)
            for (const auto& pj : a.parts) {
                GeneratorSet lhs = minkowski_sum(scale(t, pi), scale(Rational(1) - t, pj));
                if (subset_of(lhs, rhs).verdict == Verdict::Fail) return false;
            }
    }
    return true;
}

bool is_closedly_K_starshaped(const GeneratorSet& a, const ConeSpec& k, const RatVec& y,
                              const std::vector<Rational>& t_grid) {
    check_grid(t_grid);
    check_vec(y, a.dim, "starshape anchor");
    GeneratorSet rhs = minkowski_sum(a, k.as_set());
    for (const auto& t : t_grid) {
        GeneratorSet anchor = GeneratorSet::singleton(vec_scale(Rational(1) - t, y));
        GeneratorSet lhs = minkowski_sum(scale(t, a), anchor);
        if (!subset_of(lhs, rhs).passed()) return false;
    }
    return true;
}

bool is_closedly_K_starshaped(const GeneratorSet& a, const ConeSpec& k,
                              const std::vector<Rational>& t_grid) {
    return is_closedly_K_starshaped(a, k, RatVec(static_cast<std::size_t>(a.dim)), t_grid);
}

std::optional<GeneratorSet> k_lower_bound_witness(const GeneratorSet& a, const ConeSpec& k) {
    for (const auto& r : a.rays)
        if (!cone_contains(k.rays, r, a.dim)) return std::nullopt;
    return GeneratorSet(a.dim, a.points);
}

GeneratorSet pruned(GeneratorSet g) {
    dedup_vecs(g.points);
    for (auto& r : g.rays) r = primitive(r);
    dedup_vecs(g.rays);
    // redundant rays
    if (g.rays.size() > 1) {
        for (std::size_t j = g.rays.size(); j-- > 0;) {
            std::vector<RatVec> others;
            for (std::size_t i = 0; i < g.rays.size(); ++i)
                if (i != j) others.push_back(g.rays[i]);
            if (cone_contains(others, g.rays[j], g.dim)) g.rays.erase(g.rays.begin() + j);
        }
    }
    // redundant points
    if (g.points.size() > 1) {
        for (std::size_t i = g.points.size(); i-- > 0 && g.points.size() > 1;) {
            std::vector<RatVec> others;
            for (std::size_t j = 0; j < g.points.size(); ++j)
                if (j != i) others.push_back(g.points[j]);
            GeneratorSet trial(g.dim, others, g.rays);
            if (contains_point(trial, g.points[i])) g.points.erase(g.points.begin() + i);
        }
    }
    return g;
}

SetUnion simplified(SetUnion u) {
    std::vector<bool> dropped(u.parts.size(), false);
    for (std::size_t i = 0; i < u.parts.size(); ++i) {
        if (dropped[i]) continue;
        for (std::size_t j = 0; j < u.parts.size(); ++j) {
            if (i == j || dropped[j]) continue;
            if (subset_of(u.parts[i], u.parts[j]).passed()) {
                bool equal = subset_of(u.parts[j], u.parts[i]).passed();
                if (!equal || j < i) {
                    dropped[i] = true;
                    break;
                }
            }
        }
    }
    std::vector<GeneratorSet> kept;
    for (std::size_t i = 0; i < u.parts.size(); ++i)
        if (!dropped[i]) kept.push_back(std::move(u.parts[i]));
    return SetUnion(std::move(kept));
}

std::optional<GeneratorSet> as_single_polyhedron(const SetUnion& u) {
    if (u.parts.size() == 1) return u.parts.front();
    SetUnion s = simplified(u);
    if (s.parts.size() == 1) return s.parts.front();
    return std::nullopt;
}

std::vector<Rational> default_t_grid() {
    return {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
}

}  // namespace tabor
