#pragma once

#include "tabor/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tabor {

using RatVec = std::vector<Rational>;

RatVec vec_add(const RatVec& a, const RatVec& b);
RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scale(const Rational& t, const RatVec& v);
RatVec vec_neg(const RatVec& v);
bool vec_is_zero(const RatVec& v);

/// Polyhedron in generator form: conv(points) + cone(rays).
/// Nonempty by construction and closed (finitely generated), so every
/// closure operator in the calling code is the identity on this
/// representation. Dimensions are restricted to 1..3.
struct GeneratorSet {
    int dim = 1;
    std::vector<RatVec> points;
    std::vector<RatVec> rays;

    GeneratorSet(int dim, std::vector<RatVec> points, std::vector<RatVec> rays = {});

    static GeneratorSet singleton(RatVec p);
    static GeneratorSet origin(int dim);
    /// 1-D closed interval [lo, hi].
    static GeneratorSet interval(const Rational& lo, const Rational& hi);
    /// 1-D half-line {anchor} + ray(sign).
    static GeneratorSet half_line(const Rational& anchor, int sign);
    /// [-eps, eps]^dim box.
    static GeneratorSet box(int dim, const Rational& eps);
};

/// Convex cone cone(rays) including 0.
struct ConeSpec {
    int dim = 1;
    std::vector<RatVec> rays;

    ConeSpec(int dim, std::vector<RatVec> rays);
    GeneratorSet as_set() const;
};

/// Finite union of generator sets; possibly non-convex.
struct SetUnion {
    std::vector<GeneratorSet> parts;

    explicit SetUnion(std::vector<GeneratorSet> parts);
    explicit SetUnion(GeneratorSet single);
    int dim() const { return parts.front().dim; }
};

enum class Verdict { Pass, Fail, Approximate };

struct InclusionWitness {
    RatVec generator;
    std::string detail;
    std::optional<RatVec> x;
    std::optional<RatVec> y;
    std::optional<Rational> t;
};

/// Result of an inclusion check. `margin` is exact: on pass the smallest
/// facet slack of the tightest generator, on failure the negative of the
/// largest hyperplane violation (absent when unconstrained or unbounded;
/// margin_real then carries +/-infinity).
struct InclusionReport {
    Verdict verdict = Verdict::Pass;
    std::optional<InclusionWitness> witness;
    std::optional<Rational> margin;
    std::optional<double> margin_real;
    std::string check_id;
    bool exact = true;

    bool passed() const { return verdict != Verdict::Fail; }
};

/// Valid inequality <normal, y> <= offset with a primitive integer normal.
struct Facet {
    RatVec normal;
    Rational offset;
};

GeneratorSet minkowski_sum(const GeneratorSet& a, const GeneratorSet& b);
SetUnion minkowski_sum(const SetUnion& a, const GeneratorSet& b);

/// t*A for t >= 0; the t = 0 case collapses to {0} (rays dropped).
GeneratorSet scale(const Rational& t, const GeneratorSet& a);

GeneratorSet negate(const GeneratorSet& a);
ConeSpec negate(const ConeSpec& k);

/// Exact membership via rational LP feasibility.
bool contains_point(const GeneratorSet& a, const RatVec& p);

/// r in cone(rays), exactly.
bool cone_contains(const std::vector<RatVec>& rays, const RatVec& r, int dim);
bool cone_subset(const ConeSpec& a, const ConeSpec& b);

InclusionReport subset_of(const GeneratorSet& a, const GeneratorSet& b);
InclusionReport subset_of(const SetUnion& a, const GeneratorSet& b);
/// Union right-hand sides are decided by generator membership in the union;
/// sound for the closed unions produced here and flagged approximate.
InclusionReport subset_of(const GeneratorSet& a, const SetUnion& b);
InclusionReport subset_of(const SetUnion& a, const SetUnion& b);

bool sets_equal(const GeneratorSet& a, const GeneratorSet& b);

ConeSpec recession_cone(const GeneratorSet& a);

bool is_closedly_K_convex(const GeneratorSet& a, const ConeSpec& k,
                          const std::vector<Rational>& t_grid);
bool is_closedly_K_convex(const SetUnion& a, const ConeSpec& k,
                          const std::vector<Rational>& t_grid);
bool is_closedly_K_starshaped(const GeneratorSet& a, const ConeSpec& k, const RatVec& y,
                              const std::vector<Rational>& t_grid);
bool is_closedly_K_starshaped(const GeneratorSet& a, const ConeSpec& k,
                              const std::vector<Rational>& t_grid);

/// conv(points) certifies S subseteq H + K when every ray lies in cone(K);
/// absent otherwise (no certificate from this representation).
std::optional<GeneratorSet> k_lower_bound_witness(const GeneratorSet& a, const ConeSpec& k);

/// Drops duplicate and redundant generators; the represented set is unchanged.
GeneratorSet pruned(GeneratorSet g);

/// Drops union parts contained in another part; the union is unchanged.
SetUnion simplified(SetUnion u);

/// When the union collapses to one part, that part.
std::optional<GeneratorSet> as_single_polyhedron(const SetUnion& u);

std::vector<Facet> derive_facets(const GeneratorSet& g);

std::vector<Rational> default_t_grid();

}  // namespace tabor
