#pragma once

#include "tabor/series.hpp"
#include "tabor/setarith.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tabor {

/// Raised when a standing hypothesis fails its predicate check. Callers
/// treat this separately from an inclusion failure (different exit code).
struct HypothesisFailure : std::runtime_error {
    explicit HypothesisFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Axis-aligned box with rational endpoints.
struct Box {
    std::vector<std::pair<Rational, Rational>> bounds;

    static Box interval(Rational lo, Rational hi);
    static Box cube(int dim, const Rational& radius);
    int dim() const { return static_cast<int>(bounds.size()); }
    bool contains(const RatVec& x) const;
    /// The difference body D - D.
    Box minus_self() const;
};

/// Piecewise polynomial with rational coefficients. Pieces are contiguous
/// and half-open [lo, hi), except the last which is closed.
struct PiecewisePoly {
    struct Piece {
        Rational lo, hi;
        std::vector<Rational> coeffs;  // c0 + c1 x + c2 x^2 + ...
    };
    std::vector<Piece> pieces;

    static PiecewisePoly single(Rational lo, Rational hi, std::vector<Rational> coeffs);
    Rational operator()(const Rational& x) const;
    /// Exact upper bound for sup |f'| over all pieces.
    Rational derivative_sup_bound() const;
};

/// Symbolic set-valued map, evaluable exactly at any rational domain point.
class SetFamily {
public:
    enum class Kind { Epigraph1D, Template, Constant, Singleton0 };

    static SetFamily epigraph(PiecewisePoly f, Box domain, int ray_sign = +1);
    static SetFamily from_template(PhiSpec phi, GeneratorSet s0, ConeSpec k, Box domain);
    static SetFamily constant_set(GeneratorSet a, Box domain);
    static SetFamily singleton_zero(int value_dim, Box domain);

    Kind kind() const { return kind_; }
    const Box& domain() const { return domain_; }
    int value_dim() const { return value_dim_; }

    /// The set at x; throws std::domain_error outside the domain.
    GeneratorSet evaluate(const RatVec& x) const;

    const PiecewisePoly& poly() const { return f_; }
    int ray_sign() const { return ray_sign_; }
    const PhiSpec& phi() const { return phi_; }
    const GeneratorSet& s0() const { return *s0_; }
    const ConeSpec& cone() const { return *k_; }
    const GeneratorSet& constant() const { return *constant_; }

    PhiSpec& phi_mutable() { return phi_; }

private:
    SetFamily() = default;

    Kind kind_ = Kind::Singleton0;
    Box domain_;
    int value_dim_ = 1;
    PiecewisePoly f_;
    int ray_sign_ = +1;
    PhiSpec phi_;
    std::optional<GeneratorSet> s0_;
    std::optional<ConeSpec> k_;
    std::optional<GeneratorSet> constant_;
};

/// Truncated transform: the union of the partial sums up to index N.
/// `exact` is set when the omitted terms provably add nothing (finite d_Z
/// support at dyadic t, with the k >= m terms absorbed).
struct TransformResult {
    SetUnion value;
    int truncation_N = 0;
    std::optional<double> tail_certificate;
    bool exact = false;
};

/// Union of partial sums of 2 d_Z(2^k t) * S(x / 2^k).
TransformResult tabor_transform(const SetFamily& s, const Rational& t, const RatVec& x, unsigned n);

/// Union of partial sums of (1/2^k) * S(2 d_Z(2^k t) * u).
TransformResult takagi_transform(const SetFamily& s, const Rational& t, const RatVec& u, unsigned n);

/// Closed form phi_perp(t,x)*S0 + K. Exact when the scalar is exactly
/// representable (integer alpha, dyadic t, exact norm power); otherwise the
/// scalar is boxed in a certified rational enclosure [scalar_lo, scalar_hi]
/// and both scaled sets are returned.
struct ClosedFormResult {
    GeneratorSet set;     // scaled by scalar_hi; equals the exact set when exact
    GeneratorSet set_lo;  // scaled by scalar_lo
    std::optional<Rational> scalar_exact;
    Rational scalar_lo, scalar_hi;

    bool exact() const { return scalar_exact.has_value(); }
};

ClosedFormResult tabor_closed_form(const PhiSpec& phi, const GeneratorSet& s0, const ConeSpec& k,
                                   const Rational& t, const RatVec& x);

/// Checks both inclusions between the truncated transform of the template
/// family and its closed form at a dyadic t (so the truncation is exact).
std::pair<InclusionReport, InclusionReport> prop_tab_equivalence_check(
    const PhiSpec& phi, const GeneratorSet& s0, const ConeSpec& k, const DyadicRational& t,
    const RatVec& x, unsigned n);

/// For each eps, the least m <= n_max with sum_{k=m}^{n} S_k inside the
/// eps-box + K for every n <= n_max.
struct CauchyProbeRow {
    Rational eps;
    bool found = false;
    unsigned m = 0;
};

std::vector<CauchyProbeRow> serially_k_cauchy_probe(const std::vector<GeneratorSet>& terms,
                                                    const ConeSpec& k,
                                                    const std::vector<Rational>& eps_list,
                                                    unsigned n_max);

/// The geometric family S_k = lambda_k * S + K.
std::vector<GeneratorSet> kc_terms(const GeneratorSet& s, const ConeSpec& k,
                                   const std::vector<Rational>& lambdas);

}  // namespace tabor
