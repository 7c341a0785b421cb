#include "tabor/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tabor {

namespace {

bool is_small_integer(double a, unsigned& out) {
    if (a < 1.0 || a > 64.0) return false;
    double r = std::round(a);
    if (r != a) return false;
    out = static_cast<unsigned>(r);
    return true;
}

void require_finite(double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("series: non-finite argument");
}

}  // namespace

PhiSpec PhiSpec::power(Rational coefficient, double alpha, NormKind norm) {
    if (coefficient.sign() < 0) throw std::invalid_argument("PhiSpec: negative coefficient");
    if (!(alpha > 0.0)) throw std::invalid_argument("PhiSpec: alpha must be positive");
    PhiSpec p;
    p.form = Form::Power;
    p.c = std::move(coefficient);
    p.alpha = alpha;
    p.norm = norm;
    unsigned a = 0;
    if (is_small_integer(alpha, a)) p.integer_alpha = a;
    return p;
}

PhiSpec PhiSpec::table(std::vector<double> values, std::size_t decay_start, double decay_ratio) {
    for (double v : values)
        if (!(v >= 0.0)) throw std::invalid_argument("PhiSpec: table values must be nonnegative");
    if (!(decay_ratio > 0.0 && decay_ratio < 1.0))
        throw std::invalid_argument("PhiSpec: decay ratio must lie in (0,1)");
    PhiSpec p;
    p.form = Form::Table;
    p.values = std::move(values);
    p.decay_start = decay_start;
    p.decay_ratio = decay_ratio;
    p.has_certificate = true;
    return p;
}

double PhiSpec::eval_power(double u_norm) const {
    return c.to_double() * std::pow(u_norm, alpha);
}

double dz_real(double t) {
    double r = t - std::floor(t);
    return std::min(r, 1.0 - r);
}

SeriesValue takagi(double t, double tol) {
    require_finite(t);
    if (!(tol > 0.0)) throw std::invalid_argument("takagi: tol must be positive");
    SeriesValue out;
    double r = t - std::floor(t);
    double weight = 1.0;  // 2^-n
    int n = 0;
    for (;;) {
        if (r == 0.0) {  // all remaining terms vanish exactly
            out.error_bound = 0.0;
            break;
        }
        out.value += weight * std::min(r, 1.0 - r);
        ++n;
        weight *= 0.5;
        out.error_bound = 0.5 * weight;  // sum_{m>n-1} (1/2) 2^-m
        if (out.error_bound <= tol) break;
        r *= 2.0;
        if (r >= 1.0) r -= 1.0;
    }
    out.terms_used = n;
    return out;
}

SeriesValue tau_alpha(double alpha, double t, double tol) {
    require_finite(t);
    if (!(alpha > 0.0)) throw std::invalid_argument("tau_alpha: alpha must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tau_alpha: tol must be positive");
    SeriesValue out;
    const double ratio = std::exp2(-alpha);
    const double geom = 1.0 / (1.0 - ratio);
    double r = t - std::floor(t);
    double weight = 2.0;  // 2^(1-alpha*n)
    int n = 0;
    for (;;) {
        if (r == 0.0) {
            out.error_bound = 0.0;
            break;
        }
        out.value += weight * std::min(r, 1.0 - r);
        ++n;
        weight *= ratio;
        out.error_bound = 0.5 * weight * geom;  // 2^(-alpha*n) / (1 - 2^-alpha)
        if (out.error_bound <= tol) break;
        r *= 2.0;
        if (r >= 1.0) r -= 1.0;
    }
    out.terms_used = n;
    return out;
}

double tau_alpha_dyadic(double alpha, const DyadicRational& t) {
    if (!(alpha > 0.0)) throw std::invalid_argument("tau_alpha_dyadic: alpha must be positive");
    const unsigned m = t.exponent();
    double sum = 0.0;
    for (unsigned n = 0; n < m; ++n) {
        Rational dz = dist_to_integers(dyadic_scale_pow2(t, n).to_rational());
        sum += std::exp2(1.0 - alpha * n) * dz.to_double();
    }
    return sum;
}

Rational tau_alpha_dyadic_exact(unsigned alpha, const DyadicRational& t) {
    if (alpha == 0) throw std::invalid_argument("tau_alpha_dyadic_exact: alpha must be positive");
    const unsigned m = t.exponent();
    Rational sum;
    for (unsigned n = 0; n < m; ++n) {
        Rational dz = dist_to_integers(dyadic_scale_pow2(t, n).to_rational());
        sum += pow2(1 - static_cast<int>(alpha * n)) * dz;
    }
    return sum;
}

Rational takagi_dyadic_exact(const DyadicRational& t) {
    const unsigned m = t.exponent();
    Rational sum;
    for (unsigned n = 0; n < m; ++n) {
        Rational dz = dist_to_integers(dyadic_scale_pow2(t, n).to_rational());
        sum += pow2(-static_cast<int>(n)) * dz;
    }
    return sum;
}

SeriesValue phi_perp(const PhiSpec& phi, double t, double x_norm, double tol) {
    require_finite(t);
    if (!(x_norm >= 0.0)) throw std::invalid_argument("phi_perp: negative norm");
    if (!(tol > 0.0)) throw std::invalid_argument("phi_perp: tol must be positive");

    if (phi.form == PhiSpec::Form::Power) {
        const double factor = phi.c.to_double() * std::pow(x_norm, phi.alpha);
        if (factor == 0.0) return SeriesValue{0.0, 0.0, 0};
        SeriesValue tau = tau_alpha(phi.alpha, t, tol / factor);
        return SeriesValue{factor * tau.value, factor * tau.error_bound, tau.terms_used};
    }

    if (!phi.has_certificate)
        throw std::invalid_argument("phi_perp: table form requires a summability certificate");
    SeriesValue out;
    double r = t - std::floor(t);
    const double geom = phi.decay_ratio / (1.0 - phi.decay_ratio);
    for (std::size_t n = 0; n < phi.values.size(); ++n) {
        if (r == 0.0) {
            out.error_bound = 0.0;
            out.terms_used = static_cast<int>(n);
            return out;
        }
        out.value += 2.0 * std::min(r, 1.0 - r) * phi.values[n];
        out.terms_used = static_cast<int>(n) + 1;
        if (n + 1 > phi.decay_start) {
            out.error_bound = phi.values[n] * geom;  // sup 2 d_Z <= 1
            if (out.error_bound <= tol) return out;
        }
        r *= 2.0;
        if (r >= 1.0) r -= 1.0;
    }
    throw std::runtime_error("phi_perp: table too short to certify the requested tolerance");
}

FixedPointTable tau_fixed_point(double alpha, unsigned grid_size, unsigned iterations) {
    if (!(alpha > 0.0)) throw std::invalid_argument("tau_fixed_point: alpha must be positive");
    if (grid_size == 0 || iterations == 0)
        throw std::invalid_argument("tau_fixed_point: grid and iteration counts must be positive");

    FixedPointTable table;
    table.alpha = alpha;
    table.iterations = iterations;
    const unsigned n = grid_size;
    std::vector<double> dz(n + 1), g(n + 1, 0.0), next(n + 1);
    for (unsigned j = 0; j <= n; ++j) {
        unsigned rem = j % n;
        dz[j] = static_cast<double>(std::min(rem, n - rem)) / n;
        table.t.push_back(static_cast<double>(j) / n);
    }
    const double ratio = std::exp2(-alpha);
    for (unsigned it = 0; it < iterations; ++it) {
        for (unsigned j = 0; j <= n; ++j)
            next[j] = 2.0 * dz[j] + ratio * g[(2 * j) % n];
        g.swap(next);
    }
    table.value = std::move(g);
    table.sup_error_bound = std::pow(ratio, iterations) * 2.0 / (1.0 - ratio);
    return table;
}

std::optional<Rational> norm_pow_exact(const std::vector<Rational>& u, unsigned alpha,
                                       NormKind norm) {
    switch (norm) {
        case NormKind::L1: {
            Rational s;
            for (const auto& c : u) s += c.abs();
            return s.pow(alpha);
        }
        case NormKind::Linf: {
            Rational s;
            for (const auto& c : u) s = max(s, c.abs());
            return s.pow(alpha);
        }
        case NormKind::Euclidean: {
            if (u.size() == 1) return u[0].abs().pow(alpha);
            Rational sq;
            for (const auto& c : u) sq += c * c;
            if (alpha % 2 == 0) return sq.pow(alpha / 2);
            Int ns = boost::multiprecision::sqrt(sq.num());
            Int ds = boost::multiprecision::sqrt(sq.den());
            if (ns * ns == sq.num() && ds * ds == sq.den())
                return Rational(ns, ds).pow(alpha);
            return std::nullopt;
        }
    }
    return std::nullopt;
}

double norm_real(const std::vector<Rational>& u, NormKind norm) {
    switch (norm) {
        case NormKind::L1: {
            double s = 0;
            for (const auto& c : u) s += std::abs(c.to_double());
            return s;
        }
        case NormKind::Linf: {
            double s = 0;
            for (const auto& c : u) s = std::max(s, std::abs(c.to_double()));
            return s;
        }
        case NormKind::Euclidean: {
            double s = 0;
            for (const auto& c : u) {
                double v = c.to_double();
                s += v * v;
            }
            return std::sqrt(s);
        }
    }
    return 0.0;
}

}  // namespace tabor
