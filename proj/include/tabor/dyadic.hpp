#pragma once

#include "tabor/rational.hpp"

#include <optional>

namespace tabor {

/// Binary fraction k/2^n in canonical form: k odd, or n = 0.
///
/// A distinct type from Rational so that induction grids cannot silently
/// receive non-dyadic values; the Rational->Dyadic conversion fails loudly
/// when the denominator is not a power of two.
class DyadicRational {
public:
    DyadicRational() : mantissa_(0), exponent_(0) {}
    DyadicRational(Int mantissa, unsigned exponent)
        : mantissa_(std::move(mantissa)), exponent_(exponent) {
        canonicalize();
    }

    const Int& mantissa() const { return mantissa_; }
    unsigned exponent() const { return exponent_; }

    Rational to_rational() const { return Rational(mantissa_, Int(1) << exponent_); }

    static std::optional<DyadicRational> try_from_rational(const Rational& r) {
        Int d = r.den();
        unsigned e = 0;
        while ((d & 1) == 0) {
            d >>= 1;
            ++e;
        }
        if (d != 1) return std::nullopt;
        return DyadicRational(r.num(), e);
    }

    static DyadicRational from_rational(const Rational& r) {
        auto d = try_from_rational(r);
        if (!d) throw std::domain_error("not a dyadic rational: " + r.str());
        return *d;
    }

    bool is_integer() const { return exponent_ == 0; }

    friend bool operator==(const DyadicRational& a, const DyadicRational& b) {
        return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
    }

private:
    void canonicalize() {
        if (mantissa_ == 0) {
            exponent_ = 0;
            return;
        }
        while (exponent_ > 0 && (mantissa_ & 1) == 0) {
            mantissa_ >>= 1;
            --exponent_;
        }
    }

    Int mantissa_;
    unsigned exponent_;
};

/// Exact distance to the nearest integer; the result lies in [0, 1/2].
Rational dist_to_integers(const Rational& t);

/// 2^k * t, canonical form restored.
DyadicRational dyadic_scale_pow2(const DyadicRational& t, unsigned k);

/// Checks the exact midpoint identity
///   d_Z(2^k (2l+1)/2^(n+1)) = (d_Z(2^k (l+1)/2^n) + d_Z(2^k l/2^n)) / 2
/// in rational arithmetic. Requires 0 <= k < n and 0 <= l < 2^n.
bool dz_midpoint_identity(unsigned n, const Int& ell, unsigned k);

}  // namespace tabor
