#include "tabor/dyadic.hpp"

namespace tabor {

Rational dist_to_integers(const Rational& t) {
    Rational f = t.frac();
    return min(f, Rational(1) - f);
}

DyadicRational dyadic_scale_pow2(const DyadicRational& t, unsigned k) {
    if (k >= t.exponent()) return DyadicRational(t.mantissa() << (k - t.exponent()), 0);
    return DyadicRational(t.mantissa(), t.exponent() - k);
}

bool dz_midpoint_identity(unsigned n, const Int& ell, unsigned k) {
    if (n < 1 || k >= n) throw std::out_of_range("dz_midpoint_identity: need 0 <= k < n");
    if (ell < 0 || ell >= (Int(1) << n)) throw std::out_of_range("dz_midpoint_identity: need 0 <= ell < 2^n");
    Rational p2k = pow2(static_cast<int>(k));
    Rational mid = p2k * Rational(2 * ell + 1, Int(1) << (n + 1));
    Rational hi = p2k * Rational(ell + 1, Int(1) << n);
    Rational lo = p2k * Rational(ell, Int(1) << n);
    return dist_to_integers(mid) ==
           (dist_to_integers(hi) + dist_to_integers(lo)) / Rational(2);
}

}  // namespace tabor
