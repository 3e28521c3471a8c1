#include "djhp/field.hpp"

namespace djhp {

namespace {

bool is_prime_u64(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// residue of n mod p in [0, p)
BigInt mod_p(const BigInt& n, std::uint64_t p) {
    BigInt r = n % BigInt(p);
    if (r < 0) r += p;
    return r;
}

// extended Euclid inverse of a mod p, a != 0 mod p
BigInt inv_mod(const BigInt& a, std::uint64_t p) {
    BigInt r0 = BigInt(p), r1 = mod_p(a, p);
    BigInt t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        BigInt t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("element not invertible mod p");
    return mod_p(t0, p);
}

} // namespace

Field Field::prime(std::uint64_t p) {
    if (p > (std::uint64_t(1) << 31))
        throw std::invalid_argument("prime field characteristic too large");
    if (!is_prime_u64(p))
        throw std::invalid_argument("field order must be prime: " + std::to_string(p));
    return Field(p);
}

Scalar Field::reduce(const Scalar& x) const {
    if (p_ == 0) return x;
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);
    BigInt d = mod_p(den, p_);
    if (d == 0) throw std::domain_error("denominator divisible by field characteristic");
    return Scalar(mod_p(mod_p(num, p_) * inv_mod(d, p_), p_));
}

Scalar Field::from_fraction(const BigInt& num, const BigInt& den) const {
    if (den == 0) throw std::invalid_argument("zero denominator");
    return reduce(Scalar(num, den));
}

Scalar Field::inv(const Scalar& a) const {
    if (a == 0) throw std::domain_error("division by zero");
    if (p_ == 0) return Scalar(1) / a;
    return reduce(Scalar(inv_mod(boost::multiprecision::numerator(a), p_)));
}

std::string Field::str(const Scalar& x) const {
    return x.str();
}

} // namespace djhp
