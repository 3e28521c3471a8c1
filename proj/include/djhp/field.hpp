#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace djhp {

using BigInt = boost::multiprecision::cpp_int;
using Scalar = boost::multiprecision::cpp_rational;

/// Coefficient field: the rationals (p == 0) or a prime field F_p.
/// Scalars are stored as reduced rationals; over F_p they are integer
/// residues in [0, p). All arithmetic goes through the Field so residues
/// stay normalized.
class Field {
public:
    Field() = default;

    static Field rationals() { return Field(); }

    static Field prime(std::uint64_t p);

    bool is_rational() const { return p_ == 0; }
    std::uint64_t characteristic() const { return p_; }

    Scalar zero() const { return Scalar(0); }
    Scalar one() const { return Scalar(1); }

    Scalar reduce(const Scalar& x) const;
    Scalar from_long(long long n) const { return reduce(Scalar(n)); }
    Scalar from_fraction(const BigInt& num, const BigInt& den) const;

    Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
    Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
    Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
    Scalar neg(const Scalar& a) const { return reduce(-a); }
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

    std::string str(const Scalar& x) const;

    bool operator==(const Field& other) const { return p_ == other.p_; }
    bool operator!=(const Field& other) const { return p_ != other.p_; }

private:
    explicit Field(std::uint64_t p) : p_(p) {}

    std::uint64_t p_ = 0; // 0 = rationals
};

} // namespace djhp
