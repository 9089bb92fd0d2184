#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "dialg/errors.hpp"

namespace dialg {

using Rational = mpq_class;

inline constexpr std::uint64_t kDefaultPrime = 1000003;

// Runtime scalar-field tag: exact rationals, or F_p for a prime p < 2^31.
class FieldSpec {
public:
    static FieldSpec rationals() { return FieldSpec{}; }
    static FieldSpec prime(std::uint64_t p);

    bool is_rational() const { return !prime_.has_value(); }
    std::uint64_t characteristic() const { return prime_.value_or(0); }

    // "q" or "p:<prime>", the same spelling the CLI accepts.
    std::string to_string() const;
    static FieldSpec parse(const std::string& text);

    // Brings an exact coefficient into canonical form for this field:
    // rationals are left alone, F_p values become integers in [0, p).
    Rational normalize(const Rational& value) const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    std::optional<std::uint64_t> prime_;
};

bool is_prime(std::uint64_t n);

class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p);

    std::uint64_t characteristic() const { return p_; }
    FieldSpec spec() const { return FieldSpec::prime(p_); }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(value_type a) const { return a == 0; }
    bool is_one(value_type a) const { return a == 1; }

    value_type add(value_type a, value_type b) const {
        value_type s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type inv(value_type a) const;

    // acc -= a * b
    void sub_mul(value_type& acc, value_type a, value_type b) const { acc = sub(acc, mul(a, b)); }

    value_type from_rational(const Rational& q) const;
    Rational to_rational(value_type a) const { return Rational(static_cast<unsigned long>(a)); }

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
};

class RationalField {
public:
    using value_type = Rational;

    FieldSpec spec() const { return FieldSpec::rationals(); }
    std::uint64_t characteristic() const { return 0; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool is_one(const value_type& a) const { return a == 1; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        if (sgn(a) == 0) throw ArgumentError("division by zero");
        return 1 / a;
    }
    void sub_mul(value_type& acc, const value_type& a, const value_type& b) const { acc -= a * b; }

    value_type from_rational(const Rational& q) const { return q; }
    Rational to_rational(const value_type& a) const { return a; }

    friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

// Invokes fn(PrimeField) or fn(RationalField) according to the tag.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.is_rational()) return fn(RationalField{});
    return fn(PrimeField(spec.characteristic()));
}

} // namespace dialg
