#include "dialg/field.hpp"

#include <charconv>

namespace dialg {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (!is_prime(p)) throw ArgumentError("field characteristic " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31))
        throw ArgumentError("prime " + std::to_string(p) + " exceeds the supported bound 2^31");
    FieldSpec f;
    f.prime_ = p;
    return f;
}

std::string FieldSpec::to_string() const {
    if (is_rational()) return "q";
    return "p:" + std::to_string(*prime_);
}

FieldSpec FieldSpec::parse(const std::string& text) {
    if (text == "q" || text == "Q") return rationals();
    if (text.size() > 2 && text[0] == 'p' && text[1] == ':') {
        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(text.data() + 2, text.data() + text.size(), p);
        if (ec == std::errc() && ptr == text.data() + text.size()) return prime(p);
    }
    throw ArgumentError("unrecognized field '" + text + "' (expected q or p:<prime>)");
}

Rational FieldSpec::normalize(const Rational& value) const {
    if (is_rational()) return value;
    PrimeField f(*prime_);
    return f.to_rational(f.from_rational(value));
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p < 2 || p >= (std::uint64_t{1} << 31)) throw ArgumentError("unsupported prime " + std::to_string(p));
}

PrimeField::value_type PrimeField::inv(value_type a) const {
    if (a == 0) throw ArgumentError("division by zero in F_" + std::to_string(p_));
    // Fermat: a^(p-2)
    value_type result = 1, base = a, e = p_ - 2;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

PrimeField::value_type PrimeField::from_rational(const Rational& q) const {
    mpz_class pz(static_cast<unsigned long>(p_));
    mpz_class num = q.get_num() % pz;
    if (num < 0) num += pz;
    mpz_class den = q.get_den() % pz;
    if (den == 0)
        throw ArgumentError("coefficient " + q.get_str() + " has a denominator divisible by " + std::to_string(p_));
    value_type n = num.get_ui();
    value_type d = den.get_ui();
    return mul(n, inv(d));
}

} // namespace dialg
