#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dialg/field.hpp"
#include "dialg/monomial.hpp"
#include "dialg/signature.hpp"

namespace dialg {

// A linear combination of multilinear monomials of one degree over one
// signature. Coefficients are kept exact; over F_p they are stored as the
// canonical integer representatives in [0, p).
class Polynomial {
public:
    using Terms = std::map<Monomial, Rational>;

    Polynomial(std::shared_ptr<const Signature> sig, std::size_t degree, FieldSpec field = FieldSpec::rationals());
    Polynomial(const Signature& sig, std::size_t degree, FieldSpec field = FieldSpec::rationals())
        : Polynomial(std::make_shared<const Signature>(sig), degree, field) {}

    static Polynomial monomial(std::shared_ptr<const Signature> sig, const Monomial& m, const Rational& c = 1,
                               FieldSpec field = FieldSpec::rationals());
    static Polynomial monomial(const Signature& sig, const Monomial& m, const Rational& c = 1,
                               FieldSpec field = FieldSpec::rationals()) {
        return monomial(std::make_shared<const Signature>(sig), m, c, field);
    }
    // x1 as an element of F(1).
    static Polynomial identity(std::shared_ptr<const Signature> sig, FieldSpec field = FieldSpec::rationals());

    // Adds c * m; validates m against the signature and degree.
    Polynomial& add_term(const Monomial& m, const Rational& c);

    const Signature& signature() const { return *sig_; }
    const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }
    std::size_t degree() const { return degree_; }
    const FieldSpec& field() const { return field_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const Monomial& m) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Rational& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
    Polynomial operator-() const { return Rational(-1) * *this; }

    // Reinterprets the coefficients in another field.
    Polynomial in_field(const FieldSpec& field) const;

    // s-expression: 0, a monomial, or (+ t1 t2 ...) with (* c m) terms.
    std::string to_string() const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
    void check_compatible(const Polynomial& other) const;

    std::shared_ptr<const Signature> sig_;
    std::size_t degree_;
    FieldSpec field_;
    Terms terms_;
};

std::string coefficient_to_string(const Rational& c);

// sigma acts by replacing every leaf label i with sigma(i).
Polynomial apply_permutation(const Permutation& sigma, const Polynomial& p);

// Operadic composition f(g1(x1..x_m1), g2(x_{m1+1}..), ...): variable i of f
// is replaced by g_i with its variables shifted by m1 + ... + m_{i-1}.
Polynomial compose(const Polynomial& f, const std::vector<Polynomial>& gs);

// compose(w; x1, ..., u, ..., x1) with u in slot i.
Polynomial substitute_at(const Monomial& w, std::size_t i, const Polynomial& u);

// Terms that may repeat variables; the input of linearize.
struct RawPolynomial {
    std::shared_ptr<const Signature> sig;
    std::vector<std::pair<Monomial, Rational>> terms;
};

// Complete linearization: each variable x_j of degree d_j is replaced by a
// block of d_j fresh consecutive variables (blocks ordered by j) summed over
// all d_j! placements. Requires every term to share one degree vector.
Polynomial linearize(const RawPolynomial& f, FieldSpec field = FieldSpec::rationals());

} // namespace dialg
