#pragma once

// The Perm operad, dialgebra components (P tensor Perm), the surjection zeta
// from the doubled free operad and its section rho, and the transform of a
// variety presentation into its dialgebra presentation.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "dialg/ideal.hpp"
#include "dialg/polynomial.hpp"
#include "dialg/presentation.hpp"
#include "dialg/signature.hpp"

namespace dialg {

// Element of Perm(n) = k^n in the basis e_1..e_n.
class PermVector {
public:
    explicit PermVector(std::size_t arity);
    static PermVector basis(std::size_t arity, std::size_t k);

    std::size_t arity() const { return coords_.size(); }
    const Rational& operator[](std::size_t k) const { return coords_.at(k - 1); }
    Rational& operator[](std::size_t k) { return coords_.at(k - 1); }

    friend bool operator==(const PermVector&, const PermVector&) = default;

private:
    std::vector<Rational> coords_;
};

// gamma(e_k; e_{j_1}, ..., e_{j_n}) = e_{m_1 + ... + m_{k-1} + j_k}, extended multilinearly.
PermVector perm_compose(const PermVector& f, const std::vector<PermVector>& gs);

// A doubled signature together with shared handles on both signatures.
class Doubling {
public:
    explicit Doubling(std::shared_ptr<const Signature> base);

    const std::shared_ptr<const Signature>& base_ptr() const { return base_; }
    const std::shared_ptr<const Signature>& doubled_ptr() const { return doubled_; }
    const Signature& base() const { return *base_; }
    const Signature& doubled() const { return *doubled_; }
    const DoubledSignature& map() const { return map_; }

private:
    std::shared_ptr<const Signature> base_;
    DoubledSignature map_;
    std::shared_ptr<const Signature> doubled_;
};

// A base-signature monomial with one distinguished leaf (variable k).
struct EmphasizedMonomial {
    Monomial base;
    std::size_t emphasized = 1;

    friend bool operator==(const EmphasizedMonomial&, const EmphasizedMonomial&) = default;
};

// Element of (F(n))^n: component k is the coefficient of e_k.
class DiPolynomial {
public:
    DiPolynomial(std::shared_ptr<const Signature> sig, std::size_t degree, FieldSpec field = FieldSpec::rationals());

    std::size_t degree() const { return components_.size(); }
    const Signature& signature() const { return *sig_; }
    const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }
    const FieldSpec& field() const { return field_; }
    const Polynomial& component(std::size_t k) const { return components_.at(k - 1); }
    const std::vector<Polynomial>& components() const { return components_; }
    void add(std::size_t k, const Polynomial& p);
    void add_term(const EmphasizedMonomial& m, const Rational& c);
    bool is_zero() const;

    // "(di (e1 P1) (e2 P2) ...)" listing nonzero components.
    std::string to_string() const;

    friend bool operator==(const DiPolynomial& a, const DiPolynomial& b) { return a.components_ == b.components_; }

private:
    std::shared_ptr<const Signature> sig_;
    FieldSpec field_;
    std::vector<Polynomial> components_;
};

EmphasizedMonomial zeta(const Monomial& m, const DoubledSignature& d);
DiPolynomial zeta_poly(const Polynomial& p, const Doubling& d);

// Each node gets superscript j when its j-th branch holds leaf k, else 1.
Monomial rho(const Monomial& m, std::size_t k, const DoubledSignature& d);
Polynomial rho_poly(const Polynomial& p, std::size_t k, const Doubling& d);

// f^k(.., g^l(x_j..), ..) - f^k(.., g^p(x_j..), ..) for j != k and l < p.
std::vector<Polynomial> zero_identities(const Doubling& d);

// Zero identities plus rho(s, k) for every generator s and k = 1..deg s.
VarietyPresentation bso_presentation(const VarietyPresentation& v);

// Block sum of n copies of the degree-n ideal: column (k-1)*N + i is
// monomial i of the base basis in component k.
template <class K>
struct DiComponent {
    DegreeComponent<K> base;
    Subspace<K> ideal;

    std::size_t ambient_dim() const { return ideal.ncols(); }
    std::size_t ideal_dim() const { return ideal.rank(); }
    std::size_t quotient_dim() const { return ideal.codimension(); }
};

template <class K>
DiComponent<K> di_ideal_at_degree(const VarietyPresentation& v, std::size_t n, const K& field,
                                  const IdealOptions& opts = {});

template <class K>
SparseVec<typename K::value_type> di_to_vector(const DiPolynomial& t, const MonomialBasis& basis, const K& field);
template <class K>
DiPolynomial di_from_vector(const SparseVec<typename K::value_type>& v, const MonomialBasis& basis, const K& field,
                            std::shared_ptr<const Signature> sig);

struct EquivalenceReport {
    bool equal = false;
    std::size_t ambient_dim = 0;          // dim F_{doubled}(n)
    std::size_t presentation_ideal = 0;   // consequences of the dialgebra presentation
    std::size_t kernel_dim = 0;           // preimage of the di-ideal under zeta
    std::size_t quotient_dim = 0;         // ambient minus presentation_ideal
    std::size_t base_quotient_dim = 0;    // dim P(n)
};

// Compares the consequences of bso_presentation(v) with the kernel of
// F_{doubled}(n) -> (F(n)/Id(n))^n induced by zeta.
EquivalenceReport verify_dialgebra_equivalence(const VarietyPresentation& v, std::size_t n, const FieldSpec& field,
                                               const IdealOptions& opts = {});

// Normal forms modulo `ideal` of the images of a doubled basis under zeta
// followed by `base_image` (which maps base monomial indices to vectors in
// the base target space of dimension target_dim).  Returns, for every
// doubled monomial, its image in the n-fold block target.
template <class K>
std::vector<SparseVec<typename K::value_type>> zeta_images(
    const MonomialBasis& doubled_basis, const DoubledSignature& d, const MonomialBasis& base_basis,
    std::size_t target_dim, const std::vector<SparseVec<typename K::value_type>>& base_images);

// Whether every vector of `rows` maps to zero under the map given by images.
template <class K>
bool annihilates(const K& field, const std::vector<SparseVec<typename K::value_type>>& images,
                 const std::vector<SparseVec<typename K::value_type>>& rows);

} // namespace dialg
