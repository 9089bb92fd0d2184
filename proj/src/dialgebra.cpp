#include "dialg/dialgebra.hpp"

#include <sstream>

#include "dialg/errors.hpp"

namespace dialg {

PermVector::PermVector(std::size_t arity) : coords_(arity) {
    if (arity == 0) throw ArgumentError("Perm(n) needs n >= 1");
}

PermVector PermVector::basis(std::size_t arity, std::size_t k) {
    PermVector v(arity);
    if (k < 1 || k > arity)
        throw ArgumentError("basis index " + std::to_string(k) + " outside 1.." + std::to_string(arity));
    v[k] = 1;
    return v;
}

PermVector perm_compose(const PermVector& f, const std::vector<PermVector>& gs) {
    if (gs.size() != f.arity())
        throw ArgumentError("Perm composition needs " + std::to_string(f.arity()) + " inner vectors, got " +
                            std::to_string(gs.size()));
    std::size_t total = 0;
    std::vector<std::size_t> offset;
    for (const auto& g : gs) {
        offset.push_back(total);
        total += g.arity();
    }
    // gamma(e_k; g_1..g_n) depends only on g_k and the product of the
    // coordinate sums of the other inputs.
    std::vector<Rational> sums;
    for (const auto& g : gs) {
        Rational s = 0;
        for (std::size_t j = 1; j <= g.arity(); ++j) s += g[j];
        sums.push_back(s);
    }
    PermVector out(total);
    for (std::size_t k = 1; k <= f.arity(); ++k) {
        if (sgn(f[k]) == 0) continue;
        Rational scale = f[k];
        for (std::size_t i = 0; i < gs.size(); ++i)
            if (i != k - 1) scale *= sums[i];
        if (sgn(scale) == 0) continue;
        const auto& g = gs[k - 1];
        for (std::size_t j = 1; j <= g.arity(); ++j) out[offset[k - 1] + j] += scale * g[j];
    }
    return out;
}

Doubling::Doubling(std::shared_ptr<const Signature> base)
    : base_(std::move(base)), map_(*base_), doubled_(std::make_shared<const Signature>(map_.doubled())) {}

DiPolynomial::DiPolynomial(std::shared_ptr<const Signature> sig, std::size_t degree, FieldSpec field)
    : sig_(std::move(sig)), field_(field) {
    if (degree < 1) throw ArgumentError("di-polynomials need degree >= 1");
    components_.assign(degree, Polynomial(sig_, degree, field_));
}

void DiPolynomial::add(std::size_t k, const Polynomial& p) {
    if (k < 1 || k > degree()) throw ArgumentError("component index out of range");
    components_[k - 1] += p;
}

void DiPolynomial::add_term(const EmphasizedMonomial& m, const Rational& c) {
    if (m.emphasized < 1 || m.emphasized > degree()) throw ArgumentError("emphasized leaf out of range");
    components_[m.emphasized - 1].add_term(m.base, c);
}

bool DiPolynomial::is_zero() const {
    for (const auto& c : components_)
        if (!c.is_zero()) return false;
    return true;
}

std::string DiPolynomial::to_string() const {
    std::ostringstream os;
    os << "(di";
    for (std::size_t k = 1; k <= degree(); ++k)
        if (!component(k).is_zero()) os << " (e" << k << " " << component(k).to_string() << ")";
    os << ")";
    return os.str();
}

namespace {

// Returns the emphasized variable of the subtree starting at pos and
// appends the base tokens of that subtree to `out`.
int zeta_tokens(const std::vector<std::int32_t>& t, std::size_t& pos, const DoubledSignature& d,
                std::vector<std::int32_t>& out) {
    const std::int32_t tok = t[pos++];
    if (tok > 0) {
        out.push_back(tok);
        return tok;
    }
    const auto [base, k] = d.split(static_cast<std::size_t>(-tok - 1));
    out.push_back(-static_cast<std::int32_t>(base) - 1);
    int emphasized = 0;
    for (std::size_t slot = 1; slot <= d.base().arity(base); ++slot) {
        int e = zeta_tokens(t, pos, d, out);
        if (slot == k) emphasized = e;
    }
    return emphasized;
}

void rho_tokens(const std::vector<std::int32_t>& t, std::size_t& pos, int k, const DoubledSignature& d,
                std::vector<std::int32_t>& out, bool& contains) {
    const std::int32_t tok = t[pos++];
    if (tok > 0) {
        out.push_back(tok);
        contains = tok == k;
        return;
    }
    const std::size_t base = static_cast<std::size_t>(-tok - 1);
    const std::size_t at = out.size();
    out.push_back(0);
    std::size_t sup = 1;
    contains = false;
    for (std::size_t slot = 1; slot <= d.base().arity(base); ++slot) {
        bool c = false;
        rho_tokens(t, pos, k, d, out, c);
        if (c) {
            sup = slot;
            contains = true;
        }
    }
    out[at] = -static_cast<std::int32_t>(d.symbol(base, sup)) - 1;
}

} // namespace

EmphasizedMonomial zeta(const Monomial& m, const DoubledSignature& d) {
    std::vector<std::int32_t> out;
    out.reserve(m.tokens().size());
    std::size_t pos = 0;
    int k = zeta_tokens(m.tokens(), pos, d, out);
    return {Monomial(std::move(out)), static_cast<std::size_t>(k)};
}

DiPolynomial zeta_poly(const Polynomial& p, const Doubling& d) {
    if (!(p.signature() == d.doubled())) throw ArgumentError("zeta expects a polynomial over the doubled signature");
    DiPolynomial out(d.base_ptr(), p.degree(), p.field());
    for (const auto& [m, c] : p.terms()) out.add_term(zeta(m, d.map()), c);
    return out;
}

Monomial rho(const Monomial& m, std::size_t k, const DoubledSignature& d) {
    if (k < 1 || k > m.degree())
        throw ArgumentError("emphasized leaf " + std::to_string(k) + " outside 1.." + std::to_string(m.degree()));
    std::vector<std::int32_t> out;
    out.reserve(m.tokens().size());
    std::size_t pos = 0;
    bool contains = false;
    rho_tokens(m.tokens(), pos, static_cast<int>(k), d, out, contains);
    return Monomial(std::move(out));
}

Polynomial rho_poly(const Polynomial& p, std::size_t k, const Doubling& d) {
    if (!(p.signature() == d.base())) throw ArgumentError("rho expects a polynomial over the base signature");
    Polynomial out(d.doubled_ptr(), p.degree(), p.field());
    for (const auto& [m, c] : p.terms()) out.add_term(rho(m, k, d.map()), c);
    return out;
}

std::vector<Polynomial> zero_identities(const Doubling& d) {
    const Signature& sig = d.base();
    std::vector<Polynomial> out;
    auto build = [&](std::size_t f, std::size_t k, std::size_t g, std::size_t l, std::size_t j) {
        const std::size_t nf = sig.arity(f), ng = sig.arity(g);
        std::vector<Monomial> inner_leaves;
        for (std::size_t i = 0; i < ng; ++i) inner_leaves.push_back(Monomial::leaf(static_cast<int>(j + i)));
        std::vector<Monomial> kids;
        int next = 1;
        for (std::size_t slot = 1; slot <= nf; ++slot) {
            if (slot == j) {
                kids.push_back(Monomial::node(d.map().symbol(g, l), inner_leaves));
                next += static_cast<int>(ng);
            } else {
                kids.push_back(Monomial::leaf(next++));
            }
        }
        return Monomial::node(d.map().symbol(f, k), kids);
    };
    for (std::size_t f = 0; f < sig.size(); ++f)
        for (std::size_t g = 0; g < sig.size(); ++g)
            for (std::size_t k = 1; k <= sig.arity(f); ++k)
                for (std::size_t j = 1; j <= sig.arity(f); ++j) {
                    if (j == k) continue;
                    for (std::size_t l = 1; l <= sig.arity(g); ++l)
                        for (std::size_t p = l + 1; p <= sig.arity(g); ++p) {
                            const std::size_t n = sig.arity(f) + sig.arity(g) - 1;
                            Polynomial z(d.doubled_ptr(), n);
                            z.add_term(build(f, k, g, l, j), 1);
                            z.add_term(build(f, k, g, p, j), -1);
                            out.push_back(std::move(z));
                        }
                }
    return out;
}

VarietyPresentation bso_presentation(const VarietyPresentation& v) {
    Doubling d(v.signature_ptr());
    std::vector<Polynomial> gens;
    std::vector<std::string> names;
    std::size_t count = 0;
    for (auto& z : zero_identities(d)) {
        gens.push_back(std::move(z));
        names.push_back("zero-" + std::to_string(++count));
    }
    for (std::size_t i = 0; i < v.generators().size(); ++i) {
        const auto& s = v.generators()[i];
        const std::string base_name =
            i < v.generator_names().size() ? v.generator_names()[i] : "s" + std::to_string(i + 1);
        for (std::size_t k = 1; k <= s.degree(); ++k) {
            gens.push_back(rho_poly(s, k, d));
            names.push_back(superscript_name(base_name, k));
        }
    }
    return VarietyPresentation("di-" + v.name(), d.doubled_ptr(), std::move(gens), std::move(names));
}

template <class K>
DiComponent<K> di_ideal_at_degree(const VarietyPresentation& v, std::size_t n, const K& field,
                                  const IdealOptions& opts) {
    auto base = consequences_at_degree(v, n, field, opts);
    const auto N = static_cast<std::uint32_t>(base.ambient_dim());
    std::vector<SparseVec<typename K::value_type>> rows;
    rows.reserve(n * base.ideal_dim());
    for (std::uint32_t k = 0; k < n; ++k)
        for (const auto& r : base.ideal->rows()) {
            auto row = r;
            for (auto& e : row) e.first += k * N;
            rows.push_back(std::move(row));
        }
    Subspace<K> sum = Subspace<K>::from_rref(field, n * N, std::move(rows));
    return DiComponent<K>{std::move(base), std::move(sum)};
}

template <class K>
SparseVec<typename K::value_type> di_to_vector(const DiPolynomial& t, const MonomialBasis& basis, const K& field) {
    SparseVec<typename K::value_type> out;
    const auto N = static_cast<std::uint32_t>(basis.size());
    for (std::uint32_t k = 0; k < t.degree(); ++k)
        for (const auto& [c, a] : to_vector(t.components()[k], basis, field)) out.emplace_back(c + k * N, a);
    return out;
}

template <class K>
DiPolynomial di_from_vector(const SparseVec<typename K::value_type>& v, const MonomialBasis& basis, const K& field,
                            std::shared_ptr<const Signature> sig) {
    DiPolynomial out(sig, basis.degree(), field.spec());
    const std::size_t N = basis.size();
    for (const auto& [c, a] : v) out.add_term({basis.monomial(c % N), c / N + 1}, field.to_rational(a));
    return out;
}

template <class K>
std::vector<SparseVec<typename K::value_type>> zeta_images(
    const MonomialBasis& doubled_basis, const DoubledSignature& d, const MonomialBasis& base_basis,
    std::size_t target_dim, const std::vector<SparseVec<typename K::value_type>>& base_images) {
    std::vector<SparseVec<typename K::value_type>> out(doubled_basis.size());
    for (std::size_t j = 0; j < doubled_basis.size(); ++j) {
        const auto e = zeta(doubled_basis.monomial(j), d);
        const auto shift = static_cast<std::uint32_t>((e.emphasized - 1) * target_dim);
        auto img = base_images[base_basis.index(e.base)];
        for (auto& x : img) x.first += shift;
        out[j] = std::move(img);
    }
    return out;
}

template <class K>
bool annihilates(const K& field, const std::vector<SparseVec<typename K::value_type>>& images,
                 const std::vector<SparseVec<typename K::value_type>>& rows) {
    using V = typename K::value_type;
    std::size_t dim = 0;
    for (const auto& img : images)
        if (!img.empty()) dim = std::max<std::size_t>(dim, img.back().first + 1);
    std::vector<V> acc(dim, field.zero());
    std::vector<std::uint32_t> touched;
    for (const auto& row : rows) {
        touched.clear();
        for (const auto& [c, a] : row)
            for (const auto& [t, b] : images[c]) {
                if (field.is_zero(acc[t])) touched.push_back(t);
                field.sub_mul(acc[t], a, b);
            }
        bool zero = true;
        for (auto t : touched) {
            if (!field.is_zero(acc[t])) zero = false;
            acc[t] = field.zero();
        }
        if (!zero) return false;
    }
    return true;
}

namespace {

template <class K>
EquivalenceReport equivalence(const VarietyPresentation& v, std::size_t n, const K& field,
                              const IdealOptions& opts) {
    using Row = SparseVec<typename K::value_type>;
    auto base = consequences_at_degree(v, n, field, opts);
    const auto& bb = *base.basis;
    std::vector<Row> base_images(bb.size());
    for (std::size_t i = 0; i < bb.size(); ++i)
        base_images[i] = base.ideal->reduce(Row{{static_cast<std::uint32_t>(i), field.one()}});

    const auto di = bso_presentation(v);
    Doubling d(v.signature_ptr());
    auto doubled_basis = basis_for(d.doubled(), n, opts.max_degree);
    auto images = zeta_images<K>(*doubled_basis, d.map(), bb, bb.size(), base_images);
    const std::size_t image_rank = span_of(field, n * bb.size(), images).rank();

    auto lhs = consequences_at_degree(di, n, field, opts);
    EquivalenceReport r;
    r.ambient_dim = doubled_basis->size();
    r.presentation_ideal = lhs.ideal_dim();
    r.kernel_dim = r.ambient_dim - image_rank;
    r.quotient_dim = lhs.quotient_dim();
    r.base_quotient_dim = base.quotient_dim();
    r.equal = r.presentation_ideal == r.kernel_dim && annihilates(field, images, lhs.ideal->rows());
    return r;
}

} // namespace

EquivalenceReport verify_dialgebra_equivalence(const VarietyPresentation& v, std::size_t n, const FieldSpec& field,
                                               const IdealOptions& opts) {
    if (n < 2) throw ArgumentError("equivalence is checked for degree >= 2");
    return with_field(field, [&](const auto& k) { return equivalence(v, n, k, opts); });
}

#define DIALG_INSTANTIATE(K)                                                                                     \
    template DiComponent<K> di_ideal_at_degree<K>(const VarietyPresentation&, std::size_t, const K&,           \
                                                  const IdealOptions&);                                        \
    template SparseVec<K::value_type> di_to_vector<K>(const DiPolynomial&, const MonomialBasis&, const K&);    \
    template DiPolynomial di_from_vector<K>(const SparseVec<K::value_type>&, const MonomialBasis&, const K&,    \
                                            std::shared_ptr<const Signature>);                                 \
    template std::vector<SparseVec<K::value_type>> zeta_images<K>(                                             \
        const MonomialBasis&, const DoubledSignature&, const MonomialBasis&, std::size_t,                      \
        const std::vector<SparseVec<K::value_type>>&);                                                         \
    template bool annihilates<K>(const K&, const std::vector<SparseVec<K::value_type>>&,                       \
                                 const std::vector<SparseVec<K::value_type>>&);

DIALG_INSTANTIATE(PrimeField)
DIALG_INSTANTIATE(RationalField)

#undef DIALG_INSTANTIATE

} // namespace dialg
