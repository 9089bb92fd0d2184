#include "dialg/ideal.hpp"

#include <map>
#include <mutex>

#include "dialg/errors.hpp"

namespace dialg {

template <class K>
SparseVec<typename K::value_type> to_vector(const Polynomial& p, const MonomialBasis& basis, const K& field) {
    if (p.degree() != basis.degree())
        throw ArgumentError("polynomial of degree " + std::to_string(p.degree()) + " against a degree-" +
                            std::to_string(basis.degree()) + " basis");
    SparseVec<typename K::value_type> v;
    v.reserve(p.size());
    for (const auto& [m, c] : p.terms()) v.emplace_back(static_cast<std::uint32_t>(basis.index(m)), field.from_rational(c));
    return canonicalize(field, std::move(v));
}

template <class K>
Polynomial to_polynomial(const SparseVec<typename K::value_type>& v, const MonomialBasis& basis, const K& field,
                         std::shared_ptr<const Signature> sig) {
    Polynomial p(std::move(sig), basis.degree(), field.spec());
    for (const auto& [c, a] : v) p.add_term(basis.monomial(c), field.to_rational(a));
    return p;
}

std::vector<IndexMap> transposition_maps(const MonomialBasis& basis) {
    const std::size_t n = basis.degree();
    std::vector<IndexMap> maps;
    for (std::size_t i = 1; i < n; ++i) {
        Permutation t = identity_permutation(n);
        std::swap(t[i - 1], t[i]);
        IndexMap map(basis.size());
        for (std::size_t j = 0; j < basis.size(); ++j)
            map[j] = static_cast<std::uint32_t>(basis.index(basis.monomial(j).permuted(t)));
        maps.push_back(std::move(map));
    }
    return maps;
}

template <class K>
void saturate(EchelonBuilder<K>& builder, std::vector<SparseVec<typename K::value_type>> queue,
              const std::vector<IndexMap>& maps) {
    SparseVec<typename K::value_type> added;
    while (!queue.empty()) {
        auto v = std::move(queue.back());
        queue.pop_back();
        for (const auto& map : maps)
            if (builder.insert(map_indices(v, map), &added)) queue.push_back(added);
    }
}

std::string layer_key(const VarietyPresentation& v, std::size_t n, const FieldSpec& field) {
    return v.digest() + ":" + std::to_string(n) + ":" + field.to_string();
}

namespace {

template <class K>
struct LayerMemo {
    std::mutex mu;
    std::map<std::string, std::shared_ptr<const Subspace<K>>> layers;
};

template <class K>
LayerMemo<K>& memo() {
    static LayerMemo<K> m;
    return m;
}

// Move maps from F(d') into F(d), d = d' + arity - 1, for one symbol:
// wrapping by the symbol (argument in each slot j, the other slots holding
// the lowest and highest variables), and grafting the symbol onto leaf 1.
// Together with S_d-saturation these reach every composite containing an
// ideal element, because any tree context or inner substitution is a chain
// of single-symbol wraps and grafts up to relabeling.
std::vector<IndexMap> move_maps(const MonomialBasis& from, const MonomialBasis& to, std::size_t symbol) {
    const Signature& sig = to.signature();
    const std::size_t a = sig.arity(symbol);
    const int dp = static_cast<int>(from.degree());
    std::vector<IndexMap> maps;
    for (std::size_t j = 1; j <= a; ++j) {
        IndexMap map(from.size());
        for (std::size_t i = 0; i < from.size(); ++i) {
            std::vector<Monomial> kids;
            int next = 1;
            for (std::size_t s = 1; s <= a; ++s) {
                if (s == j) {
                    kids.push_back(from.monomial(i).shifted(next - 1));
                    next += dp;
                } else {
                    kids.push_back(Monomial::leaf(next++));
                }
            }
            map[i] = static_cast<std::uint32_t>(to.index(Monomial::node(symbol, kids)));
        }
        maps.push_back(std::move(map));
    }
    std::vector<Monomial> leaves;
    for (std::size_t s = 1; s <= a; ++s) leaves.push_back(Monomial::leaf(static_cast<int>(s)));
    const Monomial graft = Monomial::node(symbol, leaves);
    IndexMap map(from.size());
    for (std::size_t i = 0; i < from.size(); ++i)
        map[i] = static_cast<std::uint32_t>(to.index(substitute_leaf(from.monomial(i), 1, graft)));
    maps.push_back(std::move(map));
    return maps;
}

template <class K>
std::shared_ptr<const Subspace<K>> compute_layer(const VarietyPresentation& v, std::size_t n, const K& field,
                                                 const IdealOptions& opts);

template <class K>
std::shared_ptr<const Subspace<K>> layer(const VarietyPresentation& v, std::size_t n, const K& field,
                                         const IdealOptions& opts) {
    const std::string key = layer_key(v, n, field.spec());
    auto& m = memo<K>();
    {
        std::lock_guard lock(m.mu);
        auto it = m.layers.find(key);
        if (it != m.layers.end()) return it->second;
    }
    std::shared_ptr<const Subspace<K>> result;
    if (opts.store) {
        if (auto rows = opts.store->load(key)) {
            auto basis = basis_for(v.signature(), n, opts.max_degree);
            std::vector<SparseVec<typename K::value_type>> converted;
            for (const auto& r : *rows) {
                SparseVec<typename K::value_type> row;
                for (const auto& [c, q] : r) row.emplace_back(c, field.from_rational(q));
                converted.push_back(std::move(row));
            }
            result = std::make_shared<const Subspace<K>>(
                Subspace<K>::from_rref(field, basis->size(), std::move(converted)));
        }
    }
    if (!result) {
        result = compute_layer(v, n, field, opts);
        if (opts.store) {
            std::vector<SparseVec<Rational>> rows;
            for (const auto& r : result->rows()) {
                SparseVec<Rational> row;
                for (const auto& [c, a] : r) row.emplace_back(c, field.to_rational(a));
                rows.push_back(std::move(row));
            }
            opts.store->save(key, rows);
        }
    }
    std::lock_guard lock(m.mu);
    return m.layers.emplace(key, result).first->second;
}

template <class K>
std::shared_ptr<const Subspace<K>> compute_layer(const VarietyPresentation& v, std::size_t n, const K& field,
                                                 const IdealOptions& opts) {
    using Row = SparseVec<typename K::value_type>;
    auto basis = basis_for(v.signature(), n, opts.max_degree);
    EchelonBuilder<K> builder(field, basis->size());
    std::vector<Row> queue;
    Row added;
    for (const auto& g : v.generators())
        if (g.degree() == n && builder.insert(to_vector(g, *basis, field), &added)) queue.push_back(added);

    const Signature& sig = v.signature();
    for (std::size_t s = 0; s < sig.size(); ++s) {
        const std::size_t a = sig.arity(s);
        if (n < a + 1) continue;
        const std::size_t lower = n - a + 1;
        if (lower < v.min_generator_degree()) continue;
        auto below = layer(v, lower, field, opts);
        if (below->rank() == 0) continue;
        auto from = basis_for(sig, lower, opts.max_degree);
        for (const auto& map : move_maps(*from, *basis, s))
            for (const auto& row : below->rows())
                if (builder.insert(map_indices(row, map), &added)) queue.push_back(added);
    }
    if (!queue.empty()) saturate(builder, std::move(queue), transposition_maps(*basis));
    return std::make_shared<const Subspace<K>>(builder.finish());
}

} // namespace

void clear_layer_memo() {
    {
        auto& m = memo<PrimeField>();
        std::lock_guard lock(m.mu);
        m.layers.clear();
    }
    auto& m = memo<RationalField>();
    std::lock_guard lock(m.mu);
    m.layers.clear();
}

template <class K>
DegreeComponent<K> consequences_at_degree(const VarietyPresentation& v, std::size_t n, const K& field,
                                          const IdealOptions& opts) {
    if (n < 2) throw ArgumentError("consequences are computed for degree >= 2");
    if (n > opts.max_degree)
        throw ResourceLimitError("degree " + std::to_string(n) + " exceeds the degree cap " +
                                     std::to_string(opts.max_degree),
                                 opts.max_degree);
    DegreeComponent<K> out;
    out.degree = n;
    out.basis = basis_for(v.signature(), n, opts.max_degree);
    out.ideal = layer(v, n, field, opts);
    return out;
}

std::size_t quotient_dimension(const VarietyPresentation& v, std::size_t n, const FieldSpec& field,
                               const IdealOptions& opts) {
    return with_field(field, [&](const auto& k) { return consequences_at_degree(v, n, k, opts).quotient_dim(); });
}

bool identity_implies(const VarietyPresentation& v, const Polynomial& t, const IdealOptions& opts) {
    if (!(t.signature() == v.signature())) throw ArgumentError("identity is over a different signature");
    if (t.is_zero()) return true;
    if (t.degree() < 2) return false;
    return with_field(t.field(), [&](const auto& k) {
        auto comp = consequences_at_degree(v, t.degree(), k, opts);
        return comp.ideal->contains(to_vector(t, *comp.basis, k));
    });
}

#define DIALG_INSTANTIATE(K)                                                                                   \
    template SparseVec<K::value_type> to_vector<K>(const Polynomial&, const MonomialBasis&, const K&);        \
    template Polynomial to_polynomial<K>(const SparseVec<K::value_type>&, const MonomialBasis&, const K&,     \
                                         std::shared_ptr<const Signature>);                                   \
    template void saturate<K>(EchelonBuilder<K>&, std::vector<SparseVec<K::value_type>>,                      \
                              const std::vector<IndexMap>&);                                                  \
    template DegreeComponent<K> consequences_at_degree<K>(const VarietyPresentation&, std::size_t, const K&, \
                                                          const IdealOptions&);

DIALG_INSTANTIATE(PrimeField)
DIALG_INSTANTIATE(RationalField)

#undef DIALG_INSTANTIATE

} // namespace dialg
