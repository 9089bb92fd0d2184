#pragma once

// Multilinear components of operad ideals.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dialg/field.hpp"
#include "dialg/monomial.hpp"
#include "dialg/polynomial.hpp"
#include "dialg/presentation.hpp"
#include "dialg/sparse.hpp"

namespace dialg {

// Persistent storage for computed ideal layers. Rows are reduced echelon
// rows with coefficients written as rationals (F_p residues as integers).
class LayerStore {
public:
    virtual ~LayerStore() = default;
    virtual std::optional<std::vector<SparseVec<Rational>>> load(const std::string& key) = 0;
    virtual void save(const std::string& key, const std::vector<SparseVec<Rational>>& rows) = 0;
};

struct IdealOptions {
    std::size_t max_degree = kDefaultEnumerationCap;
    LayerStore* store = nullptr;
};

template <class K>
struct DegreeComponent {
    std::size_t degree = 0;
    std::shared_ptr<const MonomialBasis> basis;
    std::shared_ptr<const Subspace<K>> ideal;

    std::size_t ambient_dim() const { return basis->size(); }
    std::size_t ideal_dim() const { return ideal->rank(); }
    std::size_t quotient_dim() const { return basis->size() - ideal->rank(); }
};

// Degree-n layer of the operad ideal generated by the presentation.
template <class K>
DegreeComponent<K> consequences_at_degree(const VarietyPresentation& v, std::size_t n, const K& field,
                                          const IdealOptions& opts = {});

std::size_t quotient_dimension(const VarietyPresentation& v, std::size_t n, const FieldSpec& field,
                               const IdealOptions& opts = {});

// Whether t (multilinear) lies in the ideal; evaluated over t's field.
bool identity_implies(const VarietyPresentation& v, const Polynomial& t, const IdealOptions& opts = {});

// Layer cache key: "<digest>:<degree>:<field>".
std::string layer_key(const VarietyPresentation& v, std::size_t n, const FieldSpec& field);

// Drops the in-process layer memo (used by tests that time or compare recomputation).
void clear_layer_memo();

template <class K>
SparseVec<typename K::value_type> to_vector(const Polynomial& p, const MonomialBasis& basis, const K& field);

template <class K>
Polynomial to_polynomial(const SparseVec<typename K::value_type>& v, const MonomialBasis& basis, const K& field,
                         std::shared_ptr<const Signature> sig);

// Table of a monomial-to-monomial map between two bases.
using IndexMap = std::vector<std::uint32_t>;

template <class V>
SparseVec<V> map_indices(const SparseVec<V>& v, const IndexMap& map) {
    SparseVec<V> out;
    out.reserve(v.size());
    for (const auto& [c, a] : v) out.emplace_back(map[c], a);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

// Index maps of the adjacent transpositions (i i+1), i = 1..n-1, on a basis.
std::vector<IndexMap> transposition_maps(const MonomialBasis& basis);

// Closes the span held by `builder` under the maps, starting from the
// queued vectors (which must already be in the span).
template <class K>
void saturate(EchelonBuilder<K>& builder, std::vector<SparseVec<typename K::value_type>> queue,
              const std::vector<IndexMap>& maps);

} // namespace dialg
