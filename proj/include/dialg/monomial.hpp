#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "dialg/signature.hpp"

namespace dialg {

inline constexpr std::size_t kDefaultEnumerationCap = 8;

// One-based images: perm[i - 1] = sigma(i).
using Permutation = std::vector<int>;

Permutation identity_permutation(std::size_t n);
bool is_permutation(const Permutation& p);
// (a * b)(i) = a(b(i))
Permutation compose_permutations(const Permutation& a, const Permutation& b);
Permutation inverse_permutation(const Permutation& p);

// A planar rooted tree stored in preorder. Internal node for symbol s is
// the token -(s + 1); a leaf carrying variable v is the token v >= 1.
// Arities live in the Signature, so structural walks take one.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::int32_t> tokens) : tokens_(std::move(tokens)) {}

    static Monomial leaf(int var);
    static Monomial node(std::size_t symbol, const std::vector<Monomial>& children);

    const std::vector<std::int32_t>& tokens() const { return tokens_; }
    bool is_leaf() const { return tokens_.size() == 1 && tokens_[0] > 0; }
    std::size_t root_symbol() const { return static_cast<std::size_t>(-tokens_[0] - 1); }
    std::size_t degree() const;
    std::vector<int> leaf_word() const;
    // The tree with every leaf token replaced by 0.
    std::vector<std::int32_t> skeleton() const;

    bool well_formed(const Signature& sig) const;
    bool is_multilinear() const;
    std::vector<Monomial> children(const Signature& sig) const;

    // Every leaf v becomes map(v).
    Monomial relabeled(const std::function<int(int)>& map) const;
    Monomial permuted(const Permutation& sigma) const;
    Monomial shifted(int offset) const;

    std::string to_string(const Signature& sig) const;

    // Canonical order: skeletons compared recursively (leaf < internal,
    // then symbol index, then children left to right), ties broken by the
    // leaf word lexicographically.
    friend bool operator<(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.tokens_ == b.tokens_; }

private:
    std::vector<std::int32_t> tokens_;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const;
};

struct TokenHash {
    std::size_t operator()(const std::vector<std::int32_t>& v) const;
};

// Index of the subtree starting at token position pos; returns one past its end.
std::size_t subtree_end(const std::vector<std::int32_t>& tokens, std::size_t pos, const Signature& sig);

// Replaces variable i of w with u (variables of u shifted by i - 1) and
// shifts the variables of w above i by deg(u) - 1.
Monomial substitute_leaf(const Monomial& w, int i, const Monomial& u);

// The canonical ordered basis of the multilinear component F(n): skeletons
// in canonical order, each followed by its n! leaf words in lexicographic
// order. Index = skeleton_index * n! + lexicographic rank of the leaf word.
class MonomialBasis {
public:
    MonomialBasis(const Signature& sig, std::size_t degree, std::size_t cap = kDefaultEnumerationCap);

    const Signature& signature() const { return sig_; }
    std::size_t degree() const { return degree_; }
    std::size_t size() const { return skeletons_.size() * factorial_; }
    std::size_t skeleton_count() const { return skeletons_.size(); }
    std::size_t labelings() const { return factorial_; }

    Monomial monomial(std::size_t index) const;
    // Throws ArgumentError when m is not a well-formed multilinear monomial of this degree.
    std::size_t index(const Monomial& m) const;

private:
    Signature sig_;
    std::size_t degree_;
    std::size_t factorial_;
    std::vector<std::vector<std::int32_t>> skeletons_;
    std::unordered_map<std::vector<std::int32_t>, std::size_t, TokenHash> skeleton_index_;
};

// Shared, memoized bases (thread safe).
std::shared_ptr<const MonomialBasis> basis_for(const Signature& sig, std::size_t degree,
                                               std::size_t cap = kDefaultEnumerationCap);

std::vector<Monomial> enumerate_monomials(const Signature& sig, std::size_t n,
                                          std::size_t cap = kDefaultEnumerationCap);

std::size_t factorial(std::size_t n);
std::size_t permutation_rank(const std::vector<int>& word);
std::vector<int> permutation_unrank(std::size_t rank, std::size_t n);

} // namespace dialg
