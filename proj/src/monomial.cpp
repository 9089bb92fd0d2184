#include "dialg/monomial.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "dialg/errors.hpp"

namespace dialg {

Permutation identity_permutation(std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 1);
    return p;
}

bool is_permutation(const Permutation& p) {
    std::vector<char> seen(p.size() + 1, 0);
    for (int v : p) {
        if (v < 1 || static_cast<std::size_t>(v) > p.size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Permutation compose_permutations(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw ArgumentError("permutation length mismatch");
    Permutation out(a.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = a[b[i] - 1];
    return out;
}

Permutation inverse_permutation(const Permutation& p) {
    Permutation out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[p[i] - 1] = static_cast<int>(i + 1);
    return out;
}

std::size_t factorial(std::size_t n) {
    std::size_t f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    return f;
}

std::size_t permutation_rank(const std::vector<int>& word) {
    const std::size_t n = word.size();
    std::size_t rank = 0;
    std::vector<char> used(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (int v = 1; v < word[i]; ++v)
            if (!used[v]) ++smaller;
        used[word[i]] = 1;
        rank += smaller * factorial(n - 1 - i);
    }
    return rank;
}

std::vector<int> permutation_unrank(std::size_t rank, std::size_t n) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t f = factorial(n - 1 - i);
        std::size_t q = rank / f;
        rank %= f;
        out.push_back(pool[q]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(q));
    }
    return out;
}

Monomial Monomial::leaf(int var) {
    if (var < 1) throw ArgumentError("variables are positive integers");
    return Monomial({var});
}

Monomial Monomial::node(std::size_t symbol, const std::vector<Monomial>& children) {
    std::vector<std::int32_t> t{-static_cast<std::int32_t>(symbol) - 1};
    for (const auto& c : children) t.insert(t.end(), c.tokens_.begin(), c.tokens_.end());
    return Monomial(std::move(t));
}

std::size_t Monomial::degree() const {
    return static_cast<std::size_t>(std::count_if(tokens_.begin(), tokens_.end(), [](auto t) { return t > 0; }));
}

std::vector<int> Monomial::leaf_word() const {
    std::vector<int> w;
    for (auto t : tokens_)
        if (t > 0) w.push_back(t);
    return w;
}

std::vector<std::int32_t> Monomial::skeleton() const {
    std::vector<std::int32_t> s(tokens_.size());
    for (std::size_t i = 0; i < tokens_.size(); ++i) s[i] = tokens_[i] > 0 ? 0 : tokens_[i];
    return s;
}

std::size_t subtree_end(const std::vector<std::int32_t>& tokens, std::size_t pos, const Signature& sig) {
    std::size_t pending = 1;
    while (pending > 0) {
        if (pos >= tokens.size()) throw ArgumentError("truncated monomial encoding");
        std::int32_t t = tokens[pos++];
        --pending;
        if (t <= 0) {
            auto s = static_cast<std::size_t>(-t - 1);
            if (t == 0 || s >= sig.size()) throw ArgumentError("unknown operation symbol in monomial");
            pending += sig.arity(s);
        }
    }
    return pos;
}

bool Monomial::well_formed(const Signature& sig) const {
    if (tokens_.empty()) return false;
    try {
        return subtree_end(tokens_, 0, sig) == tokens_.size();
    } catch (const ArgumentError&) {
        return false;
    }
}

bool Monomial::is_multilinear() const {
    auto w = leaf_word();
    std::sort(w.begin(), w.end());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != static_cast<int>(i + 1)) return false;
    return true;
}

std::vector<Monomial> Monomial::children(const Signature& sig) const {
    std::vector<Monomial> out;
    if (is_leaf()) return out;
    std::size_t pos = 1;
    for (std::size_t c = 0; c < sig.arity(root_symbol()); ++c) {
        std::size_t end = subtree_end(tokens_, pos, sig);
        out.emplace_back(std::vector<std::int32_t>(tokens_.begin() + pos, tokens_.begin() + end));
        pos = end;
    }
    return out;
}

Monomial Monomial::relabeled(const std::function<int(int)>& map) const {
    auto t = tokens_;
    for (auto& v : t)
        if (v > 0) v = map(v);
    return Monomial(std::move(t));
}

Monomial Monomial::permuted(const Permutation& sigma) const {
    auto t = tokens_;
    for (auto& v : t)
        if (v > 0) v = sigma[v - 1];
    return Monomial(std::move(t));
}

Monomial Monomial::shifted(int offset) const {
    auto t = tokens_;
    for (auto& v : t)
        if (v > 0) v += offset;
    return Monomial(std::move(t));
}

std::string Monomial::to_string(const Signature& sig) const {
    std::string out;
    std::vector<std::size_t> open;  // remaining children per open node
    for (auto t : tokens_) {
        if (!open.empty()) out += ' ';
        if (t > 0) {
            out += std::to_string(t);
        } else {
            auto s = static_cast<std::size_t>(-t - 1);
            out += "(" + (s < sig.size() ? sig.op(s).name : "?" + std::to_string(s));
            open.push_back(s < sig.size() ? sig.arity(s) + 1 : 1);
        }
        while (!open.empty() && --open.back() == 0) {
            out += ')';
            open.pop_back();
        }
    }
    return out;
}

bool operator<(const Monomial& a, const Monomial& b) {
    const auto& x = a.tokens_;
    const auto& y = b.tokens_;
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::int32_t sx = x[i] > 0 ? 0 : -x[i];
        std::int32_t sy = y[i] > 0 ? 0 : -y[i];
        if (sx != sy) return sx < sy;
    }
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > 0 && x[i] != y[i]) return x[i] < y[i];
    return false;
}

std::size_t TokenHash::operator()(const std::vector<std::int32_t>& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto t : v) {
        h ^= static_cast<std::uint32_t>(t);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

std::size_t MonomialHash::operator()(const Monomial& m) const { return TokenHash{}(m.tokens()); }

Monomial substitute_leaf(const Monomial& w, int i, const Monomial& u) {
    const int m = static_cast<int>(u.degree());
    std::vector<std::int32_t> t;
    t.reserve(w.tokens().size() + u.tokens().size());
    bool found = false;
    for (auto v : w.tokens()) {
        if (v == i) {
            found = true;
            for (auto x : u.tokens()) t.push_back(x > 0 ? x + i - 1 : x);
        } else {
            t.push_back(v > i ? v + m - 1 : v);
        }
    }
    if (!found) throw ArgumentError("variable " + std::to_string(i) + " does not occur in the monomial");
    return Monomial(std::move(t));
}

namespace {

using Skeleton = std::vector<std::int32_t>;

void skeletons_of(const Signature& sig, std::size_t n, std::map<std::size_t, std::vector<Skeleton>>& memo);

// All ways to fill `arity` child slots with skeletons whose leaf counts sum to n.
void fill_children(const Signature& sig, std::size_t slots_left, std::size_t n, Skeleton& prefix,
                   std::vector<Skeleton>& out, std::map<std::size_t, std::vector<Skeleton>>& memo) {
    if (slots_left == 0) {
        if (n == 0) out.push_back(prefix);
        return;
    }
    if (n < slots_left) return;
    for (std::size_t k = 1; k + (slots_left - 1) <= n; ++k) {
        skeletons_of(sig, k, memo);
        for (const auto& child : memo[k]) {
            std::size_t mark = prefix.size();
            prefix.insert(prefix.end(), child.begin(), child.end());
            fill_children(sig, slots_left - 1, n - k, prefix, out, memo);
            prefix.resize(mark);
        }
    }
}

void skeletons_of(const Signature& sig, std::size_t n, std::map<std::size_t, std::vector<Skeleton>>& memo) {
    if (memo.count(n)) return;
    std::vector<Skeleton> out;
    if (n == 1) {
        out.push_back({0});
    } else {
        for (std::size_t s = 0; s < sig.size(); ++s) {
            Skeleton prefix{-static_cast<std::int32_t>(s) - 1};
            fill_children(sig, sig.arity(s), n, prefix, out, memo);
        }
    }
    // canonical order: compare as Monomials with blank leaves
    std::sort(out.begin(), out.end(), [](const Skeleton& a, const Skeleton& b) { return Monomial(a) < Monomial(b); });
    memo[n] = std::move(out);
}

} // namespace

MonomialBasis::MonomialBasis(const Signature& sig, std::size_t degree, std::size_t cap)
    : sig_(sig), degree_(degree), factorial_(factorial(degree)) {
    if (degree < 1) throw ArgumentError("degree must be at least 1");
    if (degree > cap)
        throw ResourceLimitError("degree " + std::to_string(degree) + " exceeds the enumeration cap " +
                                     std::to_string(cap),
                                 cap);
    std::map<std::size_t, std::vector<Skeleton>> memo;
    skeletons_of(sig, degree, memo);
    skeletons_ = memo[degree];
    for (std::size_t i = 0; i < skeletons_.size(); ++i) skeleton_index_.emplace(skeletons_[i], i);
}

Monomial MonomialBasis::monomial(std::size_t index) const {
    if (index >= size()) throw ArgumentError("basis index out of range");
    std::vector<std::int32_t> t = skeletons_[index / factorial_];
    auto word = permutation_unrank(index % factorial_, degree_);
    std::size_t k = 0;
    for (auto& v : t)
        if (v == 0) v = word[k++];
    return Monomial(std::move(t));
}

std::size_t MonomialBasis::index(const Monomial& m) const {
    auto it = skeleton_index_.find(m.skeleton());
    if (it == skeleton_index_.end() || !m.is_multilinear() || m.degree() != degree_)
        throw ArgumentError("monomial " + m.to_string(sig_) + " is not in the degree-" + std::to_string(degree_) +
                            " multilinear basis");
    return it->second * factorial_ + permutation_rank(m.leaf_word());
}

std::shared_ptr<const MonomialBasis> basis_for(const Signature& sig, std::size_t degree, std::size_t cap) {
    if (degree > cap)
        throw ResourceLimitError("degree " + std::to_string(degree) + " exceeds the enumeration cap " +
                                     std::to_string(cap),
                                 cap);
    static std::mutex mu;
    static std::map<std::pair<std::string, std::size_t>, std::shared_ptr<const MonomialBasis>> cache;
    auto key = std::make_pair(sig.to_string(), degree);
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto b = std::make_shared<const MonomialBasis>(sig, degree, cap);
    std::lock_guard lock(mu);
    return cache.emplace(key, b).first->second;
}

std::vector<Monomial> enumerate_monomials(const Signature& sig, std::size_t n, std::size_t cap) {
    auto b = basis_for(sig, n, cap);
    std::vector<Monomial> out;
    out.reserve(b->size());
    for (std::size_t i = 0; i < b->size(); ++i) out.push_back(b->monomial(i));
    return out;
}

} // namespace dialg
