#include "dialg/polynomial.hpp"

#include <algorithm>

#include "dialg/errors.hpp"

namespace dialg {

Polynomial::Polynomial(std::shared_ptr<const Signature> sig, std::size_t degree, FieldSpec field)
    : sig_(std::move(sig)), degree_(degree), field_(field) {
    if (!sig_) throw ArgumentError("polynomial without a signature");
    if (degree_ < 1) throw ArgumentError("polynomial degree must be at least 1");
}

Polynomial Polynomial::monomial(std::shared_ptr<const Signature> sig, const Monomial& m, const Rational& c,
                                FieldSpec field) {
    Polynomial p(std::move(sig), m.degree(), field);
    p.add_term(m, c);
    return p;
}

Polynomial Polynomial::identity(std::shared_ptr<const Signature> sig, FieldSpec field) {
    return monomial(std::move(sig), Monomial::leaf(1), 1, field);
}

Polynomial& Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (!m.well_formed(*sig_)) throw ArgumentError("monomial does not match the signature's arities");
    if (m.degree() != degree_)
        throw ArgumentError("monomial of degree " + std::to_string(m.degree()) + " added to a degree-" +
                            std::to_string(degree_) + " polynomial");
    if (!m.is_multilinear()) throw ArgumentError("monomial " + m.to_string(*sig_) + " is not multilinear");
    Rational v = field_.normalize(c);
    if (sgn(v) == 0) return *this;
    auto [it, inserted] = terms_.emplace(m, v);
    if (!inserted) {
        it->second = field_.normalize(it->second + v);
        if (sgn(it->second) == 0) terms_.erase(it);
    }
    return *this;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::check_compatible(const Polynomial& other) const {
    if (degree_ != other.degree_) throw ArgumentError("adding polynomials of different degrees");
    if (!(field_ == other.field_)) throw ArgumentError("adding polynomials over different fields");
    if (sig_ != other.sig_ && !(*sig_ == *other.sig_))
        throw ArgumentError("adding polynomials over different signatures");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    Rational k = field_.normalize(c);
    if (sgn(k) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v = field_.normalize(v * k);
    return *this;
}

Polynomial Polynomial::in_field(const FieldSpec& field) const {
    Polynomial out(sig_, degree_, field);
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.degree_ == b.degree_ && a.field_ == b.field_ && (a.sig_ == b.sig_ || *a.sig_ == *b.sig_) &&
           a.terms_ == b.terms_;
}

std::string coefficient_to_string(const Rational& c) { return c.get_str(); }

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::string> parts;
    for (const auto& [m, c] : terms_) {
        std::string ms = m.to_string(*sig_);
        parts.push_back(c == 1 ? ms : "(* " + coefficient_to_string(c) + " " + ms + ")");
    }
    if (parts.size() == 1) return parts.front();
    std::string out = "(+";
    for (const auto& s : parts) out += " " + s;
    return out + ")";
}

Polynomial apply_permutation(const Permutation& sigma, const Polynomial& p) {
    if (sigma.size() != p.degree())
        throw ArgumentError("permutation of length " + std::to_string(sigma.size()) + " applied to degree " +
                            std::to_string(p.degree()));
    if (!is_permutation(sigma)) throw ArgumentError("not a permutation");
    Polynomial out(p.signature_ptr(), p.degree(), p.field());
    for (const auto& [m, c] : p.terms()) out.add_term(m.permuted(sigma), c);
    return out;
}

Polynomial compose(const Polynomial& f, const std::vector<Polynomial>& gs) {
    if (gs.size() != f.degree())
        throw ArgumentError("composition needs " + std::to_string(f.degree()) + " inner polynomials, got " +
                            std::to_string(gs.size()));
    std::size_t total = 0;
    std::vector<int> offset;
    for (const auto& g : gs) {
        if (!(g.field() == f.field())) throw ArgumentError("composition across fields");
        if (!(g.signature() == f.signature())) throw ArgumentError("composition across signatures");
        offset.push_back(static_cast<int>(total));
        total += g.degree();
    }
    Polynomial out(f.signature_ptr(), total, f.field());
    const std::size_t n = gs.size();
    // odometer over one term of each g_i
    std::vector<Polynomial::Terms::const_iterator> pick(n);
    for (const auto& [fm, fc] : f.terms()) {
        if (std::any_of(gs.begin(), gs.end(), [](const Polynomial& g) { return g.is_zero(); })) break;
        for (std::size_t i = 0; i < n; ++i) pick[i] = gs[i].terms().begin();
        while (true) {
            std::vector<std::int32_t> t;
            Rational c = fc;
            for (auto v : fm.tokens()) {
                if (v <= 0) {
                    t.push_back(v);
                    continue;
                }
                const auto& [gm, gc] = *pick[v - 1];
                for (auto x : gm.tokens()) t.push_back(x > 0 ? x + offset[v - 1] : x);
            }
            for (std::size_t i = 0; i < n; ++i) c *= pick[i]->second;
            out.add_term(Monomial(std::move(t)), c);
            std::size_t i = 0;
            for (; i < n; ++i) {
                if (++pick[i] != gs[i].terms().end()) break;
                pick[i] = gs[i].terms().begin();
            }
            if (i == n) break;
        }
    }
    return out;
}

Polynomial substitute_at(const Monomial& w, std::size_t i, const Polynomial& u) {
    const std::size_t r = w.degree();
    if (i < 1 || i > r)
        throw ArgumentError("slot " + std::to_string(i) + " out of range 1.." + std::to_string(r));
    Polynomial out(u.signature_ptr(), r + u.degree() - 1, u.field());
    for (const auto& [m, c] : u.terms()) out.add_term(substitute_leaf(w, static_cast<int>(i), m), c);
    return out;
}

Polynomial linearize(const RawPolynomial& f, FieldSpec field) {
    if (!f.sig) throw ArgumentError("linearize: missing signature");
    if (f.terms.empty()) throw ArgumentError("linearize: empty polynomial has no degree");
    // degree vector of the first term
    auto degree_vector = [](const Monomial& m) {
        std::map<int, std::size_t> dv;
        for (int v : m.leaf_word()) ++dv[v];
        return dv;
    };
    const auto dv = degree_vector(f.terms.front().first);
    for (const auto& [m, c] : f.terms) {
        if (!m.well_formed(*f.sig)) throw ArgumentError("linearize: monomial does not match the signature");
        if (degree_vector(m) != dv) throw ArgumentError("linearize: polynomial is not multihomogeneous");
    }
    std::map<int, int> block_start;
    int next = 1;
    for (const auto& [v, d] : dv) {
        block_start[v] = next;
        next += static_cast<int>(d);
    }
    const std::size_t n = static_cast<std::size_t>(next - 1);
    Polynomial out(f.sig, n, field);
    for (const auto& [m, c] : f.terms) {
        // per-variable placement permutations, iterated as an odometer
        std::vector<int> vars;
        std::vector<Permutation> place;
        for (const auto& [v, d] : dv) {
            vars.push_back(v);
            place.push_back(identity_permutation(d));
        }
        while (true) {
            std::map<int, std::size_t> seen;
            std::vector<std::int32_t> t = m.tokens();
            for (auto& x : t) {
                if (x <= 0) continue;
                std::size_t k = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), x) - vars.begin());
                std::size_t occ = seen[x]++;
                x = block_start[vars[k]] + place[k][occ] - 1;
            }
            out.add_term(Monomial(std::move(t)), c);
            std::size_t k = 0;
            for (; k < place.size(); ++k) {
                if (std::next_permutation(place[k].begin(), place[k].end())) break;
            }
            if (k == place.size()) break;
        }
    }
    return out;
}

} // namespace dialg
