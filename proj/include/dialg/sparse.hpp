#pragma once

// Exact sparse linear algebra over F_p and Q.
//
// Vectors are sorted (column, value) lists with no stored zeros. A Subspace
// keeps its basis in reduced row echelon form, which is canonical: two
// subspaces are equal iff their RREF rows coincide.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dialg/errors.hpp"
#include "dialg/field.hpp"

namespace dialg {

template <class V>
using SparseVec = std::vector<std::pair<std::uint32_t, V>>;

// Sorts by column, merges duplicates and drops zeros.
template <class K>
SparseVec<typename K::value_type> canonicalize(const K& field, SparseVec<typename K::value_type> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec<typename K::value_type> out;
    out.reserve(v.size());
    for (auto& [c, a] : v) {
        if (!out.empty() && out.back().first == c)
            out.back().second = field.add(out.back().second, a);
        else
            out.emplace_back(c, std::move(a));
        if (field.is_zero(out.back().second)) out.pop_back();
    }
    return out;
}

// a - coef * b, both sorted.
template <class K>
SparseVec<typename K::value_type> axpy_sub(const K& field, const SparseVec<typename K::value_type>& a,
                                          const typename K::value_type& coef,
                                          const SparseVec<typename K::value_type>& b) {
    SparseVec<typename K::value_type> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, field.neg(field.mul(coef, b[j].second)));
            ++j;
        } else {
            auto v = a[i].second;
            field.sub_mul(v, coef, b[j].second);
            if (!field.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

template <class K>
class SparseMatrix {
public:
    using value_type = typename K::value_type;
    using Row = SparseVec<value_type>;

    SparseMatrix(K field, std::size_t ncols) : field_(std::move(field)), ncols_(ncols) {}

    void add_row(Row row) {
        row = canonicalize(field_, std::move(row));
        if (!row.empty() && row.back().first >= ncols_)
            throw ArgumentError("column index " + std::to_string(row.back().first) + " out of range (" +
                                std::to_string(ncols_) + " columns)");
        rows_.push_back(std::move(row));
    }

    const K& field() const { return field_; }
    std::size_t ncols() const { return ncols_; }
    std::size_t nrows() const { return rows_.size(); }
    const std::vector<Row>& rows() const { return rows_; }

private:
    K field_;
    std::size_t ncols_;
    std::vector<Row> rows_;
};

template <class K>
class Subspace {
public:
    using value_type = typename K::value_type;
    using Row = SparseVec<value_type>;

    Subspace(K field, std::size_t ncols) : field_(std::move(field)), ncols_(ncols), pivot_of_col_(ncols, -1) {}

    // Adopts rows that are already in reduced echelon form; throws otherwise.
    static Subspace from_rref(K field, std::size_t ncols, std::vector<Row> rows) {
        Subspace s(std::move(field), ncols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& r = rows[i];
            if (r.empty() || !s.field_.is_one(r.front().second) || r.back().first >= ncols)
                throw ArgumentError("row " + std::to_string(i) + " is not a normalized echelon row");
            if (i > 0 && r.front().first <= rows[i - 1].front().first)
                throw ArgumentError("echelon pivots are not strictly increasing");
            s.pivot_of_col_[r.front().first] = static_cast<std::int32_t>(i);
            s.pivots_.push_back(r.front().first);
        }
        for (const Row& r : rows)
            for (std::size_t k = 1; k < r.size(); ++k)
                if (s.pivot_of_col_[r[k].first] >= 0) throw ArgumentError("pivot column not cleared");
        s.rows_ = std::move(rows);
        return s;
    }

    const K& field() const { return field_; }
    std::size_t ncols() const { return ncols_; }
    std::size_t rank() const { return rows_.size(); }
    std::size_t codimension() const { return ncols_ - rows_.size(); }
    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<std::uint32_t>& pivots() const { return pivots_; }
    bool is_pivot(std::uint32_t c) const { return pivot_of_col_[c] >= 0; }

    std::vector<std::uint32_t> free_columns() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t c = 0; c < ncols_; ++c)
            if (pivot_of_col_[c] < 0) out.push_back(c);
        return out;
    }

    // Normal form of v modulo this subspace; supported on free columns only.
    Row reduce(const Row& v) const {
        check_dim(v);
        Row terms;
        for (const auto& [c, a] : v) {
            std::int32_t r = pivot_of_col_[c];
            if (r < 0) {
                terms.emplace_back(c, a);
                continue;
            }
            for (const auto& [c2, b] : rows_[r])
                if (c2 != c) terms.emplace_back(c2, field_.neg(field_.mul(a, b)));
        }
        return canonicalize(field_, std::move(terms));
    }

    bool contains(const Row& v) const { return reduce(v).empty(); }

    bool contains(const Subspace& other) const {
        check_compatible(other);
        for (const Row& r : other.rows_)
            if (!contains(r)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        a.check_compatible(b);
        return a.rows_ == b.rows_;
    }

    void check_dim(const Row& v) const {
        if (!v.empty() && v.back().first >= ncols_)
            throw ArgumentError("vector column " + std::to_string(v.back().first) + " exceeds dimension " +
                                std::to_string(ncols_));
    }

    void check_compatible(const Subspace& other) const {
        if (ncols_ != other.ncols_)
            throw ArgumentError("subspace dimension mismatch: " + std::to_string(ncols_) + " vs " +
                                std::to_string(other.ncols_));
        if (!(field_ == other.field_)) throw ArgumentError("subspaces over different fields");
    }

private:
    template <class>
    friend class EchelonBuilder;

    K field_;
    std::size_t ncols_;
    std::vector<Row> rows_;
    std::vector<std::uint32_t> pivots_;
    std::vector<std::int32_t> pivot_of_col_;
};

// Incremental reduced row echelon form. Each accepted vector becomes a new
// pivot row and is eliminated from every earlier row, so the basis is in
// RREF after every insert. Column occurrence lists make that back
// substitution touch only the rows that actually carry the new pivot column.
template <class K>
class EchelonBuilder {
public:
    using value_type = typename K::value_type;
    using Row = SparseVec<value_type>;

    EchelonBuilder(K field, std::size_t ncols)
        : field_(std::move(field)),
          ncols_(ncols),
          pivot_of_col_(ncols, -1),
          col_rows_(ncols),
          acc_(ncols, field_.zero()),
          mark_(ncols, 0) {}

    explicit EchelonBuilder(const Subspace<K>& start) : EchelonBuilder(start.field(), start.ncols()) {
        for (const Row& r : start.rows()) add_reduced_row(Row(r));
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }
    const K& field() const { return field_; }

    // Reduces v against the current basis; v need not be sorted.
    Row residual(const Row& v) {
        for (const auto& [c, a] : v) {
            if (c >= ncols_) throw ArgumentError("vector column out of range");
            std::int32_t r = pivot_of_col_[c];
            if (r < 0) {
                touch(c);
                acc_[c] = field_.add(acc_[c], a);
                continue;
            }
            for (const auto& [c2, b] : rows_[r]) {
                if (c2 == c) continue;
                touch(c2);
                field_.sub_mul(acc_[c2], a, b);
            }
        }
        Row out;
        std::sort(touched_.begin(), touched_.end());
        for (std::uint32_t c : touched_) {
            if (!field_.is_zero(acc_[c])) out.emplace_back(c, std::move(acc_[c]));
            acc_[c] = field_.zero();
            mark_[c] = 0;
        }
        touched_.clear();
        return out;
    }

    // Returns true iff v enlarged the span. When `added` is non-null the
    // normalized residual that became the new row is copied there.
    bool insert(const Row& v, Row* added = nullptr) {
        Row r = residual(v);
        if (r.empty()) return false;
        auto lead_inv = field_.inv(r.front().second);
        if (!field_.is_one(r.front().second))
            for (auto& e : r) e.second = field_.mul(e.second, lead_inv);
        if (added) *added = r;
        add_reduced_row(std::move(r));
        return true;
    }

    Subspace<K> finish() const {
        Subspace<K> s(field_, ncols_);
        std::vector<std::uint32_t> order;
        for (std::uint32_t c = 0; c < ncols_; ++c)
            if (pivot_of_col_[c] >= 0) order.push_back(c);
        s.rows_.reserve(order.size());
        for (std::uint32_t c : order) {
            s.pivot_of_col_[c] = static_cast<std::int32_t>(s.rows_.size());
            s.pivots_.push_back(c);
            s.rows_.push_back(rows_[pivot_of_col_[c]]);
        }
        return s;
    }

private:
    void touch(std::uint32_t c) {
        if (!mark_[c]) {
            mark_[c] = 1;
            touched_.push_back(c);
        }
    }

    // r is normalized and reduced against every existing pivot.
    void add_reduced_row(Row r) {
        const std::uint32_t p = r.front().first;
        const auto id = static_cast<std::uint32_t>(rows_.size());
        for (std::uint32_t rid : col_rows_[p]) {
            Row& row = rows_[rid];
            auto it = std::lower_bound(row.begin(), row.end(), p,
                                       [](const auto& e, std::uint32_t col) { return e.first < col; });
            if (it == row.end() || it->first != p) continue;
            auto coef = it->second;
            Row updated = axpy_sub(field_, row, coef, r);
            // register columns that newly appear in this row
            std::size_t i = 0;
            for (const auto& [c, _] : updated) {
                while (i < row.size() && row[i].first < c) ++i;
                if (i == row.size() || row[i].first != c) col_rows_[c].push_back(rid);
            }
            row = std::move(updated);
        }
        std::vector<std::uint32_t>().swap(col_rows_[p]);
        pivot_of_col_[p] = static_cast<std::int32_t>(id);
        for (std::size_t k = 1; k < r.size(); ++k) col_rows_[r[k].first].push_back(id);
        rows_.push_back(std::move(r));
    }

    K field_;
    std::size_t ncols_;
    std::vector<Row> rows_;
    std::vector<std::int32_t> pivot_of_col_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<value_type> acc_;
    std::vector<char> mark_;
    std::vector<std::uint32_t> touched_;
};

// Reduced row echelon form of the row space; rows are taken in input order,
// pivots are chosen by lowest column.
template <class K>
Subspace<K> row_reduce(const SparseMatrix<K>& m) {
    EchelonBuilder<K> b(m.field(), m.ncols());
    for (const auto& row : m.rows()) b.insert(row);
    return b.finish();
}

// Basis of the right null space {x : m x = 0}: one vector per free column,
// free columns in increasing order.
template <class K>
std::vector<SparseVec<typename K::value_type>> kernel_basis(const SparseMatrix<K>& m) {
    using V = typename K::value_type;
    const K& field = m.field();
    Subspace<K> s = row_reduce(m);
    // column -> (pivot column, entry) over all rows carrying that free column
    std::vector<SparseVec<V>> by_col(m.ncols());
    for (std::size_t i = 0; i < s.rank(); ++i) {
        const auto& row = s.rows()[i];
        for (std::size_t k = 1; k < row.size(); ++k)
            by_col[row[k].first].emplace_back(row.front().first, row[k].second);
    }
    std::vector<SparseVec<V>> out;
    for (std::uint32_t f : s.free_columns()) {
        SparseVec<V> v;
        for (const auto& [pc, a] : by_col[f]) v.emplace_back(pc, field.neg(a));
        v.emplace_back(f, field.one());
        out.push_back(canonicalize(field, std::move(v)));
    }
    return out;
}

template <class K>
bool membership(const SparseVec<typename K::value_type>& v, const Subspace<K>& s) {
    return s.contains(v);
}

template <class K>
bool subspace_equal(const Subspace<K>& a, const Subspace<K>& b) {
    return a == b;
}

// Subspace spanned by the given vectors.
template <class K>
Subspace<K> span_of(const K& field, std::size_t ncols, const std::vector<SparseVec<typename K::value_type>>& vs) {
    EchelonBuilder<K> b(field, ncols);
    for (const auto& v : vs) b.insert(v);
    return b.finish();
}

// Kernel of the linear map whose value on basis vector j is images[j],
// expressed in a target space of dimension target_dim.
template <class K>
std::vector<SparseVec<typename K::value_type>> kernel_of_images(
    const K& field, std::size_t target_dim, const std::vector<SparseVec<typename K::value_type>>& images) {
    using V = typename K::value_type;
    std::vector<SparseVec<V>> rows(target_dim);
    for (std::uint32_t j = 0; j < images.size(); ++j)
        for (const auto& [r, a] : images[j]) {
            if (r >= target_dim) throw ArgumentError("image coordinate out of range");
            rows[r].emplace_back(j, a);
        }
    SparseMatrix<K> m(field, images.size());
    for (auto& r : rows) m.add_row(std::move(r));
    return kernel_basis(m);
}

} // namespace dialg
