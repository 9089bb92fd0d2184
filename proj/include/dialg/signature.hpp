#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dialg {

struct Operation {
    std::string name;
    std::size_t arity = 0;

    friend bool operator==(const Operation&, const Operation&) = default;
};

// Ordered list of operation symbols; the position of a symbol is its index
// in monomial encodings and in the canonical basis order.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Operation> ops);

    std::size_t size() const { return ops_.size(); }
    bool empty() const { return ops_.empty(); }
    const Operation& op(std::size_t i) const { return ops_.at(i); }
    const std::vector<Operation>& ops() const { return ops_; }
    std::size_t arity(std::size_t i) const { return ops_[i].arity; }
    std::optional<std::size_t> find(const std::string& name) const;

    // "(signature (op mul 2) ...)"
    std::string to_string() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Operation> ops_;
};

// The signature with every n-ary symbol f replaced by f^1, ..., f^n.
class DoubledSignature {
public:
    explicit DoubledSignature(Signature base);

    const Signature& base() const { return base_; }
    const Signature& doubled() const { return doubled_; }

    std::size_t symbol(std::size_t base_symbol, std::size_t k) const;
    // doubled symbol -> (base symbol, superscript k in 1..arity)
    std::pair<std::size_t, std::size_t> split(std::size_t doubled_symbol) const { return split_[doubled_symbol]; }

private:
    Signature base_;
    Signature doubled_;
    std::vector<std::size_t> offset_;
    std::vector<std::pair<std::size_t, std::size_t>> split_;
};

DoubledSignature double_signature(const Signature& sig);

std::string superscript_name(const std::string& base, std::size_t k);

} // namespace dialg
