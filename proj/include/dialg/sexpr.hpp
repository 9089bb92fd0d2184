#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dialg {

// Input text error with a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

struct Sexp {
    bool is_list = false;
    std::string atom;
    std::vector<Sexp> items;
    std::size_t line = 1;
    std::size_t column = 1;

    bool is_atom() const { return !is_list; }
    // Head atom of a non-empty list whose first item is an atom, else "".
    const std::string& head() const;
    [[noreturn]] void fail(const std::string& message) const;
};

// Atoms are maximal runs of characters other than whitespace, parentheses
// and ';' (which starts a comment running to the end of the line).
std::vector<Sexp> parse_sexprs(const std::string& text);

} // namespace dialg
