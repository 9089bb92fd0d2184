#include "dialg/sexpr.hpp"

#include <cctype>

namespace dialg {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      message_(message),
      line_(line),
      column_(column) {}

const std::string& Sexp::head() const {
    static const std::string empty;
    if (!is_list || items.empty() || items[0].is_list) return empty;
    return items[0].atom;
}

void Sexp::fail(const std::string& message) const { throw ParseError(message, line, column); }

namespace {

class Reader {
public:
    explicit Reader(const std::string& text) : text_(text) {}

    std::vector<Sexp> all() {
        std::vector<Sexp> out;
        skip();
        while (pos_ < text_.size()) {
            out.push_back(read());
            skip();
        }
        return out;
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
            ++col_;
        }
        ++pos_;
    }

    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Sexp read() {
        Sexp s;
        s.line = line_;
        s.column = col_;
        char c = text_[pos_];
        if (c == ')') throw ParseError("unexpected ')'", line_, col_);
        if (c == '(') {
            s.is_list = true;
            advance();
            skip();
            while (pos_ < text_.size() && text_[pos_] != ')') {
                s.items.push_back(read());
                skip();
            }
            if (pos_ >= text_.size()) throw ParseError("unclosed '('", s.line, s.column);
            advance();
            return s;
        }
        while (pos_ < text_.size()) {
            c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
            s.atom.push_back(c);
            advance();
        }
        return s;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace

std::vector<Sexp> parse_sexprs(const std::string& text) { return Reader(text).all(); }

} // namespace dialg
