#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "dialg/errors.hpp"
#include "dialg/workbench.hpp"

namespace dialg {

const VarietyPresentation* WorkbenchInput::find_variety(const std::string& name) const {
    for (const auto& v : varieties)
        if (v.name() == name) return &v;
    return nullptr;
}

const MorphismDef* WorkbenchInput::find_morphism(const std::string& name) const {
    for (const auto& m : morphisms)
        if (m.name == name) return &m;
    return nullptr;
}

namespace {

using TermList = std::vector<std::pair<Monomial, Rational>>;

const std::regex kInteger(R"(-?[0-9]+)");
const std::regex kRational(R"(-?[0-9]+(/[0-9]+)?)");
constexpr int kMaxVariable = 64;

Rational parse_coefficient(const Sexp& s) {
    if (s.is_list || !std::regex_match(s.atom, kRational)) s.fail("expected a rational coefficient, got " + s.atom);
    auto slash = s.atom.find('/');
    if (slash != std::string::npos && std::stol(s.atom.substr(slash + 1)) == 0) s.fail("zero denominator");
    Rational q(s.atom);
    q.canonicalize();
    return q;
}

std::size_t parse_arity(const Sexp& s) {
    if (s.is_list || !std::regex_match(s.atom, kInteger)) s.fail("expected an arity");
    long a = std::stol(s.atom);
    if (a < 2 || a > 16) s.fail("arity must lie in 2..16, got " + s.atom);
    return static_cast<std::size_t>(a);
}

std::size_t resolve_op(const Signature& sig, const Sexp& at, const std::string& name) {
    if (auto i = sig.find(name)) return *i;
    std::string suffix;
    if (name == "dashv" || name == "⊣") suffix = "^1";
    if (name == "vdash" || name == "⊢") suffix = "^2";
    if (!suffix.empty()) {
        std::optional<std::size_t> found;
        bool unique = true;
        for (std::size_t i = 0; i < sig.size(); ++i) {
            const auto& op = sig.op(i);
            if (op.arity == 2 && op.name.size() > 2 && op.name.ends_with(suffix)) {
                if (found) unique = false;
                found = i;
            }
        }
        if (found && unique) return *found;
        at.fail(name + " needs exactly one binary doubled operation in the signature");
    }
    at.fail("unknown operation " + name);
}

TermList scale(TermList t, const Rational& c) {
    for (auto& [m, a] : t) a *= c;
    return t;
}

class PolyReader {
public:
    PolyReader(std::shared_ptr<const Signature> sig, FieldSpec field) : sig_(std::move(sig)), field_(field) {}

    TermList read(const Sexp& s) {
        if (s.is_atom()) {
            if (!std::regex_match(s.atom, kInteger)) s.fail("expected a variable (positive integer), got " + s.atom);
            long v = std::stol(s.atom);
            if (v < 1 || v > kMaxVariable) s.fail("variables are integers in 1.." + std::to_string(kMaxVariable));
            return {{Monomial::leaf(static_cast<int>(v)), 1}};
        }
        if (s.items.empty()) s.fail("empty expression");
        if (s.items[0].is_list) s.items[0].fail("expected an operation name");
        const std::string& head = s.items[0].atom;
        const std::size_t nargs = s.items.size() - 1;
        if (head == "+") {
            TermList out;
            for (std::size_t i = 1; i < s.items.size(); ++i) {
                auto t = read(s.items[i]);
                out.insert(out.end(), t.begin(), t.end());
            }
            return out;
        }
        if (head == "-") {
            if (nargs == 0) s.fail("'-' needs at least one argument");
            if (nargs == 1) return scale(read(s.items[1]), -1);
            TermList out = read(s.items[1]);
            for (std::size_t i = 2; i < s.items.size(); ++i) {
                auto t = scale(read(s.items[i]), -1);
                out.insert(out.end(), t.begin(), t.end());
            }
            return out;
        }
        if (head == "*") {
            if (nargs < 2) s.fail("'*' needs coefficients followed by one polynomial");
            Rational c = 1;
            for (std::size_t i = 1; i + 1 < s.items.size(); ++i) c *= parse_coefficient(s.items[i]);
            return scale(read(s.items.back()), c);
        }
        if (head == "linearize") {
            if (nargs != 1) s.fail("linearize takes one polynomial");
            TermList raw = read(s.items[1]);
            if (raw.empty()) s.fail("linearize of an empty polynomial");
            try {
                Polynomial p = linearize(RawPolynomial{sig_, raw});
                return TermList(p.terms().begin(), p.terms().end());
            } catch (const ArgumentError& e) {
                s.fail(e.what());
            }
        }
        const std::size_t op = resolve_op(*sig_, s.items[0], head);
        if (nargs != sig_->arity(op))
            s.fail("operation " + head + " expects " + std::to_string(sig_->arity(op)) + " arguments, got " +
                   std::to_string(nargs));
        std::vector<TermList> args;
        for (std::size_t i = 1; i < s.items.size(); ++i) args.push_back(read(s.items[i]));
        TermList out;
        std::vector<std::size_t> pick(args.size(), 0);
        for (const auto& a : args)
            if (a.empty()) return out;
        while (true) {
            std::vector<Monomial> kids;
            Rational c = 1;
            for (std::size_t i = 0; i < args.size(); ++i) {
                kids.push_back(args[i][pick[i]].first);
                c *= args[i][pick[i]].second;
            }
            out.emplace_back(Monomial::node(op, kids), c);
            std::size_t i = 0;
            while (i < args.size() && ++pick[i] == args[i].size()) pick[i++] = 0;
            if (i == args.size()) break;
        }
        return out;
    }

    Polynomial multilinear(const Sexp& s) {
        TermList terms = read(s);
        std::map<Monomial, Rational> merged;
        for (const auto& [m, c] : terms) merged[m] += c;
        std::optional<std::size_t> degree;
        for (const auto& [m, c] : merged) {
            if (sgn(field_.normalize(c)) == 0) continue;
            if (!m.is_multilinear())
                s.fail("polynomial is not multilinear: " + m.to_string(*sig_) +
                       " (variables must be 1..n, each used once)");
            if (degree && *degree != m.degree()) s.fail("polynomial mixes degrees");
            degree = m.degree();
        }
        if (!degree) s.fail("polynomial is zero");
        Polynomial p(sig_, *degree, field_);
        for (const auto& [m, c] : merged) p.add_term(m, c);
        return p;
    }

private:
    std::shared_ptr<const Signature> sig_;
    FieldSpec field_;
};

std::shared_ptr<const Signature> read_signature(const Sexp& s) {
    std::vector<Operation> ops;
    std::set<std::string> seen;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
        const Sexp& op = s.items[i];
        if (op.head() != "op" || op.items.size() != 3 || op.items[1].is_list)
            op.fail("expected (op NAME ARITY)");
        const std::string& name = op.items[1].atom;
        if (!seen.insert(name).second) op.fail("duplicate operation " + name);
        if (name == "+" || name == "-" || name == "*" || name == "linearize" || std::regex_match(name, kRational))
            op.items[1].fail("reserved operation name " + name);
        ops.push_back({name, parse_arity(op.items[2])});
    }
    if (ops.empty()) s.fail("signature without operations");
    return std::make_shared<const Signature>(std::move(ops));
}

struct Draft {
    std::string name;
    const Sexp* where = nullptr;
    std::shared_ptr<const Signature> sig;
    std::vector<Polynomial> generators;
    std::vector<std::string> names;
};

void read_identity(Draft& d, const Sexp& s) {
    if (s.items.size() != 3 || s.items[1].is_list) s.fail("expected (identity NAME POLYNOMIAL)");
    const std::string& name = s.items[1].atom;
    for (const auto& n : d.names)
        if (n == name) s.items[1].fail("duplicate identity " + name + " in " + d.name);
    Polynomial p = PolyReader(d.sig, FieldSpec::rationals()).multilinear(s.items[2]);
    if (p.degree() < 2) s.items[2].fail("identities need degree >= 2");
    d.generators.push_back(std::move(p));
    d.names.push_back(name);
}

std::string strip_builtin(const std::string& name) {
    const std::string prefix = "builtin:";
    return name.starts_with(prefix) ? name.substr(prefix.size()) : name;
}

} // namespace

WorkbenchInput parse_input(const std::string& text, const WorkbenchInput* context) {
    const auto forms = parse_sexprs(text);
    std::vector<Draft> drafts;
    std::optional<std::size_t> anonymous;
    std::vector<const Sexp*> morphism_forms;

    auto check_new_name = [&](const std::string& name, const Sexp& at) {
        for (const auto& d : drafts)
            if (d.name == name) at.fail("duplicate variety " + name);
    };

    for (const auto& f : forms) {
        if (!f.is_list) f.fail("expected a form, got " + f.atom);
        const std::string& head = f.head();
        if (head == "signature") {
            if (anonymous) f.fail("duplicate top-level signature");
            check_new_name("main", f);
            drafts.push_back({"main", &f, read_signature(f), {}, {}});
            anonymous = drafts.size() - 1;
        } else if (head == "identity") {
            if (!anonymous) f.fail("identity before any signature");
            read_identity(drafts[*anonymous], f);
        } else if (head == "variety") {
            if (f.items.size() < 3 || f.items[1].is_list || f.items[2].head() != "signature")
                f.fail("expected (variety NAME (signature ...) (identity ...) ...)");
            const std::string& name = f.items[1].atom;
            check_new_name(name, f.items[1]);
            Draft d{name, &f, read_signature(f.items[2]), {}, {}};
            for (std::size_t i = 3; i < f.items.size(); ++i) {
                if (f.items[i].head() != "identity") f.items[i].fail("expected (identity NAME POLYNOMIAL)");
                read_identity(d, f.items[i]);
            }
            drafts.push_back(std::move(d));
        } else if (head == "morphism") {
            morphism_forms.push_back(&f);
        } else {
            f.fail("unknown form " + (head.empty() ? std::string("()") : head));
        }
    }

    WorkbenchInput out;
    for (auto& d : drafts) {
        try {
            out.varieties.emplace_back(d.name, d.sig, std::move(d.generators), std::move(d.names));
        } catch (const ArgumentError& e) {
            d.where->fail(e.what());
        }
    }

    auto resolve_variety = [&](const Sexp& ref, const char* role) -> const VarietyPresentation& {
        if (ref.items.size() != 2 || ref.items[1].is_list || ref.head() != role)
            ref.fail(std::string("expected (") + role + " VARIETY)");
        const std::string& name = ref.items[1].atom;
        if (!name.starts_with("builtin:"))
            if (auto v = out.find_variety(name)) return *v;
        if (context)
            if (auto v = context->find_variety(strip_builtin(name))) return *v;
        ref.items[1].fail("unknown variety " + name);
    };

    for (const Sexp* f : morphism_forms) {
        if (f->items.size() < 4 || f->items[1].is_list) f->fail("expected (morphism NAME (source S) (target T) (image OP P) ...)");
        const std::string& name = f->items[1].atom;
        if (out.find_morphism(name)) f->items[1].fail("duplicate morphism " + name);
        const VarietyPresentation& source = resolve_variety(f->items[2], "source");
        const VarietyPresentation& target = resolve_variety(f->items[3], "target");
        std::vector<std::optional<Polynomial>> images(source.signature().size());
        for (std::size_t i = 4; i < f->items.size(); ++i) {
            const Sexp& img = f->items[i];
            if (img.head() != "image" || img.items.size() != 3 || img.items[1].is_list)
                img.fail("expected (image OP POLYNOMIAL)");
            const std::size_t op = resolve_op(source.signature(), img.items[1], img.items[1].atom);
            if (images[op]) img.items[1].fail("duplicate image for " + img.items[1].atom);
            Polynomial p = PolyReader(target.signature_ptr(), FieldSpec::rationals()).multilinear(img.items[2]);
            if (p.degree() != source.signature().arity(op))
                img.items[2].fail("image of " + img.items[1].atom + " has degree " + std::to_string(p.degree()) +
                                  ", expected " + std::to_string(source.signature().arity(op)));
            images[op] = std::move(p);
        }
        out.morphisms.push_back(MorphismDef{name, f->items[2].items[1].atom, f->items[3].items[1].atom,
                                            OperadMorphism(name, source.signature_ptr(), target, std::move(images))});
    }
    return out;
}

Polynomial parse_polynomial(const std::string& text, std::shared_ptr<const Signature> sig, FieldSpec field) {
    auto forms = parse_sexprs(text);
    if (forms.empty()) throw ParseError("empty polynomial", 1, 1);
    if (forms.size() > 1) forms[1].fail("trailing input after the polynomial");
    return PolyReader(std::move(sig), field).multilinear(forms[0]);
}

std::string format_variety(const VarietyPresentation& v) {
    std::ostringstream os;
    os << "(variety " << v.name() << "\n  " << v.signature().to_string();
    for (std::size_t i = 0; i < v.generators().size(); ++i)
        os << "\n  (identity " << v.generator_names()[i] << " " << v.generators()[i].to_string() << ")";
    os << ")\n";
    return os.str();
}

std::string format_morphism(const MorphismDef& m) {
    std::ostringstream os;
    os << "(morphism " << m.name << " (source " << m.source << ") (target " << m.target << ")";
    const Signature& src = m.morphism.source();
    for (std::size_t s = 0; s < src.size(); ++s)
        if (m.morphism.has_image(s))
            os << "\n  (image " << src.op(s).name << " " << m.morphism.image(s).to_string() << ")";
    os << ")\n";
    return os.str();
}

std::string format_input(const WorkbenchInput& input) {
    std::string out;
    for (const auto& v : input.varieties) out += format_variety(v);
    for (const auto& m : input.morphisms) out += format_morphism(m);
    return out;
}

bool same_structure(const WorkbenchInput& a, const WorkbenchInput& b) {
    if (a.varieties.size() != b.varieties.size() || a.morphisms.size() != b.morphisms.size()) return false;
    for (std::size_t i = 0; i < a.varieties.size(); ++i) {
        const auto &x = a.varieties[i], &y = b.varieties[i];
        if (x.name() != y.name() || !(x.signature() == y.signature()) || x.generator_names() != y.generator_names() ||
            !(x.generators() == y.generators()))
            return false;
    }
    for (std::size_t i = 0; i < a.morphisms.size(); ++i) {
        const auto &x = a.morphisms[i], &y = b.morphisms[i];
        if (x.name != y.name || x.source != y.source || x.target != y.target) return false;
        if (!(x.morphism.source() == y.morphism.source())) return false;
        for (std::size_t s = 0; s < x.morphism.source().size(); ++s) {
            if (x.morphism.has_image(s) != y.morphism.has_image(s)) return false;
            if (x.morphism.has_image(s) && !(x.morphism.image(s) == y.morphism.image(s))) return false;
        }
    }
    return true;
}

} // namespace dialg
