#include "dialg/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dialg/cache.hpp"
#include "dialg/errors.hpp"
#include "dialg/workbench.hpp"

namespace dialg {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultDegreeCap = 6;

struct Options {
    std::string field = FieldSpec::prime(kDefaultPrime).to_string();
    std::optional<std::size_t> degree;
    std::size_t max_degree = kDefaultDegreeCap;
    bool json = false;
    bool no_cache = false;
    bool basis = false;
    std::string input;
    std::string variety;
    std::string morphism;
    std::string identity;
    std::optional<std::size_t> verify_degree;
};

// Errors that map to exit code 2 without a source position.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Context {
public:
    Context(const std::string& command, const Options& opts) : command_(command), opts_(opts) {
        field_ = FieldSpec::parse(opts.field);
        ideal_.max_degree = opts.max_degree;
        const char* dir = std::getenv("CACHE_DIR");
        if (!opts.no_cache && dir != nullptr && *dir != '\0') {
            store_ = std::make_unique<DiskLayerStore>(dir);
            ideal_.store = store_.get();
        }
        if (!opts.input.empty()) {
            std::ifstream in(opts.input);
            if (!in) throw UsageError("cannot read input file " + opts.input);
            std::stringstream ss;
            ss << in.rdbuf();
            input_text_ = ss.str();
            try {
                input_ = parse_input(input_text_, &builtin_catalog());
            } catch (const ParseError& e) {
                throw ParseError(opts.input + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) +
                                     ": " + e.message(),
                                 e.line(), e.column());
            }
        }
    }

    const FieldSpec& field() const { return field_; }
    const IdealOptions& ideal() const { return ideal_; }
    const Options& opts() const { return opts_; }

    std::size_t degree(std::size_t minimum = 2) const {
        if (!opts_.degree) throw UsageError(command_ + " needs --degree");
        return checked_degree(*opts_.degree, minimum);
    }

    std::size_t checked_degree(std::size_t d, std::size_t minimum) const {
        if (d < minimum) throw UsageError("--degree must be at least " + std::to_string(minimum));
        if (d > opts_.max_degree)
            throw ResourceLimitError("degree " + std::to_string(d) + " exceeds the degree cap " +
                                         std::to_string(opts_.max_degree) + " (raise it with --max-degree)",
                                     opts_.max_degree);
        return d;
    }

    const VarietyPresentation& variety() const {
        const std::string& name = opts_.variety;
        if (name.empty()) {
            if (input_.varieties.size() == 1) return input_.varieties.front();
            throw UsageError(command_ + " needs --variety");
        }
        if (!name.starts_with("builtin:"))
            if (auto v = input_.find_variety(name)) return *v;
        if (auto v = builtin_catalog().find_variety(name.starts_with("builtin:") ? name.substr(8) : name)) return *v;
        throw UsageError("unknown variety " + name);
    }

    const MorphismDef& morphism() const {
        const std::string& name = opts_.morphism;
        if (name.empty()) {
            if (input_.morphisms.size() == 1) return input_.morphisms.front();
            throw UsageError(command_ + " needs --morphism");
        }
        if (!name.starts_with("builtin:"))
            if (auto m = input_.find_morphism(name)) return *m;
        if (auto m = builtin_catalog().find_morphism(name.starts_with("builtin:") ? name.substr(8) : name)) return *m;
        throw UsageError("unknown morphism " + name);
    }

    // Source variety of a morphism: --variety when given, else its declared source.
    const VarietyPresentation& morphism_source(const MorphismDef& m) const {
        if (!opts_.variety.empty()) return variety();
        if (!m.source.starts_with("builtin:"))
            if (auto v = input_.find_variety(m.source)) return *v;
        return builtin_variety(m.source);
    }

private:
    std::string command_;
    Options opts_;
    FieldSpec field_;
    IdealOptions ideal_;
    std::unique_ptr<DiskLayerStore> store_;
    std::string input_text_;
    WorkbenchInput input_;
};

Json report_head(const std::string& command, const std::string& digest_text, const Context& ctx,
                 std::optional<std::size_t> degree) {
    Json j;
    j["command"] = command;
    j["inputs_digest"] = fnv1a_hex(digest_text);
    j["field"] = ctx.field().to_string();
    j["degree"] = degree ? Json(*degree) : Json(nullptr);
    j["dims"] = nullptr;
    j["verdict"] = nullptr;
    return j;
}

Json dims(std::size_t ambient, std::size_t ideal) {
    return Json{{"ambient", ambient}, {"ideal", ideal}, {"quotient", ambient - ideal}};
}

std::string digest_of(const VarietyPresentation& v) { return v.canonical_text(); }
std::string digest_of(const MorphismDef& m) {
    return format_morphism(m) + m.morphism.target().canonical_text();
}

Json cmd_basis(const Context& ctx) {
    const auto& v = ctx.variety();
    const std::size_t n = ctx.degree(1);
    auto b = basis_for(v.signature(), n, ctx.opts().max_degree);
    Json j = report_head("basis", v.signature().to_string(), ctx, n);
    j["dims"] = dims(b->size(), 0);
    Json list = Json::array();
    for (std::size_t i = 0; i < b->size(); ++i) list.push_back(b->monomial(i).to_string(v.signature()));
    j["basis"] = std::move(list);
    return j;
}

Json cmd_dim(const Context& ctx) {
    const auto& v = ctx.variety();
    const std::size_t n = ctx.degree();
    Json j = report_head("dim", digest_of(v), ctx, n);
    with_field(ctx.field(), [&](const auto& k) {
        auto c = consequences_at_degree(v, n, k, ctx.ideal());
        j["dims"] = dims(c.ambient_dim(), c.ideal_dim());
        if (ctx.opts().basis) {
            // Monomials outside the pivot columns form a basis of the quotient.
            Json list = Json::array();
            for (auto col : c.ideal->free_columns()) list.push_back(c.basis->monomial(col).to_string(v.signature()));
            j["basis"] = std::move(list);
        }
    });
    return j;
}

Json cmd_implies(const Context& ctx) {
    const auto& v = ctx.variety();
    if (ctx.opts().identity.empty()) throw UsageError("implies needs --identity");
    Polynomial t = parse_polynomial(ctx.opts().identity, v.signature_ptr(), ctx.field());
    const std::size_t n = ctx.checked_degree(t.degree(), 2);
    Json j = report_head("implies", digest_of(v) + "\n" + t.to_string(), ctx, n);
    with_field(ctx.field(), [&](const auto& k) {
        auto c = consequences_at_degree(v, n, k, ctx.ideal());
        j["dims"] = dims(c.ambient_dim(), c.ideal_dim());
        j["verdict"] = c.ideal->contains(to_vector(t, *c.basis, k));
    });
    return j;
}

Json cmd_dialgebrize(const Context& ctx) {
    const auto& v = ctx.variety();
    auto di = bso_presentation(v);
    Json j = report_head("dialgebrize", digest_of(v), ctx, ctx.opts().verify_degree);
    j["presentation"] = format_variety(di);
    if (ctx.opts().verify_degree) {
        const std::size_t n = ctx.checked_degree(*ctx.opts().verify_degree, 2);
        auto r = verify_dialgebra_equivalence(v, n, ctx.field(), ctx.ideal());
        j["dims"] = dims(r.ambient_dim, r.presentation_ideal);
        j["verdict"] = r.equal;
        j["kernel_dim"] = r.kernel_dim;
    }
    return j;
}

Json cmd_verify_di(const Context& ctx) {
    const auto& v = ctx.variety();
    const std::size_t n = ctx.degree();
    auto r = verify_dialgebra_equivalence(v, n, ctx.field(), ctx.ideal());
    Json j = report_head("verify-di", digest_of(v), ctx, n);
    j["dims"] = dims(r.ambient_dim, r.presentation_ideal);
    j["verdict"] = r.equal;
    j["kernel_dim"] = r.kernel_dim;
    j["base_quotient_dim"] = r.base_quotient_dim;
    return j;
}

Json cmd_special(const Context& ctx) {
    const auto& m = ctx.morphism();
    const auto& source = ctx.morphism_source(m);
    const std::size_t n = ctx.degree();
    auto s = special_identities(m.morphism, source, n, ctx.field(), ctx.ideal());
    Json j = report_head("special", digest_of(m) + digest_of(source), ctx, n);
    with_field(ctx.field(), [&](const auto& k) {
        auto kernel = morphism_kernel_at_degree(m.morphism, n, k, ctx.ideal());
        j["dims"] = dims(kernel.basis->size(), kernel.kernel.rank());
    });
    j["special_dim"] = s.size();
    if (ctx.opts().basis) {
        Json list = Json::array();
        for (const auto& p : s) list.push_back(p.to_string());
        j["basis"] = std::move(list);
    }
    return j;
}

Json cmd_special_di(const Context& ctx) {
    const auto& m = ctx.morphism();
    const auto& source = ctx.morphism_source(m);
    const std::size_t n = ctx.degree();
    auto r = di_special_identities(m.morphism, source, n, ctx.field(), ctx.ideal());
    Json j = report_head("special-di", digest_of(m) + digest_of(source), ctx, n);
    const std::size_t ambient = n * basis_for(source.signature(), n, ctx.opts().max_degree)->size();
    j["dims"] = dims(ambient, r.basis.size());
    j["verdict"] = r.lift_match;
    j["special_dim"] = r.special_dim;
    j["di_special_dim"] = r.basis.size();
    j["lift_contained"] = r.lift_contained;
    if (ctx.opts().basis) {
        Json list = Json::array();
        for (const auto& t : r.basis) list.push_back(t.to_string());
        j["basis"] = std::move(list);
    }
    return j;
}

Json cmd_verify_bso(const Context& ctx) {
    const auto& m = ctx.morphism();
    const std::size_t n = ctx.degree();
    auto r = verify_bso_theorem(m.morphism, n, ctx.field(), ctx.ideal());
    Json j = report_head("verify-bso", digest_of(m), ctx, n);
    j["dims"] = dims(r.ambient_dim, r.presentation_ideal);
    j["verdict"] = r.equal;
    j["kernel_dim"] = r.kernel_dim;
    j["kernel_dims_by_degree"] = r.kernel_dims_by_degree;
    return j;
}

Json cmd_catalog(const Context& ctx) {
    const auto& cat = builtin_catalog();
    Json j = report_head("catalog", format_input(cat), ctx, std::nullopt);
    Json vs = Json::array();
    for (const auto& v : cat.varieties)
        vs.push_back("builtin:" + v.name() + " " + v.signature().to_string() + " identities=" +
                     std::to_string(v.generators().size()));
    Json ms = Json::array();
    for (const auto& m : cat.morphisms) ms.push_back("builtin:" + m.name + " " + m.source + " -> " + m.target);
    j["varieties"] = std::move(vs);
    j["morphisms"] = std::move(ms);
    return j;
}

// Key/value table; arrays print one item per line, multi-line strings verbatim.
std::string render_human(const Json& j) {
    std::ostringstream os;
    auto scalar = [](const Json& v) -> std::string {
        if (v.is_null()) return "-";
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "elapsed_ms") continue;
        if (value.is_object()) {
            for (const auto& [k2, v2] : value.items()) os << std::left << std::setw(18) << k2 << scalar(v2) << "\n";
        } else if (value.is_array()) {
            os << key << " (" << value.size() << ")\n";
            for (const auto& item : value) os << "  " << scalar(item) << "\n";
        } else if (value.is_string() && value.get<std::string>().find('\n') != std::string::npos) {
            os << key << "\n" << value.get<std::string>();
        } else {
            os << std::left << std::setw(18) << key << scalar(value) << "\n";
        }
    }
    return os.str();
}

} // namespace

CommandResult run_command(const std::vector<std::string>& args) {
    CommandResult result;
    std::ostringstream out, err;
    CLI::App app{"Exact computations with operads, dialgebras and special identities."};
    app.name("dialg");
    app.require_subcommand(1);
    Options opts;

    struct Spec {
        const char* name;
        const char* help;
        Json (*run)(const Context&);
    };
    const std::vector<Spec> specs = {
        {"basis", "enumerate the multilinear monomials of a signature", cmd_basis},
        {"dim", "dimension of the operad component P(n)", cmd_dim},
        {"implies", "whether an identity follows from a variety's identities", cmd_implies},
        {"dialgebrize", "dialgebra presentation of a variety", cmd_dialgebrize},
        {"verify-di", "check that the dialgebra presentation defines P tensor Perm", cmd_verify_di},
        {"special", "special identities of a morphism at one degree", cmd_special},
        {"special-di", "dialgebra special identities and their agreement with lifts", cmd_special_di},
        {"verify-bso", "check the speciality transfer theorem at one degree", cmd_verify_bso},
        {"catalog", "list built-in varieties and morphisms", cmd_catalog},
    };
    std::vector<CLI::App*> subs;
    for (const auto& s : specs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--field", opts.field, "q or p:<prime>")->capture_default_str();
        sub->add_option("--degree", opts.degree, "degree n");
        sub->add_option("--max-degree", opts.max_degree, "degree cap")->capture_default_str();
        sub->add_flag("--json", opts.json, "machine-readable report");
        sub->add_flag("--no-cache", opts.no_cache, "ignore CACHE_DIR");
        sub->add_flag("--basis", opts.basis, "include basis vectors");
        sub->add_option("--input", opts.input, "workbench input file");
        sub->add_option("--variety", opts.variety, "variety name (builtin:NAME for the catalog)");
        sub->add_option("--morphism", opts.morphism, "morphism name (builtin:NAME for the catalog)");
        if (std::string(s.name) == "implies") sub->add_option("--identity", opts.identity, "multilinear identity");
        if (std::string(s.name) == "dialgebrize")
            sub->add_option("--verify-degree", opts.verify_degree, "also verify the equivalence at this degree");
        subs.push_back(sub);
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        result.exit_code = app.exit(e, out, err) == 0 ? 0 : 2;
        result.out = out.str();
        result.err = err.str();
        return result;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        for (std::size_t i = 0; i < specs.size(); ++i) {
            if (!subs[i]->parsed()) continue;
            Context ctx(specs[i].name, opts);
            Json j = specs[i].run(ctx);
            const auto ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
            j["elapsed_ms"] = std::round(ms * 1000) / 1000;
            if (opts.json) {
                out << j.dump(2) << "\n";
            } else {
                out << render_human(j);
                err << "elapsed " << std::fixed << std::setprecision(1) << ms << " ms\n";
            }
            if (j["verdict"].is_boolean() && !j["verdict"].get<bool>()) result.exit_code = 1;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = 2;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = 3;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = 2;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = 2;
    } catch (const CharacteristicGuardError& e) {
        err << "error: " << e.what() << "\n";
        result.exit_code = 2;
    }
    result.out = out.str();
    result.err = err.str();
    return result;
}

} // namespace dialg
