#include "sectcat/cli.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace sectcat {

ParseError::ParseError(int line, int column, std::string token, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + " at '" + token +
                         "': " + message),
      line_(line), column_(column), token_(std::move(token))
{
}

namespace {

enum class Tok { Ident, Int, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

std::vector<Token> lex(const std::string& text)
{
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        const int l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string word = text.substr(i, j - i);
            for (const char* kw : {"space-dim", "simply-connected"}) {
                const std::string k = kw;
                if (text.compare(i, k.size(), k) == 0 && (i + k.size() == text.size() || !ident_char(text[i + k.size()])))
                    word = k;
            }
            out.push_back({Tok::Ident, word, l, cl});
            advance(word.size());
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Int, text.substr(i, j - i), l, cl});
            advance(j - i);
            continue;
        }
        if (std::string("{}=+-*/").find(c) != std::string::npos) {
            out.push_back({Tok::Symbol, std::string(1, c), l, cl});
            advance(1);
            continue;
        }
        throw ParseError(l, cl, std::string(1, c), "unexpected character");
    }
    out.push_back({Tok::End, "<end of input>", line, col});
    return out;
}

struct PolyAt {
    Polynomial poly;
    Token start;
    std::vector<std::vector<Token>> factor_tokens;  // per term
    std::vector<Token> term_tokens;
};

struct Assignment {
    Token name;
    PolyAt value;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Presentation parse()
    {
        expect_word("algebra");
        Token name = expect_ident("algebra name");
        expect_symbol("{");
        std::optional<Token> truncate_tok, space_tok, simply_tok, field_tok;
        Presentation p;
        p.name = name.text;
        std::vector<std::pair<Token, Generator>> gens;
        std::vector<Assignment> diffs, aliases;

        while (!(peek().kind == Tok::Symbol && peek().text == "}")) {
            Token kw = next();
            if (kw.kind != Tok::Ident) fail(kw, "expected a statement");
            if (kw.text == "field") {
                once(field_tok, kw);
                Token f = expect_ident("field name");
                if (f.text != "Q") fail(f, "only the field Q is supported");
            } else if (kw.text == "truncate") {
                once(truncate_tok, kw);
                p.truncation = expect_int("truncation degree");
            } else if (kw.text == "space-dim") {
                once(space_tok, kw);
                p.space_dim = expect_int("space dimension");
                if (*p.space_dim < 1) fail(toks_[pos_ - 1], "space dimension must be at least 1");
            } else if (kw.text == "simply-connected") {
                once(simply_tok, kw);
                Token b = expect_ident("true or false");
                if (b.text != "true" && b.text != "false") fail(b, "expected true or false");
                p.simply_connected = b.text == "true";
            } else if (kw.text == "generator") {
                Token g = expect_ident("generator name");
                expect_word("degree");
                Token dt = peek();
                int d = expect_int("generator degree");
                if (d < 1) fail(dt, "generator degree must be at least 1");
                gens.push_back({g, Generator{g.text, d}});
            } else if (kw.text == "d") {
                Token g = expect_ident("generator name");
                expect_symbol("=");
                diffs.push_back({g, poly()});
            } else if (kw.text == "alias") {
                Token a = expect_ident("alias name");
                expect_symbol("=");
                aliases.push_back({a, poly()});
            } else {
                fail(kw, "unknown statement");
            }
        }
        Token close = next();
        if (peek().kind != Tok::End) fail(peek(), "unexpected text after the closing brace");
        if (!truncate_tok) fail(close, "missing 'truncate' statement");
        if (p.truncation < 1) fail(*truncate_tok, "truncation degree must be at least 1");

        std::map<std::string, int> degree;
        for (const auto& [tok, g] : gens) {
            if (!degree.emplace(g.name, g.degree).second) fail(tok, "duplicate generator");
            p.generators.push_back(g);
        }
        std::set<std::string> assigned;
        for (const auto& a : diffs) {
            auto it = degree.find(a.name.text);
            if (it == degree.end()) fail(a.name, "unknown generator");
            if (!assigned.insert(a.name.text).second) fail(a.name, "differential assigned twice");
            int d = poly_degree(a.value, degree);
            if (d >= 0 && d != it->second + 1)
                fail(a.value.start, "degree mismatch in d " + a.name.text + ": expected " +
                                        std::to_string(it->second + 1) + ", got " + std::to_string(d) + " (" +
                                        std::to_string(it->second + 1) + " ≠ " + std::to_string(d) + ")");
            p.differentials.push_back({a.name.text, a.value.poly});
        }
        std::set<std::string> alias_names;
        for (const auto& a : aliases) {
            if (degree.count(a.name.text) || !alias_names.insert(a.name.text).second)
                fail(a.name, "alias clashes with another name");
            poly_degree(a.value, degree);
            p.aliases.push_back({a.name.text, a.value.poly});
        }
        check_presentation(p);
        return p;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    [[noreturn]] static void fail(const Token& t, const std::string& msg)
    {
        throw ParseError(t.line, t.column, t.text, msg);
    }

    const Token& peek() const { return toks_[pos_]; }
    Token next()
    {
        Token t = toks_[pos_];
        if (t.kind != Tok::End) ++pos_;
        return t;
    }

    void once(std::optional<Token>& slot, const Token& t)
    {
        if (slot) fail(t, "statement given twice");
        slot = t;
    }

    void expect_word(const std::string& w)
    {
        Token t = next();
        if (t.kind != Tok::Ident || t.text != w) fail(t, "expected '" + w + "'");
    }

    void expect_symbol(const std::string& s)
    {
        Token t = next();
        if (t.kind != Tok::Symbol || t.text != s) fail(t, "expected '" + s + "'");
    }

    Token expect_ident(const std::string& what)
    {
        Token t = next();
        if (t.kind != Tok::Ident) fail(t, "expected " + what);
        return t;
    }

    int expect_int(const std::string& what)
    {
        Token t = next();
        if (t.kind != Tok::Int) fail(t, "expected " + what);
        try {
            return std::stoi(t.text);
        } catch (const std::exception&) {
            fail(t, "integer out of range");
        }
    }

    bool at_symbol(const std::string& s) const { return peek().kind == Tok::Symbol && peek().text == s; }

    PolyAt poly()
    {
        PolyAt out;
        out.start = peek();
        if (peek().kind == Tok::Int && peek().text == "0" &&
            !(toks_[pos_ + 1].kind == Tok::Symbol && (toks_[pos_ + 1].text == "*" || toks_[pos_ + 1].text == "/"))) {
            next();
            return out;
        }
        bool negative = false;
        if (at_symbol("-")) {
            next();
            negative = true;
        }
        while (true) {
            out.term_tokens.push_back(peek());
            Term t;
            std::vector<Token> factors;
            if (peek().kind == Tok::Int) {
                Token num = next();
                mpz_class n(num.text), d(1);
                if (at_symbol("/")) {
                    next();
                    Token den = next();
                    if (den.kind != Tok::Int) fail(den, "expected a denominator");
                    d = mpz_class(den.text);
                    if (d == 0) fail(den, "zero denominator");
                }
                t.coeff = Rational(n, d);
                t.coeff.canonicalize();
                expect_symbol("*");
            }
            factors.push_back(expect_ident("generator name"));
            while (at_symbol("*")) {
                next();
                factors.push_back(expect_ident("generator name"));
            }
            for (const auto& f : factors) t.factors.push_back(f.text);
            if (negative) t.coeff = -t.coeff;
            out.poly.push_back(std::move(t));
            out.factor_tokens.push_back(std::move(factors));
            if (at_symbol("+")) {
                next();
                negative = false;
            } else if (at_symbol("-")) {
                next();
                negative = true;
            } else {
                break;
            }
        }
        return out;
    }

    static int poly_degree(const PolyAt& p, const std::map<std::string, int>& degree)
    {
        std::optional<int> d;
        for (std::size_t i = 0; i < p.poly.size(); ++i) {
            int td = 0;
            for (const auto& f : p.factor_tokens[i]) {
                auto it = degree.find(f.text);
                if (it == degree.end()) fail(f, "unknown generator");
                td += it->second;
            }
            if (d && *d != td)
                fail(p.term_tokens[i], "inhomogeneous polynomial: degree " + std::to_string(td) + " after degree " +
                                           std::to_string(*d));
            d = td;
        }
        return d.value_or(-1);
    }
};

std::string print_poly(const Polynomial& poly)
{
    if (poly.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Term& t = poly[i];
        const bool neg = t.coeff < 0;
        if (i == 0)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        Rational a = abs(t.coeff);
        std::string factors;
        for (std::size_t k = 0; k < t.factors.size(); ++k) factors += (k ? "*" : "") + t.factors[k];
        if (a != 1 || t.factors.empty()) out += to_string(a) + (t.factors.empty() ? "" : "*");
        out += factors;
    }
    return out;
}

}  // namespace

Presentation parse_model(const std::string& text) { return Parser(lex(text)).parse(); }

std::string print_model(const Presentation& p)
{
    std::ostringstream out;
    out << "algebra " << p.name << " {\n";
    out << "  field Q\n";
    out << "  truncate " << p.truncation << "\n";
    if (p.space_dim) out << "  space-dim " << *p.space_dim << "\n";
    out << "  simply-connected " << (p.simply_connected ? "true" : "false") << "\n";
    for (const auto& g : p.generators) out << "  generator " << g.name << " degree " << g.degree << "\n";
    for (const auto& [g, poly] : p.differentials) out << "  d " << g << " = " << print_poly(poly) << "\n";
    for (const auto& [a, poly] : p.aliases) out << "  alias " << a << " = " << print_poly(poly) << "\n";
    out << "}\n";
    return out.str();
}

const std::vector<GoldenModel>& golden_models()
{
    static const std::vector<GoldenModel> models{
        {"M1", "Λ(a3, b3, z5; dz = ab), truncated stand-in for a wedge of two 3-spheres with cells attached",
         R"(algebra M1 {
  field Q
  truncate 8
  space-dim 8
  simply-connected true
  generator a degree 3
  generator b degree 3
  generator z degree 5
  d z = a*b
}
)"},
        {"M2", "Λ(x1, x2, x3, y1, y2, y3; dy1 = x2x3, dy2 = x3x1, dy3 = x1x2), stand-in for the Borromean rings complement",
         R"(algebra M2 {
  field Q
  truncate 2
  space-dim 2
  simply-connected false
  generator x1 degree 1
  generator x2 degree 1
  generator x3 degree 1
  generator y1 degree 1
  generator y2 degree 1
  generator y3 degree 1
  d y1 = x2*x3
  d y2 = x3*x1
  d y3 = x1*x2
  alias u = x1
  alias v = x2
  alias w = x3
}
)"},
        {"M3e", "Λ(a2, b2, x3, y3, z3; dx = a^2, dy = b^2, dz = ab), sphere bundle model with m = 2",
         R"(algebra M3e {
  field Q
  truncate 7
  space-dim 7
  simply-connected true
  generator a degree 2
  generator b degree 2
  generator x degree 3
  generator y degree 3
  generator z degree 3
  d x = a*a
  d y = b*b
  d z = a*b
  alias alpha = a
  alias beta = b
  alias u = a*z - x*b
  alias v = b*z - y*a
  alias mu = a*b*z - y*a*a
}
)"},
        {"M3o", "Λ(a3, b3, z5; dz = ab), sphere bundle model with m = 3",
         R"(algebra M3o {
  field Q
  truncate 11
  space-dim 11
  simply-connected true
  generator a degree 3
  generator b degree 3
  generator z degree 5
  d z = a*b
  alias alpha = a
  alias beta = b
  alias u = a*z
  alias v = z*b
  alias mu = a*z*b
}
)"},
    };
    return models;
}

std::optional<Presentation> golden_model(const std::string& name)
{
    for (const auto& g : golden_models())
        if (g.name == name) return parse_model(g.text);
    return std::nullopt;
}

}  // namespace sectcat
