#include "vbc/spec.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace vbc {

SpecError::SpecError(int l, int c, const std::string& what)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + what), line(l),
      column(c) {}

namespace {

struct Pos {
    int line = 1;
    int col = 1;
};

struct Section {
    std::string key;
    Pos at;
    std::string body;
    std::vector<Pos> pos; // one entry per body character plus the end
};

[[noreturn]] void fail(Pos p, const std::string& what) { throw SpecError(p.line, p.col, what); }

bool blank(const std::string& s) {
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

std::vector<Section> splitSections(const std::string& text, Pos& end) {
    std::vector<Section> out;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (blank(line)) continue;
        std::size_t from = 0;
        if (!std::isspace(static_cast<unsigned char>(line[0]))) {
            auto colon = line.find(':');
            std::size_t k = 0;
            while (k < line.size() && (std::isalnum(static_cast<unsigned char>(line[k])) || line[k] == '-' || line[k] == '_'))
                ++k;
            if (colon == std::string::npos || k == 0 || !blank(line.substr(k, colon - k)))
                fail({lineNo, 1}, "expected 'section:'");
            Section s;
            s.key = line.substr(0, k);
            s.at = {lineNo, 1};
            out.push_back(std::move(s));
            from = colon + 1;
        } else if (out.empty()) {
            fail({lineNo, 1}, "indented text outside any section");
        } else {
            out.back().body += '\n';
            out.back().pos.push_back({lineNo, 1});
        }
        for (std::size_t i = from; i < line.size(); ++i) {
            out.back().body += line[i];
            out.back().pos.push_back({lineNo, static_cast<int>(i) + 1});
        }
    }
    for (auto& s : out) s.pos.push_back(s.pos.empty() ? Pos{s.at.line, static_cast<int>(s.key.size()) + 2} : Pos{s.pos.back().line, s.pos.back().col + 1});
    end = {lineNo + 1, 1};
    return out;
}

enum class Tok { End, Newline, Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, Comma, Arrow, Semi, Colon, Equals };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::optional<std::string> sub;
    Pos at;
    Pos subAt;
};

// Trailing '+' joins an identifier when it names a declared field and no operand follows.
std::vector<Token> lex(const Section& s, const std::set<std::string>* names, bool newlines) {
    std::vector<Token> out;
    const std::string& b = s.body;
    std::size_t i = 0;
    auto isOperandStart = [&](std::size_t j) {
        return j < b.size() && (std::isalnum(static_cast<unsigned char>(b[j])) || b[j] == '(');
    };
    while (i < b.size()) {
        char c = b[i];
        Token t;
        t.at = s.pos[i];
        if (c == '\n') {
            ++i;
            if (newlines) {
                t.kind = Tok::Newline;
                out.push_back(t);
            }
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < b.size() && std::isdigit(static_cast<unsigned char>(b[j]))) ++j;
            t.kind = Tok::Number;
            t.text = b.substr(i, j - i);
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < b.size() && std::isalnum(static_cast<unsigned char>(b[j]))) ++j;
            std::string name = b.substr(i, j - i);
            while (j < b.size() && b[j] == '+' && !isOperandStart(j + 1)) {
                bool take = !names;
                if (names) {
                    auto it = names->lower_bound(name + "+");
                    take = it != names->end() && it->rfind(name + "+", 0) == 0;
                }
                if (!take) break;
                name += '+';
                ++j;
            }
            t.kind = Tok::Ident;
            t.text = name;
            if (j + 1 < b.size() && b[j] == '_' && b[j + 1] == '{') {
                auto close = b.find('}', j);
                if (close == std::string::npos) fail(s.pos[j], "unterminated subscript");
                t.subAt = s.pos[j + 2];
                t.sub = b.substr(j + 2, close - j - 2);
                j = close + 1;
            }
            i = j;
        } else {
            static const std::string single = "+-*^/(),;:=";
            if (c == '-' && i + 1 < b.size() && b[i + 1] == '>') {
                t.kind = Tok::Arrow;
                i += 2;
            } else if (auto k = single.find(c); k != std::string::npos) {
                static const Tok kinds[] = {Tok::Plus,   Tok::Minus, Tok::Star, Tok::Caret, Tok::Slash, Tok::LParen,
                                            Tok::RParen, Tok::Comma, Tok::Semi, Tok::Colon, Tok::Equals};
                t.kind = kinds[k];
                ++i;
            } else {
                fail(t.at, std::string("unexpected character '") + c + "'");
            }
        }
        out.push_back(std::move(t));
    }
    Token e;
    e.at = s.pos.back();
    out.push_back(e);
    return out;
}

const char* tokName(Tok k) {
    switch (k) {
    case Tok::End: return "end of section";
    case Tok::Newline: return "line break";
    case Tok::Number: return "number";
    case Tok::Ident: return "identifier";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Slash: return "'/'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Arrow: return "'->'";
    case Tok::Semi: return "';'";
    case Tok::Colon: return "':'";
    case Tok::Equals: return "'='";
    }
    return "?";
}

class Parser {
public:
    Parser(std::vector<Token> toks, TheoryPtr th = nullptr) : toks_(std::move(toks)), th_(std::move(th)) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok k) const { return peek().kind == k; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        next();
        return true;
    }
    Token expect(Tok k) {
        if (!at(k)) fail(peek().at, std::string("expected ") + tokName(k) + ", found " + describe(peek()));
        return next();
    }
    static std::string describe(const Token& t) {
        if (t.kind == Tok::Ident || t.kind == Tok::Number) return "'" + t.text + "'";
        return tokName(t.kind);
    }

    long integer() {
        bool neg = accept(Tok::Minus);
        Token t = expect(Tok::Number);
        if (t.text.size() > 9) fail(t.at, "integer too large");
        long v = std::stol(t.text);
        return neg ? -v : v;
    }

    Rational rational() {
        bool neg = accept(Tok::Minus);
        Token n = expect(Tok::Number);
        Rational r(n.text);
        if (accept(Tok::Slash)) {
            Token d = expect(Tok::Number);
            Rational den(d.text);
            if (den == 0) fail(d.at, "zero denominator");
            r /= den;
        }
        return neg ? Rational(-r) : r;
    }

    LocalForm expression() {
        LocalForm acc = product();
        for (;;) {
            if (accept(Tok::Plus))
                acc += product();
            else if (accept(Tok::Minus))
                acc -= product();
            else
                return acc;
        }
    }

private:
    LocalForm product() {
        LocalForm acc = unary();
        while (at(Tok::Caret) || at(Tok::Star)) {
            next();
            acc = acc * unary();
        }
        return acc;
    }

    LocalForm unary() {
        if (accept(Tok::Minus)) return -unary();
        return primary();
    }

    int coordinate() {
        Token t = expect(Tok::Ident);
        int i = th_->coordIndex(t.text);
        if (i < 0 || t.sub) fail(t.at, "unknown coordinate '" + t.text + "'");
        return i;
    }

    MultiIndex subscript(const Token& t) {
        MultiIndex I{};
        const std::string& s = *t.sub;
        std::vector<std::string> parts;
        bool single = true;
        for (const auto& c : th_->coords()) single = single && c.size() == 1;
        if (s.find(',') != std::string::npos || !single) {
            std::string cur;
            std::istringstream in(s);
            while (std::getline(in, cur, ',')) {
                auto a = cur.find_first_not_of(" \t"), b = cur.find_last_not_of(" \t");
                parts.push_back(a == std::string::npos ? "" : cur.substr(a, b - a + 1));
            }
        } else {
            for (char c : s)
                if (!std::isspace(static_cast<unsigned char>(c))) parts.emplace_back(1, c);
        }
        for (const auto& p : parts) {
            int i = th_->coordIndex(p);
            if (i < 0) fail(t.subAt, "unknown coordinate '" + p + "' in subscript");
            ++I[i];
        }
        return I;
    }

    LocalForm primary() {
        const Token t = peek();
        switch (t.kind) {
        case Tok::Number: return LocalForm::constant(th_, rational());
        case Tok::LParen: {
            next();
            LocalForm e = expression();
            expect(Tok::RParen);
            return e;
        }
        case Tok::Ident: break;
        default: fail(t.at, "expected an operand, found " + describe(t));
        }
        next();
        try {
            if (!t.sub && at(Tok::LParen) && (t.text == "d" || t.text == "dV" || t.text == "dx")) {
                next();
                LocalForm out(th_);
                if (t.text == "dx") {
                    out = LocalForm::dx(th_, coordinate());
                } else {
                    LocalForm arg = expression();
                    if (t.text == "dV") {
                        out = dV(arg);
                    } else {
                        expect(Tok::Comma);
                        out = totalDerivative(coordinate(), arg);
                    }
                }
                expect(Tok::RParen);
                return out;
            }
            if (th_->fieldIndex(t.text) >= 0) return LocalForm::jet(th_, t.text, t.sub ? subscript(t) : MultiIndex{});
            if (int i = th_->coordIndex(t.text); i >= 0 && !t.sub) return LocalForm::x(th_, i);
        } catch (const JetCapExceeded& e) {
            fail(t.at, e.what());
        }
        fail(t.at, "unknown field '" + t.text + "'");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    TheoryPtr th_;
};

const std::set<std::string> kKeys = {"name", "dimension", "coordinates", "fields", "pairing", "omega", "Q", "L", "theta", "options"};
const std::set<std::string> kReserved = {"d", "dV", "dx"};

void checkDegrees(const LocalForm& x, Pos at, const std::string& what, std::optional<int> vfd, std::optional<int> hfd,
                  std::optional<int> ghd) {
    for (const auto& [w, c] : x.terms()) {
        auto d = wordDegrees(*x.theory(), w);
        if ((vfd && d.vfd != *vfd) || (hfd && d.hfd != *hfd) || (ghd && d.ghd != *ghd)) {
            std::ostringstream os;
            os << "degree mismatch in " << what << ": term of (vfd, hfd, ghd) = (" << d.vfd << ", " << d.hfd << ", "
               << d.ghd << "), expected (" << (vfd ? std::to_string(*vfd) : "*") << ", "
               << (hfd ? std::to_string(*hfd) : "*") << ", " << (ghd ? std::to_string(*ghd) : "*") << ")";
            fail(at, os.str());
        }
    }
}

std::set<std::string> fieldNames(const Theory& th) {
    std::set<std::string> out;
    for (const auto& f : th.fields()) out.insert(f.name);
    return out;
}

LocalForm wholeExpression(const Section& s, const TheoryPtr& th, const std::set<std::string>& names) {
    Parser p(lex(s, &names, false), th);
    LocalForm e = p.expression();
    if (!p.at(Tok::End)) fail(p.peek().at, "unexpected " + Parser::describe(p.peek()));
    return e;
}

} // namespace

SpecDocument parseSpec(const std::string& text, std::optional<int> jetCapOverride) {
    Pos end;
    std::vector<Section> sections = splitSections(text, end);
    std::map<std::string, const Section*> byKey;
    for (const auto& s : sections) {
        if (!kKeys.count(s.key)) fail(s.at, "unknown section '" + s.key + "'");
        if (!byKey.emplace(s.key, &s).second) fail(s.at, "duplicate section '" + s.key + "'");
    }
    for (const char* req : {"dimension", "fields", "omega", "Q"})
        if (!byKey.count(req)) fail(end, std::string("missing section '") + req + "'");

    SpecDocument doc;
    if (auto it = byKey.find("options"); it != byKey.end()) {
        Parser p(lex(*it->second, nullptr, false));
        while (!p.at(Tok::End)) {
            Token key = p.next();
            std::string k = key.text;
            while (key.kind == Tok::Ident && p.at(Tok::Minus)) {
                p.next();
                k += "-" + p.expect(Tok::Ident).text;
            }
            if (key.kind != Tok::Ident) fail(key.at, "expected option name");
            p.expect(Tok::Equals);
            Token vt = p.peek();
            long v = p.integer();
            std::optional<int>* slot = nullptr;
            if (k == "jet-cap")
                slot = &doc.options.jetCap;
            else if (k == "seed")
                slot = &doc.options.seed;
            else if (k == "samples")
                slot = &doc.options.samples;
            else if (k == "arity")
                slot = &doc.options.arity;
            else
                fail(key.at, "unknown option '" + k + "'");
            if (v < 0 || (k == "jet-cap" && v < 1)) fail(vt.at, "option '" + k + "' out of range");
            *slot = static_cast<int>(v);
            if (!p.accept(Tok::Comma) && !p.at(Tok::End)) fail(p.peek().at, "expected ','");
        }
    }

    const Section& dimS = *byKey.at("dimension");
    Parser dp(lex(dimS, nullptr, false));
    Token dt = dp.peek();
    long n = dp.integer();
    dp.expect(Tok::End);
    if (n < 1 || n > Theory::kMaxDim) fail(dt.at, "dimension must lie in 1.." + std::to_string(Theory::kMaxDim));

    std::vector<std::string> coords;
    if (auto it = byKey.find("coordinates"); it != byKey.end()) {
        Parser p(lex(*it->second, nullptr, false));
        while (!p.at(Tok::End)) {
            Token t = p.expect(Tok::Ident);
            if (t.sub || kReserved.count(t.text) || t.text.find('+') != std::string::npos)
                fail(t.at, "invalid coordinate name '" + t.text + "'");
            coords.push_back(t.text);
            p.accept(Tok::Comma);
        }
        if (static_cast<long>(coords.size()) != n)
            fail(it->second->at, "expected " + std::to_string(n) + " coordinates, found " + std::to_string(coords.size()));
    }

    std::vector<FieldDecl> fields;
    const Section& fS = *byKey.at("fields");
    {
        Parser p(lex(fS, nullptr, false));
        while (!p.at(Tok::End)) {
            Token t = p.expect(Tok::Ident);
            if (t.sub || kReserved.count(t.text)) fail(t.at, "invalid field name '" + t.text + "'");
            p.expect(Tok::Colon);
            fields.push_back({t.text, static_cast<int>(p.integer())});
            if (!p.accept(Tok::Comma) && !p.at(Tok::End)) fail(p.peek().at, "expected ','");
        }
        if (fields.empty()) fail(fS.at, "no fields declared");
    }

    int cap = jetCapOverride ? *jetCapOverride : doc.options.jetCap.value_or(8);
    TheoryPtr th;
    try {
        th = makeTheory(static_cast<int>(n), fields, coords, cap);
    } catch (const std::invalid_argument& e) {
        fail(fS.at, e.what());
    }
    const auto names = fieldNames(*th);
    const int N = th->fieldCount();

    TheorySpec& spec = doc.spec;
    spec.theory = th;
    if (auto it = byKey.find("name"); it != byKey.end()) {
        const std::string& b = it->second->body;
        auto a = b.find_first_not_of(" \t\n"), z = b.find_last_not_of(" \t\n");
        if (a != std::string::npos) spec.name = b.substr(a, z - a + 1);
    }

    if (auto it = byKey.find("pairing"); it != byKey.end()) {
        Parser p(lex(*it->second, nullptr, true));
        std::vector<std::vector<Rational>> M(1);
        while (!p.at(Tok::End)) {
            if (p.accept(Tok::Semi) || p.accept(Tok::Newline)) {
                if (!M.back().empty()) M.emplace_back();
                continue;
            }
            M.back().push_back(p.rational());
        }
        if (M.back().empty()) M.pop_back();
        if (static_cast<int>(M.size()) != N) fail(it->second->at, "pairing must have one row per field");
        for (const auto& row : M)
            if (static_cast<int>(row.size()) != N) fail(it->second->at, "pairing must be square");
        spec.pairing = M;
    }

    const Section& oS = *byKey.at("omega");
    spec.omega = wholeExpression(oS, th, names);
    checkDegrees(spec.omega, oS.at, "omega", 2, std::nullopt, std::nullopt);

    spec.Q = Field(th, 1);
    {
        const Section& qS = *byKey.at("Q");
        Parser p(lex(qS, &names, false), th);
        std::set<int> seen;
        while (!p.at(Tok::End)) {
            Token t = p.expect(Tok::Ident);
            int a = th->fieldIndex(t.text);
            if (a < 0 || t.sub) fail(t.at, "unknown field '" + t.text + "'");
            if (!seen.insert(a).second) fail(t.at, "duplicate component for '" + t.text + "'");
            p.expect(Tok::Arrow);
            Pos at = p.peek().at;
            LocalForm comp = p.expression();
            checkDegrees(comp, at, "Q^" + t.text, 0, 0, th->field(a).ghost + 1);
            spec.Q.set(a, comp);
            if (!p.accept(Tok::Semi)) p.accept(Tok::Comma);
        }
    }

    if (auto it = byKey.find("L"); it != byKey.end()) {
        spec.L = wholeExpression(*it->second, th, names);
        checkDegrees(*spec.L, it->second->at, "L", 0, std::nullopt, std::nullopt);
    }
    if (auto it = byKey.find("theta"); it != byKey.end()) {
        spec.theta = wholeExpression(*it->second, th, names);
        checkDegrees(*spec.theta, it->second->at, "theta", 1, std::nullopt, std::nullopt);
    }
    return doc;
}

SpecDocument loadSpec(const std::string& path, std::optional<int> jetCap) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    SpecDocument doc = parseSpec(ss.str(), jetCap);
    if (doc.spec.name.empty()) {
        auto slash = path.find_last_of('/');
        std::string base = path.substr(slash == std::string::npos ? 0 : slash + 1);
        if (auto dot = base.rfind('.'); dot != std::string::npos) base.erase(dot);
        doc.spec.name = base;
    }
    return doc;
}

LocalForm parseForm(const TheoryPtr& th, const std::string& text) {
    Section s;
    s.key = "expression";
    int col = 1;
    for (char c : text) {
        s.body += c;
        s.pos.push_back({1, col++});
    }
    s.pos.push_back({1, col});
    return wholeExpression(s, th, fieldNames(*th));
}

std::string printSpec(const SpecDocument& doc) {
    const TheorySpec& s = doc.spec;
    const Theory& th = *s.theory;
    std::ostringstream os;
    if (!s.name.empty()) os << "name: " << s.name << "\n";
    os << "dimension: " << th.dim() << "\n";
    os << "coordinates:";
    for (int i = 0; i < th.dim(); ++i) os << (i ? ", " : " ") << th.coord(i);
    os << "\nfields:";
    for (int a = 0; a < th.fieldCount(); ++a) os << (a ? ", " : " ") << th.field(a).name << ":" << th.field(a).ghost;
    os << "\n";
    if (s.pairing) {
        os << "pairing:";
        for (std::size_t r = 0; r < s.pairing->size(); ++r) {
            os << (r ? ";" : "");
            for (const auto& x : (*s.pairing)[r]) os << " " << x.get_str();
        }
        os << "\n";
    }
    os << "omega: " << s.omega.str() << "\n";
    os << "Q:\n";
    for (int a = 0; a < th.fieldCount(); ++a)
        if (!s.Q[a].isZero()) os << "  " << th.field(a).name << " -> " << s.Q[a].str() << "\n";
    if (s.L) os << "L: " << s.L->str() << "\n";
    if (s.theta) os << "theta: " << s.theta->str() << "\n";
    const SpecOptions& o = doc.options;
    std::vector<std::string> opts;
    if (o.jetCap) opts.push_back("jet-cap=" + std::to_string(*o.jetCap));
    if (o.seed) opts.push_back("seed=" + std::to_string(*o.seed));
    if (o.samples) opts.push_back("samples=" + std::to_string(*o.samples));
    if (o.arity) opts.push_back("arity=" + std::to_string(*o.arity));
    if (!opts.empty()) {
        os << "options:";
        for (std::size_t i = 0; i < opts.size(); ++i) os << (i ? ", " : " ") << opts[i];
        os << "\n";
    }
    return os.str();
}

} // namespace vbc
