#include "lfpc/script.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace lfpc {

namespace {

using ojson = nlohmann::ordered_json;

struct Token {
    enum class Type { Ident, Number, Sym, Newline, End };
    Type type;
    std::string text;
    int line;
    int col;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Token::Type t, std::string s, int l, int c) {
        out.push_back(Token{t, std::move(s), l, c});
    };
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        if (ch == '\n') {
            push(Token::Type::Newline, "\n", line, col);
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (ch == ' ' || ch == '\t' || ch == '\r') {
            ++i;
            ++col;
            continue;
        }
        const int tl = line, tc = col;
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::string num;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                num.push_back(text[i]);
                ++i;
                ++col;
            }
            push(Token::Type::Number, std::move(num), tl, tc);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string id;
            while (i < text.size()) {
                const char c2 = text[i];
                if (std::isalnum(static_cast<unsigned char>(c2)) || c2 == '_') {
                    id.push_back(c2);
                    ++i;
                    ++col;
                    continue;
                }
                // hyphenated keywords like wavelet-set; a '-' binds into the
                // identifier only when a letter follows
                if (c2 == '-' && i + 1 < text.size() &&
                    std::isalpha(static_cast<unsigned char>(text[i + 1]))) {
                    id.push_back(c2);
                    ++i;
                    ++col;
                    continue;
                }
                break;
            }
            push(Token::Type::Ident, std::move(id), tl, tc);
            continue;
        }
        if (std::string("=();,|+-*/^").find(ch) != std::string::npos) {
            push(Token::Type::Sym, std::string(1, ch), tl, tc);
            ++i;
            ++col;
            continue;
        }
        throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
    }
    push(Token::Type::End, "", line, col);
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    Script run() {
        skip_newlines();
        field_ = parse_header();
        Script script{*field_, explicit_modulus_, {}};
        while (true) {
            skip_newlines();
            if (peek().type == Token::Type::End) break;
            parse_statement(script);
        }
        return script;
    }

private:
    const Token& peek(int ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw ParseError(msg, t.line, t.col);
    }
    void skip_newlines() {
        while (peek().type == Token::Type::Newline) next();
    }
    void end_statement() {
        const Token& t = peek();
        if (t.type == Token::Type::Newline || t.type == Token::Type::End) {
            if (t.type == Token::Type::Newline) next();
            return;
        }
        fail("expected end of statement, got '" + t.text + "'", t);
    }
    bool accept_sym(const std::string& s) {
        if (peek().type == Token::Type::Sym && peek().text == s) {
            next();
            return true;
        }
        return false;
    }
    void expect_sym(const std::string& s) {
        if (!accept_sym(s)) fail("expected '" + s + "'", peek());
    }
    std::string expect_ident() {
        if (peek().type != Token::Type::Ident) fail("expected a name", peek());
        return next().text;
    }
    void expect_keyword(const std::string& kw) {
        const Token t = peek();
        if (t.type != Token::Type::Ident || t.text != kw) fail("expected '" + kw + "'", t);
        next();
    }
    bool peek_keyword(const std::string& kw, int ahead = 0) const {
        return peek(ahead).type == Token::Type::Ident && peek(ahead).text == kw;
    }
    long expect_number() {
        if (peek().type != Token::Type::Number) fail("expected a number", peek());
        const Token t = next();
        try {
            return std::stol(t.text);
        } catch (const std::exception&) {
            fail("number out of range", t);
        }
    }
    long expect_signed() {
        const bool neg = accept_sym("-");
        const long n = expect_number();
        return neg ? -n : n;
    }

    Field parse_header() {
        expect_keyword("field");
        expect_keyword("p");
        expect_sym("=");
        const Token pt = peek();
        const long p = expect_number();
        expect_keyword("c");
        expect_sym("=");
        const long c = expect_number();
        std::vector<int> poly;
        if (peek_keyword("poly")) {
            next();
            expect_sym("=");
            poly.push_back(static_cast<int>(expect_number()));
            while (accept_sym(",")) poly.push_back(static_cast<int>(expect_number()));
            explicit_modulus_ = true;
        }
        end_statement();
        try {
            if (explicit_modulus_) return Field(static_cast<int>(p), static_cast<int>(c), poly);
            return Field(static_cast<int>(p), static_cast<int>(c));
        } catch (const Error& e) {
            fail(std::string("invalid field: ") + e.what(), pt);
        }
    }

    void parse_statement(Script& script) {
        const Token t = peek();
        if (t.type != Token::Type::Ident) fail("expected a statement", t);
        if (t.text == "set")
            parse_set(script);
        else if (t.text == "func")
            parse_func(script);
        else if (t.text == "check")
            parse_check(script);
        else if (t.text == "compute")
            parse_compute(script);
        else if (t.text == "builtin")
            parse_builtin(script);
        else
            fail("unknown statement '" + t.text + "'", t);
    }

    void bind_set(Script& script, const std::string& name, ESet value, const Token& at) {
        if (sets_.count(name) || funcs_.count(name)) fail("name '" + name + "' already bound", at);
        sets_.emplace(name, value);
        script.statements.push_back(SetDef{name, std::move(value)});
    }
    void bind_func(Script& script, const std::string& name, SBFunction value, const Token& at) {
        if (sets_.count(name) || funcs_.count(name)) fail("name '" + name + "' already bound", at);
        funcs_.emplace(name, value);
        script.statements.push_back(FuncDef{name, std::move(value)});
    }

    void parse_set(Script& script) {
        next(); // set
        const Token name_tok = peek();
        const std::string name = expect_ident();
        expect_sym("=");
        ESet value = parse_set_atom();
        while (accept_sym("|")) value = es_union(value, parse_set_atom());
        end_statement();
        bind_set(script, name, std::move(value), name_tok);
    }

    // A set expression inside ind(...): NAME or set atoms joined by '|'.
    ESet parse_setexpr() {
        const Token t = peek();
        if (t.type == Token::Type::Ident && t.text != "ball" && t.text != "annulus" &&
            t.text != "ideal") {
            const std::string name = expect_ident();
            auto it = sets_.find(name);
            if (it == sets_.end()) fail("undefined set '" + name + "'", t);
            return it->second;
        }
        ESet acc = parse_set_atom();
        while (accept_sym("|")) acc = es_union(acc, parse_set_atom());
        return acc;
    }

    ESet parse_set_atom() {
        const Field& f = field();
        const Token t = peek();
        const std::string kind = expect_ident();
        if (kind == "ball") {
            expect_sym("(");
            LaurentNumber center = parse_laurent();
            expect_sym(";");
            const long level = expect_signed();
            expect_sym(")");
            return ESet::from_balls(f, {Ball(center, static_cast<int>(level))});
        }
        if (kind == "annulus" || kind == "ideal") {
            expect_sym("(");
            const long k = expect_signed();
            expect_sym(")");
            return kind == "ideal" ? ESet::ideal(f, static_cast<int>(k))
                                   : ESet::annulus(f, static_cast<int>(k));
        }
        fail("expected ball(...), annulus(...) or ideal(...)", t);
    }

    LaurentNumber parse_laurent() {
        const bool neg = accept_sym("-");
        LaurentNumber acc = neg ? -parse_laurent_atom() : parse_laurent_atom();
        while (true) {
            if (accept_sym("+"))
                acc = acc + parse_laurent_atom();
            else if (accept_sym("-"))
                acc = acc - parse_laurent_atom();
            else
                break;
        }
        return acc;
    }

    LaurentNumber parse_laurent_atom() {
        const Field& f = field();
        const Token t = peek();
        if (t.type == Token::Type::Number) {
            const long d = expect_number();
            if (d >= f.q()) fail("digit must be below q", t);
            if (accept_sym("*")) {
                expect_keyword("t");
                expect_sym("^");
                const long e = expect_signed();
                return LaurentNumber::term(f, f.elem(static_cast<int>(d)), static_cast<int>(e));
            }
            return LaurentNumber::term(f, f.elem(static_cast<int>(d)), 0);
        }
        if (peek_keyword("t")) {
            next();
            expect_sym("^");
            const long e = expect_signed();
            return LaurentNumber::prime_power(f, static_cast<int>(e));
        }
        if (peek_keyword("u")) {
            next();
            expect_sym("(");
            if (peek().type != Token::Type::Number) fail("expected an index", peek());
            const std::string digits = next().text;
            expect_sym(")");
            return u_of_index(f, TransIndex::from_decimal_string(digits, f.q()));
        }
        fail("expected a Laurent term", t);
    }

    void parse_func(Script& script) {
        const Field& f = field();
        next(); // func
        const Token name_tok = peek();
        const std::string name = expect_ident();
        expect_sym("=");
        SBFunction acc = parse_func_term();
        while (accept_sym("+")) acc = acc + parse_func_term();
        end_statement();
        bind_func(script, name, std::move(acc), name_tok);
    }

    SBFunction parse_func_term() {
        const Field& f = field();
        Coeff coeff = Coeff::one(f.p(), f.q());
        if (!peek_keyword("ind")) {
            coeff = parse_coeff_product();
        }
        expect_keyword("ind");
        expect_sym("(");
        const ESet support = parse_setexpr();
        expect_sym(")");
        return SBFunction::indicator(support).scaled(coeff);
    }

    Coeff parse_coeff_product() {
        const Field& f = field();
        bool neg = accept_sym("-");
        Coeff acc = parse_coeff_factor();
        while (peek().type == Token::Type::Sym && peek().text == "*") {
            if (peek_keyword("ind", 1)) {
                next(); // the '*' that separates the coefficient from ind(...)
                break;
            }
            next();
            acc = acc * parse_coeff_factor();
        }
        return neg ? -acc : acc;
    }

    Coeff parse_coeff_sum() {
        Coeff acc = parse_coeff_product_inner();
        while (true) {
            if (accept_sym("+"))
                acc = acc + parse_coeff_product_inner();
            else if (accept_sym("-"))
                acc = acc - parse_coeff_product_inner();
            else
                break;
        }
        return acc;
    }

    // Product inside parentheses: '*' never terminates here.
    Coeff parse_coeff_product_inner() {
        bool neg = accept_sym("-");
        Coeff acc = parse_coeff_factor();
        while (accept_sym("*")) acc = acc * parse_coeff_factor();
        return neg ? -acc : acc;
    }

    Coeff parse_coeff_factor() {
        const Field& f = field();
        const Token t = peek();
        if (t.type == Token::Type::Number) {
            const long num = expect_number();
            if (accept_sym("/")) {
                const long den = expect_number();
                if (den == 0) fail("zero denominator", t);
                Rational r(num, den);
                r.canonicalize();
                return Coeff::rational(f.p(), f.q(), r);
            }
            return Coeff::rational(f.p(), f.q(), Rational(num));
        }
        if (peek_keyword("zeta")) {
            next();
            long e = 1;
            if (accept_sym("^")) e = expect_signed();
            return Coeff::from_cyclo(f.q(), CycloNumber::zeta_pow(f.p(), e));
        }
        if (accept_sym("(")) {
            Coeff inner = parse_coeff_sum();
            expect_sym(")");
            return inner;
        }
        fail("expected a coefficient", t);
    }

    std::vector<std::string> parse_func_names(bool stop_at_order = false) {
        std::vector<std::string> names;
        while (peek().type == Token::Type::Ident) {
            if (stop_at_order && peek().text == "order") break;
            const Token t = peek();
            const std::string name = expect_ident();
            if (!funcs_.count(name)) fail("undefined function '" + name + "'", t);
            names.push_back(name);
        }
        if (names.empty()) fail("expected at least one function name", peek());
        return names;
    }

    WaveletSetMode parse_mode() {
        expect_keyword("mode");
        const Token t = peek();
        const std::string word = expect_ident();
        if (word == "parseval") return WaveletSetMode::Parseval;
        if (word == "orthonormal") return WaveletSetMode::Orthonormal;
        fail("mode must be parseval or orthonormal", t);
    }

    void parse_check(Script& script) {
        next(); // check
        const Token kind_tok = peek();
        const std::string kind = expect_ident();
        CheckCommand cmd;
        if (kind == "wavelet-set") {
            cmd.kind = CheckCommand::Kind::WaveletSet;
            while (peek().type == Token::Type::Ident && peek().text != "order") {
                const Token t = peek();
                const std::string name = expect_ident();
                if (!sets_.count(name)) fail("undefined set '" + name + "'", t);
                cmd.names.push_back(name);
            }
            if (cmd.names.empty()) fail("expected at least one set name", peek());
            expect_keyword("order");
            const Token ot = peek();
            cmd.order = static_cast<int>(expect_number());
            if (cmd.order != static_cast<int>(cmd.names.size()))
                fail("order does not match the number of sets", ot);
            cmd.mode = parse_mode();
        } else if (kind == "parseval-wavelet" || kind == "orthonormal-wavelet" ||
                   kind == "semi-orthogonal") {
            cmd.kind = kind == "parseval-wavelet"    ? CheckCommand::Kind::ParsevalWavelet
                       : kind == "orthonormal-wavelet" ? CheckCommand::Kind::OrthonormalWavelet
                                                       : CheckCommand::Kind::SemiOrthogonal;
            cmd.names = parse_func_names();
        } else if (kind == "scaling-set") {
            cmd.kind = CheckCommand::Kind::ScalingSet;
            const Token t = peek();
            const std::string name = expect_ident();
            if (!sets_.count(name)) fail("undefined set '" + name + "'", t);
            cmd.names.push_back(name);
            cmd.mode = parse_mode();
        } else if (kind == "scaling-function") {
            cmd.kind = CheckCommand::Kind::ScalingFunction;
            const Token t = peek();
            const std::string name = expect_ident();
            if (!funcs_.count(name)) fail("undefined function '" + name + "'", t);
            cmd.names.push_back(name);
        } else {
            fail("unknown check '" + kind + "'", kind_tok);
        }
        end_statement();
        script.statements.push_back(cmd);
    }

    void parse_compute(Script& script) {
        next(); // compute
        const Token kind_tok = peek();
        const std::string kind = expect_ident();
        ComputeCommand cmd;
        if (kind == "multiplicity")
            cmd.kind = ComputeCommand::Kind::Multiplicity;
        else if (kind == "spectral")
            cmd.kind = ComputeCommand::Kind::Spectral;
        else if (kind == "fourier")
            cmd.kind = ComputeCommand::Kind::Fourier;
        else
            fail("unknown computation '" + kind + "'", kind_tok);
        cmd.names = parse_func_names();
        if (cmd.kind == ComputeCommand::Kind::Fourier && cmd.names.size() != 1)
            fail("fourier takes exactly one function", kind_tok);
        end_statement();
        script.statements.push_back(cmd);
    }

    void parse_builtin(Script& script) {
        const Field& f = field();
        next(); // builtin
        const Token t = peek();
        const std::string which = expect_ident();
        BuiltinCommand cmd;
        if (which == "shannon") {
            cmd.kind = BuiltinCommand::Kind::Shannon;
        } else if (which == "ex315a" || which == "ex315b") {
            cmd.kind = which == "ex315a" ? BuiltinCommand::Kind::Ex315a
                                         : BuiltinCommand::Kind::Ex315b;
            expect_sym("(");
            cmd.m = static_cast<int>(expect_number());
            expect_sym(")");
            if (cmd.m < 1) fail("builtin parameter m must be positive", t);
        } else if (which == "ex46") {
            cmd.kind = BuiltinCommand::Kind::Ex46;
            expect_sym("(");
            const std::string v = expect_ident();
            if (v != "A" && v != "B" && v != "C") fail("ex46 variant must be A, B or C", t);
            cmd.variant = v[0];
            if (accept_sym(",")) cmd.m = static_cast<int>(expect_number());
            expect_sym(")");
            if (cmd.m < 1) fail("builtin parameter m must be positive", t);
        } else {
            fail("unknown builtin '" + which + "'", t);
        }
        end_statement();
        // Bind the canonical names now so later commands can reference them.
        if (cmd.kind == BuiltinCommand::Kind::Shannon) {
            const auto cand = shannon_multiwavelet(f);
            for (int i = 0; i < cand.order(); ++i)
                bind_func_value(script, "shannon_psi_" + std::to_string(i + 1),
                                cand.hat_psis()[i], t);
        } else if (cmd.kind == BuiltinCommand::Kind::Ex315a) {
            bind_func_value(script, "ex315a_psi",
                            annulus_parseval_wavelet(f, cmd.m).hat_psis()[0], t);
        } else if (cmd.kind == BuiltinCommand::Kind::Ex315b) {
            const auto cand = scaled_shannon_family(f, cmd.m);
            for (int i = 0; i < cand.order(); ++i)
                bind_func_value(script, "ex315b_psi_" + std::to_string(i + 1),
                                cand.hat_psis()[i], t);
        } else {
            const int level = cmd.variant == 'A' ? 0 : cmd.variant == 'B' ? cmd.m + 1 : cmd.m;
            bind_set_value(script, "ex46_S", ESet::ideal(f, level), t);
        }
        script.statements.push_back(cmd);
    }

    // Builtin bindings do not append SetDef/FuncDef statements (the builtin
    // statement itself reproduces them when printed and reparsed).
    void bind_func_value(Script&, const std::string& name, const SBFunction& value,
                         const Token& at) {
        if (sets_.count(name) || funcs_.count(name)) fail("name '" + name + "' already bound", at);
        funcs_.emplace(name, value);
    }
    void bind_set_value(Script&, const std::string& name, const ESet& value, const Token& at) {
        if (sets_.count(name) || funcs_.count(name)) fail("name '" + name + "' already bound", at);
        sets_.emplace(name, value);
    }

    const Field& field() const {
        if (!field_) throw Error("internal: field queried before the header was parsed");
        return *field_;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool explicit_modulus_ = false;
    std::optional<Field> field_;
    std::map<std::string, ESet> sets_;
    std::map<std::string, SBFunction> funcs_;
};

} // namespace

Script parse_script(const std::string& text) {
    Parser parser(text);
    return parser.run();
}

namespace {

std::string mode_word(WaveletSetMode m) {
    return m == WaveletSetMode::Orthonormal ? "orthonormal" : "parseval";
}

void print_statement(std::ostream& os, const Statement& st) {
    if (const auto* sd = std::get_if<SetDef>(&st)) {
        os << "set " << sd->name << " = ";
        if (sd->value.is_empty()) {
            os << "ball(0; 0) | ball(0; 0)"; // unreachable: sets are nonempty by grammar
        } else {
            bool first = true;
            for (const Ball& b : sd->value.balls()) {
                if (!first) os << " | ";
                first = false;
                os << "ball(" << b.center().to_string() << "; " << b.level() << ")";
            }
        }
        os << "\n";
        return;
    }
    if (const auto* fd = std::get_if<FuncDef>(&st)) {
        os << "func " << fd->name << " = ";
        if (fd->value.is_zero()) {
            os << "0*ind(ball(0; 0))";
        } else {
            bool first = true;
            for (const Cell& c : fd->value.cells()) {
                if (!first) os << " + ";
                first = false;
                os << "(" << c.value.to_string() << ")*ind(ball(" << c.ball.center().to_string()
                   << "; " << c.ball.level() << "))";
            }
        }
        os << "\n";
        return;
    }
    if (const auto* cc = std::get_if<CheckCommand>(&st)) {
        os << "check ";
        switch (cc->kind) {
            case CheckCommand::Kind::WaveletSet: {
                os << "wavelet-set";
                for (const auto& n : cc->names) os << ' ' << n;
                os << " order " << cc->order << " mode " << mode_word(cc->mode);
                break;
            }
            case CheckCommand::Kind::ParsevalWavelet:
                os << "parseval-wavelet";
                for (const auto& n : cc->names) os << ' ' << n;
                break;
            case CheckCommand::Kind::OrthonormalWavelet:
                os << "orthonormal-wavelet";
                for (const auto& n : cc->names) os << ' ' << n;
                break;
            case CheckCommand::Kind::SemiOrthogonal:
                os << "semi-orthogonal";
                for (const auto& n : cc->names) os << ' ' << n;
                break;
            case CheckCommand::Kind::ScalingSet:
                os << "scaling-set " << cc->names.front() << " mode " << mode_word(cc->mode);
                break;
            case CheckCommand::Kind::ScalingFunction:
                os << "scaling-function " << cc->names.front();
                break;
        }
        os << "\n";
        return;
    }
    if (const auto* cm = std::get_if<ComputeCommand>(&st)) {
        os << "compute ";
        switch (cm->kind) {
            case ComputeCommand::Kind::Multiplicity: os << "multiplicity"; break;
            case ComputeCommand::Kind::Spectral: os << "spectral"; break;
            case ComputeCommand::Kind::Fourier: os << "fourier"; break;
        }
        for (const auto& n : cm->names) os << ' ' << n;
        os << "\n";
        return;
    }
    const auto& bc = std::get<BuiltinCommand>(st);
    os << "builtin ";
    switch (bc.kind) {
        case BuiltinCommand::Kind::Shannon: os << "shannon"; break;
        case BuiltinCommand::Kind::Ex315a: os << "ex315a(" << bc.m << ")"; break;
        case BuiltinCommand::Kind::Ex315b: os << "ex315b(" << bc.m << ")"; break;
        case BuiltinCommand::Kind::Ex46:
            os << "ex46(" << bc.variant;
            if (bc.m != 1) os << "," << bc.m;
            os << ")";
            break;
    }
    os << "\n";
}

} // namespace

std::string print_script(const Script& script) {
    std::ostringstream os;
    os << "field p=" << script.field.p() << " c=" << script.field.c();
    if (script.field.c() > 1 || script.explicit_modulus) {
        os << " poly=";
        for (std::size_t i = 0; i < script.field.modulus().size(); ++i) {
            if (i) os << ',';
            os << script.field.modulus()[i];
        }
    }
    os << "\n";
    for (const Statement& st : script.statements) print_statement(os, st);
    return os.str();
}

namespace {

ojson ball_json(const Ball& b) {
    return ojson{{"center", b.center().to_string()}, {"level", b.level()}};
}

ojson verdict_json(const Verdict& v) {
    ojson rec;
    rec["ok"] = v.ok;
    rec["condition"] = v.condition;
    if (v.witness)
        rec["witness"] = ojson{{"ball", ball_json(v.witness->cell)}, {"value", v.witness->value}};
    else
        rec["witness"] = nullptr;
    ojson rep = ojson::object();
    for (const auto& [k, val] : v.report) rep[k] = val;
    rec["report"] = rep;
    return rec;
}

ojson cells_json(const std::vector<Cell>& cells, bool approx) {
    ojson arr = ojson::array();
    for (const Cell& c : cells) {
        ojson entry{{"ball", ball_json(c.ball)}, {"value", c.value.to_string()}};
        if (approx) {
            double re, im;
            c.value.approx(re, im);
            entry["value_approx"] = ojson::array({re, im});
        }
        arr.push_back(entry);
    }
    return arr;
}

class Runner {
public:
    Runner(const Script& script, std::ostream& json_out, std::ostream& human_out,
           const RunOptions& options)
        : script_(script), json_(json_out), human_(human_out), opt_(options) {}

    int run() {
        for (const Statement& st : script_.statements) {
            if (const auto* sd = std::get_if<SetDef>(&st)) {
                sets_.emplace(sd->name, sd->value);
                continue;
            }
            if (const auto* fd = std::get_if<FuncDef>(&st)) {
                funcs_.emplace(fd->name, fd->value);
                continue;
            }
            bool command_ok = true;
            try {
                if (const auto* cc = std::get_if<CheckCommand>(&st))
                    command_ok = run_check(*cc);
                else if (const auto* cm = std::get_if<ComputeCommand>(&st))
                    command_ok = run_compute(*cm);
                else
                    command_ok = run_builtin(std::get<BuiltinCommand>(st));
            } catch (const Error& e) {
                ojson rec{{"cmd", "error"}, {"ok", false}, {"error", e.what()}};
                emit(rec, false, std::string("error: ") + e.what());
                command_ok = false;
            }
            if (!command_ok) {
                failed_ = true;
                if (opt_.strict) break;
            }
        }
        return failed_ ? 1 : 0;
    }

private:
    void emit(const ojson& rec, bool ok, const std::string& human) {
        json_ << rec.dump() << "\n";
        human_ << (ok ? "ok   " : "FAIL ") << human << "\n";
    }

    const SBFunction& func(const std::string& name) const { return funcs_.at(name); }
    const ESet& set(const std::string& name) const { return sets_.at(name); }

    MultiwaveletCandidate candidate(const std::vector<std::string>& names) const {
        std::vector<SBFunction> psis;
        psis.reserve(names.size());
        for (const auto& n : names) psis.push_back(func(n));
        return MultiwaveletCandidate(std::move(psis));
    }

    static std::string joined(const std::vector<std::string>& names) {
        std::string out;
        for (const auto& n : names) {
            if (!out.empty()) out += ' ';
            out += n;
        }
        return out;
    }

    bool run_check(const CheckCommand& cc) {
        std::string kind;
        Verdict verdict = Verdict::pass("unset");
        ojson extra = ojson::object();
        switch (cc.kind) {
            case CheckCommand::Kind::WaveletSet: {
                kind = "wavelet-set";
                std::vector<ESet> pieces;
                for (const auto& n : cc.names) pieces.push_back(set(n));
                verdict = verify_wavelet_set(pieces, cc.mode);
                extra["mode"] = mode_word(cc.mode);
                extra["order"] = cc.order;
                break;
            }
            case CheckCommand::Kind::ParsevalWavelet:
                kind = "parseval-wavelet";
                verdict = verify_affine_parseval(candidate(cc.names));
                break;
            case CheckCommand::Kind::OrthonormalWavelet:
                kind = "orthonormal-wavelet";
                verdict = is_orthonormal_multiwavelet(candidate(cc.names));
                break;
            case CheckCommand::Kind::SemiOrthogonal:
                kind = "semi-orthogonal";
                verdict = is_semi_orthogonal(candidate(cc.names));
                break;
            case CheckCommand::Kind::ScalingSet: {
                kind = "scaling-set";
                const ScalingSetResult res = verify_scaling_set(set(cc.names.front()), cc.mode);
                verdict = res.verdict;
                extra["mode"] = mode_word(cc.mode);
                extra["wavelet_set"] = res.wavelet_set.to_string();
                if (res.verdict.ok) extra["wavelet_verdict"] = verdict_json(res.wavelet_verdict);
                break;
            }
            case CheckCommand::Kind::ScalingFunction: {
                kind = "scaling-function";
                const ScalingFunctionResult res = verify_scaling_function(func(cc.names.front()));
                verdict = res.verdict;
                if (res.verdict.ok) extra["filter"] = cells_json(res.filter.cells(), opt_.approx);
                break;
            }
        }
        ojson rec{{"cmd", "check"}, {"kind", kind}, {"names", cc.names}};
        for (auto& [k, v] : extra.items()) rec[k] = v;
        const ojson vj = verdict_json(verdict);
        for (auto& [k, v] : vj.items()) rec[k] = v;
        emit(rec, verdict.ok, "check " + kind + " " + joined(cc.names) +
                                  (verdict.ok ? "" : "  [" + verdict.condition + "]"));
        return verdict.ok;
    }

    bool run_compute(const ComputeCommand& cm) {
        switch (cm.kind) {
            case ComputeCommand::Kind::Multiplicity: {
                const DilationAnalysis da = negative_dilates_multiplicity(candidate(cm.names));
                ojson rec{{"cmd", "compute"},
                          {"kind", "multiplicity"},
                          {"names", cm.names},
                          {"ok", da.condition_i.ok && da.integral_bound.ok},
                          {"condition_i", verdict_json(da.condition_i)},
                          {"resolved_near_zero", da.resolved_near_zero},
                          {"cells", cells_json(da.multiplicity.cells(), opt_.approx)},
                          {"integral", da.integral.to_string()},
                          {"integral_bound", verdict_json(da.integral_bound)}};
                emit(rec, da.condition_i.ok,
                     "compute multiplicity " + joined(cm.names) + " -> integral " +
                         da.integral.to_string());
                return da.condition_i.ok && da.integral_bound.ok;
            }
            case ComputeCommand::Kind::Spectral: {
                const DilationAnalysis da = negative_dilates_multiplicity(candidate(cm.names));
                ojson rec{{"cmd", "compute"},
                          {"kind", "spectral"},
                          {"names", cm.names},
                          {"ok", da.condition_i.ok},
                          {"resolved_near_zero", da.resolved_near_zero},
                          {"tail_level", da.tail_level},
                          {"tail_is_one", da.resolved_near_zero},
                          {"cells", cells_json(da.sigma.cells(), opt_.approx)}};
                emit(rec, da.condition_i.ok, "compute spectral " + joined(cm.names));
                return da.condition_i.ok;
            }
            case ComputeCommand::Kind::Fourier: {
                const SBFunction ft = sb_fourier(func(cm.names.front()));
                ojson rec{{"cmd", "compute"},
                          {"kind", "fourier"},
                          {"names", cm.names},
                          {"ok", true},
                          {"cells", cells_json(ft.cells(), opt_.approx)}};
                emit(rec, true, "compute fourier " + cm.names.front());
                return true;
            }
        }
        return true;
    }

    bool run_builtin(const BuiltinCommand& bc) {
        const Field& f = script_.field;
        switch (bc.kind) {
            case BuiltinCommand::Kind::Shannon: {
                const auto cand = shannon_multiwavelet(f);
                std::vector<std::string> names;
                for (int i = 0; i < cand.order(); ++i) {
                    names.push_back("shannon_psi_" + std::to_string(i + 1));
                    funcs_.emplace(names.back(), cand.hat_psis()[i]);
                }
                announce("shannon", names);
                return battery(names, true);
            }
            case BuiltinCommand::Kind::Ex315a: {
                funcs_.emplace("ex315a_psi", annulus_parseval_wavelet(f, bc.m).hat_psis()[0]);
                announce("ex315a", {"ex315a_psi"});
                return battery({"ex315a_psi"}, false);
            }
            case BuiltinCommand::Kind::Ex315b: {
                const auto cand = scaled_shannon_family(f, bc.m);
                std::vector<std::string> names;
                for (int i = 0; i < cand.order(); ++i) {
                    names.push_back("ex315b_psi_" + std::to_string(i + 1));
                    funcs_.emplace(names.back(), cand.hat_psis()[i]);
                }
                announce("ex315b", names);
                return battery(names, false);
            }
            case BuiltinCommand::Kind::Ex46: {
                const int level = bc.variant == 'A' ? 0 : bc.variant == 'B' ? bc.m + 1 : bc.m;
                sets_.emplace("ex46_S", ESet::ideal(f, level));
                announce("ex46", {"ex46_S"});
                CheckCommand cc;
                cc.kind = CheckCommand::Kind::ScalingSet;
                cc.names = {"ex46_S"};
                cc.mode = bc.variant == 'A' ? WaveletSetMode::Orthonormal
                                            : WaveletSetMode::Parseval;
                return run_check(cc);
            }
        }
        return true;
    }

    void announce(const std::string& name, const std::vector<std::string>& binds) {
        ojson rec{{"cmd", "builtin"}, {"name", name}, {"binds", binds}, {"ok", true}};
        emit(rec, true, "builtin " + name + " binds " + joined(binds));
    }

    // The standard battery for a builtin family: the Parseval verdict, plus
    // the orthonormality verdict for families that promise it.
    bool battery(const std::vector<std::string>& names, bool orthonormal_expected) {
        CheckCommand pv;
        pv.kind = CheckCommand::Kind::ParsevalWavelet;
        pv.names = names;
        bool ok = run_check(pv);
        if (orthonormal_expected) {
            CheckCommand on;
            on.kind = CheckCommand::Kind::OrthonormalWavelet;
            on.names = names;
            ok = run_check(on) && ok;
        }
        return ok;
    }

    const Script& script_;
    std::ostream& json_;
    std::ostream& human_;
    RunOptions opt_;
    std::map<std::string, ESet> sets_;
    std::map<std::string, SBFunction> funcs_;
    bool failed_ = false;
};

} // namespace

int run_script(const Script& script, std::ostream& json_out, std::ostream& human_out,
               const RunOptions& options) {
    Runner runner(script, json_out, human_out, options);
    return runner.run();
}

} // namespace lfpc
