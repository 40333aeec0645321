#include <teamsem/parser.hpp>

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace teamsem
{

ParseError::ParseError(SourcePosition pos, std::string expected, std::string found) :
    Error{"line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": expected " + expected
          + ", found " + found},
    pos_{pos},
    expected_{std::move(expected)},
    found_{std::move(found)}
{}

namespace
{

enum class Tok : std::uint8_t
{
    ident,
    kw_forall,
    kw_exists,
    lparen,
    rparen,
    comma,
    semi,
    dot,
    bang,
    eq,
    conj,
    disj,
    imp,
    tensor,
    wand,
    backslash,
    end
};

struct Token
{
    Tok kind;
    std::string text;
    std::size_t offset;
};

std::string describe(Token const & t)
{
    switch (t.kind)
    {
    case Tok::end:
        return "end of input";
    case Tok::ident:
        return "identifier '" + t.text + "'";
    default:
        return "'" + t.text + "'";
    }
}

bool ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer
{
public:
    Lexer(std::string_view src, Dialect dialect) : src_{src}, dialect_{dialect} {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true)
        {
            while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_])))
                ++i_;
            if (i_ == src_.size())
            {
                out.push_back({Tok::end, "", i_});
                return out;
            }
            out.push_back(next());
        }
    }

    SourcePosition position(std::size_t offset) const
    {
        SourcePosition p;
        p.offset = offset;
        for (std::size_t k = 0; k < offset && k < src_.size(); ++k)
        {
            if (src_[k] == '\n')
            {
                ++p.line;
                p.column = 1;
            }
            else
                ++p.column;
        }
        return p;
    }

private:
    Token next()
    {
        std::size_t const start = i_;
        char const c = src_[i_];
        auto two = [&](char d) { return i_ + 1 < src_.size() && src_[i_ + 1] == d; };
        auto emit = [&](Tok k, std::size_t len) {
            i_ += len;
            return Token{k, std::string{src_.substr(start, len)}, start};
        };

        if (c == '/' && two('\\'))
            return emit(Tok::conj, 2);
        if (c == '\\' && two('/'))
            return emit(dialect_ == Dialect::dependence ? Tok::tensor : Tok::disj, 2);
        if (c == '-' && two('>'))
            return emit(Tok::imp, 2);
        if (c == '-' && two('*'))
            return emit(Tok::wand, 2);
        switch (c)
        {
        case '(':
            return emit(Tok::lparen, 1);
        case ')':
            return emit(Tok::rparen, 1);
        case ',':
            return emit(Tok::comma, 1);
        case ';':
            return emit(Tok::semi, 1);
        case '.':
            return emit(Tok::dot, 1);
        case '!':
            return emit(Tok::bang, 1);
        case '=':
            return emit(Tok::eq, 1);
        case '*':
            return emit(Tok::tensor, 1);
        case '\\':
            return emit(Tok::backslash, 1);
        default:
            break;
        }
        if (ident_char(c) && c != '\'')
        {
            while (i_ < src_.size() && ident_char(src_[i_]))
                ++i_;
            std::string text{src_.substr(start, i_ - start)};
            Tok kind = Tok::ident;
            if (text == "forall")
                kind = Tok::kw_forall;
            else if (text == "exists")
                kind = Tok::kw_exists;
            return {kind, std::move(text), start};
        }
        throw ParseError{position(start), "a formula token", "unexpected character '" + std::string(1, c) + "'"};
    }

    std::string_view src_;
    Dialect dialect_;
    std::size_t i_ = 0;
};

class Parser
{
public:
    Parser(Lexer const & lexer, std::vector<Token> tokens) : lexer_{lexer}, toks_{std::move(tokens)} {}

    Formula parse_all()
    {
        Formula f = formula();
        if (peek().kind != Tok::end)
            fail("end of input or a binary connective");
        return f;
    }

private:
    Token const & peek() const { return toks_[pos_]; }
    Token const & advance() { return toks_[pos_++]; }
    bool accept(Tok k)
    {
        if (peek().kind != k)
            return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(std::string expected) const
    {
        throw ParseError{lexer_.position(peek().offset), std::move(expected), describe(peek())};
    }

    Token const & expect(Tok k, char const * what)
    {
        if (peek().kind != k)
            fail(what);
        return advance();
    }

    bool at_quantifier() const { return peek().kind == Tok::kw_forall || peek().kind == Tok::kw_exists; }

    Formula formula()
    {
        if (at_quantifier())
            return quantifier();
        return implication();
    }

    Formula implication()
    {
        Formula lhs = disjunction();
        if (peek().kind == Tok::imp || peek().kind == Tok::wand)
        {
            Tok const op = advance().kind;
            return Formula::binary(op == Tok::imp ? Connective::imp : Connective::wand, std::move(lhs),
                                   implication_rhs(op));
        }
        return lhs;
    }

    Formula implication_rhs(Tok op)
    {
        if (at_quantifier())
            return quantifier();
        Formula lhs = disjunction();
        if (peek().kind == op)
        {
            advance();
            return Formula::binary(op == Tok::imp ? Connective::imp : Connective::wand, std::move(lhs),
                                   implication_rhs(op));
        }
        if (peek().kind == Tok::imp || peek().kind == Tok::wand)
            fail(std::string{"parentheses: '->' and '-*' cannot be mixed without them; or '"}
                 + (op == Tok::imp ? "->" : "-*") + "'");
        return lhs;
    }

    template <typename Next>
    Formula left_assoc(Tok tok, Connective op, Next next)
    {
        Formula lhs = (this->*next)();
        while (accept(tok))
            lhs = Formula::binary(op, std::move(lhs), (this->*next)());
        return lhs;
    }

    Formula disjunction() { return left_assoc(Tok::disj, Connective::disj, &Parser::tensor); }
    Formula tensor() { return left_assoc(Tok::tensor, Connective::tensor, &Parser::conjunction); }
    Formula conjunction() { return left_assoc(Tok::conj, Connective::conj, &Parser::primary); }

    Formula primary()
    {
        if (at_quantifier())
            return quantifier();
        if (accept(Tok::lparen))
        {
            Formula f = formula();
            expect(Tok::rparen, "')'");
            return f;
        }
        if (accept(Tok::bang))
        {
            bool const paren = accept(Tok::lparen);
            std::size_t const at = pos_;
            Formula a = atom();
            if (paren)
                expect(Tok::rparen, "')'");
            if (auto const * r = a.as<RelAtom>())
                return Formula::relation(r->relation, r->args, Polarity::negated);
            if (auto const * e = a.as<EqAtom>())
                return Formula::equality(e->lhs, e->rhs, Polarity::negated);
            pos_ = at;
            fail("a relation or equality atom after '!' (dependence atoms cannot be negated)");
        }
        return atom();
    }

    std::string identifier(char const * what) { return expect(Tok::ident, what).text; }

    std::vector<std::string> identifier_list(Tok terminator)
    {
        std::vector<std::string> out;
        if (peek().kind == terminator)
            return out;
        out.push_back(identifier("a variable"));
        while (accept(Tok::comma))
            out.push_back(identifier("a variable"));
        return out;
    }

    Formula atom()
    {
        if (peek().kind != Tok::ident)
            fail("an atom, '(' or a quantifier");
        std::string name = advance().text;
        if (accept(Tok::lparen))
        {
            if (name == "D")
                return dependence();
            if (name == "C")
            {
                std::string v = identifier("a variable");
                expect(Tok::rparen, "')'");
                return Formula::constancy(std::move(v));
            }
            std::vector<Term> args;
            if (peek().kind != Tok::rparen)
            {
                args.push_back(Term::var(identifier("a term")));
                while (accept(Tok::comma))
                    args.push_back(Term::var(identifier("a term")));
            }
            expect(Tok::rparen, "',' or ')'");
            return Formula::relation(std::move(name), std::move(args));
        }
        expect(Tok::eq, "'=' or '('");
        std::string rhs = identifier("a term");
        return Formula::equality(Term::var(std::move(name)), Term::var(std::move(rhs)));
    }

    Formula dependence()
    {
        std::vector<std::string> governors = identifier_list(Tok::semi);
        if (accept(Tok::semi))
        {
            std::string dependent = identifier("the dependent variable");
            expect(Tok::rparen, "')'");
            return Formula::dependence(std::move(governors), std::move(dependent));
        }
        // comma form D(x1, ..., xn, y): the last variable is the dependent one
        if (governors.empty())
            fail("a variable or ';'");
        expect(Tok::rparen, "',', ';' or ')'");
        std::string dependent = std::move(governors.back());
        governors.pop_back();
        return Formula::dependence(std::move(governors), std::move(dependent));
    }

    Formula quantifier()
    {
        Quantifier const q = advance().kind == Tok::kw_forall ? Quantifier::forall : Quantifier::exists;
        std::string v = identifier("a bound variable");
        if (accept(Tok::backslash))
        {
            std::vector<std::string> governors = identifier_list(Tok::dot);
            expect(Tok::dot, "',' or '.'");
            return Formula::guarded(q, std::move(v), std::move(governors), formula());
        }
        expect(Tok::dot, "'.' or '\\'");
        return Formula::quantified(q, std::move(v), formula());
    }

    Lexer const & lexer_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// printing

int op_level(Connective op)
{
    switch (op)
    {
    case Connective::conj:
        return 4;
    case Connective::tensor:
        return 3;
    case Connective::disj:
        return 2;
    case Connective::imp:
    case Connective::wand:
        return 1;
    }
    return 1;
}

int level(Formula const & f)
{
    if (auto const * b = f.as<Binary>())
        return op_level(b->op);
    if (f.as<Quantified>())
        return 0;
    return 5;
}

class Printer
{
public:
    explicit Printer(PrintOptions opt) : opt_{opt} {}

    void emit(Formula const & f, bool tail)
    {
        if (auto const * r = f.as<RelAtom>())
            return relation(*r);
        if (auto const * e = f.as<EqAtom>())
            return equality(*e);
        if (auto const * d = f.as<DepAtom>())
            return dependence(*d);
        if (auto const * b = f.as<Binary>())
            return binary(*b, tail);
        quantified(*f.as<Quantified>());
    }

    std::string str() const { return out_.str(); }

private:
    void relation(RelAtom const & r)
    {
        if (r.polarity == Polarity::negated)
            out_ << (opt_.unicode ? "¬" : "!");
        out_ << r.relation << '(';
        for (std::size_t i = 0; i < r.args.size(); ++i)
            out_ << (i ? ", " : "") << r.args[i].name;
        out_ << ')';
    }

    void equality(EqAtom const & e)
    {
        if (e.polarity == Polarity::negated)
        {
            if (opt_.unicode)
                out_ << e.lhs.name << " ≠ " << e.rhs.name;
            else
                out_ << "!(" << e.lhs.name << " = " << e.rhs.name << ')';
            return;
        }
        out_ << e.lhs.name << " = " << e.rhs.name;
    }

    void dependence(DepAtom const & d)
    {
        if (d.governors.empty())
        {
            out_ << "C(" << d.dependent << ')';
            return;
        }
        out_ << "D(";
        for (std::size_t i = 0; i < d.governors.size(); ++i)
            out_ << (i ? ", " : "") << d.governors[i];
        out_ << " ; " << d.dependent << ')';
    }

    std::string_view symbol(Connective c) const
    {
        if (!opt_.unicode)
            return to_string(c);
        switch (c)
        {
        case Connective::conj:
            return "∧";
        case Connective::disj:
            return "∨";
        case Connective::imp:
            return "→";
        case Connective::tensor:
            return "⊗";
        case Connective::wand:
            return "⊸";
        }
        return "?";
    }

    void binary(Binary const & b, bool tail)
    {
        int const mine = op_level(b.op);
        bool const right_assoc = b.op == Connective::imp || b.op == Connective::wand;

        int const l = level(b.lhs);
        bool const lparen = l < mine || (l == mine && right_assoc);
        child(b.lhs, lparen, false);

        out_ << ' ' << symbol(b.op) << ' ';

        int const r = level(b.rhs);
        bool rparen = false;
        if (b.rhs.as<Quantified>())
            rparen = !tail;
        else if (r < mine)
            rparen = true;
        else if (r == mine)
        {
            auto const * rb = b.rhs.as<Binary>();
            rparen = !right_assoc || rb->op != b.op;
        }
        child(b.rhs, rparen, tail);
    }

    void child(Formula const & f, bool paren, bool tail)
    {
        if (paren)
            out_ << '(';
        emit(f, paren || tail);
        if (paren)
            out_ << ')';
    }

    void quantified(Quantified const & q)
    {
        if (opt_.unicode)
            out_ << (q.kind == Quantifier::forall ? "∀" : "∃") << q.var;
        else
            out_ << (q.kind == Quantifier::forall ? "forall " : "exists ") << q.var;
        if (q.guarded)
        {
            out_ << (opt_.unicode ? " ∖ " : " \\ ");
            for (std::size_t i = 0; i < q.governors.size(); ++i)
                out_ << (i ? ", " : "") << q.governors[i];
            out_ << (q.governors.empty() ? "." : " .");
        }
        else
            out_ << '.';
        out_ << ' ';
        emit(q.body, true);
    }

    PrintOptions opt_;
    std::ostringstream out_;
};

} // namespace

Formula parse(std::string_view src, Dialect dialect)
{
    Lexer lexer{src, dialect};
    Parser parser{lexer, lexer.run()};
    return parser.parse_all();
}

std::string print(Formula const & f, PrintOptions options)
{
    Printer p{options};
    p.emit(f, true);
    return p.str();
}

std::string render_error(std::string_view src, ParseError const & e)
{
    auto const & pos = e.position();
    std::size_t line_start = src.rfind('\n', pos.offset == 0 ? 0 : pos.offset - 1);
    line_start = (line_start == std::string_view::npos || pos.offset == 0) ? 0 : line_start + 1;
    if (pos.offset > 0 && src[pos.offset - 1] == '\n')
        line_start = pos.offset;
    std::size_t line_end = src.find('\n', pos.offset);
    if (line_end == std::string_view::npos)
        line_end = src.size();

    std::ostringstream out;
    out << "parse error: " << e.what() << '\n';
    out << "  " << src.substr(line_start, line_end - line_start) << '\n';
    out << "  " << std::string(pos.offset - line_start, ' ') << '^';
    return out.str();
}

} // namespace teamsem
