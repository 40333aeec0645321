#pragma once

#include <teamsem/ast.hpp>
#include <teamsem/errors.hpp>

#include <cstddef>
#include <string>
#include <string_view>

namespace teamsem
{

/// `bid` reads `\/` as intuitionistic disjunction; `dependence` reads it as
/// the splitting disjunction of dependence logic, i.e. the tensor.
enum class Dialect : std::uint8_t
{
    bid,
    dependence
};

struct SourcePosition
{
    std::size_t offset = 0; // byte offset, at most the input length
    std::size_t line = 1;
    std::size_t column = 1;
};

class ParseError : public Error
{
public:
    ParseError(SourcePosition pos, std::string expected, std::string found);

    SourcePosition const & position() const noexcept { return pos_; }
    std::string const & expected() const noexcept { return expected_; }
    std::string const & found() const noexcept { return found_; }

private:
    SourcePosition pos_;
    std::string expected_;
    std::string found_;
};

/// Parses the ASCII surface syntax:
///
///     formula  := quant | impl
///     quant    := ("forall" | "exists") ident ["\" [idents]] "." formula
///     impl     := or ("->" impl-chain | "-*" impl-chain)?     right-assoc, unmixed
///     or       := tensor ("\/" tensor)*
///     tensor   := and ("*" and)*
///     and      := primary ("/\" primary)*
///     primary  := "(" formula ")" | quant | "!" atom | "!" "(" atom ")" | atom
///     atom     := ident "(" [terms] ")" | term "=" term
///               | "D" "(" [idents] ";" ident ")" | "C" "(" ident ")"
///
/// Quantifier bodies extend as far right as possible.
Formula parse(std::string_view src, Dialect dialect = Dialect::bid);

struct PrintOptions
{
    bool unicode = false; // output only; not accepted by `parse`
};

/// Minimal-parenthesis rendering; `parse(print(f)) == f`.
std::string print(Formula const & f, PrintOptions options = {});

/// Multi-line diagnostic with the offending line and a caret under the error.
std::string render_error(std::string_view src, ParseError const & e);

} // namespace teamsem
