#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace teamsem
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A formula lies outside the fragment an operation is defined on.
class FragmentError : public Error
{
public:
    using Error::Error;
};

/// A variable set is not contained in the domain it is used against.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Two lower sets or teams over different variable sets were combined.
class DomainMismatch : public DomainError
{
public:
    using DomainError::DomainError;
};

/// A function handed to `extend_fn` is undefined on some member of the team.
class MissingValue : public Error
{
public:
    using Error::Error;
};

class NotASentence : public Error
{
public:
    using Error::Error;
};

/// The two formulas handed to the full-abstraction construction have
/// nested denotations, so no separating team exists.
class NoWitness : public Error
{
public:
    using Error::Error;
};

/// An identifier in term position is neither a variable in scope, a declared
/// constant, nor an element of the universe.
class UnboundIdentifier : public Error
{
public:
    using Error::Error;
};

/// Malformed structure, team or report document.
class FormatError : public Error
{
public:
    using Error::Error;
};

/// An exhaustive search would exceed a configured bound.
class BoundExceeded : public Error
{
public:
    BoundExceeded(std::string const & what, std::uint64_t count, std::uint64_t limit) :
        Error{what + ": " + std::to_string(count) + " exceeds bound " + std::to_string(limit)},
        count_{count},
        limit_{limit}
    {}

    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t count_;
    std::uint64_t limit_;
};

} // namespace teamsem
