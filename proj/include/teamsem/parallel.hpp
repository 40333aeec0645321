#pragma once

#include <cstdint>
#include <exception>
#include <limits>
#include <string_view>

#include <omp.h>

namespace teamsem
{

/// Every exhaustive sweep has a serial reference path and an OpenMP path;
/// both must produce identical results.
enum class Execution : std::uint8_t
{
    serial,
    parallel
};

constexpr std::string_view to_string(Execution e) noexcept
{
    return e == Execution::serial ? "serial" : "parallel";
}

/// Calls `fn(i)` for every i in [0, count). Iterations must only write to
/// per-index slots. If iterations throw, the exception of the lowest index
/// is rethrown after the loop, so the observable outcome is schedule
/// independent.
template <typename Fn>
void for_each_index(std::uint64_t count, Execution exec, Fn && fn)
{
    if (exec == Execution::serial)
    {
        for (std::uint64_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::uint64_t first_index = std::numeric_limits<std::uint64_t>::max();
    auto const n = static_cast<std::int64_t>(count);

#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i)
    {
        try
        {
            fn(static_cast<std::uint64_t>(i));
        }
        catch (...)
        {
#pragma omp critical(teamsem_for_each_index)
            {
                if (static_cast<std::uint64_t>(i) < first_index)
                {
                    first_index = static_cast<std::uint64_t>(i);
                    first_error = std::current_exception();
                }
            }
        }
    }

    if (first_error)
        std::rethrow_exception(first_error);
}

inline int worker_count() noexcept
{
    return omp_get_max_threads();
}

} // namespace teamsem
