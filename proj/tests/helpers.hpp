#pragma once

#include <teamsem/model.hpp>

#include <vector>

namespace test
{

/// Team on `vars` whose members list values in sorted variable order.
inline teamsem::Team team(teamsem::Structure const & m, teamsem::VarSet const & vars,
                          std::vector<std::vector<teamsem::Element>> const & rows)
{
    auto const space = teamsem::make_space(vars, m.size());
    std::vector<teamsem::Assignment> members;
    for (auto const & r : rows)
        members.emplace_back(space->vars(), r);
    return teamsem::Team{space, members};
}

/// M2 with P = {0}.
inline teamsem::Structure mr()
{
    teamsem::Structure m = teamsem::Structure::uniform(2);
    m.add_relation("P", 1, {teamsem::Tuple{0}});
    return m;
}

} // namespace test
