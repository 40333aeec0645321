#pragma once

#include <teamsem/algebra.hpp>
#include <teamsem/laws.hpp>
#include <teamsem/model.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace teamsem
{

// Document formats are described in docs/formats.md. Every reader rejects
// unknown keys and throws FormatError with the offending path.

Structure structure_from_json(std::string const & text);
std::string structure_to_json(Structure const & m);

/// Element names are resolved against `m`.
Team team_from_json(std::string const & text, Structure const & m);
std::string team_to_json(Team const & t, Structure const & m);

/// Array of team documents: the maximal teams in mask order. The domain is
/// passed separately on reading since the empty lower set is written as [].
std::string lowerset_to_json(LowerSet const & u, Structure const & m);
LowerSet lowerset_from_json(std::string const & text, Structure const & m, VarSet const & domain);

std::string report_to_json(std::vector<Report> const & reports);
std::vector<Report> reports_from_json(std::string const & text);

/// Whole-file helpers; throw FormatError when the file cannot be read or written.
std::string read_file(std::filesystem::path const & path);
void write_file(std::filesystem::path const & path, std::string const & text);

} // namespace teamsem
