#ifndef MBC_IO_HPP
#define MBC_IO_HPP

#include <filesystem>
#include <string>

#include "json.hpp"
#include "mbc/problem.hpp"

namespace mbc {

/// Parses a problem document. Fields: `issues`, `claimants` (arrays of
/// strings), `estates`, `claims` (objects keyed by identifier), `alpha`
/// (object claimant -> array of issues). Amounts may be JSON integers,
/// decimal strings ("3.25"), or fraction strings ("13/4"). Parse errors are
/// reported with the line they occur on; semantic errors name the field.
/// Throws ValidationError.
MbcProblem problem_from_json_text(const std::string& text,
                                  const std::string& source_name = "<input>");

MbcProblem load_problem(const std::filesystem::path& path);

/// Canonical document for the problem: field order fixed, amounts in lowest
/// terms ("13/4"; plain integers stay integers). Reloading the emitted text
/// yields an identical problem and identical re-emission.
nlohmann::ordered_json problem_to_json(const MbcProblem& p);
std::string write_problem_text(const MbcProblem& p);
void save_problem(const std::filesystem::path& path, const MbcProblem& p);

/// Rational <-> JSON value helpers shared by the CLI's structured output.
nlohmann::ordered_json rational_to_json(const Rat& value);
Rat rational_from_json(const nlohmann::json& value, const std::string& where);

}  // namespace mbc

#endif  // MBC_IO_HPP
