#include "mbc/io.hpp"

#include <fstream>
#include <sstream>

namespace mbc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& source, const std::string& message) {
  throw ValidationError(source + ": " + message);
}

std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') ++line;
  }
  return line;
}

std::vector<std::string> string_list(const json& node, const std::string& source,
                                     const std::string& field) {
  if (!node.is_array()) fail(source, "field '" + field + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : node) {
    if (!item.is_string()) fail(source, "field '" + field + "' must contain only strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

Rat rational_from_json(const json& value, const std::string& where) {
  if (value.is_number_integer()) {
    return Rat(static_cast<long>(value.get<std::int64_t>()));
  }
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (value.is_number_float()) {
    throw ValidationError(where + ": write non-integer amounts as strings (\"3.25\" or \"13/4\")");
  }
  throw ValidationError(where + ": expected an amount");
}

ordered_json rational_to_json(const Rat& value) {
  if (value.get_den() == 1 && value.get_num().fits_slong_p()) {
    return ordered_json(value.get_num().get_si());
  }
  return ordered_json(format_rational(value));
}

MbcProblem problem_from_json_text(const std::string& text, const std::string& source_name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(source_name + ":" + std::to_string(line_of_offset(text, e.byte)),
         "invalid document: " + std::string(e.what()));
  }
  if (!doc.is_object()) fail(source_name, "document must be an object");
  for (const char* field : {"issues", "claimants", "estates", "claims", "alpha"}) {
    if (!doc.contains(field)) fail(source_name, std::string("missing field '") + field + "'");
  }

  RawProblem raw;
  raw.issues = string_list(doc["issues"], source_name, "issues");
  raw.claimants = string_list(doc["claimants"], source_name, "claimants");

  auto read_amounts = [&](const char* field, auto& into) {
    const json& node = doc[field];
    if (!node.is_object()) fail(source_name, std::string("field '") + field + "' must be an object");
    for (const auto& [key, val] : node.items()) {
      into.emplace_back(key, rational_from_json(val, source_name + ": " + field + "." + key));
    }
  };
  read_amounts("estates", raw.estates);
  read_amounts("claims", raw.claims);

  const json& alpha = doc["alpha"];
  if (!alpha.is_object()) fail(source_name, "field 'alpha' must be an object");
  for (const auto& [key, val] : alpha.items()) {
    raw.alpha.emplace_back(key, string_list(val, source_name, "alpha." + key));
  }

  try {
    return validate_problem(raw);
  } catch (const ValidationError& e) {
    fail(source_name, e.what());
  }
}

MbcProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return problem_from_json_text(buffer.str(), path.string());
}

ordered_json problem_to_json(const MbcProblem& p) {
  ordered_json doc;
  doc["issues"] = p.issue_ids();
  doc["claimants"] = p.claimant_ids();
  ordered_json estates = ordered_json::object();
  for (int i = 0; i < p.issue_count(); ++i) {
    estates[p.issue_ids()[static_cast<size_t>(i)]] = rational_to_json(p.estate(i));
  }
  doc["estates"] = std::move(estates);
  ordered_json claims = ordered_json::object();
  for (int j = 0; j < p.claimant_count(); ++j) {
    claims[p.claimant_ids()[static_cast<size_t>(j)]] = rational_to_json(p.claim(j));
  }
  doc["claims"] = std::move(claims);
  ordered_json alpha = ordered_json::object();
  for (int j = 0; j < p.claimant_count(); ++j) {
    ordered_json issues = ordered_json::array();
    for (int i : p.issues_of(j)) issues.push_back(p.issue_ids()[static_cast<size_t>(i)]);
    alpha[p.claimant_ids()[static_cast<size_t>(j)]] = std::move(issues);
  }
  doc["alpha"] = std::move(alpha);
  return doc;
}

std::string write_problem_text(const MbcProblem& p) {
  return problem_to_json(p).dump(2) + "\n";
}

void save_problem(const std::filesystem::path& path, const MbcProblem& p) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
  out << write_problem_text(p);
}

}  // namespace mbc
