// Command-line front end: solve problem files with the priority rules,
// reproduce per-order tables, audit axioms, hunt counterexamples, and
// generate random instances.
//
// Exit codes: 0 success / all axioms hold; 1 axiom violation found;
// 2 input or usage error; 3 enumeration budget refused.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mbc/axioms.hpp"
#include "mbc/crastar.hpp"
#include "mbc/instance_gen.hpp"
#include "mbc/io.hpp"
#include "mbc/permutation.hpp"
#include "mbc/rules.hpp"

namespace {

using namespace mbc;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct OutputOpts {
  std::string format = "plain";
  int decimals = -1;  // -1: exact p/q rendering
};

std::string fmt_amount(const Rat& value, const OutputOpts& out) {
  return out.decimals >= 0 ? format_decimal(value, out.decimals) : format_rational(value);
}

std::string fmt_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
  } else {
    for (char ch : text) out.emplace_back(1, ch);
  }
  return out;
}

struct RuleSelector {
  enum class Kind { Csp, Cra, Crastar, All } kind;
  std::vector<std::string> order_ids;  // Csp only
};

RuleSelector parse_rule(const std::string& text) {
  if (text == "cra") return {RuleSelector::Kind::Cra, {}};
  if (text == "crastar" || text == "cra*") return {RuleSelector::Kind::Crastar, {}};
  if (text == "all") return {RuleSelector::Kind::All, {}};
  if (text.rfind("csp:", 0) == 0) {
    RuleSelector sel{RuleSelector::Kind::Csp, split_ids(text.substr(4))};
    if (sel.order_ids.empty()) throw ValidationError("csp selector needs a full order, e.g. csp:132");
    return sel;
  }
  if (text == "csp") throw ValidationError("csp selector needs a full order, e.g. csp:132");
  throw ValidationError("unknown rule '" + text + "' (expected csp:<order>, cra, crastar, all)");
}

ClaimantOrder order_from_ids(const MbcProblem& p, const std::vector<std::string>& ids) {
  ClaimantOrder order;
  std::vector<bool> seen(static_cast<size_t>(p.claimant_count()), false);
  for (const auto& id : ids) {
    int j = p.claimant_index(id);
    if (j < 0) throw ValidationError("order names unknown claimant '" + id + "'");
    if (seen[static_cast<size_t>(j)]) throw ValidationError("order repeats claimant '" + id + "'");
    seen[static_cast<size_t>(j)] = true;
    order.push_back(j);
  }
  if (order.size() != seen.size()) throw ValidationError("order must list every claimant");
  return order;
}

std::string order_label(const MbcProblem& p, const std::vector<int>& order, bool issues) {
  const auto& ids = issues ? p.issue_ids() : p.claimant_ids();
  bool compact = true;
  for (const auto& id : ids) compact = compact && id.size() == 1;
  std::string label;
  for (size_t k = 0; k < order.size(); ++k) {
    if (!compact && k) label += ",";
    label += ids[static_cast<size_t>(order[k])];
  }
  return label;
}

void print_aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c >= width.size()) width.push_back(0);
      width[c] = std::max(width[c], row[c].size());
    }
  }
  for (const auto& row : rows) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size(), ' ');
    }
    std::cout << line << "\n";
  }
}

ordered_json allocation_json(const MbcProblem& p, const Allocation& x) {
  ordered_json doc = ordered_json::object();
  for (int j = 0; j < p.claimant_count(); ++j) {
    doc[p.claimant_ids()[static_cast<size_t>(j)]] = format_rational(x[static_cast<size_t>(j)]);
  }
  return doc;
}

ordered_json report_json(const AxiomReport& report) {
  ordered_json doc;
  doc["axiom"] = std::string(axiom_name(report.axiom));
  doc["rule"] = report.rule;
  doc["verdict"] = report.holds ? "holds-on-instance" : "violated";
  if (!report.claimants.empty()) doc["claimants"] = report.claimants;
  if (report.lhs) doc["lhs"] = format_rational(*report.lhs);
  if (report.rhs) doc["rhs"] = format_rational(*report.rhs);
  if (report.improvement) doc["improvement"] = format_rational(*report.improvement);
  if (report.leaver) doc["leaver"] = *report.leaver;
  if (!report.keep.empty()) doc["keep"] = report.keep;
  if (!report.estates_prime.empty()) {
    ordered_json estates = ordered_json::array();
    for (const Rat& e : report.estates_prime) estates.push_back(format_rational(e));
    doc["estates_prime"] = std::move(estates);
  }
  if (report.pair_ids) doc["pair"] = {report.pair_ids->first, report.pair_ids->second};
  if (!report.notes.empty()) doc["notes"] = report.notes;
  doc["description"] = report.describe();
  return doc;
}

// ---------------------------------------------------------------------------
// solve

struct Evaluation {
  std::string rule;
  RuleValue value;
};

int run_solve(const MbcProblem& p, const RuleSelector& sel, const std::string& mode,
              std::uint64_t samples, std::uint64_t outer, std::uint64_t inner,
              std::uint64_t seed, const EnumBudget& budget, const OutputOpts& out) {
  const bool sampled = mode == "sample";
  std::vector<Evaluation> results;
  auto add_csp = [&]() {
    ClaimantOrder order = order_from_ids(p, sel.order_ids);
    RuleValue value;
    value.allocation = csp(p, order);
    results.push_back({"csp:" + order_label(p, order, false), value});
  };
  auto add_cra = [&]() {
    results.push_back({"cra", sampled ? cra_sample(p, samples, seed) : cra_exact(p, budget)});
  };
  auto add_crastar = [&]() {
    results.push_back({"crastar", sampled ? crastar_sample(p, outer, inner, seed)
                                          : crastar_exact(p, budget)});
  };
  switch (sel.kind) {
    case RuleSelector::Kind::Csp: add_csp(); break;
    case RuleSelector::Kind::Cra: add_cra(); break;
    case RuleSelector::Kind::Crastar: add_crastar(); break;
    case RuleSelector::Kind::All: add_cra(); add_crastar(); break;
  }

  if (out.format == "json") {
    ordered_json doc = problem_to_json(p);
    ordered_json list = ordered_json::array();
    for (const auto& [rule, value] : results) {
      ordered_json entry;
      entry["rule"] = rule;
      entry["mode"] = value.mode == RuleValue::Mode::Exact ? "exact" : "sampled";
      entry["allocation"] = allocation_json(p, value.allocation);
      if (value.mode == RuleValue::Mode::Sampled) {
        entry["samples"] = value.samples;
        if (value.inner_samples) entry["inner_samples"] = value.inner_samples;
        entry["seed"] = value.seed;
        ordered_json hw = ordered_json::array();
        for (double h : value.half_width) hw.push_back(fmt_double(h));
        entry["half_width"] = std::move(hw);
      }
      list.push_back(std::move(entry));
    }
    if (results.size() == 1) {
      for (auto& [key, val] : list.front().items()) doc[key] = val;
    } else {
      doc["results"] = std::move(list);
    }
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  for (const auto& [rule, value] : results) {
    std::cout << "# " << rule << " "
              << (value.mode == RuleValue::Mode::Exact ? "exact" : "sampled") << "\n";
    std::vector<std::vector<std::string>> rows;
    for (int j = 0; j < p.claimant_count(); ++j) {
      std::vector<std::string> row = {p.claimant_ids()[static_cast<size_t>(j)],
                                      fmt_amount(value.allocation[static_cast<size_t>(j)], out)};
      if (value.mode == RuleValue::Mode::Sampled) {
        row.push_back("±" + fmt_double(value.half_width[static_cast<size_t>(j)]));
      }
      rows.push_back(std::move(row));
    }
    print_aligned(rows);
    if (value.mode == RuleValue::Mode::Sampled) {
      std::cout << "# samples=" << value.samples;
      if (value.inner_samples) std::cout << " inner_samples=" << value.inner_samples;
      std::cout << " seed=" << value.seed << "\n";
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// tables

int run_tables(const MbcProblem& p, const RuleSelector& sel, const EnumBudget& budget,
               const OutputOpts& out) {
  std::vector<std::pair<std::string, Allocation>> rows;
  std::string mean_label;
  Allocation mean;

  if (sel.kind == RuleSelector::Kind::Csp) {
    ClaimantOrder order = order_from_ids(p, sel.order_ids);
    rows.emplace_back(order_label(p, order, false), csp(p, order));
  } else if (sel.kind == RuleSelector::Kind::Cra) {
    const std::uint64_t total = factorial(p.claimant_count());
    if (total > budget.max_orders) {
      throw BudgetError("table would have " + std::to_string(total) +
                        " rows, over the budget; use the sampled mode");
    }
    std::vector<int> order = identity_order(p.claimant_count());
    do {
      rows.emplace_back(order_label(p, order, false), csp(p, order));
    } while (std::next_permutation(order.begin(), order.end()));
    mean_label = "CRA";
    mean = cra_exact(p, budget).allocation;
  } else if (sel.kind == RuleSelector::Kind::Crastar) {
    crastar_exact(p, budget);  // enforce the budget before enumerating rows
    std::vector<int> order = identity_order(p.issue_count());
    do {
      rows.emplace_back(order_label(p, order, true), crastar_for_issue_order(p, order));
    } while (std::next_permutation(order.begin(), order.end()));
    mean_label = "CRA*";
    mean = crastar_exact(p, budget).allocation;
  } else {
    throw ValidationError("tables needs --rule csp:<order>, cra, or crastar");
  }

  if (out.format == "json") {
    ordered_json doc;
    doc["rule"] = sel.kind == RuleSelector::Kind::Cra ? "cra"
                  : sel.kind == RuleSelector::Kind::Crastar ? "crastar" : "csp";
    ordered_json list = ordered_json::array();
    for (const auto& [label, allocation] : rows) {
      ordered_json entry;
      entry["order"] = label;
      entry["allocation"] = allocation_json(p, allocation);
      list.push_back(std::move(entry));
    }
    doc["rows"] = std::move(list);
    if (!mean_label.empty()) doc["mean"] = allocation_json(p, mean);
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
  }

  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header = {"order"};
  for (const auto& id : p.claimant_ids()) header.push_back(id);
  table.push_back(std::move(header));
  for (const auto& [label, allocation] : rows) {
    std::vector<std::string> row = {label};
    for (const Rat& v : allocation) row.push_back(fmt_amount(v, out));
    table.push_back(std::move(row));
  }
  if (!mean_label.empty()) {
    std::vector<std::string> row = {mean_label};
    for (const Rat& v : mean) row.push_back(fmt_amount(v, out));
    table.push_back(std::move(row));
  }
  print_aligned(table);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// audit

RuleUnderTest rule_under_test(const MbcProblem& p, const RuleSelector& sel,
                              const EnumBudget& budget) {
  switch (sel.kind) {
    case RuleSelector::Kind::Csp: {
      order_from_ids(p, sel.order_ids);  // validate against the instance
      return RuleUnderTest::csp(sel.order_ids);
    }
    case RuleSelector::Kind::Cra: return RuleUnderTest::cra(budget);
    case RuleSelector::Kind::Crastar: return RuleUnderTest::crastar(budget);
    default: throw ValidationError("audit needs --rule csp:<order>, cra, or crastar");
  }
}

int claimant_or_fail(const MbcProblem& p, const std::string& id) {
  int j = p.claimant_index(id);
  if (j < 0) throw ValidationError("unknown claimant '" + id + "'");
  return j;
}

int run_audit(const MbcProblem& p, const RuleSelector& sel, const std::string& axiom_arg,
              const std::string& keep_arg, const std::string& leaver_arg,
              const std::string& pair_arg, const std::string& estates_arg,
              bool strict_pri, const EnumBudget& budget, const OutputOpts& out) {
  RuleUnderTest rule = rule_under_test(p, sel, budget);

  std::vector<Axiom> axioms;
  if (axiom_arg == "all") {
    axioms = {Axiom::Peff, Axiom::Ete, Axiom::Cons, Axiom::Pri,
              Axiom::Rmon, Axiom::Pmon, Axiom::Bal};
    if (!rule.has_order()) axioms.erase(std::find(axioms.begin(), axioms.end(), Axiom::Pri));
  } else {
    auto parsed = axiom_from_name(axiom_arg);
    if (!parsed) throw ValidationError("unknown axiom '" + axiom_arg + "'");
    axioms = {*parsed};
  }

  std::vector<AxiomReport> reports;
  for (Axiom axiom : axioms) {
    switch (axiom) {
      case Axiom::Peff:
        reports.push_back(check_peff(rule, p));
        break;
      case Axiom::Ete:
        reports.push_back(check_ete(rule, p));
        break;
      case Axiom::Cons: {
        if (!keep_arg.empty()) {
          std::vector<int> keep;
          for (const auto& id : split_ids(keep_arg)) keep.push_back(claimant_or_fail(p, id));
          reports.push_back(check_cons(rule, p, keep));
          break;
        }
        if (p.claimant_count() > 12) {
          throw ValidationError("too many claimants to scan every keep-set; pass --keep");
        }
        const std::uint32_t full = 1u << p.claimant_count();
        AxiomReport verdict;
        bool done = false;
        for (std::uint32_t mask = 1; mask + 1 < full && !done; ++mask) {
          std::vector<int> keep;
          for (int j = 0; j < p.claimant_count(); ++j) {
            if (mask & (1u << j)) keep.push_back(j);
          }
          verdict = check_cons(rule, p, keep);
          done = !verdict.holds;
        }
        if (!done) verdict.keep.clear();  // scanned everything, nothing failed
        reports.push_back(std::move(verdict));
        break;
      }
      case Axiom::Pri: {
        if (!rule.has_order()) {
          throw ValidationError("priority audits need a csp:<order> rule");
        }
        reports.push_back(check_pri(p, rule.evaluate(p), rule.order_for(p),
                                    strict_pri ? PriComparison::LiteralLoss
                                               : PriComparison::Served,
                                    rule.name()));
        break;
      }
      case Axiom::Rmon: {
        if (!estates_arg.empty()) {
          std::vector<Rat> estates = p.estates();
          std::stringstream stream(estates_arg);
          std::string item;
          while (std::getline(stream, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) {
              throw ValidationError("--estates expects issue=value pairs");
            }
            int i = p.issue_index(item.substr(0, eq));
            if (i < 0) throw ValidationError("unknown issue '" + item.substr(0, eq) + "'");
            estates[static_cast<size_t>(i)] = parse_rational(item.substr(eq + 1));
          }
          reports.push_back(check_rmon(rule, p, estates));
          break;
        }
        AxiomReport verdict;
        bool done = false;
        for (int i = 0; i < p.issue_count() && !done; ++i) {
          std::vector<Rat> estates = p.estates();
          estates[static_cast<size_t>(i)] += 1;
          verdict = check_rmon(rule, p, estates);
          done = !verdict.holds;
        }
        if (!done) verdict.estates_prime.clear();
        reports.push_back(std::move(verdict));
        break;
      }
      case Axiom::Pmon: {
        if (!leaver_arg.empty()) {
          reports.push_back(check_pmon(rule, p, claimant_or_fail(p, leaver_arg)));
          break;
        }
        AxiomReport verdict;
        bool done = false;
        for (int j = 0; j < p.claimant_count() && !done; ++j) {
          verdict = check_pmon(rule, p, j);
          done = !verdict.holds;
        }
        if (!done) verdict.leaver.reset();
        reports.push_back(std::move(verdict));
        break;
      }
      case Axiom::Bal: {
        if (!pair_arg.empty()) {
          auto ids = split_ids(pair_arg);
          if (ids.size() != 2) throw ValidationError("--pair expects two claimants");
          reports.push_back(check_bal(rule, p, claimant_or_fail(p, ids[0]),
                                      claimant_or_fail(p, ids[1])));
          break;
        }
        AxiomReport verdict;
        bool done = false;
        for (int j = 0; j < p.claimant_count() && !done; ++j) {
          for (int k = j + 1; k < p.claimant_count() && !done; ++k) {
            verdict = check_bal(rule, p, j, k);
            done = !verdict.holds;
          }
        }
        if (!done) verdict.pair_ids.reset();
        reports.push_back(std::move(verdict));
        break;
      }
    }
  }

  bool any_violated = false;
  if (out.format == "json") {
    ordered_json doc;
    doc["rule"] = rule.name();
    ordered_json list = ordered_json::array();
    for (const auto& report : reports) {
      any_violated = any_violated || !report.holds;
      list.push_back(report_json(report));
    }
    doc["reports"] = std::move(list);
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const auto& report : reports) {
      any_violated = any_violated || !report.holds;
      std::cout << report.describe() << "\n";
    }
  }
  return any_violated ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// falsify + gen

GenParams params_from_json(const nlohmann::json& doc) {
  GenParams params;
  auto pair_of = [](const nlohmann::json& node, auto& lo, auto& hi) {
    lo = node.at(0);
    hi = node.at(1);
  };
  if (doc.contains("claimants")) pair_of(doc["claimants"], params.claimants_min, params.claimants_max);
  if (doc.contains("issues")) pair_of(doc["issues"], params.issues_min, params.issues_max);
  if (doc.contains("claims")) pair_of(doc["claims"], params.claim_min, params.claim_max);
  if (doc.contains("alpha_density")) params.alpha_density = doc["alpha_density"];
  if (doc.contains("binding_prob")) params.binding_prob = doc["binding_prob"];
  if (doc.contains("binding_frac")) {
    pair_of(doc["binding_frac"], params.binding_frac_min, params.binding_frac_max);
  }
  if (doc.contains("duplicate_prob")) params.duplicate_prob = doc["duplicate_prob"];
  if (doc.contains("rational_values")) params.rational_values = doc["rational_values"];
  return params;
}

struct GenFlags {
  std::string params_file;
  std::string claimants, issues, claims;
  double density = -1, binding = -1, dup = -1;
  bool rational = false;
};

GenParams resolve_params(const GenFlags& flags) {
  GenParams params;
  if (!flags.params_file.empty()) {
    std::ifstream in(flags.params_file);
    if (!in) throw ValidationError("cannot open '" + flags.params_file + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(flags.params_file + ": " + e.what());
    }
    params = params_from_json(doc);
  }
  auto range_of = [](const std::string& text, auto& lo, auto& hi) {
    auto colon = text.find(':');
    if (colon == std::string::npos) {
      lo = hi = std::stol(text);
    } else {
      lo = std::stol(text.substr(0, colon));
      hi = std::stol(text.substr(colon + 1));
    }
  };
  if (!flags.claimants.empty()) range_of(flags.claimants, params.claimants_min, params.claimants_max);
  if (!flags.issues.empty()) range_of(flags.issues, params.issues_min, params.issues_max);
  if (!flags.claims.empty()) range_of(flags.claims, params.claim_min, params.claim_max);
  if (flags.density >= 0) params.alpha_density = flags.density;
  if (flags.binding >= 0) params.binding_prob = flags.binding;
  if (flags.dup >= 0) params.duplicate_prob = flags.dup;
  if (flags.rational) params.rational_values = true;
  return params;
}

RuleUnderTest falsify_rule(const RuleSelector& sel, const EnumBudget& budget) {
  switch (sel.kind) {
    case RuleSelector::Kind::Csp:
      // generated instances take the priority list as far as it matches;
      // unnamed claimants follow in input order
      return sel.order_ids.empty() ? RuleUnderTest::csp() : RuleUnderTest::csp(sel.order_ids);
    case RuleSelector::Kind::Cra: return RuleUnderTest::cra(budget);
    case RuleSelector::Kind::Crastar: return RuleUnderTest::crastar(budget);
    default: throw ValidationError("falsify needs --rule csp, csp:<order>, cra, or crastar");
  }
}

int run_falsify(const RuleSelector& sel, const std::string& axiom_arg,
                const GenParams& params, std::uint64_t seed, std::uint64_t budget_instances,
                const std::string& out_path, const EnumBudget& budget,
                const OutputOpts& out) {
  RuleUnderTest rule = falsify_rule(sel, budget);
  auto axiom = axiom_from_name(axiom_arg);
  if (!axiom) throw ValidationError("unknown axiom '" + axiom_arg + "'");

  std::optional<FalsifyOutcome> outcome = falsify(rule, *axiom, params, seed, budget_instances);
  if (!outcome) {
    if (out.format == "json") {
      ordered_json doc;
      doc["found"] = false;
      doc["tried"] = budget_instances;
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "none found in " << budget_instances << " instances\n";
    }
    return kExitOk;
  }

  if (!out_path.empty()) save_problem(out_path, outcome->instance);
  if (out.format == "json") {
    ordered_json doc;
    doc["found"] = true;
    doc["tried"] = outcome->candidates_tried;
    doc["instance"] = problem_to_json(outcome->instance);
    doc["report"] = report_json(outcome->report);
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << outcome->report.describe() << "\n";
    std::cout << "found after " << outcome->candidates_tried << " instances\n";
    std::cout << write_problem_text(outcome->instance);
    if (!out_path.empty()) std::cout << "# written to " << out_path << "\n";
  }
  return kExitViolation;
}

int run_gen(const GenParams& params, std::uint64_t seed, const std::string& out_path) {
  MbcProblem p = random_mbc(params, seed);
  if (out_path.empty()) {
    std::cout << write_problem_text(p);
  } else {
    save_problem(out_path, p);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rules and axiom audits for multi-issue bankruptcy problems with crossed claims"};
  app.require_subcommand(1);

  std::string input, rule_arg = "cra", mode = "exact", axiom_arg = "all";
  std::string keep_arg, leaver_arg, pair_arg, estates_arg, out_path;
  std::uint64_t samples = 10000, outer = 1000, inner = 720, seed = 0;
  std::uint64_t budget_orders = EnumBudget{}.max_orders, falsify_budget = 5000;
  bool strict_pri = false;
  OutputOpts out;
  GenFlags gen_flags;

  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", out.format, "plain or json")
        ->check(CLI::IsMember({"plain", "json"}));
    cmd->add_option("--decimals", out.decimals, "fixed-point digits instead of p/q");
  };
  auto add_budget = [&](CLI::App* cmd) {
    cmd->add_option("--budget", budget_orders, "max arrival orders for exact runs");
  };
  auto add_gen_flags = [&](CLI::App* cmd) {
    cmd->add_option("--params", gen_flags.params_file, "generator parameters (json file)");
    cmd->add_option("--claimants", gen_flags.claimants, "claimant count, lo:hi");
    cmd->add_option("--issues", gen_flags.issues, "issue count, lo:hi");
    cmd->add_option("--claims", gen_flags.claims, "claim values, lo:hi");
    cmd->add_option("--density", gen_flags.density, "claim-set density in [0,1]");
    cmd->add_option("--binding", gen_flags.binding, "over-claimed issue probability");
    cmd->add_option("--dup", gen_flags.dup, "duplicate claimant probability");
    cmd->add_flag("--rational", gen_flags.rational, "allow non-integer amounts");
  };

  CLI::App* solve = app.add_subcommand("solve", "evaluate a rule on a problem file");
  solve->add_option("file", input, "problem file")->required();
  solve->add_option("--rule", rule_arg, "csp:<order>, cra, crastar, or all");
  solve->add_option("--mode", mode, "exact or sample")->check(CLI::IsMember({"exact", "sample"}));
  solve->add_option("--samples", samples, "draws for sampled cra");
  solve->add_option("--outer-samples", outer, "issue-order draws for sampled crastar");
  solve->add_option("--inner-samples", inner, "per-issue order budget for sampled crastar");
  solve->add_option("--seed", seed, "sampling seed");
  add_budget(solve);
  add_output(solve);

  CLI::App* tables = app.add_subcommand("tables", "print the per-order table for a rule");
  tables->add_option("file", input, "problem file")->required();
  tables->add_option("--rule", rule_arg, "csp:<order>, cra, or crastar");
  add_budget(tables);
  add_output(tables);

  CLI::App* audit = app.add_subcommand("audit", "check axioms on a problem file");
  audit->add_option("file", input, "problem file")->required();
  audit->add_option("--rule", rule_arg, "csp:<order>, cra, or crastar");
  audit->add_option("--axiom", axiom_arg, "peff, ete, cons, pri, rmon, pmon, bal, or all");
  audit->add_option("--keep", keep_arg, "claimants kept for cons (comma list)");
  audit->add_option("--leaver", leaver_arg, "departing claimant for pmon");
  audit->add_option("--pair", pair_arg, "claimant pair for bal, e.g. 1,2");
  audit->add_option("--estates", estates_arg, "raised estates for rmon, issue=value pairs");
  audit->add_flag("--strict-pri", strict_pri, "compare priority losses unconditionally");
  add_budget(audit);
  add_output(audit);

  CLI::App* falsify_cmd = app.add_subcommand("falsify", "search random instances for a violation");
  falsify_cmd->add_option("--rule", rule_arg, "csp, csp:<order>, cra, or crastar");
  falsify_cmd->add_option("--axiom", axiom_arg, "axiom to attack")->required();
  falsify_cmd->add_option("--seed", seed, "search seed");
  falsify_cmd->add_option("--instances", falsify_budget, "instance budget");
  falsify_cmd->add_option("--out", out_path, "write the counterexample problem here");
  add_gen_flags(falsify_cmd);
  add_budget(falsify_cmd);
  add_output(falsify_cmd);

  CLI::App* gen = app.add_subcommand("gen", "generate a random problem file");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_path, "output path (stdout if omitted)");
  add_gen_flags(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInput;
  }

  try {
    EnumBudget budget{budget_orders};
    if (solve->parsed()) {
      return run_solve(load_problem(input), parse_rule(rule_arg), mode, samples, outer,
                       inner, seed, budget, out);
    }
    if (tables->parsed()) {
      return run_tables(load_problem(input), parse_rule(rule_arg), budget, out);
    }
    if (audit->parsed()) {
      return run_audit(load_problem(input), parse_rule(rule_arg), axiom_arg, keep_arg,
                       leaver_arg, pair_arg, estates_arg, strict_pri, budget, out);
    }
    if (falsify_cmd->parsed()) {
      RuleSelector sel = rule_arg == "csp" ? RuleSelector{RuleSelector::Kind::Csp, {}}
                                           : parse_rule(rule_arg);
      return run_falsify(sel, axiom_arg, resolve_params(gen_flags), seed, falsify_budget,
                         out_path, budget, out);
    }
    if (gen->parsed()) {
      return run_gen(resolve_params(gen_flags), seed, out_path);
    }
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
