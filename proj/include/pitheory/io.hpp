#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pitheory/analyzed_group.hpp"
#include "pitheory/character_table.hpp"
#include "pitheory/cyclotomic.hpp"
#include "pitheory/error.hpp"
#include "pitheory/kernels.hpp"
#include "pitheory/partial.hpp"
#include "pitheory/perm.hpp"

namespace pitheory::io {

using nlohmann::json;

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

inline void write_text(const std::optional<std::filesystem::path>& path, const std::string& text,
                       std::ostream& fallback) {
  if (!path) {
    fallback << text << '\n';
    return;
  }
  std::ofstream out(*path);
  if (!out) throw SchemaError("cannot write " + path->string());
  out << text << '\n';
}

// ---- groups ----

inline Group group_from_json(const json& j, GroupOptions options = {}) {
  try {
    const auto degree = j.at("degree").get<std::size_t>();
    std::vector<Permutation> gens;
    for (const auto& g : j.at("generators")) gens.emplace_back(g.get<std::vector<Point>>());
    Group group = Group::from_generators(degree, std::move(gens), options);
    group.set_name(j.value("name", std::string{}));
    return group;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed group file: ") + e.what());
  }
}

inline json group_to_json(const Group& g) {
  json gens = json::array();
  for (const auto& p : g.generators()) gens.push_back(std::vector<Point>(p.images().begin(), p.images().end()));
  return {{"name", g.name()}, {"degree", g.degree()}, {"generators", gens}};
}

inline Group load_group(const std::filesystem::path& path, GroupOptions options = {}) {
  Group g = group_from_json(read_json_file(path), options);
  if (g.name().empty()) g.set_name(path.stem().string());
  return g;
}

// ---- cyclotomics ----

namespace detail {
inline json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw SchemaError("expected an integer");
}
}  // namespace detail

inline json cyclotomic_to_json(const Cyclotomic& c) {
  json coeffs = json::array();
  for (const auto& r : c.coefficients()) {
    coeffs.push_back({detail::integer_to_json(r.get_num()), detail::integer_to_json(r.get_den())});
  }
  return {{"n", c.conductor()}, {"coeffs", coeffs}};
}

inline Cyclotomic cyclotomic_from_json(const json& j) {
  if (j.is_number_integer()) return Cyclotomic(j.get<long>());
  try {
    const auto n = j.at("n").get<std::uint64_t>();
    std::vector<Rational> coeffs;
    for (const auto& pair : j.at("coeffs")) {
      if (!pair.is_array() || pair.size() != 2) throw SchemaError("coefficient must be [num, den]");
      Integer den = detail::integer_from_json(pair[1]);
      if (den == 0) throw SchemaError("zero denominator");
      Rational r(detail::integer_from_json(pair[0]), den);
      r.canonicalize();
      coeffs.push_back(r);
    }
    return Cyclotomic::from_coordinates(n, std::move(coeffs));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed cyclotomic: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw SchemaError(std::string("malformed cyclotomic: ") + e.what());
  }
}

// ---- tables ----

inline json classes_to_json(const std::vector<ClassInfo>& classes) {
  json out = json::array();
  for (const auto& c : classes) out.push_back({{"order", c.order}, {"size", c.size}});
  return out;
}

inline json character_rows_to_json(const std::vector<std::vector<Cyclotomic>>& rows) {
  json out = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& v : row) r.push_back(cyclotomic_to_json(v));
    out.push_back(std::move(r));
  }
  return out;
}

inline json table_to_json(const CharacterTable& table) {
  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& chi : table.irreducibles) rows.push_back(chi.values);
  json j = {{"group", table.group_name},
            {"order", table.group_order},
            {"classes", classes_to_json(table.classes)},
            {"mode", table.mode == TableMode::Ordinary ? "ordinary" : "brauer"}};
  if (table.mode == TableMode::Brauer) j["p"] = table.p;
  j["chars"] = character_rows_to_json(rows);
  return j;
}

/// Loads a table, re-verifying it. When a group is attached, the listed
/// classes must match its classes (ordinary) or its p-regular classes (Brauer)
/// in order, element order and size.
inline CharacterTable table_from_json(const json& j, const AnalyzedGroup* group = nullptr) {
  CharacterTable table;
  try {
    table.group_name = j.value("group", std::string{});
    const std::string mode = j.value("mode", std::string{"ordinary"});
    if (mode == "ordinary") {
      table.mode = TableMode::Ordinary;
    } else if (mode == "brauer") {
      table.mode = TableMode::Brauer;
      table.p = j.at("p").get<std::uint64_t>();
      if (!is_prime(table.p)) throw SchemaError("brauer table p is not a prime");
    } else {
      throw SchemaError("unsupported table mode '" + mode + "'");
    }
    for (const auto& c : j.at("classes")) {
      table.classes.push_back({c.at("order").get<std::uint64_t>(), c.at("size").get<std::uint64_t>()});
    }
    for (const auto& row : j.at("chars")) {
      Character chi;
      for (const auto& v : row) chi.values.push_back(cyclotomic_from_json(v));
      if (chi.values.size() != table.classes.size()) throw SchemaError("character row length does not match class count");
      table.irreducibles.push_back(std::move(chi));
    }
    if (j.contains("order")) table.group_order = j.at("order").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed table file: ") + e.what());
  }
  if (table.classes.empty()) throw SchemaError("table has no classes");
  for (const auto& chi : table.irreducibles) {
    const auto& d = chi.degree_value();
    if (!d.is_integer() || d.rational_value() <= 0) throw SchemaError("character degree is not a positive integer");
  }

  if (table.mode == TableMode::Ordinary) {
    if (!j.contains("order")) {
      table.group_order = 0;
      for (const auto& c : table.classes) table.group_order += c.size;
    }
  }
  if (group != nullptr) {
    const auto& classes = group->classes();
    std::vector<std::size_t> expected;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (table.mode == TableMode::Ordinary || classes[c].element_order % table.p != 0) expected.push_back(c);
    }
    if (expected.size() != table.classes.size()) {
      throw SchemaError("table has " + std::to_string(table.classes.size()) + " classes, group " + group->name() +
                        " has " + std::to_string(expected.size()));
    }
    for (std::size_t col = 0; col < expected.size(); ++col) {
      const auto& cls = classes[expected[col]];
      if (table.classes[col].order != cls.element_order || table.classes[col].size != cls.size()) {
        throw SchemaError("class " + std::to_string(col) + " does not match the group's class order or size");
      }
    }
    table.columns = expected;
    table.group_order = group->order();
    if (table.group_name.empty()) table.group_name = group->name();
  } else {
    table.columns.resize(table.classes.size());
    std::iota(table.columns.begin(), table.columns.end(), std::size_t{0});
  }

  if (table.mode == TableMode::Ordinary) {
    if (table.irreducibles.size() != table.classes.size()) throw SchemaError("ordinary table is not square");
    if (!check_table(table).ok()) throw CheckFailed("ingested table fails the orthogonality relations");
  } else {
    if (table.irreducibles.size() != table.classes.size()) {
      throw SchemaError("brauer table needs one character per p-regular class");
    }
    for (const auto& c : table.classes)
      if (c.order % table.p == 0) throw SchemaError("brauer table lists a p-singular class");
  }
  return table;
}

inline CharacterTable load_table(const std::filesystem::path& path, const AnalyzedGroup* group = nullptr) {
  return table_from_json(read_json_file(path), group);
}

/// Irreducible partial characters and the decomposition matrix, in the table
/// schema with mode "partial".
inline json partial_table_to_json(const CharacterTable& table, const PrimeSet& pi,
                                  const std::vector<PartialCharacter>& irreducibles,
                                  const DecompositionMatrix& decomposition) {
  std::vector<ClassInfo> classes;
  std::vector<std::size_t> class_indices;
  for (std::size_t col : pi_columns(table, pi)) {
    classes.push_back(table.classes[col]);
    class_indices.push_back(table.columns[col]);
  }
  std::vector<std::vector<Cyclotomic>> rows;
  for (const auto& phi : irreducibles) rows.push_back(phi.values);
  return {{"group", table.group_name},
          {"order", table.group_order},
          {"mode", "partial"},
          {"pi", pi.to_string()},
          {"classes", classes_to_json(classes)},
          {"class_indices", class_indices},
          {"chars", character_rows_to_json(rows)},
          {"decomposition", decomposition.entries}};
}

// ---- reports ----

inline json checks_to_json(const std::vector<CheckOutcome>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    json item = {{"name", c.name}, {"status", to_string(c.status)}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    out.push_back(std::move(item));
  }
  return out;
}

inline json kernel_report_to_json(const KernelReport& report) {
  json values = json::array();
  for (const auto& v : report.phi.values) values.push_back(cyclotomic_to_json(v));
  json lifts = json::array();
  for (const auto& rec : report.lifts) {
    lifts.push_back({{"character", rec.character},
                     {"kernel_order", rec.kernel.order()},
                     {"kernel_classes", rec.kernel.class_indices()}});
  }
  return {{"pi", report.phi.pi.to_string()},
          {"pi_classes", report.phi.classes},
          {"values", values},
          {"degree", report.phi.degree()},
          {"L_order", report.l.order()},
          {"K_order", report.k.order()},
          {"L_classes", report.l.class_indices()},
          {"K_classes", report.k.class_indices()},
          {"lifts", lifts},
          {"checks", checks_to_json(report.checks)}};
}

}  // namespace pitheory::io
