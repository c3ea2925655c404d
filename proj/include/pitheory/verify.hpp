#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "pitheory/analyzed_group.hpp"
#include "pitheory/character_table.hpp"
#include "pitheory/io.hpp"
#include "pitheory/kernels.hpp"
#include "pitheory/partial.hpp"
#include "pitheory/primes.hpp"

namespace pitheory {

struct CorpusEntry {
  std::string name;
  std::filesystem::path group_file;
  std::vector<std::filesystem::path> tables;  // ingested tables for this group
  std::vector<PrimeSet> pi_menu;              // empty: every subset plus every complement
};

/// Loads a single group file or every group in a directory. Files named
/// *.table.json are ingested tables and attach to the group named in their
/// "group" field. A group file may carry "pi_menu": ["2,3", "p'5", ...].
inline std::vector<CorpusEntry> load_corpus(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<CorpusEntry> entries;
  auto is_table = [](const fs::path& p) {
    const auto name = p.filename().string();
    return name.size() > 11 && name.ends_with(".table.json");
  };
  auto make_entry = [](const fs::path& p) {
    CorpusEntry e;
    e.group_file = p;
    const auto j = io::read_json_file(p);
    e.name = j.value("name", p.stem().string());
    if (j.contains("pi_menu")) {
      for (const auto& spec : j.at("pi_menu")) e.pi_menu.push_back(PrimeSet::parse(spec.get<std::string>()));
    }
    return e;
  };
  if (!fs::is_directory(path)) {
    entries.push_back(make_entry(path));
    return entries;
  }
  std::vector<fs::path> files;
  for (const auto& item : fs::directory_iterator(path)) {
    if (item.is_regular_file() && item.path().extension() == ".json") files.push_back(item.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files)
    if (!is_table(f)) entries.push_back(make_entry(f));
  for (const auto& f : files) {
    if (!is_table(f)) continue;
    const auto group = io::read_json_file(f).value("group", std::string{});
    auto it = std::find_if(entries.begin(), entries.end(), [&](const CorpusEntry& e) { return e.name == group; });
    if (it == entries.end()) throw SchemaError("table " + f.string() + " names unknown group '" + group + "'");
    it->tables.push_back(f);
  }
  std::sort(entries.begin(), entries.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  return entries;
}

struct PiRun {
  PrimeSet pi;
  bool separable = false;
  std::size_t pi_class_count = 0;
  std::size_t irreducible_count = 0;
  std::vector<CheckOutcome> checks;
  std::vector<KernelReport> reports;
};

struct BrauerRun {
  std::filesystem::path table_file;
  std::uint64_t p = 0;
  std::vector<CheckOutcome> checks;
  std::vector<KernelReport> reports;
};

struct EntryReport {
  std::string name;
  std::uint64_t order = 0;
  std::size_t class_count = 0;
  std::size_t irreducible_count = 0;
  std::vector<CheckOutcome> checks;  // table-level
  std::vector<PiRun> runs;
  std::vector<BrauerRun> brauer_runs;
  double seconds = 0;
};

struct VerificationReport {
  std::vector<EntryReport> entries;

  template <typename F>
  void for_each_check(F&& f) const {
    for (const auto& e : entries) {
      for (const auto& c : e.checks) f(c);
      for (const auto& run : e.runs) {
        for (const auto& c : run.checks) f(c);
        for (const auto& r : run.reports)
          for (const auto& c : r.checks) f(c);
      }
      for (const auto& run : e.brauer_runs) {
        for (const auto& c : run.checks) f(c);
        for (const auto& r : run.reports)
          for (const auto& c : r.checks) f(c);
      }
    }
  }

  std::size_t count(CheckStatus status) const {
    std::size_t n = 0;
    for_each_check([&](const CheckOutcome& c) { n += c.status == status; });
    return n;
  }

  std::size_t pair_count() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.runs.size();
    return n;
  }

  bool passed() const { return count(CheckStatus::Fail) == 0; }
};

namespace detail {

template <typename F>
void guarded(std::vector<CheckOutcome>& checks, const std::string& name, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    checks.push_back(CheckOutcome::from(name, false, e.what()));
  }
}

inline PiRun run_pi(const AnalyzedGroup& g, const CharacterTable& table, const PrimeSet& pi) {
  PiRun run;
  run.pi = pi;
  run.pi_class_count = pi_columns(table, pi).size();
  run.separable = is_pi_separable(g.group(), g.classes(), pi).separable;
  if (!run.separable) {
    run.checks.push_back(CheckOutcome::skipped("pi_separable", "group is not pi-separable for pi = {" + pi.to_string() + "}"));
    return run;
  }
  guarded(run.checks, "irreducible_partial_characters", [&] {
    const auto irr = irreducible_partial_characters(g, table, pi);
    run.irreducible_count = irr.size();
    run.checks.push_back(CheckOutcome::from("count_equals_pi_classes", irr.size() == run.pi_class_count));

    const auto decomposition = decomposition_matrix(table, pi, irr);
    bool every_column = true;
    for (std::size_t col = 0; col < irr.size(); ++col) {
      bool has_unit = false;
      for (std::size_t row = 0; row < decomposition.rows(); ++row) {
        bool unit_row = decomposition.entries[row][col] == 1;
        for (std::size_t other = 0; other < irr.size() && unit_row; ++other)
          if (other != col && decomposition.entries[row][other] != 0) unit_row = false;
        has_unit = has_unit || unit_row;
      }
      every_column = every_column && has_unit;
    }
    run.checks.push_back(CheckOutcome::from("decomposition_has_unit_rows", every_column));

    for (const auto& phi : irr) run.reports.push_back(analyze_partial_character(g, phi, &table));
    run.checks.push_back(intersection_theorem(g, irr, pi));

    // Reducible restrictions: the sandwich L <= ker chi <= K still holds.
    bool reducible_ok = true;
    std::string detail;
    std::vector<PartialCharacter> seen;
    for (const auto& chi : table.irreducibles) {
      auto phi = restrict(table, chi, pi);
      if (std::find(irr.begin(), irr.end(), phi) != irr.end()) continue;
      if (std::find(seen.begin(), seen.end(), phi) != seen.end()) continue;
      auto outcome = check_lift_sandwich(g, phi, table);
      if (outcome.failed()) {
        reducible_ok = false;
        detail = outcome.detail;
      }
      seen.push_back(std::move(phi));
    }
    run.checks.push_back(CheckOutcome::from("reducible_lift_sandwich", reducible_ok, detail));
  });
  return run;
}

inline BrauerRun run_brauer_table(const AnalyzedGroup& g, const std::filesystem::path& file,
                                  const CharacterTable* ordinary) {
  BrauerRun run;
  run.table_file = file;
  guarded(run.checks, "ingest_brauer_table", [&] {
    const CharacterTable table = io::load_table(file, &g);
    run.p = table.p;
    if (table.mode != TableMode::Brauer) {
      run.checks.push_back(CheckOutcome::skipped("brauer_table", "table is not a Brauer table"));
      return;
    }
    const auto ibr = brauer_table_characters(table);
    run.checks.push_back(CheckOutcome::from("columns_equal_p_regular_classes",
                                            table.columns.size() == pi_elements(g.group(), g.classes(),
                                                                                PrimeSet::complement_of(table.p)).size()));
    if (ordinary != nullptr) {
      const PrimeSet p_prime = PrimeSet::complement_of(table.p);
      std::string detail;
      try {
        (void)decomposition_matrix(*ordinary, p_prime, ibr);
      } catch (const CheckFailed& e) {
        detail = e.what();
      }
      run.checks.push_back(CheckOutcome::from("ordinary_restrictions_decompose", detail.empty(), detail));
    }
    for (const auto& phi : ibr) {
      KernelReport report = analyze_partial_character(g, phi, nullptr);
      run.reports.push_back(std::move(report));
    }
    auto meet = intersection_theorem(g, ibr, PrimeSet::complement_of(table.p));
    meet.name = "brauer_intersection_equals_o_p";
    run.checks.push_back(meet);

    const PrimeSet pi = PrimeSet::complement_of(table.p);
    if (ordinary != nullptr && is_pi_separable(g.group(), g.classes(), pi).separable) {
      auto computed = brauer_characters(g, *ordinary, table.p);
      bool same = computed.size() == ibr.size() &&
                  std::all_of(ibr.begin(), ibr.end(), [&](const PartialCharacter& phi) {
                    return std::find(computed.begin(), computed.end(), phi) != computed.end();
                  });
      run.checks.push_back(CheckOutcome::from("matches_computed_brauer_characters", same));
    }
  });
  return run;
}

}  // namespace detail

inline EntryReport verify_entry(const CorpusEntry& entry) {
  const auto start = std::chrono::steady_clock::now();
  EntryReport report;
  report.name = entry.name;
  detail::guarded(report.checks, "load_and_compute", [&] {
    AnalyzedGroup g(io::load_group(entry.group_file));
    report.order = g.order();
    report.class_count = g.classes().size();
    const CharacterTable table = compute_table(g.group(), g.classes());
    report.irreducible_count = table.size();
    const TableCheck tc = check_table(table);
    report.checks.push_back(CheckOutcome::from("row_orthogonality", tc.row_orthogonality));
    report.checks.push_back(CheckOutcome::from("column_orthogonality", tc.column_orthogonality));
    report.checks.push_back(CheckOutcome::from("degree_square_sum", tc.degree_sum));
    report.checks.push_back(CheckOutcome::from("irreducible_count_equals_classes", table.size() == g.classes().size()));
    detail::guarded(report.checks, "normal_subgroups", [&] { (void)g.normal_subgroups(); });

    const auto menu = entry.pi_menu.empty() ? all_prime_sets(g.order()) : entry.pi_menu;
    for (const auto& pi : menu) report.runs.push_back(detail::run_pi(g, table, pi));
    for (const auto& file : entry.tables) report.brauer_runs.push_back(detail::run_brauer_table(g, file, &table));
  });
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Verifies entries on up to `jobs` threads; the report is ordered by entry name.
inline VerificationReport verify_corpus(const std::vector<CorpusEntry>& entries, std::size_t jobs = 1) {
  VerificationReport report;
  report.entries.resize(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) report.entries[i] = verify_entry(entries[i]);
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, entries.size()));
  std::vector<std::thread> threads;
  for (std::size_t t = 1; t < jobs; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  std::sort(report.entries.begin(), report.entries.end(),
            [](const EntryReport& a, const EntryReport& b) { return a.name < b.name; });
  return report;
}

/// Report JSON. Timings are left out so identical inputs give identical bytes.
inline io::json report_to_json(const VerificationReport& report) {
  using io::json;
  json entries = json::array();
  for (const auto& e : report.entries) {
    json runs = json::array();
    for (const auto& run : e.runs) {
      json phis = json::array();
      for (const auto& r : run.reports) phis.push_back(io::kernel_report_to_json(r));
      runs.push_back({{"pi", run.pi.to_string()},
                      {"separable", run.separable},
                      {"pi_classes", run.pi_class_count},
                      {"irreducible_partial_characters", run.irreducible_count},
                      {"checks", io::checks_to_json(run.checks)},
                      {"phis", phis}});
    }
    json brauer = json::array();
    for (const auto& run : e.brauer_runs) {
      json phis = json::array();
      for (const auto& r : run.reports) phis.push_back(io::kernel_report_to_json(r));
      brauer.push_back({{"table", run.table_file.filename().string()},
                        {"p", run.p},
                        {"checks", io::checks_to_json(run.checks)},
                        {"phis", phis}});
    }
    entries.push_back({{"group", e.name},
                       {"order", e.order},
                       {"classes", e.class_count},
                       {"irreducible_characters", e.irreducible_count},
                       {"checks", io::checks_to_json(e.checks)},
                       {"pi_runs", runs},
                       {"brauer_tables", brauer}});
  }
  return {{"entries", entries},
          {"summary",
           {{"groups", report.entries.size()},
            {"pi_pairs", report.pair_count()},
            {"passed", report.count(CheckStatus::Pass)},
            {"failed", report.count(CheckStatus::Fail)},
            {"skipped", report.count(CheckStatus::Skipped)}}}};
}

}  // namespace pitheory
