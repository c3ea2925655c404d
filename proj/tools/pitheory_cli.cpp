// Command-line front end: character tables, partial characters, kernel
// reports, corpus verification and the direct-product counterexample.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pitheory.hpp"

namespace {

using namespace pitheory;
using io::json;

constexpr int kExitError = 1;
constexpr int kExitNotSeparable = 2;
constexpr int kExitCheckFailed = 3;

struct Options {
  std::string group;
  std::string ingest;
  std::string out;
  std::string pi;
  std::uint64_t p = 0;
  std::vector<std::string> pi_menu;
  std::size_t jobs = 1;
  std::uint64_t c_order = 0;
  std::string h;
};

std::optional<std::filesystem::path> out_path(const Options& o) {
  if (o.out.empty()) return std::nullopt;
  return o.out;
}

void emit(const Options& o, const json& j) { io::write_text(out_path(o), j.dump(2), std::cout); }

PrimeSet selected_pi(const Options& o) {
  if (!o.pi.empty() && o.p != 0) throw InvalidArgument("give either --pi or --p, not both");
  if (o.p != 0) return PrimeSet::complement_of(o.p);
  if (o.pi.empty()) throw InvalidArgument("one of --pi or --p is required");
  return PrimeSet::parse(o.pi);
}

int cmd_table(const Options& o) {
  AnalyzedGroup g(io::load_group(o.group));
  const CharacterTable table =
      o.ingest.empty() ? compute_table(g.group(), g.classes()) : io::load_table(o.ingest, &g);
  emit(o, io::table_to_json(table));
  return 0;
}

int cmd_partial(const Options& o) {
  AnalyzedGroup g(io::load_group(o.group));
  const PrimeSet pi = selected_pi(o);
  const CharacterTable table = compute_table(g.group(), g.classes());
  const auto irr = irreducible_partial_characters(g, table, pi);
  emit(o, io::partial_table_to_json(table, pi, irr, decomposition_matrix(table, pi, irr)));
  return 0;
}

int cmd_kernels(const Options& o) {
  AnalyzedGroup g(io::load_group(o.group));
  json reports = json::array();
  bool ok = true;
  if (!o.ingest.empty()) {
    const CharacterTable brauer = io::load_table(o.ingest, &g);
    const auto ibr = brauer_table_characters(brauer);
    const PrimeSet pi = PrimeSet::complement_of(brauer.p);
    for (const auto& phi : ibr) {
      auto report = analyze_partial_character(g, phi, nullptr);
      ok = ok && report.passed();
      reports.push_back(io::kernel_report_to_json(report));
    }
    auto meet = intersection_theorem(g, ibr, pi);
    ok = ok && meet.passed();
    emit(o, {{"group", g.name()}, {"pi", pi.to_string()}, {"reports", reports},
             {"checks", io::checks_to_json({meet})}});
    return ok ? 0 : kExitCheckFailed;
  }
  const PrimeSet pi = selected_pi(o);
  if (!is_pi_separable(g.group(), g.classes(), pi).separable) {
    std::cerr << "error: " << g.name() << " is not pi-separable for pi = {" << pi.to_string() << "}\n";
    return kExitNotSeparable;
  }
  const CharacterTable table = compute_table(g.group(), g.classes());
  const auto irr = irreducible_partial_characters(g, table, pi);
  for (const auto& phi : irr) {
    auto report = analyze_partial_character(g, phi, &table);
    ok = ok && report.passed();
    reports.push_back(io::kernel_report_to_json(report));
  }
  auto meet = intersection_theorem(g, irr, pi);
  ok = ok && meet.passed();
  emit(o, {{"group", g.name()}, {"pi", pi.to_string()}, {"reports", reports},
           {"checks", io::checks_to_json({meet})}});
  return ok ? 0 : kExitCheckFailed;
}

int cmd_verify(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CorpusEntry> entries = load_corpus(o.group);
  const bool all = o.pi_menu.empty() || (o.pi_menu.size() == 1 && o.pi_menu[0] == "all");
  if (!all) {
    std::vector<PrimeSet> menu;
    for (const auto& spec : o.pi_menu) menu.push_back(PrimeSet::parse(spec));
    for (auto& e : entries) e.pi_menu = menu;
  }
  const VerificationReport report = verify_corpus(entries, o.jobs);
  emit(o, report_to_json(report));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << "verified " << report.entries.size() << " groups, " << report.pair_count() << " (G, pi) pairs: "
            << report.count(CheckStatus::Pass) << " passed, " << report.count(CheckStatus::Fail) << " failed, "
            << report.count(CheckStatus::Skipped) << " skipped in " << seconds << " s\n";
  return report.passed() ? 0 : kExitCheckFailed;
}

Group group_from_h_spec(const std::string& spec) {
  if (std::filesystem::exists(spec)) return io::load_group(spec);
  return builders::from_spec(spec);
}

int cmd_counterexample(const Options& o) {
  const Group h = group_from_h_spec(o.h);
  const auto result = counterexample_group(o.c_order, h);
  json lifts = json::array();
  for (const auto& rec : result.report.lifts) {
    lifts.push_back({{"character", rec.character},
                     {"kernel_order", rec.kernel.order()},
                     {"kernel_equals_K", rec.kernel == result.report.k}});
  }
  const auto strict = kernel_of_character(result.group.group(), result.group.classes(), result.table,
                                          result.table[result.theta_character]);
  json out = {{"group", result.group.name()},
              {"order", result.group.order()},
              {"pi", result.pi.to_string()},
              {"L_order", result.report.l.order()},
              {"K_order", result.report.k.order()},
              {"phi", io::kernel_report_to_json(result.report)},
              {"lifts", lifts},
              {"strict_lift", {{"character", result.theta_character}, {"kernel_order", strict.order()}}},
              {"checks", io::checks_to_json(result.checks)}};
  emit(o, out);
  std::cerr << "L(phi) order " << result.report.l.order() << ", K(phi) order " << result.report.k.order()
            << "; lift " << result.theta_character << " has kernel of order " << strict.order() << " != K(phi)\n";
  return result.passed() ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Character tables, partial characters and their kernels for finite permutation groups"};
  app.require_subcommand(1);
  Options o;

  auto* table = app.add_subcommand("table", "Print the ordinary character table as JSON");
  table->add_option("group", o.group, "Group JSON file")->required();
  table->add_option("--ingest", o.ingest, "Load this table file instead of computing");
  table->add_option("--out", o.out, "Write to a file instead of standard output");

  auto* partial = app.add_subcommand("partial", "Irreducible pi-partial characters and decomposition matrix");
  partial->add_option("group", o.group, "Group JSON file")->required();
  partial->add_option("--pi", o.pi, "Prime set, e.g. \"2,3\" or \"p'5\"");
  partial->add_option("--p", o.p, "Prime p; uses pi = complement of {p} (Brauer characters)");
  partial->add_option("--out", o.out, "Write to a file instead of standard output");

  auto* kernels = app.add_subcommand("kernels", "L(phi), K(phi) and checks for every irreducible partial character");
  kernels->add_option("group", o.group, "Group JSON file")->required();
  kernels->add_option("--pi", o.pi, "Prime set, e.g. \"2,3\" or \"p'5\"");
  kernels->add_option("--p", o.p, "Prime p; uses pi = complement of {p}");
  kernels->add_option("--ingest", o.ingest, "Use the characters of this Brauer table file");
  kernels->add_option("--out", o.out, "Write to a file instead of standard output");

  auto* verify = app.add_subcommand("verify", "Run every check over a group file or corpus directory");
  verify->add_option("path", o.group, "Group JSON file or corpus directory")->required();
  verify->add_option("--pi", o.pi_menu, "Prime sets to run (repeatable); default \"all\"");
  verify->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--out", o.out, "Write the report to a file instead of standard output");

  auto* counter = app.add_subcommand("counterexample", "C x H with a lift whose kernel is strictly inside K(phi)");
  counter->set_help_flag("--help", "Print this help message and exit");  // frees --h
  counter->add_option("--c-order", o.c_order, "Order of the cyclic pi-group C")->required();
  counter->add_option("--h", o.h, "H as c<n>, d<n>, s<n>, a<n>, v4 or a group file")->required();
  counter->add_option("--out", o.out, "Write to a file instead of standard output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (table->parsed()) return cmd_table(o);
    if (partial->parsed()) return cmd_partial(o);
    if (kernels->parsed()) return cmd_kernels(o);
    if (verify->parsed()) return cmd_verify(o);
    if (counter->parsed()) return cmd_counterexample(o);
  } catch (const NotSeparable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNotSeparable;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
