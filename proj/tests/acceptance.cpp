// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "pitheory.hpp"

using namespace pitheory;
namespace fs = std::filesystem;

namespace {

constexpr double kTableSecondsLimit = 60.0;
constexpr double kVerifySecondsLimit = 300.0;
constexpr std::size_t kMinimumPairs = 100;

struct Entry {
  std::string name;
  std::unique_ptr<AnalyzedGroup> group;
  CharacterTable table;
};

struct Tally {
  std::size_t cases = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) failures.push_back(what);
  }
};

int failed_criteria = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failed_criteria;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << name << ": " << detail << std::endl;
}

void report(const std::string& name, const Tally& tally, const std::string& extra = {}) {
  std::string detail = std::to_string(tally.cases) + " cases, " + std::to_string(tally.failures.size()) + " failures";
  if (!extra.empty()) detail += "; " + extra;
  if (!tally.failures.empty()) detail += "; first: " + tally.failures.front();
  report(name, tally.failures.empty(), detail);
}

std::string where(const Entry& e, const PrimeSet& pi) { return e.name + " pi={" + pi.to_string() + "}"; }

template <typename F>
void guarded(Tally& tally, const std::string& what, F&& body) {
  try {
    body();
  } catch (const std::exception& ex) {
    tally.expect(false, what + ": " + ex.what());
  }
}

PartialCharacter find_values(const std::vector<PartialCharacter>& chars, const std::vector<long>& values) {
  for (const auto& phi : chars) {
    std::vector<Cyclotomic> expected(values.begin(), values.end());
    if (phi.values == expected) return phi;
  }
  throw CheckFailed("no partial character with the requested values");
}

}  // namespace

int main() {
  const fs::path corpus = PITHEORY_CORPUS_DIR;
  std::vector<Entry> entries;

  // Exact character tables for every corpus group.
  {
    const auto start = std::chrono::steady_clock::now();
    Tally tally;
    for (const auto& ce : load_corpus(corpus)) {
      Entry e;
      e.name = ce.name;
      guarded(tally, ce.name, [&] {
        e.group = std::make_unique<AnalyzedGroup>(io::load_group(ce.group_file));
        e.table = compute_table(e.group->group(), e.group->classes());
        const TableCheck check = check_table(e.table);
        tally.expect(check.row_orthogonality, ce.name + " row orthogonality");
        tally.expect(check.column_orthogonality, ce.name + " column orthogonality");
        tally.expect(check.degree_sum, ce.name + " degree square sum");
        tally.expect(e.table.size() == e.group->classes().size(), ce.name + " square table");
      });
      if (e.group) entries.push_back(std::move(e));
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    tally.expect(seconds < kTableSecondsLimit, "table time " + std::to_string(seconds) + " s");
    report("exact_character_tables", tally,
           std::to_string(entries.size()) + " groups in " + std::to_string(seconds) + " s (limit " +
               std::to_string(static_cast<int>(kTableSecondsLimit)) + " s)");
  }

  // Brauer characters of p-solvable groups: K(phi) equals both lattice scans.
  {
    Tally tally;
    for (const auto& e : entries) {
      for (auto p : prime_divisors(e.group->order())) {
        const PrimeSet pi = PrimeSet::complement_of(p);
        if (!is_pi_separable(e.group->group(), e.group->classes(), pi).separable) continue;
        guarded(tally, where(e, pi), [&] {
          for (const auto& phi : brauer_characters(*e.group, e.table, p)) {
            const auto k = k_subgroup(*e.group, phi);
            tally.expect(k == largest_normal_constant_on_pi_part(*e.group, phi), where(e, pi) + " pi-part scan");
            tally.expect(k == largest_normal_coset_constant(*e.group, phi), where(e, pi) + " coset scan");
          }
        });
      }
    }
    guarded(tally, "s3 spot values", [&] {
      const auto& s3 = *std::find_if(entries.begin(), entries.end(), [](const Entry& e) { return e.name == "s3"; });
      const auto sign = find_values(brauer_characters(*s3.group, s3.table, 3), {1, -1});
      tally.expect(brauer_kernel(*s3.group, sign).order() == 3, "s3 p=3 |ker sign| != 3");
      std::multiset<std::uint64_t> degrees;
      for (const auto& phi : brauer_characters(*s3.group, s3.table, 2)) {
        degrees.insert(phi.degree());
        tally.expect(k_subgroup(*s3.group, phi) == largest_normal_constant_on_pi_part(*s3.group, phi) &&
                         k_subgroup(*s3.group, phi) == largest_normal_coset_constant(*s3.group, phi),
                     "s3 p=2 kernels disagree");
      }
      tally.expect(degrees == std::multiset<std::uint64_t>{1, 2}, "s3 p=2 degrees");
    });
    report("brauer_kernel_agreement", tally);
  }

  // Intersection of the Brauer kernels is O_p.
  {
    Tally tally;
    std::string spots;
    for (const auto& e : entries) {
      for (auto p : prime_divisors(e.group->order())) {
        const PrimeSet pi = PrimeSet::complement_of(p);
        if (!is_pi_separable(e.group->group(), e.group->classes(), pi).separable) continue;
        guarded(tally, where(e, pi), [&] {
          const auto ibr = brauer_characters(*e.group, e.table, p);
          NormalSubgroup meet = e.group->whole();
          for (const auto& phi : ibr) meet = intersection(e.group->classes(), meet, k_subgroup(*e.group, phi));
          const auto core = o_pi(e.group->group(), e.group->classes(), PrimeSet::of({p}));
          tally.expect(meet == core, where(e, pi));
          if ((e.name == "s3" && p == 3) || (e.name == "a4" && p == 2)) {
            const std::uint64_t expected = e.name == "s3" ? 3 : 4;
            tally.expect(meet.order() == expected, e.name + " spot value");
            spots += (spots.empty() ? "" : ", ") + e.name + " p=" + std::to_string(p) + " -> " + std::to_string(meet.order());
          }
        });
      }
    }
    report("brauer_kernel_intersection", tally, spots);
  }

  // Per (G, pi) partial-character checks.
  Tally sandwich, attains, quotient, meet;
  std::size_t pairs = 0;
  for (const auto& e : entries) {
    for (const auto& pi : all_prime_sets(e.group->order())) {
      if (!is_pi_separable(e.group->group(), e.group->classes(), pi).separable) continue;
      ++pairs;
      try {
        const auto irr = irreducible_partial_characters(*e.group, e.table, pi);
        for (const auto& phi : irr) {
          sandwich.expect(check_lift_sandwich(*e.group, phi, e.table).passed(), where(e, pi));
          attains.expect(check_exists_lift_with_kernel_K(*e.group, phi, e.table).passed(), where(e, pi));
          quotient.expect(check_lemma_quotient(*e.group, phi, e.table).passed(), where(e, pi));
        }
        const auto outcome = intersection_theorem(*e.group, irr, pi);
        meet.expect(outcome.passed(), where(e, pi) + " " + outcome.detail);
      } catch (const std::exception& ex) {
        sandwich.expect(false, where(e, pi) + ": " + ex.what());
      }
    }
  }
  sandwich.expect(pairs >= kMinimumPairs, "only " + std::to_string(pairs) + " pi-separable pairs");
  report("lift_kernel_sandwich", sandwich, std::to_string(pairs) + " (G, pi) pairs");
  report("lift_attains_k", attains);
  report("quotient_core", quotient);
  report("partial_kernel_intersection", meet);

  // Direct products C x H where a lift's kernel is strictly inside K(phi).
  {
    Tally tally;
    std::string summary;
    const std::vector<std::tuple<std::uint64_t, Group, std::uint64_t, std::uint64_t>> cases{
        {3, builders::cyclic(2), 2, 1}, {5, builders::cyclic(3), 3, 1}, {3, builders::klein_four(), 4, 2}};
    for (const auto& [c, h, k_order, lift_order] : cases) {
      const std::string label = "C" + std::to_string(c) + "x" + h.name();
      guarded(tally, label, [&] {
        const auto result = counterexample_group(c, h);
        tally.expect(result.passed(), label + " checks");
        tally.expect(result.report.l.order() == 1, label + " |L| != 1");
        tally.expect(result.report.k.order() == k_order, label + " |K|");
        tally.expect(result.theta_kernel.order() == lift_order && lift_order < k_order, label + " lift kernel");
        summary += (summary.empty() ? "" : ", ") + label + ": |L|=" + std::to_string(result.report.l.order()) +
                   " |K|=" + std::to_string(result.report.k.order()) +
                   " |ker chi|=" + std::to_string(result.theta_kernel.order());
      });
    }
    report("direct_product_counterexample", tally, summary);
  }

  // Full CLI verification run over the corpus.
  {
    const fs::path out = fs::temp_directory_path() / "pitheory_acceptance_verify.json";
    const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    const std::string cmd = std::string("\"") + PITHEORY_CLI + "\" verify \"" + corpus.string() + "\" --jobs " +
                            std::to_string(jobs) + " --out \"" + out.string() + "\"";
    const auto start = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::string detail = "exit " + std::to_string(code) + " in " + std::to_string(seconds) + " s (limit " +
                         std::to_string(static_cast<int>(kVerifySecondsLimit)) + " s)";
    try {
      const auto j = io::read_json_file(out);
      detail += "; " + j.at("summary").dump();
    } catch (const std::exception&) {
    }
    fs::remove(out);
    report("corpus_verify_cli", code == 0 && seconds < kVerifySecondsLimit, detail);
  }

  return failed_criteria == 0 ? 0 : 1;
}
