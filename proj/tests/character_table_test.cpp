#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include "support.hpp"

using namespace pitheory;

namespace {

struct Computed {
  AnalyzedGroup group;
  CharacterTable table;
};

Computed compute(Group g) {
  AnalyzedGroup ag(std::move(g));
  CharacterTable t = compute_table(ag.group(), ag.classes());
  return {std::move(ag), std::move(t)};
}

// Numeric <f, g> = (1/|G|) sum_c |C| f(c) conj(g(c)).
std::complex<double> inner(const CharacterTable& t, const std::vector<std::complex<double>>& f,
                           const std::vector<std::complex<double>>& g) {
  std::complex<double> s = 0;
  for (std::size_t c = 0; c < t.classes.size(); ++c) s += static_cast<double>(t.classes[c].size) * f[c] * std::conj(g[c]);
  return s / static_cast<double>(t.group_order);
}

std::vector<std::complex<double>> numeric_row(const Character& chi) {
  std::vector<std::complex<double>> out;
  for (const auto& v : chi.values) out.push_back(oracle::numeric(v));
  return out;
}

bool is_nonnegative_integer(std::complex<double> z) {
  return std::abs(z.imag()) < oracle::kNumericTolerance && z.real() > -oracle::kNumericTolerance &&
         std::abs(z.real() - std::round(z.real())) < oracle::kNumericTolerance;
}

}  // namespace

TEST(CharacterTable, SymmetricGroupOnThreePoints) {
  const auto [g, t] = compute(builders::symmetric(3));
  ASSERT_EQ(t.size(), 3u);
  std::multiset<std::uint64_t> degrees;
  for (const auto& chi : t.irreducibles) degrees.insert(chi.degree());
  EXPECT_EQ(degrees, (std::multiset<std::uint64_t>{1, 1, 2}));
  const auto& two = t.irreducibles.back();
  ASSERT_EQ(two.degree(), 2u);
  for (std::size_t c = 0; c < g.classes().size(); ++c) {
    const auto order = g.classes()[c].element_order;
    const long expected = order == 1 ? 2 : order == 2 ? 0 : -1;
    EXPECT_EQ(two.values[c], Cyclotomic(expected));
  }
  EXPECT_EQ(t.irreducibles.front().values, std::vector<Cyclotomic>(3, Cyclotomic(1)));
}

TEST(CharacterTable, CyclicGroupOfOrderSix) {
  const auto [g, t] = compute(builders::cyclic(6));
  ASSERT_EQ(t.size(), 6u);
  const ElementId gen = g.group().id_of(builders::cycle_on(6, 0, 6));
  std::set<Cyclotomic> at_generator;
  for (const auto& chi : t.irreducibles) {
    const Cyclotomic z = chi.values[g.classes().class_of(gen)];
    at_generator.insert(z);
    for (std::uint64_t k = 0; k < 6; ++k) EXPECT_EQ(chi.values[g.classes().class_of(g.group().power(gen, k))], z.pow(k));
  }
  std::set<Cyclotomic> expected;
  for (int k = 0; k < 6; ++k) expected.insert(root_of_unity(6, k));
  EXPECT_EQ(at_generator, expected);
}

TEST(CharacterTable, TrivialGroup) {
  const auto [g, t] = compute(builders::cyclic(1));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].values, std::vector<Cyclotomic>{Cyclotomic(1)});
}

TEST(CharacterTable, CorpusTablesPassNumericOracles) {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& name : oracle::corpus_names()) {
    const auto [g, t] = compute(oracle::corpus_group(name));
    ASSERT_EQ(t.size(), g.classes().size()) << name;
    EXPECT_TRUE(check_table(t).ok()) << name;

    std::vector<std::vector<std::complex<double>>> rows;
    for (const auto& chi : t.irreducibles) rows.push_back(numeric_row(chi));
    double degree_squares = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      degree_squares += std::norm(rows[i][0]);
      for (std::size_t j = 0; j < rows.size(); ++j)
        EXPECT_TRUE(oracle::near(inner(t, rows[i], rows[j]), i == j ? 1.0 : 0.0)) << name << " " << i << "," << j;
    }
    EXPECT_NEAR(degree_squares, static_cast<double>(g.order()), oracle::kNumericTolerance) << name;

    // The permutation character and tensor squares decompose with
    // nonnegative integer multiplicities; this ties values to the right classes.
    std::vector<std::complex<double>> fixed_points;
    for (const auto& cls : g.classes()) {
      const auto& p = g.group().element(cls.representative);
      double fixed = 0;
      for (Point i = 0; i < p.degree(); ++i) fixed += p[i] == i ? 1 : 0;
      fixed_points.push_back(fixed);
    }
    for (const auto& row : rows) {
      EXPECT_TRUE(is_nonnegative_integer(inner(t, fixed_points, row))) << name;
      std::vector<std::complex<double>> square(row.size());
      for (std::size_t c = 0; c < row.size(); ++c) square[c] = row[c] * row[c];
      for (const auto& other : rows) EXPECT_TRUE(is_nonnegative_integer(inner(t, square, other))) << name;
      for (std::size_t c = 0; c < row.size(); ++c) {
        EXPECT_TRUE(oracle::near(row[g.classes().inverse_class(c)], std::conj(row[c]))) << name;
        EXPECT_LE(std::abs(row[c]), std::abs(row[0]) + oracle::kNumericTolerance) << name;
      }
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 60.0);
}

TEST(CharacterTable, KernelsOfCharacters) {
  {
    const auto [g, t] = compute(builders::symmetric(3));
    const auto& sign = t[1];
    EXPECT_EQ(sign.values[g.classes().class_of(g.group().id_of(Permutation::from_cycles(3, {{0, 1}})))], Cyclotomic(-1));
    EXPECT_EQ(kernel_of_character(g.group(), g.classes(), t, sign).order(), 3u);
  }
  {
    const auto [g, t] = compute(builders::cyclic(6));
    std::size_t faithful = 0;
    for (const auto& chi : t.irreducibles) {
      // brute force: elements where chi is 1
      std::size_t ones = 0;
      for (ElementId x = 0; x < g.order(); ++x) ones += chi.values[g.classes().class_of(x)] == Cyclotomic(1);
      const auto k = kernel_of_character(g.group(), g.classes(), t, chi);
      EXPECT_EQ(k.order(), ones);
      if (k.order() == 1) ++faithful;
    }
    EXPECT_EQ(faithful, 2u);
  }
}

TEST(TableIngest, RoundTripsEveryCorpusTable) {
  for (const auto& name : {"s3", "c6", "a5", "sl23", "q8"}) {
    const auto [g, t] = compute(oracle::corpus_group(name));
    const auto j = io::table_to_json(t);
    const CharacterTable back = io::table_from_json(io::json::parse(j.dump()), &g);
    EXPECT_EQ(back.irreducibles, t.irreducibles) << name;
    EXPECT_EQ(back.classes, t.classes) << name;
  }
}

TEST(TableIngest, RejectsPerturbedValues) {
  const auto [g, t] = compute(oracle::corpus_group("s4"));
  auto j = io::table_to_json(t);
  j["chars"][2][1] = io::cyclotomic_to_json(t[2].values[1] + Cyclotomic(1));
  EXPECT_THROW(io::table_from_json(j, &g), CheckFailed);
  EXPECT_THROW(io::table_from_json(j), CheckFailed);
}

TEST(TableIngest, RejectsMismatchedClasses) {
  const auto [g, t] = compute(oracle::corpus_group("s3"));
  auto j = io::table_to_json(t);
  std::swap(j["classes"][1], j["classes"][2]);
  for (auto& row : j["chars"]) std::swap(row[1], row[2]);
  EXPECT_THROW(io::table_from_json(j, &g), SchemaError);
  EXPECT_NO_THROW(io::table_from_json(j));  // consistent on its own

  auto short_row = io::table_to_json(t);
  short_row["chars"][0].erase(0);
  EXPECT_THROW(io::table_from_json(short_row), SchemaError);
  EXPECT_THROW(io::table_from_json(io::json::parse(R"({"mode": "weird", "classes": [], "chars": []})")), SchemaError);
}

TEST(TableIngest, BrauerFixtureForAlternatingGroupOnFivePoints) {
  const AnalyzedGroup g(oracle::corpus_group("a5"));
  const CharacterTable brauer = io::load_table(oracle::corpus_dir() / "a5.brauer2.table.json", &g);
  EXPECT_EQ(brauer.mode, TableMode::Brauer);
  EXPECT_EQ(brauer.p, 2u);
  std::size_t two_regular = 0;
  for (const auto& c : g.classes()) two_regular += c.element_order % 2 != 0;
  EXPECT_EQ(brauer.columns.size(), two_regular);
  EXPECT_EQ(brauer.size(), two_regular);

  // Every ordinary restriction is a nonnegative integer combination of the
  // fixture rows (decomposition_matrix throws otherwise), and degrees add up.
  const CharacterTable ordinary = compute_table(g.group(), g.classes());
  const std::vector<PartialCharacter> ibr = brauer_table_characters(brauer);
  DecompositionMatrix d;
  ASSERT_NO_THROW(d = decomposition_matrix(ordinary, PrimeSet::complement_of(2), ibr));
  for (std::size_t i = 0; i < ordinary.size(); ++i) {
    std::uint64_t degree = 0;
    for (std::size_t j = 0; j < ibr.size(); ++j) degree += d.entries[i][j] * ibr[j].degree();
    EXPECT_EQ(degree, ordinary[i].degree());
  }
}
