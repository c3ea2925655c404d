// Prints each irreducible Brauer character of the symmetric group on four
// points at p = 2 and p = 3, with L(phi), K(phi) and the kernels of its lifts.

#include <iostream>

#include "pitheory.hpp"

int main() {
  using namespace pitheory;
  const AnalyzedGroup g(builders::symmetric(4));
  const CharacterTable table = compute_table(g.group(), g.classes());

  for (std::uint64_t p : {2, 3}) {
    std::cout << "p = " << p << '\n';
    for (const auto& phi : brauer_characters(g, table, p)) {
      const KernelReport report = analyze_partial_character(g, phi, &table);
      std::cout << "  degree " << phi.degree() << ": |L| = " << report.l.order() << ", |K| = " << report.k.order()
                << ", lift kernels:";
      for (const auto& lift : report.lifts) std::cout << ' ' << lift.kernel.order();
      std::cout << (report.passed() ? "" : "  (check failed)") << '\n';
    }
    const auto core = o_pi(g.group(), g.classes(), PrimeSet::of({p}));
    std::cout << "  |O_p(G)| = " << core.order() << '\n';
  }
}
