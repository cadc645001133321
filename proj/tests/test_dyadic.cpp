#include <doctest.h>

#include <cmath>
#include <random>

#include "oldroyd/dyadic.hpp"
#include "oldroyd/functionals.hpp"
#include "test_util.hpp"

using namespace oldroyd;
using testutil::random_field;
using testutil::single_mode;

TEST_CASE("dyadic bump profile") {
  CHECK(dyadic_bump(0.74) == 0.0);
  CHECK(dyadic_bump(8.0 / 3.0) == 0.0);
  CHECK(dyadic_bump(3.0) == 0.0);
  CHECK(dyadic_bump(6.0 / 5.0) == doctest::Approx(1.0));
  CHECK(dyadic_bump(1.3) == 1.0);
  CHECK(dyadic_bump(3.0 / 2.0) == doctest::Approx(1.0));
  CHECK(dyadic_bump(0.9) > 0.0);
  CHECK(dyadic_bump(0.9) < 1.0);
  CHECK(dyadic_bump(2.0) > 0.0);
  CHECK(dyadic_bump(2.0) < 1.0);
}

TEST_CASE("renormalized shells form an exact partition of unity") {
  for (auto [n, l] : {std::pair{16, 1.7}, {32, 40.0}, {48, kTwoPi}}) {
    const Grid g = make_grid(n, l);
    const ShellBasis basis(g);
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        const double r = std::hypot(g.xi(i), g.xi(j));
        if (r == 0.0) continue;
        double sum = 0.0;
        int touching = 0;
        for (int sj = basis.j_min(); sj <= basis.j_max(); ++sj) {
          const double w = basis.weight(sj, r);
          sum += w;
          if (w != 0.0) ++touching;
        }
        worst = std::max(worst, std::abs(sum - 1.0));
        CHECK(touching >= 1);
        CHECK(touching <= 2);  // shells two apart are disjoint
      }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("dyadic_decompose") {
  const Grid g = make_grid(32, kTwoPi);

  SUBCASE("zero field gives zero shells") {
    const DyadicShells sh = dyadic_decompose(SpectralField(g, Rank::scalar));
    for (const auto& s : sh.shells) CHECK(s.max_abs() == 0.0);
  }

  SUBCASE("a mode in the exclusive plateau lands in exactly one shell") {
    // |xi| = 3 sits in [4/3, 3/2] * 2^1 = [2.67, 3].
    const int j = 1;
    CHECK(3.0 >= ShellBasis::exclusive_plateau_lo(j));
    CHECK(3.0 <= ShellBasis::exclusive_plateau_hi(j));
    const SpectralField f = single_mode(g, Rank::scalar, 3, 0, {Complex{1.0, 0.0}});
    const DyadicShells sh = dyadic_decompose(f);
    int nonzero = 0;
    for (int sj = sh.j_min; sj <= sh.j_max(); ++sj)
      if (sh.shell(sj).max_abs() > 0.0) {
        ++nonzero;
        CHECK(sj == j);
        CHECK(sh.shell(sj).at(0, 3, 0).real() == doctest::Approx(1.0));
      }
    CHECK(nonzero == 1);
  }

  SUBCASE("shell sum reconstructs the field minus its mean") {
    std::mt19937_64 rng(23);
    SpectralField f = random_field(g, Rank::vector, rng, g.n / 2 - 1);
    f.at(0, 0, 0) = Complex{0.7, 0.0};  // mean content is dropped by shells
    const DyadicShells sh = dyadic_decompose(f);
    SpectralField sum(g, Rank::vector);
    for (const auto& s : sh.shells) sum += s;
    SpectralField expect = f;
    for (int c = 0; c < expect.components(); ++c)
      expect.at(c, 0, 0) = Complex{0.0, 0.0};
    CHECK((sum - expect).max_abs() < 1e-12 * f.max_abs());
  }

  SUBCASE("shell_l2_norms agrees with materialized shells") {
    std::mt19937_64 rng(29);
    const SpectralField f = random_field(g, Rank::symtensor, rng, g.n / 2 - 1);
    const ShellBasis basis(g);
    const auto fast = shell_l2_norms(f, basis);
    const DyadicShells sh = dyadic_decompose(f);
    for (int sj = sh.j_min; sj <= sh.j_max(); ++sj) {
      const double direct = l2_norm(sh.shell(sj));
      CHECK(fast[sj - basis.j_min()] == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}
