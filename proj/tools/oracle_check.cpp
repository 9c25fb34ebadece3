// Hidden subcommand: random two-waveguide states, Gaussian path vs Fock oracle.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "dce/commands.hpp"
#include "dce/lattice.hpp"
#include "dce/oracle.hpp"

int run_oracle_check(int sets, unsigned seed, int cutoff, std::ostream& out) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eps(-0.3, 0.3), nt(0.0, 0.2);
  const auto spectrum = dce::spectrum_of(dce::ArrayTopology::open_chain(2));
  double worst = 0.0;
  int failures = 0;
  out << "# dcearray oracle-check cutoff=" << cutoff << " seed=" << seed << "\n"
      << "# set,eps_1,eps_2,n_t,moments,raw_elements,density,error\n";
  for (int k = 0; k < sets; ++k) {
    const double e[2] = {eps(rng), eps(rng)};
    const double n = nt(rng);
    out << k << ',' << dce::format_number(e[0]) << ',' << dce::format_number(e[1]) << ','
        << dce::format_number(n) << ',';
    try {
      const auto c = dce::oracle::compare_two_mode(e, spectrum.modes, n, cutoff);
      out << dce::format_number(c.moments) << ',' << dce::format_number(c.raw_elements) << ','
          << dce::format_number(c.density) << ",\n";
      worst = std::max({worst, c.moments, c.raw_elements, c.density});
    } catch (const std::exception& ex) {
      out << ",,," << ex.what() << "\n";
      ++failures;
    }
  }
  const bool ok = failures == 0 && worst <= 1e-6;
  out << "# status: " << (ok ? "ok" : "partial") << " (max difference " << dce::format_number(worst)
      << ", " << failures << " failed)\n";
  return failures ? 2 : (ok ? 0 : 2);
}
