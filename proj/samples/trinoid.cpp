// Solves the k-noid boundary-value problem and assembles the full surface.
//
//   trinoid [k] [n_max] [m_max] [out.obj]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "minnet/minnet.hpp"

int main(int argc, char** argv) {
  using namespace minnet;
  const int k = argc > 1 ? std::atoi(argv[1]) : 3;
  const int n_max = argc > 2 ? std::atoi(argv[2]) : 3;
  const int m_max = argc > 3 ? std::atoi(argv[3]) : 10;
  const std::string out = argc > 4 ? argv[4] : "knoid.obj";

  try {
    const SolveResult sol = require_converged(solve_knoid(BoundarySpec::knoid(k, n_max, m_max)));
    std::printf("converged in %d iterations: cross ratio %.2e, boundary %.2e\n", sol.iterations,
                sol.cross_ratio_residual, sol.boundary_residual);

    const MinimalPair pair = make_minimal_pair(sol.grid);
    const auto orbit =
        orbit_from_boundaries(pair, {Boundary::row(0), Boundary::column(0), Boundary::row(n_max)}, 1e-9);
    std::printf("%zu copies of the fundamental piece\n", orbit.elements.size());
    write_text(out, to_obj_text(mesh_of(orbit)));
    std::printf("wrote %s\n", out.c_str());
  } catch (const Error& e) {
    std::fprintf(stderr, "%s: %s\n", std::string(to_string(e.code())).c_str(), e.what());
    return 1;
  }
}
