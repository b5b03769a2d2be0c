// Builds the discrete Enneper surface of order k from z^(2k/(k+1)), closes it
// under the reflections in its two boundary planes and writes an OBJ file.
//
//   enneper_orbit [k] [size] [out.obj]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "minnet/minnet.hpp"

int main(int argc, char** argv) {
  using namespace minnet;
  const int k = argc > 1 ? std::atoi(argv[1]) : 3;
  const int size = argc > 2 ? std::atoi(argv[2]) : 16;
  const std::string out = argc > 3 ? argv[3] : "enneper.obj";

  const HoloGrid g = power_function(2.0 * k / (k + 1.0), size, size);
  const MinimalPair pair = make_minimal_pair(g);

  const auto corner = corner_angles(pair.F, pair.N, {0, 0});
  std::printf("angle between symmetry planes: %.12f (pi/%d = %.12f)\n", corner.angleP, k + 1,
              3.141592653589793 / (k + 1));

  const SymmetryOrbit orbit = orbit_from_boundaries(pair, {Boundary::row(0), Boundary::column(0)}, 1e-9);
  std::printf("%zu copies, %zu welded vertices, %zu quads\n", orbit.elements.size(), orbit.vertices.size(),
              orbit.faces.size());
  write_text(out, to_obj_text(mesh_of(orbit)));
  std::printf("wrote %s\n", out.c_str());
}
