// Builds a few spaces, desingularizes them and compares cylinders.
// With a directory argument, also writes the SSET/PMAP inputs used by the
// shell examples in the README.

#include <iostream>
#include <string>

#include "forge/forge.hpp"

using namespace forge;

int main(int argc, char** argv)
{
    // The 2-sphere as one 2-cell on a point is singular; its subdivision's
    // image in the Barratt nerve is not.
    const SimplicialSet s2 = sphere(2);
    std::cout << "S2 regular: " << is_regular(s2).regular << ", nonsingular: " << is_nonsingular(s2) << "\n";

    const DesingResult d = desingularize(s2);
    std::cout << "D S2 cells:";
    for (int n : d.quotient.cell_counts())
        std::cout << " " << n;
    std::cout << " (" << to_string(d.certificate) << ")\n";

    // Folding the circle onto itself: dcr fails to be injective.
    const MonotoneMap phi = harness::non_injective_example();
    const CylinderBundle c = cylinder_reduction(phi);
    const DcrResult r = dcr(c);
    for (const SiblingCheck& s : sibling_criterion(c, r))
        std::cout << "degree " << s.degree << ": dcr injective " << s.injective << "\n";

    if (argc > 1) {
        const std::string dir = argv[1];
        io::write_file(dir + "/sphere2.sset", io::to_sset(s2));
        io::write_file(dir + "/fold.pmap", io::to_pmap(phi));
        io::write_file(dir + "/vee.pmap", io::to_pmap(harness::non_surjective_example()));
    }
}
