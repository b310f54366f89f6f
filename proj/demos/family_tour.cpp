// Walks through the obstruction simplex for Q = (1, d, d+1, ..., d+1): h*, integral closure,
// and the support of the degree 1 -> 2 multiplication map that rules out a weak Lefschetz element.
//
//   family_tour [d]     (default d = 3)

#include <cstdlib>
#include <iostream>

#include <refsimplex/refsimplex.hpp>

using namespace refsimplex;

int main(int argc, char** argv)
{
    const std::size_t d = argc > 1 ? static_cast<std::size_t>(std::atoi(argv[1])) : 3;
    try {
        family::require_dim(d);
    } catch (const PreconditionError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }

    const LatticeSimplex s = family::simplex(d);
    std::cout << "weights   " << family::weights(d).str() << '\n';
    std::cout << "type      " << simplex_type(s).str() << '\n';
    std::cout << "h*        " << hstar(s).str() << '\n';
    std::cout << "reflexive " << is_reflexive(s).reflexive << '\n';
    std::cout << "IDP       " << is_integrally_closed(s).closed << '\n';

    const auto patterns = multiplication_patterns(s);
    const auto& m = patterns.at(1);
    std::cout << "\nsupport of [R]_1 -> [R]_2 (entry = indices j of a_j):\n";
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            std::string cell;
            for (auto j : m.at(r, c)) cell += (cell.empty() ? "a" : "+a") + std::to_string(j);
            std::cout << (cell.empty() ? "." : cell) << (c + 1 < m.cols ? "\t" : "\n");
        }
    }
    std::cout << "structural rank " << structural_rank(m) << " of " << std::min(m.rows, m.cols) << '\n';

    const WlVerdict v = weak_lefschetz_verdict(s, 0, 2);
    std::cout << "weak Lefschetz: " << to_string(v.kind);
    if (v.degree) std::cout << " (degree " << *v.degree << ", " << v.certificate << ")";
    std::cout << '\n';
}
