// Resolution tree of the degenerate curve (y^2 - x^3)^2 - x^7 and its local zeta function.
#include <iostream>

#include "igusa/igusa.hpp"

int main()
{
    using namespace igusa;
    PlaneSeries f = parse_poly("(y^2-x^3)^2-x^7");
    ResolutionTree tree = build_tree(f, 5, 1);
    for (const Bamboo& B : tree.bamboos) {
        std::cout << "bamboo " << B.id << (B.is_top ? " (top)" : "") << ": ";
        for (std::size_t j = 0; j < B.fan.vertices.size(); ++j)
            std::cout << "(" << B.fan.vertices[j][0] << "," << B.fan.vertices[j][1] << ")[" << B.ndata[j].N << "," << B.ndata[j].nu << "] ";
        std::cout << "\n";
    }
    std::cout << to_dot(tree);
    ZetaResult z = zeta_general_local(tree);
    std::cout << "Z_0 = " << to_text(z.simplified) << "\n";
    auto check = tree_multiplicity_crosscheck(tree);
    std::cout << "multiplicity cross-check: " << (check.ok ? "ok" : "FAILED") << "\n";
}
