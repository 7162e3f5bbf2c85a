// Local and global zeta functions of y^3 - x^4 with the fan T = (1,1), (3,4), (2,3), (1,2).
#include <iostream>

#include "igusa/igusa.hpp"

int main()
{
    using namespace igusa;
    PlaneSeries f = parse_poly("y^3 - x^4");
    NewtonData nd = newton_polygon(f);
    FanSubdivision fan = regular_subdivision(facet_normals(nd), {{1, 1}, {3, 4}, {2, 3}, {1, 2}});
    NumericalData ndata = numerical_data(fan, nd);
    for (std::size_t j = 0; j < fan.vertices.size(); ++j)
        std::cout << "T_" << j << " = (" << fan.vertices[j][0] << "," << fan.vertices[j][1] << ")  N = " << ndata[j].N
                  << "  nu = " << ndata[j].nu << (fan.is_marked(static_cast<long>(j)) ? "  *" : "") << "\n";

    std::vector<long> r{1};
    ZetaResult local = zeta_nondeg_local(nd, fan, ndata, r);
    std::cout << "Z_0 = " << to_text(local.simplified) << "\n";

    ZetaResult global = zeta_nondeg_global(nd, fan, ndata, r, structural_points(nd, r));
    std::cout << "Z   = " << to_latex(global.simplified) << "\n";
    std::cout << "candidate poles:";
    for (const auto& p : global.poles)
        std::cout << " " << rat_str(p.real_part);
    std::cout << "\n";

    auto c = series_coefficients(local.simplified, 5, 8);
    auto mu = valuation_measures(f, 5, 8, true);
    std::cout << "m  Z_0 at q=5   oracle\n";
    for (int m = 0; m <= 8; ++m)
        std::cout << m << "  " << rat_str(c[m]) << "  " << rat_str(mu[m]) << "\n";
}
