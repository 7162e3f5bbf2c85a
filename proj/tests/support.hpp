#pragma once

#include <random>
#include <string>
#include <vector>

#include "igusa/igusa.hpp"

namespace igusa::testing {

// q^(a s + b)
inline LaurentPoly2 Q(long a, long b) { return LaurentPoly2::monomial(1, b, a); }
inline LaurentPoly2 Qc(long c) { return LaurentPoly2::monomial(1, c, 0); }

struct GoldenCase {
    std::string name;
    std::string poly;
    LaurentPoly2 points; // #V(f~)
    ZetaExpr printed;    // reference closed form of Z(f; s)
};

// Reference closed forms for the ADE families. The E8 numerator has q^(6s+3) where the
// typeset source shows T^(6s+3); the D_{2n+2} denominator drops a stray parenthesis.
inline std::vector<GoldenCase> golden_cases()
{
    const LaurentPoly2 q = Qc(1), one(1);
    std::vector<GoldenCase> out;
    for (long n = 1; n <= 3; ++n) {
        LaurentPoly2 sum;
        for (long j = 1; j <= n; ++j)
            sum += Q(2 * j, j - 1);
        LaurentPoly2 num = (Q(1, 1) - one) * (Q(2 * n, n + 1) + one) * sum +
                           Q(2 * n + 1, n) * (Q(2 * n + 1, n + 1) * (Q(1, 2) - one) + Q(1, 1) - one);
        out.push_back({"A" + std::to_string(2 * n), "y^2 - x^" + std::to_string(2 * n + 1), q,
                       ZetaExpr((q - one) * num, {CycFactor{4 * n + 2, 2 * n + 3}, CycFactor{1, 1}})});
    }
    for (long n = 1; n <= 2; ++n) {
        LaurentPoly2 sum;
        for (long j = 0; j <= n - 1; ++j)
            sum += Q(2 * j, j);
        LaurentPoly2 num = Q(2 * n + 2, n) * (Q(1, 1) - one) + (q - one) * Q(4 * n + 4, 2 * n + 1) * (Q(1, 1) + one) +
                           (q - one) * Q(3, 0) * (Q(2 * n + 1, n + 1) + one) * sum;
        out.push_back({"D" + std::to_string(2 * n + 3), "x*y^2 - x^" + std::to_string(2 * n + 2), q * LaurentPoly2(2) - one,
                       ZetaExpr((q - one) * num, {CycFactor{1, 1}, CycFactor{4 * n + 4, 2 * n + 3}})});
    }
    for (long n = 2; n <= 3; ++n) {
        LaurentPoly2 sum;
        for (long j = 1; j <= n - 1; ++j)
            sum += Q(2 * j, j - 1);
        LaurentPoly2 num = (q - one) * Q(2 * n, n - 1) * (Q(1, 1) + one) + (Q(1, 1) - one) * sum;
        out.push_back({"A" + std::to_string(2 * n - 1), "y^2 - x^" + std::to_string(2 * n), q * LaurentPoly2(2) - one,
                       ZetaExpr((q - one) * num, {CycFactor{2 * n, n + 1}, CycFactor{1, 1}})});
    }
    {
        long n = 2;
        LaurentPoly2 sum;
        for (long j = 1; j <= n; ++j)
            sum += Q(2 * j + 1, j - 1);
        LaurentPoly2 num = Q(2 * n + 1, n) * (Q(1, 1) - LaurentPoly2(2) * Q(1, 0) + one) + (q - one) * sum;
        out.push_back({"D" + std::to_string(2 * n + 2), "x*y^2 - x^" + std::to_string(2 * n + 1), q * LaurentPoly2(3) - LaurentPoly2(2),
                       ZetaExpr((q - one) * num, {CycFactor{2 * n + 1, n + 1}, CycFactor{1, 1}})});
    }
    out.push_back({"E6", "y^3 - x^4", q,
                   ZetaExpr((q - one) * Q(3, 0) *
                                (Q(10, 7) - Q(9, 5) + Q(7, 5) - Q(5, 3) + Q(4, 3) - Q(3, 2) + Q(2, 2) - one),
                            {CycFactor{12, 7}, CycFactor{1, 1}})});
    out.push_back({"E7", "y^3 - x^3*y", q * LaurentPoly2(2) - one,
                   ZetaExpr(Q(3, 0) * (q - one) *
                                (Q(7, 5) - Q(7, 4) + Q(6, 4) - Q(6, 3) + Q(4, 3) - Q(3, 2) + Q(2, 2) - Q(2, 1) + Q(1, 1) - one),
                            {CycFactor{9, 5}, CycFactor{1, 1}})});
    out.push_back({"E8", "y^3 - x^5", q,
                   ZetaExpr((q - one) * Q(3, 0) *
                                (Q(13, 8) - Q(12, 6) + Q(10, 6) - Q(9, 5) + Q(8, 5) - Q(6, 3) + Q(4, 3) - Q(2, 1) + Q(1, 1) - one),
                            {CycFactor{15, 8}, CycFactor{1, 1}})});
    return out;
}

struct Pipeline {
    PlaneSeries f;
    NewtonData nd;
    FanSubdivision fan;
    NumericalData ndata;
    std::vector<long> r;
};

inline Pipeline nondeg_pipeline(const std::string& poly, long p = 0)
{
    Pipeline P;
    P.f = parse_poly(poly);
    P.nd = newton_polygon(P.f, p);
    P.fan = regular_subdivision(facet_normals(P.nd));
    P.ndata = numerical_data(P.fan, P.nd);
    auto rep = check_nondegenerate(P.nd, p, 1);
    ensure(rep.status == NondegeneracyReport::Status::Nondegenerate, poly + " is not nondegenerate");
    P.r = rep.r;
    return P;
}

inline ZetaResult golden_global(const GoldenCase& g)
{
    Pipeline P = nondeg_pipeline(g.poly);
    return zeta_nondeg_global(P.nd, P.fan, P.ndata, P.r, points_from_total(P.nd, g.points));
}

// x^alpha y^beta times products of (y^a + xi x^b) with coprime (a, b) and distinct xi per direction
inline std::string random_nondegenerate(std::mt19937& rng, int max_factors = 3)
{
    std::uniform_int_distribution<long> ab(1, 5), xi(1, 9), sign(0, 1), nf(1, max_factors), ax(0, 2);
    std::string s;
    long alpha = ax(rng), beta = ax(rng);
    if (alpha)
        s += "x^" + std::to_string(alpha) + "*";
    if (beta)
        s += "y^" + std::to_string(beta) + "*";
    std::vector<std::pair<std::pair<long, long>, long>> used;
    long n = nf(rng);
    for (long k = 0; k < n; ++k) {
        long a, b;
        do {
            a = ab(rng);
            b = ab(rng);
        } while (std::gcd(a, b) != 1);
        long x;
        bool clash;
        int tries = 0;
        do {
            x = sign(rng) ? xi(rng) : -xi(rng);
            clash = false;
            for (const auto& u : used)
                clash = clash || (u.first == std::make_pair(a, b) && u.second == x);
        } while (clash && ++tries < 20);
        if (clash)
            continue;
        used.push_back({{a, b}, x});
        s += "(y^" + std::to_string(a) + (x < 0 ? " - " : " + ") + std::to_string(std::labs(x)) + "*x^" + std::to_string(b) + ")*";
    }
    if (s.empty())
        return "x*y";
    s.pop_back();
    return s;
}

// insert up to k mediants between consecutive vertices of the minimal fan
inline std::vector<Vec2> random_refinement(const FanSubdivision& fan, std::mt19937& rng, int k)
{
    std::vector<Vec2> v = fan.vertices;
    std::uniform_int_distribution<int> cnt(1, k);
    int extra = cnt(rng);
    for (int t = 0; t < extra; ++t) {
        std::uniform_int_distribution<std::size_t> pos(0, v.size() - 2);
        std::size_t i = pos(rng);
        Vec2 m{v[i][0] + v[i + 1][0], v[i][1] + v[i + 1][1]};
        v.insert(v.begin() + static_cast<long>(i) + 1, m);
    }
    return std::vector<Vec2>(v.begin() + 1, v.end() - 1);
}

} // namespace igusa::testing
