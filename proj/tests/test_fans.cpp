#include <random>

#include <gtest/gtest.h>

#include "igusa/fans.hpp"

using namespace igusa;

namespace {

PlaneSeries P(const std::string& s) { return parse_poly(s); }

std::vector<Vec2> verts(const FanSubdivision& f) { return f.vertices; }

} // namespace

TEST(VecLess, Examples)
{
    EXPECT_TRUE(vec_less({1, 0}, {0, 1}));
    EXPECT_TRUE(vec_less({2, 3}, {3, 5}));
    EXPECT_FALSE(vec_less({1, 2}, {2, 3}));
    EXPECT_THROW(vec_less({2, 4}, {1, 1}), Error);
    EXPECT_THROW(vec_less({0, 0}, {1, 1}), Error);
}

TEST(Subdivision, MinimalCusp)
{
    FanSubdivision fan = regular_subdivision({{2, 3}});
    std::vector<Vec2> expect{{1, 0}, {1, 1}, {2, 3}, {1, 2}, {0, 1}};
    EXPECT_EQ(verts(fan), expect);
    EXPECT_EQ(fan.marked, std::vector<long>{2});
}

TEST(Subdivision, MinimalE6AndE8)
{
    std::vector<Vec2> e6{{1, 0}, {1, 1}, {3, 4}, {2, 3}, {1, 2}, {0, 1}};
    EXPECT_EQ(verts(regular_subdivision({{3, 4}})), e6);
    std::vector<Vec2> e8{{1, 0}, {1, 1}, {2, 3}, {3, 5}, {1, 2}, {0, 1}};
    EXPECT_EQ(verts(regular_subdivision({{3, 5}})), e8);
}

TEST(Subdivision, ExplicitA2n)
{
    for (long n = 1; n <= 4; ++n) {
        std::vector<Vec2> inner;
        for (long j = 1; j <= n; ++j)
            inner.push_back({1, j});
        inner.push_back({2, 2 * n + 1});
        inner.push_back({1, n + 1});
        FanSubdivision fan = regular_subdivision({{2, 2 * n + 1}}, inner);
        EXPECT_EQ(fan.m(), n + 2);
        EXPECT_EQ(fan.marked, std::vector<long>{n + 1});
    }
}

TEST(Subdivision, EmptyRays)
{
    FanSubdivision fan = regular_subdivision({});
    EXPECT_EQ(fan.m(), 0);
}

TEST(Subdivision, ExplicitErrors)
{
    auto kind = [](const std::function<void()>& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvariantViolation;
    };
    EXPECT_EQ(kind([] { regular_subdivision({{2, 3}}, {{2, 3}, {1, 2}}); }), ErrorKind::NotRegular);
    EXPECT_EQ(kind([] { regular_subdivision({{2, 3}}, {{1, 1}, {1, 2}}); }), ErrorKind::NotAdmissible);
    EXPECT_EQ(kind([] { regular_subdivision({{2, 4}}); }), ErrorKind::NonPrimitive);
}

TEST(Subdivision, RegularAndMinimalRandomized)
{
    std::mt19937 rng(17);
    std::uniform_int_distribution<long> c(1, 12);
    for (int it = 0; it < 200; ++it) {
        std::vector<Vec2> rays;
        for (int k = 0; k < 3; ++k) {
            Vec2 P{c(rng), c(rng)};
            if (std::gcd(P[0], P[1]) == 1)
                rays.push_back(P);
        }
        std::sort(rays.begin(), rays.end(), [](const Vec2& a, const Vec2& b) { return det(a, b) > 0; });
        rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
        FanSubdivision fan = regular_subdivision(rays);
        for (long j = 0; j <= fan.m(); ++j)
            EXPECT_EQ(det(fan.vertices[j], fan.vertices[j + 1]), 1);
        for (const auto& P : rays)
            EXPECT_NE(std::find(fan.vertices.begin(), fan.vertices.end(), P), fan.vertices.end());
        // dropping any unmarked interior vertex breaks regularity
        for (long j = 1; j <= fan.m(); ++j) {
            if (fan.is_marked(j))
                continue;
            EXPECT_NE(det(fan.vertices[j - 1], fan.vertices[j + 1]), 1);
        }
    }
}

TEST(NumericalData, A2n)
{
    NewtonData nd = newton_polygon(P("y^2-x^5"));
    FanSubdivision fan = regular_subdivision({{2, 5}}, {{1, 1}, {1, 2}, {2, 5}, {1, 3}});
    NumericalData v = numerical_data(fan, nd);
    std::vector<std::pair<long, long>> got;
    for (long j = 1; j <= fan.m(); ++j)
        got.push_back({v[j].N, v[j].nu});
    std::vector<std::pair<long, long>> expect{{2, 2}, {4, 3}, {10, 7}, {5, 4}};
    EXPECT_EQ(got, expect);
}

TEST(NumericalData, E6)
{
    NewtonData nd = newton_polygon(P("y^3-x^4"));
    FanSubdivision fan = regular_subdivision({{3, 4}}, {{1, 1}, {3, 4}, {2, 3}, {1, 2}});
    NumericalData v = numerical_data(fan, nd);
    std::vector<std::pair<long, long>> got;
    for (long j = 1; j <= fan.m(); ++j)
        got.push_back({v[j].N, v[j].nu});
    std::vector<std::pair<long, long>> expect{{3, 2}, {12, 7}, {8, 5}, {4, 3}};
    EXPECT_EQ(got, expect);
}

TEST(NumericalData, ChildRootData)
{
    NewtonData nd;
    nd.alpha = 12; // N of the parent facet vertex
    FanSubdivision fan = regular_subdivision({}, {{1, 1}});
    NumericalData v = numerical_data(fan, nd, 5);
    EXPECT_EQ(v[0].N, 12);
    EXPECT_EQ(v[0].nu, 5);
    EXPECT_EQ(v[1].nu, 6);
}

TEST(NumericalData, LinearInMultiplicities)
{
    std::mt19937 rng(4);
    std::uniform_int_distribution<long> A(1, 4);
    FanSubdivision fan = regular_subdivision({{2, 3}, {1, 2}});
    for (int it = 0; it < 30; ++it) {
        NewtonData a, b, s;
        for (Vec2 P : {Vec2{2, 3}, Vec2{1, 2}}) {
            Facet fa, fb, fs;
            fa.a = fb.a = fs.a = P[0];
            fa.b = fb.b = fs.b = P[1];
            fa.A = A(rng);
            fb.A = A(rng);
            fs.A = fa.A + fb.A;
            a.facets.push_back(fa);
            b.facets.push_back(fb);
            s.facets.push_back(fs);
        }
        auto va = numerical_data(fan, a), vb = numerical_data(fan, b), vs = numerical_data(fan, s);
        for (std::size_t j = 0; j < va.size(); ++j)
            EXPECT_EQ(va[j].N + vb[j].N, vs[j].N);
    }
}

TEST(FanInvariants, E6AndA2n)
{
    NewtonData e6 = newton_polygon(P("y^3-x^4"));
    FanSubdivision f6 = regular_subdivision({{3, 4}}, {{1, 1}, {3, 4}, {2, 3}, {1, 2}});
    NumericalData v6 = numerical_data(f6, e6);
    // vertex (2,3) between (3,4) and (1,2)
    EXPECT_EQ((v6[2].N + v6[4].N) / v6[3].N, 2);
    EXPECT_EQ((v6[2].nu + v6[4].nu) / v6[3].nu, 2);
    EXPECT_TRUE(fan_invariant_checks(v6, f6, e6).ok);

    NewtonData a = newton_polygon(P("y^2-x^9"));
    FanSubdivision fa = regular_subdivision({{2, 9}}, {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 9}, {1, 5}});
    auto rep = fan_invariant_checks(numerical_data(fa, a), fa, a);
    EXPECT_TRUE(rep.ok);
}

TEST(FanInvariants, DetectsCorruption)
{
    NewtonData e6 = newton_polygon(P("y^3-x^4"));
    FanSubdivision f6 = regular_subdivision({{3, 4}}, {{1, 1}, {3, 4}, {2, 3}, {1, 2}});
    NumericalData v6 = numerical_data(f6, e6);
    v6[3].N += 1;
    EXPECT_FALSE(fan_invariant_checks(v6, f6, e6).ok);
}

TEST(FanParse, Format)
{
    auto v = parse_fan("1,1;3,4;2,3;1,2");
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[1], (Vec2{3, 4}));
    EXPECT_THROW(parse_fan("1;2"), Error);
    EXPECT_THROW(parse_fan(""), Error);
}
