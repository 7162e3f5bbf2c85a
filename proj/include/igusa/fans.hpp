#pragma once

#include <array>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "igusa/newton.hpp"

namespace igusa {

using Vec2 = std::array<long, 2>; // (c, d)

inline long det(const Vec2& P, const Vec2& Q) { return P[0] * Q[1] - P[1] * Q[0]; }

inline void check_primitive(const Vec2& P)
{
    if (P[0] < 0 || P[1] < 0 || (P[0] == 0 && P[1] == 0) || std::gcd(P[0], P[1]) != 1)
        fail(ErrorKind::NonPrimitive, "(" + std::to_string(P[0]) + "," + std::to_string(P[1]) + ") is not a primitive nonnegative vector");
}

inline bool vec_less(const Vec2& P, const Vec2& Q)
{
    check_primitive(P);
    check_primitive(Q);
    return det(P, Q) > 0;
}

struct FanSubdivision {
    std::vector<Vec2> vertices;  // T_0 = (1,0), ..., T_{m+1} = (0,1)
    std::vector<long> marked;    // facet i -> vertex index j_i

    long m() const { return static_cast<long>(vertices.size()) - 2; }
    bool is_marked(long j) const { return std::find(marked.begin(), marked.end(), j) != marked.end(); }
};

struct VertexData {
    long N = 0;
    long nu = 1;
};

using NumericalData = std::vector<VertexData>;

namespace detail {

// vertices strictly between U and V completing cone(U,V) regularly (Hirzebruch-Jung)
inline void hj_fill(const Vec2& U, const Vec2& V, std::vector<Vec2>& out)
{
    long D = det(U, V);
    if (D == 1)
        return;
    ensure(D > 1, "cone vertices out of order");
    // W = (kU + V)/D, smallest k >= 0 making it integral; det(U,W) = 1
    for (long k = 0; k < D; ++k) {
        long c = k * U[0] + V[0], d = k * U[1] + V[1];
        if (c % D == 0 && d % D == 0) {
            Vec2 W{c / D, d / D};
            out.push_back(W);
            hj_fill(W, V, out);
            return;
        }
    }
    fail(ErrorKind::InvariantViolation, "Hirzebruch-Jung step found no lattice point");
}

inline void mark(FanSubdivision& fan, const std::vector<Vec2>& rays)
{
    fan.marked.clear();
    for (const auto& P : rays) {
        auto it = std::find(fan.vertices.begin(), fan.vertices.end(), P);
        if (it == fan.vertices.end() || it == fan.vertices.begin() || it + 1 == fan.vertices.end())
            fail(ErrorKind::NotAdmissible, "fan does not contain the facet normal (" + std::to_string(P[0]) + "," + std::to_string(P[1]) + ") as an interior vertex");
        fan.marked.push_back(it - fan.vertices.begin());
    }
}

inline void check_rays(const std::vector<Vec2>& rays)
{
    for (std::size_t i = 0; i < rays.size(); ++i) {
        check_primitive(rays[i]);
        if (rays[i][0] == 0 || rays[i][1] == 0)
            fail(ErrorKind::InvalidInput, "facet normals must lie in the open quadrant");
        if (i > 0 && det(rays[i - 1], rays[i]) <= 0)
            fail(ErrorKind::InvalidInput, "facet normals are not strictly increasing");
    }
}

} // namespace detail

inline FanSubdivision regular_subdivision(const std::vector<Vec2>& rays)
{
    detail::check_rays(rays);
    std::vector<Vec2> pivots{{1, 0}};
    pivots.insert(pivots.end(), rays.begin(), rays.end());
    pivots.push_back({0, 1});
    FanSubdivision fan;
    fan.vertices.push_back(pivots[0]);
    for (std::size_t i = 0; i + 1 < pivots.size(); ++i) {
        detail::hj_fill(pivots[i], pivots[i + 1], fan.vertices);
        fan.vertices.push_back(pivots[i + 1]);
    }
    detail::mark(fan, rays);
    for (std::size_t j = 0; j + 1 < fan.vertices.size(); ++j)
        ensure(det(fan.vertices[j], fan.vertices[j + 1]) == 1, "minimal subdivision is not regular");
    return fan;
}

// explicit interior vertices T_1..T_m
inline FanSubdivision regular_subdivision(const std::vector<Vec2>& rays, const std::vector<Vec2>& interior)
{
    detail::check_rays(rays);
    FanSubdivision fan;
    fan.vertices.push_back({1, 0});
    for (const auto& T : interior) {
        check_primitive(T);
        fan.vertices.push_back(T);
    }
    fan.vertices.push_back({0, 1});
    for (std::size_t j = 0; j + 1 < fan.vertices.size(); ++j) {
        long d = det(fan.vertices[j], fan.vertices[j + 1]);
        if (d != 1) {
            std::ostringstream os;
            os << "det(T_" << j << ", T_" << j + 1 << ") = " << d;
            fail(ErrorKind::NotRegular, os.str());
        }
    }
    detail::mark(fan, rays);
    return fan;
}

inline std::vector<Vec2> facet_normals(const NewtonData& nd)
{
    std::vector<Vec2> rays;
    for (const auto& fc : nd.facets)
        rays.push_back({fc.a, fc.b});
    return rays;
}

// Multiplicities of the pulled-back function and 2-form along every E(T_j).
// The local function is x^alpha y^beta times a series whose edges are the facets;
// (N_root, nu_root) = (alpha, 1) for a root bamboo.
inline NumericalData numerical_data(const FanSubdivision& fan, const NewtonData& nd, long nu_root = 1)
{
    NumericalData out;
    std::size_t k = nd.facets.size();
    for (long j = 0; j < static_cast<long>(fan.vertices.size()); ++j) {
        const Vec2& T = fan.vertices[j];
        // i = number of facet normals <= T
        std::size_t i = 0;
        while (i < k && det({nd.facets[i].a, nd.facets[i].b}, T) >= 0)
            ++i;
        long X = nd.alpha, Y = nd.beta;
        for (std::size_t t = 0; t < k; ++t) {
            if (t < i)
                X += nd.facets[t].b * nd.facets[t].A;
            else
                Y += nd.facets[t].a * nd.facets[t].A;
        }
        VertexData v;
        v.N = T[0] * X + T[1] * Y;
        v.nu = T[0] * nu_root + T[1];
        out.push_back(v);
    }
    return out;
}

struct FanInvariantReport {
    bool ok = true;
    std::vector<std::string> failures;
};

inline FanInvariantReport fan_invariant_checks(const NumericalData& nd, const FanSubdivision& fan, const NewtonData& newton, long nu_root = 1)
{
    FanInvariantReport rep;
    auto bad = [&](const std::string& s) {
        rep.ok = false;
        rep.failures.push_back(s);
    };
    const auto& T = fan.vertices;
    long m = fan.m();
    for (long j = 0; j <= m; ++j)
        if (det(T[j], T[j + 1]) != 1)
            bad("det(T_" + std::to_string(j) + ", T_" + std::to_string(j + 1) + ") != 1");
    for (long j = 1; j <= m; ++j) {
        if (fan.is_marked(j))
            continue;
        long k = det(T[j - 1], T[j + 1]);
        auto ratio_ok = [&](long prev, long cur, long next) { return cur != 0 && prev + next == k * cur; };
        if (k <= 0)
            bad("non-positive determinant at T_" + std::to_string(j));
        if (!ratio_ok(T[j - 1][0], T[j][0], T[j + 1][0]) || !ratio_ok(T[j - 1][1], T[j][1], T[j + 1][1]))
            bad("vertex ratio at T_" + std::to_string(j));
        if (nd[j].N != 0 && !ratio_ok(nd[j - 1].N, nd[j].N, nd[j + 1].N))
            bad("N ratio at T_" + std::to_string(j));
        if (!ratio_ok(nd[j - 1].nu, nd[j].nu, nd[j + 1].nu))
            bad("nu ratio at T_" + std::to_string(j));
    }
    // on every linearity interval N = cX + dY and nu = c*nu_root + d, so the ratios nu/N
    // are pairwise distinct there unless (X, Y) is proportional to (nu_root, 1)
    std::vector<long> bounds{0};
    for (long j : fan.marked)
        bounds.push_back(j);
    bounds.push_back(m + 1);
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
        long lo = std::max(bounds[s], 1L), hi = std::min(bounds[s + 1], m);
        if (lo > hi)
            continue;
        std::size_t i = s;
        long X = newton.alpha, Y = newton.beta;
        for (std::size_t t = 0; t < newton.facets.size(); ++t) {
            if (t < i)
                X += newton.facets[t].b * newton.facets[t].A;
            else
                Y += newton.facets[t].a * newton.facets[t].A;
        }
        bool proportional = X == Y * nu_root;
        for (long j = lo; j <= hi; ++j) {
            for (long l = j + 1; l <= hi; ++l) {
                bool same = nd[j].nu * nd[l].N == nd[l].nu * nd[j].N;
                if (same != proportional)
                    bad("nu/N coincidence pattern between T_" + std::to_string(j) + " and T_" + std::to_string(l));
            }
        }
    }
    return rep;
}

inline std::vector<Vec2> parse_fan(const std::string& text)
{
    std::vector<Vec2> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';')) {
        auto comma = item.find(',');
        if (comma == std::string::npos)
            fail(ErrorKind::InvalidInput, "fan entry '" + item + "' is not of the form c,d");
        try {
            out.push_back({std::stol(item.substr(0, comma)), std::stol(item.substr(comma + 1))});
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidInput, "fan entry '" + item + "' is not numeric");
        }
    }
    if (out.empty())
        fail(ErrorKind::InvalidInput, "empty fan");
    return out;
}

inline nlohmann::json to_json(const FanSubdivision& fan, const NumericalData& nd)
{
    nlohmann::json v = nlohmann::json::array();
    for (std::size_t j = 0; j < fan.vertices.size(); ++j) {
        nlohmann::json e = {{"T", {fan.vertices[j][0], fan.vertices[j][1]}}, {"marked", fan.is_marked(static_cast<long>(j))}};
        if (j < nd.size()) {
            e["N"] = nd[j].N;
            e["nu"] = nd[j].nu;
        }
        v.push_back(e);
    }
    return v;
}

} // namespace igusa
