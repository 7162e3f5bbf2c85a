#pragma once

#include <optional>
#include <string>
#include <vector>

#include "igusa/resolve.hpp"

namespace igusa {

struct Pole {
    Rat real_part; // -nu/N
    int order = 1;
    CycFactor factor;
};

struct ZetaResult {
    enum class Mode { Local, Global };
    ZetaExpr raw;
    ZetaExpr simplified;
    FactorSet canonical;
    std::vector<Pole> poles;
    Mode mode = Mode::Local;
    std::optional<long> concrete_q; // counts were taken at this q
    bool generalized_leaf = false;
    std::vector<std::string> notes;
};

namespace detail {

inline LaurentPoly2 qpoly(long c0, long c1) // c0 + c1 q
{
    return LaurentPoly2(c0) + LaurentPoly2::monomial(c1, 1, 0);
}

inline ZetaExpr term(const LaurentPoly2& num, std::initializer_list<CycFactor> den) { return ZetaExpr(num, den); }

// (q-1)/q^2 and (q-1)^2/q^2
inline LaurentPoly2 w1() { return LaurentPoly2::monomial(1, -1, 0) - LaurentPoly2::monomial(1, -2, 0); }
inline LaurentPoly2 w2() { return w1() * qpoly(-1, 1); }

inline CycFactor cyc(const VertexData& v) { return {v.N, v.nu}; }

} // namespace detail

// #E(T_j)° for j = 1..m (index 0 and m+1 unused): q + 1 minus the neighbouring
// divisors actually present minus the strict-transform points on E(T_j)
inline std::vector<LaurentPoly2> stratum_counts(const FanSubdivision& fan, bool alpha_pos, bool beta_pos, const std::vector<long>& r)
{
    long m = fan.m();
    std::vector<LaurentPoly2> out(m + 2);
    for (long j = 1; j <= m; ++j) {
        long left = (j >= 2 || alpha_pos) ? 1 : 0;
        long right = (j <= m - 1 || beta_pos) ? 1 : 0;
        long rj = 0;
        for (std::size_t i = 0; i < fan.marked.size(); ++i)
            if (fan.marked[i] == j)
                rj += r.at(i);
        out[j] = detail::qpoly(1 - left - right - rj, 1);
    }
    return out;
}

// a bamboo with no facets needs a vertex between T_0 and T_1 to carry its strata
inline FanSubdivision refine_empty(const FanSubdivision& fan)
{
    if (fan.m() > 0)
        return fan;
    return regular_subdivision({}, {{1, 1}});
}

// strata and chain terms of one bamboo; leaf terms for facets when r_leaf is given
inline std::vector<ZetaExpr> bamboo_terms(const FanSubdivision& fan,
                                          const NumericalData& nd,
                                          bool alpha_pos,
                                          bool beta_pos,
                                          const std::vector<long>& r,
                                          bool with_leaves)
{
    using detail::cyc;
    std::vector<ZetaExpr> out;
    long m = fan.m();
    auto counts = stratum_counts(fan, alpha_pos, beta_pos, r);
    for (long j = 1; j <= m; ++j)
        if (!counts[j].is_zero())
            out.push_back(ZetaExpr(detail::w1() * counts[j], {cyc(nd[j])}));
    for (long j = 0; j <= m; ++j) {
        if (j == 0 && !alpha_pos)
            continue;
        if (j == m && !beta_pos)
            continue;
        out.push_back(ZetaExpr(detail::w2(), {cyc(nd[j]), cyc(nd[j + 1])}));
    }
    if (with_leaves)
        for (std::size_t i = 0; i < fan.marked.size(); ++i)
            if (r[i] > 0)
                out.push_back(ZetaExpr(detail::w2() * LaurentPoly2(r[i]), {cyc(nd[fan.marked[i]]), CycFactor{1, 1}}));
    return out;
}

// ------------------------------------------------------------ true poles

inline ZetaExpr simplify_true_poles(const ZetaExpr& z, const FactorSet& canonical)
{
    if (z.is_zero())
        return z;
    FactorSet L = factor_lcm(z.denominator(), canonical);
    LaurentPoly2 num = z.numerator_over(L);
    FactorSet extra = factor_minus(L, canonical);
    for (const auto& [f, k] : extra) {
        for (int i = 0; i < k; ++i) {
            auto q = zeta_divexact(num, f);
            if (!q)
                fail(ErrorKind::TruePoleViolation,
                     "factor q^(" + std::to_string(f.N) + "s+" + std::to_string(f.nu) + ")-1 survives outside the canonical denominator");
            num = std::move(*q);
        }
    }
    FactorSet den = canonical;
    for (bool changed = true; changed;) {
        changed = false;
        for (auto it = den.begin(); it != den.end(); ++it) {
            auto q = zeta_divexact(num, it->first);
            if (!q)
                continue;
            num = std::move(*q);
            if (--it->second == 0)
                den.erase(it);
            changed = true;
            break;
        }
    }
    return ZetaExpr(num, den);
}

inline bool contained_in(const FactorSet& a, const FactorSet& b)
{
    for (const auto& [f, k] : a) {
        auto it = b.find(f);
        if (it == b.end() || it->second < k)
            return false;
    }
    return true;
}

inline std::vector<Pole> pole_report(const ZetaExpr& simplified)
{
    std::vector<Pole> out;
    for (const auto& [f, k] : simplified.denominator()) {
        if (f.N == 0)
            continue;
        Rat re(-f.nu, f.N);
        re.canonicalize();
        out.push_back({re, k, f});
    }
    std::sort(out.begin(), out.end(), [](const Pole& a, const Pole& b) { return a.real_part < b.real_part; });
    return out;
}

namespace detail {

inline FactorSet base_canonical(long alpha, long beta)
{
    FactorSet c;
    ++c[CycFactor{1, 1}];
    if (alpha > 0)
        ++c[CycFactor{alpha, 1}];
    if (beta > 0)
        ++c[CycFactor{beta, 1}];
    return c;
}

inline void finish(ZetaResult& res)
{
    res.simplified = simplify_true_poles(res.raw, res.canonical);
    ensure(contained_in(res.simplified.denominator(), res.canonical), "simplified denominator outside the canonical set");
    res.poles = pole_report(res.simplified);
}

} // namespace detail

inline FactorSet canonical_factors(const NewtonData& nd, const FanSubdivision& fan, const NumericalData& ndata)
{
    FactorSet c = detail::base_canonical(nd.alpha, nd.beta);
    for (long j : fan.marked)
        ++c[detail::cyc(ndata[j])];
    return c;
}

inline FactorSet canonical_factors(const ResolutionTree& tree)
{
    const Bamboo& R = tree.at(tree.root);
    FactorSet c = detail::base_canonical(R.newton.alpha, R.newton.beta);
    for (const Bamboo& B : tree.bamboos) {
        if (B.is_top) {
            if (B.leaf_multiplicity > 1)
                ++c[CycFactor{B.leaf_multiplicity, 1}];
            continue;
        }
        for (long j : B.fan.marked)
            ++c[detail::cyc(B.ndata[j])];
    }
    return c;
}

// ------------------------------------------------------------ nondegenerate

inline ZetaResult zeta_nondeg_local(const NewtonData& nd, const FanSubdivision& fan, const NumericalData& ndata, const std::vector<long>& r)
{
    ZetaResult res;
    FanSubdivision f2 = refine_empty(fan);
    NumericalData n2 = f2.m() == fan.m() ? ndata : numerical_data(f2, nd);
    res.raw = zeta_sum(bamboo_terms(f2, n2, nd.alpha > 0, nd.beta > 0, r, true));
    res.canonical = canonical_factors(nd, fan, ndata);
    detail::finish(res);
    return res;
}

struct PointData {
    LaurentPoly2 total;         // #V(f~) including the origin
    LaurentPoly2 on_x_axis;     // points (0, y), y != 0, where f~ = x^alpha * unit
    LaurentPoly2 on_y_axis;     // points (x, 0), x != 0, where f~ = y^beta * unit
    LaurentPoly2 smooth;        // remaining points, all smooth on f~
};

// structural count: every non-origin point of f~ lies on an axis or on a branch through the origin
inline PointData structural_points(const NewtonData& nd, const std::vector<long>& r)
{
    PointData pd;
    LaurentPoly2 qm1 = detail::qpoly(-1, 1);
    long branches = 0;
    for (long x : r)
        branches += x;
    pd.on_x_axis = nd.alpha > 0 ? qm1 : LaurentPoly2();
    pd.on_y_axis = nd.beta > 0 ? qm1 : LaurentPoly2();
    pd.smooth = qm1 * LaurentPoly2(branches);
    pd.total = LaurentPoly2(1) + pd.on_x_axis + pd.on_y_axis + pd.smooth;
    return pd;
}

inline PointData points_from_total(const NewtonData& nd, const LaurentPoly2& total)
{
    PointData pd;
    LaurentPoly2 qm1 = detail::qpoly(-1, 1);
    pd.total = total;
    pd.on_x_axis = nd.alpha > 0 ? qm1 : LaurentPoly2();
    pd.on_y_axis = nd.beta > 0 ? qm1 : LaurentPoly2();
    pd.smooth = total - LaurentPoly2(1) - pd.on_x_axis - pd.on_y_axis;
    return pd;
}

// brute-force #V(f~) over F_q with classification of every non-origin point
inline PointData count_points(const PlaneSeries& f, const NewtonData& nd, long p, int e, long max_order = 1L << 10)
{
    if (!f.is_exact())
        fail(ErrorKind::InvalidInput, "global point counts need a polynomial");
    FiniteField K(p, e, max_order);
    using E = FiniteField::Elt;
    struct T {
        long i, j;
        E c;
    };
    std::vector<T> terms;
    for (const auto& [k, c] : f.terms())
        terms.push_back({k.first, k.second, K.from_int(rat_mod_p(c, p))});
    auto pw = [&](const E& x, long n) {
        E acc = K.from_int(1);
        for (long t = 0; t < n; ++t)
            acc = K.mul(acc, x);
        return acc;
    };
    auto eval = [&](const E& x, const E& y, int dx, int dy, long shift_x) {
        E acc = K.from_int(0);
        for (const auto& t : terms) {
            long i = t.i - shift_x;
            if (i < dx || t.j < dy)
                continue;
            E c = t.c;
            if (dx)
                c = K.mul(c, K.from_int(i % p));
            if (dy)
                c = K.mul(c, K.from_int(t.j % p));
            acc = K.add(acc, K.mul(c, K.mul(pw(x, i - dx), pw(y, t.j - dy))));
        }
        return acc;
    };
    long total = 0, ax = 0, ay = 0, smooth = 0;
    for (long a = 0; a < K.order(); ++a) {
        E x = K.decode(a);
        for (long b = 0; b < K.order(); ++b) {
            E y = K.decode(b);
            if (!K.is_zero(eval(x, y, 0, 0, 0)))
                continue;
            ++total;
            if (a == 0 && b == 0)
                continue;
            if (a == 0 && nd.alpha > 0) {
                if (K.is_zero(eval(x, y, 0, 0, nd.alpha)))
                    fail(ErrorKind::GlobalStructureUnsupported, "singular point on the x = 0 axis");
                ++ax;
                continue;
            }
            if (b == 0 && nd.beta > 0) {
                // f~ / y^beta at (x, 0): drop y^beta by reading terms with j == beta
                E acc = K.from_int(0);
                for (const auto& t : terms)
                    if (t.j == nd.beta)
                        acc = K.add(acc, K.mul(t.c, pw(x, t.i)));
                if (K.is_zero(acc))
                    fail(ErrorKind::GlobalStructureUnsupported, "singular point on the y = 0 axis");
                ++ay;
                continue;
            }
            if (K.is_zero(eval(x, y, 1, 0, 0)) && K.is_zero(eval(x, y, 0, 1, 0)))
                fail(ErrorKind::GlobalStructureUnsupported, "singular point of the reduction away from the origin");
            ++smooth;
        }
    }
    return {LaurentPoly2(total), LaurentPoly2(ax), LaurentPoly2(ay), LaurentPoly2(smooth)};
}

inline ZetaResult zeta_nondeg_global(const NewtonData& nd,
                                     const FanSubdivision& fan,
                                     const NumericalData& ndata,
                                     const std::vector<long>& r,
                                     const PointData& pts)
{
    ZetaResult res;
    res.mode = ZetaResult::Mode::Global;
    ZetaResult local = zeta_nondeg_local(nd, fan, ndata, r);
    std::vector<ZetaExpr> parts{local.raw};
    // (q^2 - #V)/q^2
    parts.push_back(ZetaExpr(LaurentPoly2(1) - pts.total * LaurentPoly2::monomial(1, -2, 0)));
    if (nd.alpha > 0 && !pts.on_x_axis.is_zero())
        parts.push_back(ZetaExpr(detail::w1() * pts.on_x_axis, {CycFactor{nd.alpha, 1}}));
    if (nd.beta > 0 && !pts.on_y_axis.is_zero())
        parts.push_back(ZetaExpr(detail::w1() * pts.on_y_axis, {CycFactor{nd.beta, 1}}));
    if (!pts.smooth.is_zero())
        parts.push_back(ZetaExpr(detail::w1() * pts.smooth, {CycFactor{1, 1}}));
    res.raw = zeta_sum(parts);
    res.canonical = canonical_factors(nd, fan, ndata);
    detail::finish(res);
    return res;
}

// ------------------------------------------------------------ general

inline std::vector<long> branch_counts(const Bamboo& B)
{
    std::vector<long> r;
    for (const auto& ch : B.children)
        r.push_back(static_cast<long>(ch.size()));
    return r;
}

inline ZetaExpr bamboo_zeta(const Bamboo& B)
{
    if (B.is_top)
        return ZetaExpr(detail::w2(), {detail::cyc(B.ndata[0]), detail::cyc(B.ndata[1])});
    FanSubdivision f2 = refine_empty(B.fan);
    NumericalData n2 = f2.m() == B.fan.m() ? B.ndata : numerical_data(f2, B.newton, B.root_data ? B.root_data->nu : 1);
    return zeta_sum(bamboo_terms(f2, n2, B.newton.alpha > 0, B.newton.beta > 0, branch_counts(B), false));
}

inline ZetaResult zeta_general_local(const ResolutionTree& tree)
{
    ZetaResult res;
    std::vector<ZetaExpr> parts;
    for (const Bamboo& B : tree.bamboos)
        parts.push_back(bamboo_zeta(B));
    res.raw = zeta_sum(parts);
    res.canonical = canonical_factors(tree);
    res.generalized_leaf = tree.generalized_leaf;
    if (tree.generalized_leaf)
        res.notes.push_back("generalized leaf rule: non-reduced branch contributes (q^(As+1) - 1)");
    if (tree.assumed_exact)
        res.notes.push_back("truncated series taken as exact at the precision cap");
    detail::finish(res);
    return res;
}

inline nlohmann::json to_json(const ZetaResult& r)
{
    nlohmann::json poles = nlohmann::json::array();
    for (const auto& p : r.poles)
        poles.push_back({{"real_part", rat_str(p.real_part)}, {"order", p.order}, {"factor", {p.factor.N, p.factor.nu}}});
    nlohmann::json j = {{"mode", r.mode == ZetaResult::Mode::Local ? "local" : "global"},
                        {"raw", to_json(r.raw)},
                        {"simplified", to_json(r.simplified)},
                        {"candidate_poles", poles},
                        {"generalized_leaf_rule", r.generalized_leaf},
                        {"notes", r.notes}};
    j["ground"] = r.concrete_q ? nlohmann::json(*r.concrete_q) : nlohmann::json("symbolic");
    return j;
}

} // namespace igusa
