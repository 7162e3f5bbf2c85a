#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "igusa/fans.hpp"

namespace igusa {

enum class LeafRule { Strict, Generalized };

struct BuildConfig {
    long initial_precision = 0; // 0: 2 * total degree + 8
    long precision_cap = 1024;
    int max_depth = 32;
    LeafRule leaf_rule = LeafRule::Generalized;
    std::optional<std::vector<Vec2>> root_fan; // explicit interior vertices of the root fan
};

struct ParentLink {
    long bamboo = -1;
    long facet = -1;
    long branch = -1;
};

struct Bamboo {
    long id = 0;
    std::optional<ParentLink> parent;
    PlaneSeries local;              // x^alpha * (series); for children u^N(P_root) * W(u, v)
    NewtonData newton;
    FanSubdivision fan;
    NumericalData ndata;
    std::optional<VertexData> root_data;
    std::optional<TschCoordChange> change; // chart and recentring that produced this bamboo
    bool is_top = false;
    long leaf_multiplicity = 0;     // A for a top, v^A
    bool assumed_exact = false;     // truncation taken as exact at the precision cap
    std::vector<std::vector<long>> children; // facet -> branch -> bamboo id
};

struct ResolutionTree {
    std::vector<Bamboo> bamboos;
    long root = 0;
    long precision = 0;
    bool assumed_exact = false;
    bool generalized_leaf = false; // some top has A > 1

    const Bamboo& at(long id) const { return bamboos.at(static_cast<std::size_t>(id)); }
};

namespace detail {

inline long total_degree(const PlaneSeries& f)
{
    long d = 0;
    for (const auto& [k, c] : f.terms())
        d = std::max(d, k.first + k.second);
    return d;
}

class TreeBuilder {
public:
    TreeBuilder(long p, int e, const BuildConfig& cfg, long precision, bool assume_exact)
        : p_(p), e_(e), cfg_(cfg), prec_(precision), assume_exact_(assume_exact)
    {
    }

    ResolutionTree run(const PlaneSeries& f)
    {
        tree_.precision = prec_;
        tree_.assumed_exact = false;
        build(f, std::nullopt, std::nullopt, std::nullopt, 0, f.y_degree());
        return std::move(tree_);
    }

private:
    void check_branches(const Facet& fc, long bamboo_depth)
    {
        if (!fc.rational_split)
            fail(ErrorKind::UnsupportedGroundField,
                 "face polynomial of facet (" + std::to_string(fc.a) + "," + std::to_string(fc.b) + ") at depth " +
                     std::to_string(bamboo_depth) + " has irrational roots");
        if (cfg_.leaf_rule == LeafRule::Strict && (fc.a == 1 || fc.b == 1))
            fail(ErrorKind::SmoothBranchUnsupported,
                 "facet (" + std::to_string(fc.a) + "," + std::to_string(fc.b) + ") has a smooth tangent branch");
        if (p_ == 0)
            return;
        for (std::size_t l = 0; l < fc.branches.size(); ++l) {
            const Rat& xi = fc.branches[l].xi;
            if (valuation(xi, p_) != 0)
                fail(ErrorKind::ConditionViolated, "branch root " + rat_str(xi) + " is not a " + std::to_string(p_) + "-adic unit");
            for (std::size_t l2 = 0; l2 < l; ++l2)
                if (valuation(Rat(xi - fc.branches[l2].xi), p_) != 0)
                    fail(ErrorKind::ConditionViolated, "branch roots " + rat_str(xi) + " and " + rat_str(fc.branches[l2].xi) +
                                                           " collide mod " + std::to_string(p_));
        }
    }

    long build(const PlaneSeries& local,
               std::optional<ParentLink> parent,
               std::optional<VertexData> root_data,
               std::optional<TschCoordChange> change,
               int depth,
               long degree)
    {
        if (depth > cfg_.max_depth)
            fail(ErrorKind::DepthExceeded, "resolution deeper than " + std::to_string(cfg_.max_depth));
        Bamboo B;
        B.id = static_cast<long>(tree_.bamboos.size());
        B.parent = parent;
        B.local = local;
        B.root_data = root_data;
        B.change = change;
        B.assumed_exact = assume_exact_ && !local.is_exact();
        B.newton = newton_polygon(local, p_);
        for (const auto& fc : B.newton.facets)
            check_branches(fc, depth);
        if (!parent && cfg_.root_fan)
            B.fan = regular_subdivision(facet_normals(B.newton), *cfg_.root_fan);
        else
            B.fan = regular_subdivision(facet_normals(B.newton));
        long nu_root = root_data ? root_data->nu : 1;
        B.ndata = numerical_data(B.fan, B.newton, nu_root);
        if (root_data)
            ensure(B.ndata.front().N == root_data->N && B.ndata.front().nu == root_data->nu, "child bamboo root ray data");
        long id = B.id;
        tree_.bamboos.push_back(std::move(B));

        std::vector<std::vector<long>> children;
        for (std::size_t i = 0; i < tree_.bamboos[id].newton.facets.size(); ++i) {
            // copies: the vector may reallocate while recursing
            Facet fc = tree_.bamboos[id].newton.facets[i];
            long j = tree_.bamboos[id].fan.marked[i];
            Vec2 Tj = tree_.bamboos[id].fan.vertices[j];
            Vec2 Tn = tree_.bamboos[id].fan.vertices[j + 1];
            VertexData at = tree_.bamboos[id].ndata[j];
            VertexData next = tree_.bamboos[id].ndata[j + 1];
            PlaneSeries src = tree_.bamboos[id].local;
            std::vector<long> ids;
            for (std::size_t l = 0; l < fc.branches.size(); ++l) {
                long A = fc.branches[l].multiplicity;
                ensure(parent ? A < degree : A <= degree, "local degree does not decrease down the tree");
                TschResult tr = tsch_coordinates(src, Tj, Tn, at.N, next.N, fc.branches[l].xi, A, p_, prec_);
                ParentLink link{id, static_cast<long>(i), static_cast<long>(l)};
                PlaneSeries W = tr.child.divided_by_monomial(at.N, 0);
                bool leaf_shape = W.terms().size() == 1 && W.coeff(0, A) == 1;
                if (leaf_shape && A > 1 && !W.is_exact() && !assume_exact_)
                    fail(ErrorKind::PrecisionExhausted, "cannot certify a non-reduced leaf below x^" + std::to_string(W.precision()));
                if (leaf_shape) {
                    if (A > 1 && cfg_.leaf_rule == LeafRule::Strict)
                        fail(ErrorKind::NonReducedBranch, "branch of multiplicity " + std::to_string(A) + " needs the generalized leaf rule");
                    ids.push_back(add_top(link, at, tr.change, A));
                    continue;
                }
                PlaneSeries child = tr.child;
                if (assume_exact_ && !child.is_exact())
                    child = child.with_precision(kExact);
                ids.push_back(build(child, link, at, tr.change, depth + 1, A));
            }
            children.push_back(std::move(ids));
        }
        tree_.bamboos[id].children = std::move(children);
        return id;
    }

    long add_top(const ParentLink& link, const VertexData& at, const TschCoordChange& change, long A)
    {
        Bamboo T;
        T.id = static_cast<long>(tree_.bamboos.size());
        T.parent = link;
        T.local = PlaneSeries::monomial(1, at.N, A);
        T.newton.alpha = at.N;
        T.newton.beta = A;
        T.fan = regular_subdivision({});
        T.ndata = numerical_data(T.fan, T.newton, at.nu);
        T.root_data = at;
        T.change = change;
        T.is_top = true;
        T.leaf_multiplicity = A;
        if (A > 1)
            tree_.generalized_leaf = true;
        tree_.bamboos.push_back(std::move(T));
        return tree_.bamboos.back().id;
    }

    long p_;
    int e_;
    const BuildConfig& cfg_;
    long prec_;
    bool assume_exact_;
    ResolutionTree tree_;
};

} // namespace detail

inline ResolutionTree build_tree(const PlaneSeries& f, long p, int e, const BuildConfig& cfg = {})
{
    long prec = cfg.initial_precision > 0 ? cfg.initial_precision : 2 * detail::total_degree(f) + 8;
    prec = std::min(prec, cfg.precision_cap);
    for (;;) {
        try {
            return detail::TreeBuilder(p, e, cfg, prec, false).run(f);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::PrecisionExhausted)
                throw;
            if (prec >= cfg.precision_cap)
                break;
            prec = std::min(2 * prec, cfg.precision_cap);
        }
    }
    ResolutionTree t = detail::TreeBuilder(p, e, cfg, prec, true).run(f);
    t.assumed_exact = true;
    return t;
}

// ------------------------------------------------------------ cross-checks

struct CrosscheckReport {
    bool ok = true;
    long checked = 0;
    long undetermined = 0;
    std::vector<std::string> failures;
};

namespace detail {

// Jacobian determinant of the monomial chart (x,y) -> (x^c y^c1, x^d y^d1)
inline PlaneSeries chart_jacobian(const Matrix2& s)
{
    PlaneSeries X = PlaneSeries::monomial(1, s[0][0], s[0][1]);
    PlaneSeries Y = PlaneSeries::monomial(1, s[1][0], s[1][1]);
    return derivative_x(X) * derivative_y(Y) - derivative_y(X) * derivative_x(Y);
}

} // namespace detail

inline CrosscheckReport tree_multiplicity_crosscheck(const ResolutionTree& tree)
{
    CrosscheckReport rep;
    auto bad = [&](long b, long j, const std::string& what) {
        rep.ok = false;
        rep.failures.push_back("bamboo " + std::to_string(b) + " vertex " + std::to_string(j) + ": " + what);
    };
    for (const Bamboo& B : tree.bamboos) {
        const auto& T = B.fan.vertices;
        long m = B.fan.m();
        long nu_root = B.root_data ? B.root_data->nu : 1;
        // the 2-form is u^(nu_root - 1) du dv up to a unit
        PlaneSeries weight = PlaneSeries::monomial(1, nu_root - 1, 0);
        for (long j = 0; j <= m; ++j) {
            Matrix2 s = chart_matrix(T[j][0], T[j][1], T[j + 1][0], T[j + 1][1]);
            PlaneSeries pulled = toric_pullback(B.local, s);
            long N = pulled.x_order();
            if (N >= pulled.precision()) {
                ++rep.undetermined;
            } else {
                ++rep.checked;
                if (N != B.ndata[j].N)
                    bad(B.id, j, "pullback order " + std::to_string(N) + " vs closed form " + std::to_string(B.ndata[j].N));
            }
            PlaneSeries form = toric_pullback(weight, s) * detail::chart_jacobian(s);
            if (form.is_zero() || form.x_order() + 1 != B.ndata[j].nu)
                bad(B.id, j, "2-form order vs closed form " + std::to_string(B.ndata[j].nu));
            if (j == m) {
                if (form.y_order() + 1 != B.ndata[m + 1].nu)
                    bad(B.id, m + 1, "2-form order along the last divisor");
                if (pulled.is_exact()) {
                    if (pulled.y_order() != B.ndata[m + 1].N)
                        bad(B.id, m + 1, "pullback y-order vs closed form");
                }
            }
        }
        if (B.parent) {
            const Bamboo& P = tree.at(B.parent->bamboo);
            long j = P.fan.marked.at(B.parent->facet);
            if (!B.root_data || B.root_data->N != P.ndata[j].N || B.root_data->nu != P.ndata[j].nu)
                bad(B.id, 0, "root ray data differs from the parent's marked vertex");
            // recentring v = y_j + xi + s(u) has Jacobian det 1
            if (B.change) {
                PlaneSeries v = PlaneSeries::monomial(1, 0, 1) + PlaneSeries::constant(B.change->xi) + B.change->shift;
                PlaneSeries u = PlaneSeries::monomial(1, 1, 0);
                PlaneSeries jac = derivative_x(u) * derivative_y(v) - derivative_y(u) * derivative_x(v);
                if (!(jac.coeff(0, 0) == 1 && jac.terms().size() == 1))
                    bad(B.id, 0, "recentring is not volume preserving");
            }
        }
    }
    return rep;
}

// ------------------------------------------------------------ dumps

inline nlohmann::json to_json(const ResolutionTree& tree)
{
    nlohmann::json bs = nlohmann::json::array();
    for (const Bamboo& B : tree.bamboos) {
        nlohmann::json b = {{"id", B.id}, {"is_top", B.is_top}, {"newton", to_json(B.newton)}, {"fan", to_json(B.fan, B.ndata)}};
        if (B.parent)
            b["parent"] = {{"bamboo", B.parent->bamboo}, {"facet", B.parent->facet}, {"branch", B.parent->branch}};
        if (B.root_data)
            b["root_data"] = {B.root_data->N, B.root_data->nu};
        if (B.is_top)
            b["leaf_multiplicity"] = B.leaf_multiplicity;
        if (!B.is_top)
            b["local_series"] = to_text(B.local);
        b["children"] = B.children;
        bs.push_back(b);
    }
    return {{"root", tree.root},
            {"precision", tree.precision},
            {"truncation_assumed_exact", tree.assumed_exact},
            {"generalized_leaf_rule", tree.generalized_leaf},
            {"bamboos", bs}};
}

inline std::string to_dot(const ResolutionTree& tree)
{
    std::ostringstream os;
    os << "graph resolution {\n  node [shape=circle, fontsize=10];\n";
    for (const Bamboo& B : tree.bamboos) {
        long m = B.fan.m();
        for (long j = 1; j <= m; ++j) {
            os << "  b" << B.id << "_" << j << " [label=\"(" << B.ndata[j].N << "," << B.ndata[j].nu << ")\"";
            if (B.fan.is_marked(j))
                os << ", style=filled, fillcolor=lightgray";
            os << "];\n";
            if (j > 1)
                os << "  b" << B.id << "_" << j - 1 << " -- b" << B.id << "_" << j << ";\n";
        }
        if (B.is_top)
            os << "  b" << B.id << " [shape=point, xlabel=\"v^" << B.leaf_multiplicity << "\"];\n";
        if (B.parent) {
            const Bamboo& P = tree.at(B.parent->bamboo);
            long j = P.fan.marked.at(B.parent->facet);
            std::string self = B.is_top ? "b" + std::to_string(B.id) : "b" + std::to_string(B.id) + "_1";
            if (!B.is_top && m == 0)
                self = "b" + std::to_string(B.id);
            os << "  b" << P.id << "_" << j << " -- " << self << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

} // namespace igusa
