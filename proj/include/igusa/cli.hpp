#pragma once

#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include "igusa/oracle.hpp"
#include "igusa/zeta.hpp"

namespace igusa {

enum class RunMode { Local, Global };
enum class OutputFormat { Text, Latex, Json };
enum class Engine { Auto, Nondegenerate, General };

struct RunConfig {
    std::string poly;
    std::optional<long> prime;
    int ext = 1;
    RunMode mode = RunMode::Local;
    std::optional<std::string> fan;          // interior vertices "c,d;c,d;..."
    OutputFormat output = OutputFormat::Text;
    std::optional<int> oracle_depth;
    long precision_cap = 1024;
    LeafRule leaf_rule = LeafRule::Generalized;
    std::optional<std::string> dump_tree;    // "json" or "dot"
    bool explain = false;
    std::optional<std::string> points;       // #V(f~) as a polynomial in q
    Engine engine = Engine::Auto;
    long budget = 0;                         // 0: IGUSA_BUDGET or the built-in default
};

// exit-code contract
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 1;
inline constexpr int condition = 2;
inline constexpr int true_pole = 3;
inline constexpr int mismatch = 4;
inline constexpr int budget = 5;
inline constexpr int precision = 6;
inline constexpr int unsupported = 7;
inline constexpr int internal = 8;
} // namespace exit_code

inline int exit_code_for(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::EmptyInput:
    case ErrorKind::Syntax:
    case ErrorKind::ZeroSeries:
    case ErrorKind::NonPrimitive:
    case ErrorKind::NotRegular:
    case ErrorKind::NotAdmissible:
        return exit_code::usage;
    case ErrorKind::ConditionViolated:
        return exit_code::condition;
    case ErrorKind::TruePoleViolation:
        return exit_code::true_pole;
    case ErrorKind::Mismatch:
        return exit_code::mismatch;
    case ErrorKind::BudgetExceeded:
        return exit_code::budget;
    case ErrorKind::PrecisionExhausted:
        return exit_code::precision;
    case ErrorKind::UnsupportedGroundField:
    case ErrorKind::SmoothBranchUnsupported:
    case ErrorKind::NonReducedBranch:
    case ErrorKind::FieldTooLarge:
    case ErrorKind::SymbolicCountMissing:
    case ErrorKind::GlobalStructureUnsupported:
        return exit_code::unsupported;
    case ErrorKind::DepthExceeded:
    case ErrorKind::InvariantViolation:
        return exit_code::internal;
    }
    return exit_code::internal;
}

inline bool is_prime(long p)
{
    if (p < 2)
        return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

// "2q-1" -> 2q - 1
inline LaurentPoly2 parse_q_poly(const std::string& text)
{
    std::string s = text;
    for (char& ch : s) {
        if (ch == 'q')
            ch = 'x';
        else if (ch == 'x' || ch == 'y')
            fail(ErrorKind::InvalidInput, "point count must be a polynomial in q");
    }
    PlaneSeries f = parse_poly(s);
    LaurentPoly2 out;
    for (const auto& [k, c] : f.terms())
        out += LaurentPoly2::monomial(c, k.first, 0);
    return out;
}

namespace detail {

inline Rat constant_at(const LaurentPoly2& p, long q)
{
    auto v = p.at_q(q);
    return v.empty() ? Rat(0) : v[0];
}

inline std::string poles_text(const std::vector<Pole>& poles)
{
    std::string s;
    for (const auto& p : poles) {
        if (!s.empty())
            s += ", ";
        s += rat_str(p.real_part);
        if (p.order > 1)
            s += " (order " + std::to_string(p.order) + ")";
    }
    return s.empty() ? "none" : s;
}

struct OracleRow {
    int m;
    std::string N, V, oracle_c, zeta_c;
    bool match;
};

} // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        if (cfg.prime && !is_prime(*cfg.prime))
            fail(ErrorKind::InvalidInput, std::to_string(*cfg.prime) + " is not prime");
        if (cfg.ext < 1)
            fail(ErrorKind::InvalidInput, "extension degree must be positive");
        if (cfg.oracle_depth && (!cfg.prime || cfg.ext != 1))
            fail(ErrorKind::InvalidInput, "the oracle needs --prime and q = p");
        if (cfg.oracle_depth && *cfg.oracle_depth < 0)
            fail(ErrorKind::InvalidInput, "oracle depth must be nonnegative");
        long p = cfg.prime.value_or(0);
        int e = cfg.ext;
        long budget = cfg.budget > 0 ? cfg.budget : default_budget();

        PlaneSeries f = parse_poly(cfg.poly);
        NewtonData nd = newton_polygon(f, p);
        std::optional<std::vector<Vec2>> interior;
        if (cfg.fan)
            interior = parse_fan(*cfg.fan);

        NondegeneracyReport rep = check_nondegenerate(nd, p, e);
        bool nondeg = rep.status != NondegeneracyReport::Status::Degenerate;
        if (cfg.engine == Engine::Nondegenerate && !nondeg)
            fail(ErrorKind::ConditionViolated, "face polynomial of facet " + std::to_string(rep.facet) + " has a repeated or zero root");
        bool use_general = cfg.engine == Engine::General || !nondeg;
        if (cfg.mode == RunMode::Global && use_general)
            fail(ErrorKind::GlobalStructureUnsupported, "global zeta functions need a Newton nondegenerate polynomial");

        BuildConfig bc;
        bc.precision_cap = cfg.precision_cap;
        bc.leaf_rule = cfg.leaf_rule;
        bc.root_fan = interior;

        FanSubdivision fan = interior ? regular_subdivision(facet_normals(nd), *interior) : regular_subdivision(facet_normals(nd));
        NumericalData ndata = numerical_data(fan, nd);
        std::optional<ResolutionTree> tree;
        ZetaResult res;

        if (use_general) {
            tree = build_tree(f, p, e, bc);
            res = zeta_general_local(*tree);
        } else if (cfg.mode == RunMode::Local) {
            res = zeta_nondeg_local(nd, fan, ndata, rep.r);
        } else {
            PointData pts;
            if (cfg.points) {
                pts = points_from_total(nd, parse_q_poly(*cfg.points));
            } else if (p > 0) {
                PointData counted = count_points(f, nd, p, e);
                PointData structural = structural_points(nd, rep.r);
                long q = 1;
                for (int i = 0; i < e; ++i)
                    q *= p;
                if (detail::constant_at(counted.total, q) == detail::constant_at(structural.total, q) &&
                    counted.smooth == LaurentPoly2(detail::constant_at(structural.smooth, q))) {
                    pts = structural;
                } else {
                    pts = counted;
                    res.concrete_q = q;
                }
            } else {
                fail(ErrorKind::SymbolicCountMissing, "symbolic global mode needs --points or --prime");
            }
            auto cq = res.concrete_q;
            res = zeta_nondeg_global(nd, fan, ndata, rep.r, pts);
            res.concrete_q = cq;
        }
        if (rep.status == NondegeneracyReport::Status::Unsplit && !use_general)
            res.notes.push_back("a face polynomial does not split over F_q; root counts are those over F_q");
        if (cfg.dump_tree && !tree)
            tree = build_tree(f, p, e, bc);

        // oracle comparison
        std::vector<detail::OracleRow> rows;
        bool oracle_ok = true;
        std::optional<PoincareReport> poincare;
        if (cfg.oracle_depth) {
            int M = *cfg.oracle_depth;
            CountProfile cp = count_profile(f, p, M, budget);
            if (cfg.mode == RunMode::Local) {
                auto z = series_coefficients(res.simplified, p, M);
                for (int m = 0; m <= M; ++m) {
                    bool ok = z[m] == cp.local_coeffs[m];
                    oracle_ok = oracle_ok && ok;
                    rows.push_back({m, cp.global_counts[m].get_str(), rat_str(cp.local_measures[m]), rat_str(cp.local_coeffs[m]), rat_str(z[m]), ok});
                }
            } else {
                poincare = poincare_identity_check(res.simplified, cp.global_counts, p, M);
                oracle_ok = poincare->ok;
                for (int m = 0; m <= M; ++m)
                    rows.push_back({m, cp.global_counts[m].get_str(), cp.local_measures.empty() ? "" : rat_str(cp.local_measures[m]),
                                    rat_str(poincare->lhs[m]), rat_str(poincare->rhs[m]), poincare->lhs[m] == poincare->rhs[m]});
            }
        }

        std::string zname = cfg.mode == RunMode::Local ? "Z_0(f;s)" : "Z(f;s)";
        if (cfg.output == OutputFormat::Json) {
            nlohmann::json j;
            j["input"] = to_text(f);
            j["engine"] = use_general ? "general" : "nondegenerate";
            j["zeta"] = to_json(res);
            j["fan"] = to_json(fan, ndata);
            if (cfg.explain)
                j["newton"] = to_json(nd);
            if (cfg.dump_tree)
                j["tree"] = *cfg.dump_tree == "dot" ? nlohmann::json(to_dot(*tree)) : to_json(*tree);
            if (cfg.oracle_depth) {
                nlohmann::json rj = nlohmann::json::array();
                for (const auto& r : rows)
                    rj.push_back({{"m", r.m}, {"N_m", r.N}, {"V_m", r.V}, {"oracle", r.oracle_c}, {"zeta", r.zeta_c}, {"match", r.match}});
                j["oracle"] = {{"p", p}, {"kind", cfg.mode == RunMode::Local ? "local coefficients" : "Poincare identity"}, {"rows", rj}, {"ok", oracle_ok}};
            }
            out << j.dump(2) << "\n";
        } else {
            if (cfg.explain)
                out << "newton: " << to_json(nd).dump() << "\n";
            if (cfg.output == OutputFormat::Latex) {
                out << "% raw\n" << zname << " = " << to_latex(res.raw) << "\n";
                out << "% simplified\n" << zname << " = " << to_latex(res.simplified) << "\n";
                out << "% candidate poles (real parts): " << detail::poles_text(res.poles) << "\n";
            } else {
                out << "engine: " << (use_general ? "general" : "nondegenerate") << "\n";
                out << "raw: " << zname << " = " << to_text(res.raw) << "\n";
                out << "simplified: " << zname << " = " << to_text(res.simplified) << "\n";
                out << "candidate poles (real parts): " << detail::poles_text(res.poles) << "\n";
            }
            if (res.concrete_q)
                out << (cfg.output == OutputFormat::Latex ? "% " : "") << "evaluated at q = " << *res.concrete_q << "\n";
            for (const auto& n : res.notes)
                out << (cfg.output == OutputFormat::Latex ? "% " : "") << "note: " << n << "\n";
            if (cfg.dump_tree)
                out << (*cfg.dump_tree == "dot" ? to_dot(*tree) : to_json(*tree).dump(2) + "\n");
            if (cfg.oracle_depth) {
                out << (cfg.mode == RunMode::Local ? "m,N_m,V_m,c_m,zeta_c_m,match\n" : "m,N_m,V_m,lhs,rhs,match\n");
                for (const auto& r : rows)
                    out << r.m << "," << r.N << "," << r.V << "," << r.oracle_c << "," << r.zeta_c << "," << (r.match ? "yes" : "no") << "\n";
            }
        }
        if (!oracle_ok) {
            err << "error [Mismatch]: oracle disagrees with the symbolic result\n";
            return exit_code::mismatch;
        }
        return exit_code::ok;
    } catch (const Error& e) {
        err << "error [" << kind_name(e.kind()) << "]: " << e.message() << "\n";
        return exit_code_for(e.kind());
    }
}

} // namespace igusa
