#include <chrono>
#include <iostream>
#include <random>

#include "support.hpp"

using namespace igusa;
using namespace igusa::testing;

namespace {

// every comparison below is exact rational or polynomial equality
constexpr const char* kTolerance = "exact";
constexpr int kLocalOrder = 6;     // c_0..c_6
constexpr int kPoincareOrder = 5;  // t-order of the Poincare identity
constexpr long kPoincarePrime = 7;
constexpr int kRandomPoleInputs = 200;
constexpr long kRandomPolePrime = 101;
constexpr int kRandomRefinements = 50;
constexpr int kMaxMediants = 5;

struct Criterion {
    Criterion(int i, std::string t) : id(i), title(std::move(t)) {}
    int id;
    std::string title;
    bool ok = true;
    long checked = 0;
    std::vector<std::string> failures;

    void fail(const std::string& why)
    {
        ok = false;
        if (failures.size() < 8)
            failures.push_back(why);
    }
};

PlaneSeries P(const std::string& s) { return parse_poly(s); }

// fans and trees collected along the way for the structural checks
struct Constructed {
    std::vector<ResolutionTree> trees;
    struct FanCase {
        std::string name;
        NewtonData nd;
        FanSubdivision fan;
        NumericalData ndata;
    };
    std::vector<FanCase> fans;
};

void check_true_poles(Criterion& c, const std::string& name, const ZetaResult& z)
{
    ++c.checked;
    try {
        ZetaExpr again = simplify_true_poles(z.raw, z.canonical);
        if (!contained_in(again.denominator(), z.canonical))
            c.fail(name + ": simplified denominator leaves the canonical set");
        if (!value_equal(again, z.raw))
            c.fail(name + ": simplification changed the value");
    } catch (const Error& e) {
        c.fail(name + ": " + e.what());
    }
}

void criterion1(Criterion& c, Criterion& poles, Constructed& built)
{
    for (const auto& g : golden_cases()) {
        ++c.checked;
        try {
            Pipeline p = nondeg_pipeline(g.poly);
            built.fans.push_back({g.name, p.nd, p.fan, p.ndata});
            ZetaResult z = golden_global(g);
            if (!value_equal(z.raw, g.printed) || !value_equal(z.simplified, g.printed))
                c.fail(g.name + " differs from the closed form");
            check_true_poles(poles, g.name, z);
        } catch (const Error& e) {
            c.fail(g.name + ": " + e.what());
        }
    }
}

void compare_local(Criterion& c, const std::string& label, const ZetaResult& z, const PlaneSeries& f, long p)
{
    ++c.checked;
    auto zc = series_coefficients(z.simplified, p, kLocalOrder);
    CountProfile cp = count_profile(f, p, kLocalOrder);
    for (int m = 0; m <= kLocalOrder; ++m) {
        if (zc[m] != cp.local_coeffs[m]) {
            c.fail(label + " c_" + std::to_string(m) + ": zeta " + rat_str(zc[m]) + " vs oracle " + rat_str(cp.local_coeffs[m]));
            return;
        }
    }
}

void criterion2(Criterion& c, Criterion& poles, Constructed& built)
{
    for (const char* s : {"y^2-x^3", "y^3-x^4", "y^3-x^5", "y^3-x^3*y", "x*y^2-x^4", "y^2-x^4"}) {
        for (long p : {3L, 5L, 7L}) {
            std::string label = std::string(s) + " p=" + std::to_string(p);
            Pipeline pl;
            try {
                pl = nondeg_pipeline(s, p);
                build_tree(pl.f, p, 1); // same condition checks as the general route
            } catch (const Error& e) {
                std::cout << "  skip " << label << ": " << e.what() << "\n";
                continue;
            }
            try {
                ZetaResult z = zeta_nondeg_local(pl.nd, pl.fan, pl.ndata, pl.r);
                check_true_poles(poles, label, z);
                compare_local(c, label, z, pl.f, p);
            } catch (const Error& e) {
                c.fail(label + ": " + e.what());
            }
        }
        Pipeline pl = nondeg_pipeline(s);
        built.fans.push_back({s, pl.nd, pl.fan, pl.ndata});
    }
}

void criterion3(Criterion& c, Criterion& poles, Constructed& built)
{
    for (const char* s : {"(y^2-x^3)^2-x^7", "(y^2-x^3)^2-x^5*y", "(y-x^2)^2-x^5"}) {
        for (long p : {5L, 7L}) {
            std::string label = std::string(s) + " p=" + std::to_string(p);
            try {
                ResolutionTree t = build_tree(P(s), p, 1);
                ZetaResult z = zeta_general_local(t);
                check_true_poles(poles, label, z);
                compare_local(c, label + " (" + std::to_string(t.bamboos.size()) + " bamboos)", z, P(s), p);
                built.trees.push_back(std::move(t));
            } catch (const Error& e) {
                c.fail(label + ": " + e.what());
            }
        }
    }
}

void criterion4(Criterion& c)
{
    for (const auto& g : golden_cases()) {
        ++c.checked;
        try {
            ZetaResult z = golden_global(g);
            CountProfile cp = count_profile(P(g.poly), kPoincarePrime, kPoincareOrder);
            PoincareReport rep = poincare_identity_check(z.simplified, cp.global_counts, kPoincarePrime, kPoincareOrder);
            if (!rep.ok)
                c.fail(g.name + ": first mismatch at t^" + std::to_string(rep.first_mismatch));
        } catch (const Error& e) {
            c.fail(g.name + ": " + e.what());
        }
    }
}

void criterion5_random(Criterion& c, Constructed& built)
{
    std::mt19937 rng(20261016);
    int done = 0, attempts = 0;
    while (done < kRandomPoleInputs && attempts < 4 * kRandomPoleInputs) {
        ++attempts;
        std::string s = random_nondegenerate(rng);
        Pipeline p;
        try {
            p = nondeg_pipeline(s, kRandomPolePrime);
        } catch (const Error&) {
            continue; // roots collide mod the prime
        }
        ++done;
        ZetaResult local = zeta_nondeg_local(p.nd, p.fan, p.ndata, p.r);
        check_true_poles(c, s, local);
        try {
            ResolutionTree t = build_tree(p.f, kRandomPolePrime, 1);
            check_true_poles(c, s + " (tree)", zeta_general_local(t));
            if (done % 10 == 0)
                built.trees.push_back(std::move(t));
        } catch (const Error& e) {
            c.fail(s + " (tree): " + e.what());
        }
        if (done % 10 == 0)
            built.fans.push_back({s, p.nd, p.fan, p.ndata});
    }
    if (done < kRandomPoleInputs)
        c.fail("only " + std::to_string(done) + " random inputs passed the conditions");
}

void criterion6(Criterion& c, Constructed& built)
{
    std::mt19937 rng(6);
    for (int it = 0; it < kRandomRefinements; ++it) {
        std::string s = random_nondegenerate(rng);
        ++c.checked;
        try {
            Pipeline p = nondeg_pipeline(s);
            ZetaResult a = zeta_nondeg_local(p.nd, p.fan, p.ndata, p.r);
            FanSubdivision fine = regular_subdivision(facet_normals(p.nd), random_refinement(p.fan, rng, kMaxMediants));
            NumericalData nfine = numerical_data(fine, p.nd);
            ZetaResult b = zeta_nondeg_local(p.nd, fine, nfine, p.r);
            if (!value_equal(a.raw, b.raw))
                c.fail(s + ": refinement changes Z_0");
            built.fans.push_back({s + " refined", p.nd, fine, nfine});
        } catch (const Error& e) {
            c.fail(s + ": " + e.what());
        }
    }
}

void criterion7(Criterion& c, const Constructed& built)
{
    for (const auto& fc : built.fans) {
        ++c.checked;
        auto rep = fan_invariant_checks(fc.ndata, fc.fan, fc.nd);
        if (!rep.ok)
            c.fail(fc.name + ": " + rep.failures.front());
    }
    for (const auto& t : built.trees) {
        for (const Bamboo& B : t.bamboos) {
            if (B.is_top || B.fan.vertices.size() < 2)
                continue;
            ++c.checked;
            long nu_root = B.root_data ? B.root_data->nu : 1;
            auto rep = fan_invariant_checks(B.ndata, B.fan, B.newton, nu_root);
            if (!rep.ok)
                c.fail("bamboo " + std::to_string(B.id) + ": " + rep.failures.front());
        }
        ++c.checked;
        CrosscheckReport cr = tree_multiplicity_crosscheck(t);
        if (!cr.ok)
            c.fail("crosscheck: " + cr.failures.front());
    }
}

} // namespace

int main()
{
    using clock = std::chrono::steady_clock;
    std::vector<Criterion> cs{{1, "golden closed forms (global, symbolic q)"},
                              {2, "local series vs oracle, nondegenerate"},
                              {3, "local series vs oracle, degenerate"},
                              {4, "Poincare identity at p = 7"},
                              {5, "true poles"},
                              {6, "subdivision independence"},
                              {7, "structural invariants"}};
    Constructed built;
    std::vector<double> secs(cs.size());
    auto timed = [&](std::size_t i, const std::function<void()>& fn) {
        auto t0 = clock::now();
        try {
            fn();
        } catch (const std::exception& e) {
            cs[i].fail(std::string("uncaught: ") + e.what());
        }
        secs[i] = std::chrono::duration<double>(clock::now() - t0).count();
    };
    timed(0, [&] { criterion1(cs[0], cs[4], built); });
    timed(1, [&] { criterion2(cs[1], cs[4], built); });
    timed(2, [&] { criterion3(cs[2], cs[4], built); });
    timed(3, [&] { criterion4(cs[3]); });
    timed(4, [&] { criterion5_random(cs[4], built); });
    timed(5, [&] { criterion6(cs[5], built); });
    timed(6, [&] { criterion7(cs[6], built); });

    bool all = true;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& c = cs[i];
        all = all && c.ok;
        std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << c.checked << " checks, tolerance "
                  << kTolerance << ", " << std::fixed << std::setprecision(1) << secs[i] << " s]\n";
        for (const auto& f : c.failures)
            std::cout << "    " << f << "\n";
    }
    return all ? 0 : 1;
}
