#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "igusa/cli.hpp"

namespace {

template <class E>
CLI::Option* add_choice(CLI::App& app, const std::string& flag, std::string& slot, const std::map<std::string, E>& choices,
                        const std::string& help)
{
    std::vector<std::string> names;
    for (const auto& [k, v] : choices)
        names.push_back(k);
    return app.add_option(flag, slot, help)->check(CLI::IsMember(names))->option_text("TEXT");
}

} // namespace

int main(int argc, char** argv)
{
    using namespace igusa;
    const std::map<std::string, RunMode> modes{{"local", RunMode::Local}, {"global", RunMode::Global}};
    const std::map<std::string, OutputFormat> outputs{{"text", OutputFormat::Text}, {"latex", OutputFormat::Latex}, {"json", OutputFormat::Json}};
    const std::map<std::string, LeafRule> rules{{"strict", LeafRule::Strict}, {"strict-paper", LeafRule::Strict}, {"generalized", LeafRule::Generalized}};
    const std::map<std::string, Engine> engines{{"auto", Engine::Auto}, {"nondegenerate", Engine::Nondegenerate}, {"general", Engine::General}};

    RunConfig cfg;
    std::string mode = "local", output = "text", rule = "generalized", engine = "auto";
    CLI::App app{"Local and global p-adic zeta functions of plane curve singularities"};
    app.add_option("--poly", cfg.poly, "polynomial in x, y, e.g. \"(y^2-x^3)^2-x^7\"")->required();
    app.add_option("--prime", cfg.prime, "residue characteristic p");
    app.add_option("--ext", cfg.ext, "q = p^ext (default 1)")->check(CLI::PositiveNumber);
    add_choice(app, "--mode", mode, modes, "local (default) or global");
    app.add_option("--fan", cfg.fan, "interior fan vertices \"c,d;c,d;...\"");
    add_choice(app, "--output", output, outputs, "text (default), latex or json");
    app.add_option("--oracle", cfg.oracle_depth, "compare against brute-force counts up to this order");
    app.add_option("--precision-cap", cfg.precision_cap, "largest x-adic precision tried (default 1024)")->check(CLI::PositiveNumber);
    add_choice(app, "--leaf-rule", rule, rules, "generalized (default) or strict");
    app.add_option("--dump-tree", cfg.dump_tree, "print the resolution tree as json or dot")->check(CLI::IsMember({"json", "dot"}));
    app.add_flag("--explain", cfg.explain, "print the Newton polygon data");
    app.add_option("--points", cfg.points, "#V(f~) as a polynomial in q, e.g. \"2q-1\"");
    add_choice(app, "--engine", engine, engines, "auto (default), nondegenerate or general");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_code::usage;
    }
    cfg.mode = modes.at(mode);
    cfg.output = outputs.at(output);
    cfg.leaf_rule = rules.at(rule);
    cfg.engine = engines.at(engine);
    return run(cfg, std::cout, std::cerr);
}
