// Copyright (c) dbmai contributors.
// SPDX-License-Identifier: Apache-2.0
#include "dbmai/cli.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dbmai/analysis.hpp"
#include "dbmai/constraints.hpp"
#include "dbmai/parser.hpp"

namespace dbmai {

namespace {

struct CliConfig {
    std::string input;
    std::string domain = "dbm";
    std::size_t widening_delay = 1;
    std::size_t descending_steps = 2;
    std::string format = "text";
    std::string coefficients = "integer";
    bool compare = false;
    bool dump_cfg = false;
};

struct PointReport {
    std::string label;
    std::vector<std::string> constraints;
};

struct Report {
    std::vector<PointReport> points;
    std::vector<AssertVerdict> asserts;
    std::vector<std::string> comparison; // text lines
    nlohmann::json comparison_json;
    std::size_t violations = 0;
};

template <Coefficient T>
Report collect(const ProgramModel& model, const AnalysisOptions& opts, bool compare) {
    Report r;
    const auto fill = [&](const auto& result) {
        for (std::size_t n = 0; n < result.values.size(); ++n) {
            r.points.push_back({result.point_labels[n], render_all(result.values[n], model.program.names)});
        }
        r.asserts = result.asserts;
    };
    if (opts.domain == DomainKind::dbm) {
        fill(analyze_dbm<T>(model, opts));
    } else {
        fill(analyze_box<T>(model, opts));
    }
    if (compare) {
        const auto cmp = compare_domains<T>(model, opts);
        r.violations = cmp.violations;
        r.comparison_json = nlohmann::json::object();
        nlohmann::json points = nlohmann::json::object();
        for (const auto& p : cmp.points) {
            nlohmann::json vars = nlohmann::json::object();
            for (const auto& v : p.vars) {
                const std::string name = variable_name(model.program.names, v.var);
                std::string line = p.label + " " + name + ": dbm " + v.dbm.to_string() + " interval " + v.box.to_string();
                if (!v.contained) {
                    line += "  VIOLATION";
                } else if (v.strictly_tighter) {
                    line += "  tighter";
                }
                r.comparison.push_back(line);
                vars[name] = {{"dbm", v.dbm.to_string()},
                              {"interval", v.box.to_string()},
                              {"contained", v.contained},
                              {"strictly_tighter", v.strictly_tighter}};
            }
            if (p.relational_gain) {
                r.comparison.push_back(p.label + " relational constraints beyond any box");
            }
            points[p.label] = {{"vars", vars}, {"relational_gain", p.relational_gain}};
        }
        r.comparison.push_back("containment violations: " + std::to_string(cmp.violations));
        r.comparison.push_back("points improved by dbm: " + std::to_string(cmp.improvements));
        r.comparison_json = {{"points", points}, {"violations", cmp.violations}, {"improvements", cmp.improvements}};
    }
    return r;
}

void print_text(std::ostream& out, const CliConfig& cfg, const ProgramModel& model, const Report& r) {
    if (cfg.dump_cfg) {
        out << "cfg:\n";
        for (const auto& e : model.graph.edges) {
            out << "  " << model.graph.node_labels[e.src] << " -> " << model.graph.node_labels[e.dst] << ": "
                << to_string(e.label, model.program.names) << '\n';
        }
    }
    out << "domain: " << cfg.domain << '\n';
    for (const auto& p : r.points) {
        out << p.label << '\n';
        if (p.constraints.empty()) {
            out << "  top\n";
        }
        for (const auto& c : p.constraints) {
            out << "  " << c << '\n';
        }
    }
    if (!r.asserts.empty()) {
        out << "asserts:\n";
        for (const auto& a : r.asserts) {
            out << "  " << a.scope << ":" << a.line << " " << to_string(a.verdict) << '\n';
        }
    }
    if (cfg.compare) {
        out << "comparison:\n";
        for (const auto& line : r.comparison) {
            out << "  " << line << '\n';
        }
    }
}

void print_json(std::ostream& out, const CliConfig& cfg, const ProgramModel& model, const Report& r) {
    nlohmann::json j;
    j["domain"] = cfg.domain;
    j["options"] = {{"widening_delay", cfg.widening_delay},
                    {"descending_steps", cfg.descending_steps},
                    {"coefficients", cfg.coefficients}};
    nlohmann::json points = nlohmann::json::object();
    for (const auto& p : r.points) {
        points[p.label] = p.constraints;
    }
    j["points"] = points;
    nlohmann::json asserts = nlohmann::json::array();
    for (const auto& a : r.asserts) {
        asserts.push_back({{"scope", a.scope}, {"line", a.line}, {"verdict", to_string(a.verdict)}});
    }
    j["asserts"] = asserts;
    if (cfg.dump_cfg) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& e : model.graph.edges) {
            edges.push_back({{"src", model.graph.node_labels[e.src]},
                             {"dst", model.graph.node_labels[e.dst]},
                             {"label", to_string(e.label, model.program.names)}});
        }
        j["cfg"] = {{"nodes", model.graph.node_labels}, {"edges", edges}};
    }
    if (cfg.compare) {
        j["comparison"] = r.comparison_json;
    }
    out << j.dump(2) << '\n';
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliConfig cfg;
    CLI::App app{"Difference-bound matrix abstract interpreter"};
    app.require_subcommand(1);
    CLI::App* analyze = app.add_subcommand("analyze", "Analyze a program and print invariants per control point");
    analyze->add_option("input", cfg.input, "Program source file")->required();
    analyze->add_option("--domain", cfg.domain, "Abstract domain")->check(CLI::IsMember({"dbm", "interval"}));
    analyze->add_option("--widening-delay", cfg.widening_delay, "Joins before widening starts at a loop head");
    analyze->add_option("--descending-steps", cfg.descending_steps, "Cap on narrowing passes");
    analyze->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    analyze->add_option("--coefficients", cfg.coefficients, "Coefficient arithmetic")
        ->check(CLI::IsMember({"integer", "rational"}));
    analyze->add_flag("--compare", cfg.compare, "Also run the interval domain and check containment");
    analyze->add_flag("--dump-cfg", cfg.dump_cfg, "Print the interleaving product graph");

    std::vector<std::string> argv_storage{"dbmai"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) {
        argv.push_back(a.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_proved;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    std::ifstream in(cfg.input);
    if (!in) {
        err << "error: cannot read '" << cfg.input << "'\n";
        return exit_usage;
    }
    std::stringstream text;
    text << in.rdbuf();

    try {
        ProgramModel model = build_model(parse_program(text.str()));
        for (const auto& c : model.processes) {
            for (const auto& d : c.diagnostics) {
                err << "warning: " << d << '\n';
            }
        }
        AnalysisOptions opts;
        opts.domain = cfg.domain == "dbm" ? DomainKind::dbm : DomainKind::interval;
        opts.widening_delay = cfg.widening_delay;
        opts.descending_steps = cfg.descending_steps;
        opts.mode = cfg.coefficients == "integer" ? CoefficientMode::integer : CoefficientMode::rational;
        const Report r = opts.mode == CoefficientMode::integer ? collect<Integer>(model, opts, cfg.compare)
                                                               : collect<Rational>(model, opts, cfg.compare);
        if (cfg.format == "json") {
            print_json(out, cfg, model, r);
        } else {
            print_text(out, cfg, model, r);
        }
        bool all_proved = r.violations == 0;
        for (const auto& a : r.asserts) {
            all_proved = all_proved && a.verdict == Verdict::proved;
        }
        return all_proved ? exit_proved : exit_unproved;
    } catch (const ParseError& e) {
        err << cfg.input << ":" << e.what() << '\n';
        return exit_usage;
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << "; rerun with --coefficients rational\n";
        return exit_overflow;
    }
}

} // namespace dbmai
