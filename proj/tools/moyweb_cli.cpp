// Command-line front end: evaluate web diagrams, stream colorings, verify the
// local relations and the rank-reduction recursion, and benchmark the naive
// engine against the transfer-matrix engine.
//
// Exit codes: 0 success, 1 parse/validity error, 2 verification failure.

#include "moyweb/builders.hpp"
#include "moyweb/coloring.hpp"
#include "moyweb/evaluator.hpp"
#include "moyweb/reduction.hpp"
#include "moyweb/web_diagram.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace moyweb;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw WebError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

WebDiagram with_rank_checked(const WebDiagram& w, int n) {
    WebDiagram out = with_rank(w, n);
    if (!out.is_valid()) throw WebError("diagram is not a valid web at N=" + std::to_string(n));
    return out;
}

WebDiagram load_web(const std::string& path, int n_override) {
    WebDiagram w = parse(read_input(path));
    if (n_override > 0 && n_override != w.rank()) return with_rank_checked(w, n_override);
    return w;
}

std::string degree_json(int halves) {
    if (halves % 2 == 0) return std::to_string(halves / 2);
    return std::to_string(halves / 2.0);
}

json relation_json(const RelationCheck& rc) {
    json j;
    j["relation"] = rc.relation;
    j["N"] = rc.N;
    json params = json::object();
    for (const auto& [k, v] : rc.params) params[k] = v;
    j["params"] = params;
    j["vacuous"] = rc.vacuous;
    if (!rc.lhs_value.empty()) {
        j["lhs"] = rc.lhs_value;
        j["rhs"] = rc.rhs_value;
    } else {
        j["boundary_colorings"] = rc.boundary_count;
    }
    j["ok"] = rc.ok;
    if (!rc.failures.empty()) {
        json fails = json::array();
        for (const auto& f : rc.failures)
            fails.push_back({{"boundary", f.boundary}, {"lhs", f.lhs}, {"rhs", f.rhs}});
        j["failures"] = fails;
    }
    return j;
}

int run_verify_relations(const std::vector<std::string>& relations, int max_n, int threads,
                         bool json_out) {
    bool all_ok = true;
    for (const std::string& rel : relations) {
        auto grid = relation_grid(rel, max_n);
        std::vector<RelationCheck> results(grid.size());
        if (threads > 1) {
            std::atomic<size_t> next{0};
            std::vector<std::future<void>> pool;
            for (int t = 0; t < threads; ++t)
                pool.push_back(std::async(std::launch::async, [&] {
                    for (size_t i = next++; i < grid.size(); i = next++)
                        results[i] = check_relation(rel, grid[i].first, grid[i].second);
                }));
            for (auto& f : pool) f.get();
        } else {
            for (size_t i = 0; i < grid.size(); ++i)
                results[i] = check_relation(rel, grid[i].first, grid[i].second);
        }
        long long checked = 0, failed = 0;
        for (const RelationCheck& rc : results) {
            if (!rc.ok) failed++;
            checked++;
            all_ok = all_ok && rc.ok;
            if (json_out) std::cout << relation_json(rc).dump() << "\n";
        }
        if (!json_out)
            std::cout << "relation " << rel << ": " << checked << " tuples, "
                      << (failed ? std::to_string(failed) + " FAILED" : "all ok") << "\n";
    }
    return all_ok ? 0 : 2;
}

int run_verify_reduction(int max_n, bool json_out) {
    bool all_ok = true;
    std::vector<WebDiagram> corpus;
    std::vector<std::string> names;
    for (int n = 2; n <= std::min(max_n, 5); ++n)
        for (int k = 1; k <= n; ++k) {
            corpus.push_back(circle(k, n));
            names.push_back("circle k=" + std::to_string(k) + " N=" + std::to_string(n));
        }
    for (int n = 2; n <= std::min(max_n, 4); ++n)
        for (int m = 1; m + 1 <= n; ++m) {
            corpus.push_back(theta(m, 1, n));
            names.push_back("theta m=" + std::to_string(m) + ",n=1 N=" + std::to_string(n));
        }
    if (max_n >= 4) {
        corpus.push_back(closed_square(1, 1, 1, 4));
        names.push_back("closed square N=4");
    }
    for (size_t i = 0; i < corpus.size(); ++i) {
        ReductionReport rep = verify_reduction(corpus[i]);
        bool deg = reduction_degree_identity(corpus[i]);
        bool ok = rep.ok() && deg;
        all_ok = all_ok && ok;
        if (json_out) {
            json j;
            j["web"] = names[i];
            j["lhs"] = rep.lhs.to_string();
            j["rhs_minus"] = rep.rhs_minus.to_string();
            j["rhs_plus"] = rep.rhs_plus.to_string();
            j["degree_identity"] = deg;
            j["ok"] = ok;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << "reduction " << names[i] << ": " << (ok ? "ok" : "FAILED") << "\n";
        }
    }
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact evaluation of sl_N webs by the coloring state sum"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    int n_override = 0;
    std::string engine = "naive";
    bool json_out = false;
    int threads = 1;
    std::uint64_t seed = 1;
    app.add_option("--n", n_override, "Override the rank N of the input diagram");
    app.add_option("--engine", engine, "Evaluation engine: naive|dp")
        ->check(CLI::IsMember({"naive", "dp"}));
    app.add_flag("--json", json_out, "Emit JSON instead of human-readable output");
    app.add_option("--threads", threads, "Worker threads for verification grids")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for generated diagrams (bench)");

    std::string input;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a closed web");
    eval_cmd->add_option("input", input, "Diagram file (- for stdin)")->required();

    auto* col_cmd = app.add_subcommand("colorings", "Stream every coloring as JSON lines");
    col_cmd->add_option("input", input, "Diagram file (- for stdin)")->required();

    auto* writhe_cmd = app.add_subcommand("writhe", "Print the writhe of a closed MOY graph");
    writhe_cmd->add_option("input", input, "Diagram file (- for stdin)")->required();

    std::string relation = "all";
    int max_n = 4;
    auto* verify_cmd = app.add_subcommand("verify", "Verify the local relations on a parameter grid");
    verify_cmd->add_option("--relation", relation, "1..7, assoc, reduction, or all");
    verify_cmd->add_option("--max-N", max_n, "Largest rank to verify");

    auto* reduce_cmd = app.add_subcommand("reduce", "Expand a closed MOY graph over cycle reversals");
    reduce_cmd->add_option("input", input, "Diagram file (- for stdin)")->required();

    int bench_max_height = 10;
    auto* bench_cmd = app.add_subcommand("bench", "Time naive vs dp engines on bubble ladders");
    bench_cmd->add_option("--max-N", bench_max_height, "Largest ladder height")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval_cmd) {
            WebDiagram w = load_web(input, n_override);
            Evaluation ev = engine == "dp" ? evaluate_dp(w) : evaluate_closed(w);
            if (json_out) {
                json j;
                j["web"] = serialize(w);
                j["N"] = w.rank();
                j["value"] = ev.value.to_string();
                j["count"] = ev.coloring_count.str();
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "value: " << ev.value.to_string() << "\n"
                          << "count: " << ev.coloring_count.str() << "\n";
            }
            return 0;
        }
        if (*col_cmd) {
            WebDiagram w = load_web(input, n_override);
            for_each_coloring(w, [&](const std::vector<ColorMask>& colors, int degree) {
                json edges = json::object();
                for (size_t e = 0; e < colors.size(); ++e) {
                    json set = json::array();
                    for (int i = 0; i < w.rank(); ++i)
                        if (colors[e] & (ColorMask{1} << i)) set.push_back(i + 1);
                    edges["e" + std::to_string(e)] = set;
                }
                json j;
                j["edges"] = edges;
                j["degree"] = json::parse(degree_json(degree));
                std::cout << j.dump() << "\n";
            });
            return 0;
        }
        if (*writhe_cmd) {
            WebDiagram w = load_web(input, n_override);
            const int wr = writhe(w);
            if (json_out) {
                json j;
                j["web"] = serialize(w);
                j["N"] = w.rank();
                j["writhe"] = wr;
                std::cout << j.dump() << "\n";
            } else {
                std::cout << wr << "\n";
            }
            return 0;
        }
        if (*verify_cmd) {
            std::vector<std::string> rels;
            if (relation == "all")
                rels = {"1", "2", "3", "4", "5", "6", "7"};
            else if (relation != "reduction")
                rels = {relation};
            int rc = rels.empty() ? 0 : run_verify_relations(rels, max_n, threads, json_out);
            if (relation == "all" || relation == "reduction") {
                int rc2 = run_verify_reduction(std::min(max_n, 4), json_out);
                rc = rc ? rc : rc2;
            }
            return rc;
        }
        if (*reduce_cmd) {
            WebDiagram w = load_web(input, n_override);
            ReductionReport rep = verify_reduction(w);
            for (const ReductionTerm& t : rep.terms) {
                if (json_out) {
                    json j;
                    json ids = json::array();
                    for (int e : edge_set_to_ids(t.collection)) ids.push_back("e" + std::to_string(e));
                    j["collection"] = ids;
                    j["web"] = t.web_text;
                    j["writhe"] = t.writhe;
                    j["value"] = t.value.to_string();
                    std::cout << j.dump() << "\n";
                } else {
                    std::cout << "A = {";
                    bool first = true;
                    for (int e : edge_set_to_ids(t.collection)) {
                        std::cout << (first ? "" : ",") << "e" << e;
                        first = false;
                    }
                    std::cout << "}  writhe " << t.writhe << "  value " << t.value.to_string() << "\n";
                    std::istringstream lines(t.web_text);
                    for (std::string line; std::getline(lines, line);)
                        std::cout << "    " << line << "\n";
                }
            }
            if (json_out) {
                json j;
                j["lhs"] = rep.lhs.to_string();
                j["rhs_minus"] = rep.rhs_minus.to_string();
                j["rhs_plus"] = rep.rhs_plus.to_string();
                j["ok"] = rep.ok();
                std::cout << j.dump() << "\n";
            } else {
                std::cout << "lhs       " << rep.lhs.to_string() << "\n"
                          << "rhs (-w)  " << rep.rhs_minus.to_string() << "\n"
                          << "rhs (+w)  " << rep.rhs_plus.to_string() << "\n"
                          << (rep.ok() ? "ok" : "MISMATCH") << "\n";
            }
            return rep.ok() ? 0 : 2;
        }
        if (*bench_cmd) {
            const int n = n_override > 0 ? n_override : 6;
            if (!json_out)
                std::cout << "height  colorings  naive_us     dp_us  speedup\n";
            for (int h = 2; h <= bench_max_height; h += 2) {
                WebDiagram lad = ladder(h, n);
                auto t0 = std::chrono::steady_clock::now();
                Evaluation naive = evaluate_closed(lad);
                auto t1 = std::chrono::steady_clock::now();
                Evaluation dp = evaluate_dp(lad);
                auto t2 = std::chrono::steady_clock::now();
                if (!(naive.value == dp.value)) {
                    std::cerr << "engine mismatch at height " << h << "\n";
                    return 2;
                }
                const double us_naive = std::chrono::duration<double, std::micro>(t1 - t0).count();
                const double us_dp = std::chrono::duration<double, std::micro>(t2 - t1).count();
                if (json_out) {
                    json j;
                    j["height"] = h;
                    j["colorings"] = naive.coloring_count.str();
                    j["naive_us"] = us_naive;
                    j["dp_us"] = us_dp;
                    std::cout << j.dump() << "\n";
                } else {
                    std::printf("%6d %10s %9.0f %9.0f %8.1fx\n", h, naive.coloring_count.str().c_str(),
                                us_naive, us_dp, us_naive / us_dp);
                }
            }
            // Seeded cross-check of the two engines on random diagrams.
            auto rand_webs = random_closed_diagrams(seed, 10, 4);
            for (const WebDiagram& w : rand_webs)
                if (!(evaluate_closed(w).value == evaluate_dp(w).value)) {
                    std::cerr << "engine mismatch on random diagram\n";
                    return 2;
                }
            if (!json_out)
                std::cout << "random cross-check (seed " << seed << "): 10 diagrams ok\n";
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const WebError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
