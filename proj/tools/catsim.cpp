/*
Copyright 2026 The catsim Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "catsim/catsim.hpp"

namespace {

using namespace catsim;

constexpr int kExitDecided = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;
constexpr int kExitTimeout = 3;

std::string machine_id(const std::string& path) { return std::filesystem::path(path).stem().string(); }

int decision_exit(tm::Decision d) { return d == tm::Decision::Timeout ? kExitTimeout : kExitDecided; }

struct RunArgs {
    std::string machine, input;
    std::uint64_t max_steps = 100000;
};

int cmd_run(const RunArgs& a) {
    const auto M = tm::load_machine(a.machine);
    const auto trace = tm::run_direct(M, a.input, a.max_steps);
    std::cout << tm::to_string(trace.decision) << '\n' << "steps=" << trace.steps << '\n';
    return decision_exit(trace.decision);
}

struct SimArgs {
    std::string machine, input;
    std::string mode = "packed", enumeration = "oracle", solver = "auto", policy = "default";
    bool doubling = false, csv = false;
    std::uint64_t max_t = 4096;
    std::uint64_t budget = tree::kDefaultDomainBudget;
    std::uint64_t encoding_budget = graph::kDefaultEncodingBudget;
};

reduction::BlockPolicy parse_policy(const std::string& s) {
    reduction::BlockPolicy p;
    if (s == "default") return p;
    const std::string prefix = "fixed:";
    if (s.rfind(prefix, 0) == 0) {
        p.fixed = std::stoul(s.substr(prefix.size()));
        if (*p.fixed == 0) throw std::invalid_argument("block length must be positive");
        return p;
    }
    throw std::invalid_argument("block policy must be 'default' or 'fixed:C'");
}

reduction::SimulateOptions sim_options(const SimArgs& a) {
    reduction::SimulateOptions o;
    o.mode = tree::parse_mode(a.mode);
    o.enumeration = reduction::parse_enumeration(a.enumeration);
    o.solver = reduction::parse_solver(a.solver);
    o.policy = parse_policy(a.policy);
    o.doubling = a.doubling;
    o.max_t = a.max_t;
    o.domain_budget = a.budget;
    o.encoding_budget = a.encoding_budget;
    return o;
}

int cmd_simulate(const SimArgs& a) {
    const auto M = tm::load_machine(a.machine);
    const auto [r, row] = bench::measure(M, machine_id(a.machine), a.input, sim_options(a));
    std::cout << tm::to_string(r.decision) << '\n';
    if (a.csv) {
        bench::write_csv(std::cout, {row});
        return decision_exit(r.decision);
    }
    const std::uint64_t candidates = r.guesses.empty() ? 0 : r.guesses.back().candidates;
    std::cout << "t_found=" << r.t_found << " c=" << r.c << " B=" << r.B << " mode=" << row.mode
              << " t_search=" << (r.doubling ? "doubling" : "increment") << " guesses=" << r.guesses.size()
              << " candidates=" << candidates << " content_bits=" << r.content_bits
              << " catalytic_bits=" << row.catalytic_bits << " local_bits_peak=" << row.local_bits_peak
              << " scratch_bits_peak=" << row.scratch_bits_peak << " cm_total_bits=" << row.cm_total_bits()
              << " cm_space=" << (r.cm_space_probed ? "probed" : "measured")
              << " naive_space_bits=" << row.naive_space_bits << " wall_time_s=" << row.wall_time_s << '\n';
    return decision_exit(r.decision);
}

struct TreeArgs {
    std::string instance, solver = "cm", mode = "packed";
    std::uint64_t budget = tree::kDefaultDomainBudget;
};

int cmd_treeval(const TreeArgs& a) {
    const auto inst = tree::load_instance(a.instance);
    if (a.solver == "naive" || a.solver == "dfs") {
        const auto r = tree::solve_naive(inst);
        std::cout << r.value.to_string() << '\n'
                  << "solver=naive space_bits_peak=" << r.space_bits_peak << " depth_peak=" << r.depth_peak
                  << " apply_calls=" << r.apply_calls << '\n';
        return kExitDecided;
    }
    if (a.solver != "cm") throw std::invalid_argument("solver must be 'naive' or 'cm'");
    tree::CookMertzOptions o;
    o.mode = tree::parse_mode(a.mode);
    o.budget = a.budget;
    const auto padded = tree::pad_instance(inst);
    const auto r = tree::solve_cook_mertz(padded, o);
    std::cout << r.value.to_string() << '\n'
              << "solver=cm mode=" << tree::to_string(o.mode) << " q=" << r.field.q << " pack_len=" << r.field.pack_len
              << " catalytic_bits=" << r.meter.catalytic_bits << " local_bits_peak=" << r.meter.local_bits_peak
              << " scratch_bits_peak=" << r.meter.scratch_bits_peak << " total_bits=" << r.meter.total()
              << " add_calls=" << r.add_calls << " extension_evaluations=" << r.extension_evaluations << '\n';
    return kExitDecided;
}

struct SweepArgs {
    SimArgs sim;
    std::vector<std::uint64_t> t_list;
    std::vector<std::string> inputs;
    std::string fill;
};

int cmd_sweep(const SweepArgs& a) {
    const auto M = tm::load_machine(a.sim.machine);
    if (!a.fill.empty() && !a.inputs.empty()) throw std::invalid_argument("use either --input or --input-fill");
    if (a.fill.size() > 1) throw std::invalid_argument("--input-fill takes a single symbol");
    if (!a.inputs.empty() && a.inputs.size() != 1 && a.inputs.size() != a.t_list.size())
        throw std::invalid_argument("give one --input, or one per t");
    auto input_for = [&](std::uint64_t t) -> std::string {
        if (!a.fill.empty()) return std::string(t > 0 ? t - 1 : 0, a.fill[0]);
        if (a.inputs.empty()) return "";
        if (a.inputs.size() == 1) return a.inputs[0];
        for (std::size_t k = 0; k < a.t_list.size(); ++k)
            if (a.t_list[k] == t) return a.inputs[k];
        return "";
    };
    const auto rows = bench::sweep(M, machine_id(a.sim.machine), a.t_list, input_for, sim_options(a.sim));
    bench::write_csv(std::cout, rows);
    return kExitDecided;
}

void add_sim_flags(CLI::App* cmd, SimArgs& a) {
    cmd->add_option("--mode", a.mode, "extension mode: packed or multilinear")->capture_default_str();
    cmd->add_option("--enum", a.enumeration, "candidate encodings: oracle or full")->capture_default_str();
    cmd->add_option("--solver", a.solver, "tree solver: auto, cm or dfs")->capture_default_str();
    cmd->add_option("--block-policy", a.policy, "default or fixed:C")->capture_default_str();
    cmd->add_flag("--doubling", a.doubling, "double the running-time guess instead of incrementing it");
    cmd->add_option("--max-t", a.max_t, "give up once the guess exceeds this")->capture_default_str();
    cmd->add_option("--budget", a.budget, "largest extension domain (points) the Cook-Mertz solver may sum over")
        ->capture_default_str();
    cmd->add_option("--encoding-budget", a.encoding_budget, "largest number of candidates per guess")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"catsim: catalytic tree evaluation and space-efficient Turing machine simulation"};
    app.require_subcommand(1);

    RunArgs run;
    auto* c_run = app.add_subcommand("run", "run a machine directly");
    c_run->add_option("machine", run.machine, "machine file")->required();
    c_run->add_option("input", run.input, "input string");
    c_run->add_option("--max-steps", run.max_steps, "step limit")->capture_default_str();

    SimArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "decide through the tree evaluation reduction");
    c_sim->add_option("machine", sim.machine, "machine file")->required();
    c_sim->add_option("input", sim.input, "input string");
    add_sim_flags(c_sim, sim);
    c_sim->add_flag("--csv", sim.csv, "print the metrics row as CSV");

    TreeArgs tv;
    auto* c_tree = app.add_subcommand("treeval", "evaluate a tree instance file");
    c_tree->add_option("instance", tv.instance, "instance file")->required();
    c_tree->add_option("--solver", tv.solver, "naive or cm")->capture_default_str();
    c_tree->add_option("--mode", tv.mode, "extension mode: packed or multilinear")->capture_default_str();
    c_tree->add_option("--budget", tv.budget, "largest extension domain (points)")->capture_default_str();

    SweepArgs sw;
    auto* c_sweep = app.add_subcommand("sweep", "metrics CSV over a list of running times");
    c_sweep->add_option("machine", sw.sim.machine, "machine file")->required();
    c_sweep->add_option("--t-list", sw.t_list, "running times, comma separated")->delimiter(',');
    c_sweep->add_option("--input", sw.inputs, "input, once or once per t");
    c_sweep->add_option("--input-fill", sw.fill, "use t - 1 copies of this symbol as the input for t");
    add_sim_flags(c_sweep, sw.sim);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_run) return cmd_run(run);
        if (*c_sim) return cmd_simulate(sim);
        if (*c_tree) return cmd_treeval(tv);
        if (*c_sweep) return cmd_sweep(sw);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
