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
#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catsim/reduction/driver.hpp"
#include "catsim/tm/machine.hpp"
#include "catsim/tree/meter.hpp"

namespace catsim::bench {

inline constexpr std::string_view kCsvHeader =
    "machine,input_length,t_found,c,B,mode,catalytic_bits,local_bits_peak,scratch_bits_peak,naive_space_bits,"
    "wall_time_s";

struct MetricsRow {
    std::string machine;
    std::size_t input_length = 0;
    std::uint64_t t_found = 0;
    std::size_t c = 0, B = 0;
    /// extension/enumeration/solver, e.g. packed/oracle/dfs.
    std::string mode;
    std::size_t catalytic_bits = 0;
    std::size_t local_bits_peak = 0;
    std::size_t scratch_bits_peak = 0;
    std::size_t naive_space_bits = 0;
    double wall_time_s = 0;

    std::size_t cm_total_bits() const { return catalytic_bits + local_bits_peak + scratch_bits_peak; }
};

inline std::string mode_label(const reduction::SimulateResult& r) {
    return std::string(tree::to_string(r.mode)) + "/" + reduction::to_string(r.enumeration) + "/" +
           reduction::to_string(r.solver_used);
}

inline MetricsRow make_row(std::string machine, std::size_t input_length, const reduction::SimulateResult& r,
                           double wall_time_s) {
    MetricsRow row;
    row.machine = std::move(machine);
    row.input_length = input_length;
    row.t_found = r.t_found;
    row.c = r.c;
    row.B = r.B;
    row.mode = mode_label(r);
    row.catalytic_bits = r.cm_space.catalytic_bits;
    row.local_bits_peak = r.cm_space.local_bits_peak;
    row.scratch_bits_peak = r.cm_space.scratch_bits_peak;
    row.naive_space_bits = r.naive_space_bits;
    row.wall_time_s = wall_time_s;
    return row;
}

inline std::string to_csv(const MetricsRow& r) {
    std::ostringstream out;
    out << r.machine << ',' << r.input_length << ',' << r.t_found << ',' << r.c << ',' << r.B << ',' << r.mode << ','
        << r.catalytic_bits << ',' << r.local_bits_peak << ',' << r.scratch_bits_peak << ',' << r.naive_space_bits
        << ',' << r.wall_time_s;
    return out.str();
}

inline void write_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) out << to_csv(r) << '\n';
}

/// Times one simulate_space_efficient call and turns it into a row.
inline std::pair<reduction::SimulateResult, MetricsRow> measure(const tm::Machine& M, const std::string& machine_id,
                                                                std::string_view input,
                                                                const reduction::SimulateOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = reduction::simulate_space_efficient(M, input, opt);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    auto row = make_row(machine_id, input.size(), r, dt);
    return {std::move(r), std::move(row)};
}

/// One row per t: the run on input_for(t), with the running-time search starting at t.
inline std::vector<MetricsRow> sweep(const tm::Machine& M, const std::string& machine_id,
                                     const std::vector<std::uint64_t>& t_list,
                                     const std::function<std::string(std::uint64_t)>& input_for,
                                     reduction::SimulateOptions opt = {}) {
    std::vector<MetricsRow> rows;
    opt.measure_space = true;
    for (auto t : t_list) {
        opt.t_start = t;
        rows.push_back(measure(M, machine_id, input_for(t), opt).second);
    }
    return rows;
}

}  // namespace catsim::bench
