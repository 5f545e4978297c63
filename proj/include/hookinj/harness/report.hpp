// Copyright 2026 The hookinj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOOKINJ_HARNESS_REPORT_HPP
#define HOOKINJ_HARNESS_REPORT_HPP

#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hookinj/harness/experiment.hpp"

namespace hookinj {

inline constexpr const char *kCsvHeader =
    "protocol,state,p,d_inject,r_inject,d,r_hold,shots,discards,errors,discard_rate,error_rate,err_lo,err_hi,"
    "expected_cost_qubit_rounds,seed";

namespace detail {

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace detail

/// One CSV line (no newline) in kCsvHeader order. Rows with every shot discarded report an
/// infinite cost.
inline std::string csv_row(const TrialStats &st) {
    auto [lo, hi] = st.error_interval();
    double cost = st.discards < st.shots ? expected_cost(st.spec.d_inject, st.spec.r_inject, st.discard_rate())
                                         : std::numeric_limits<double>::infinity();
    std::string out;
    out += protocol_name(st.spec.protocol) + ",";
    out += state_name(st.spec.state) + ",";
    out += detail::fmt_g(st.p) + ",";
    out += std::to_string(st.spec.d_inject) + "," + std::to_string(st.spec.r_inject) + ",";
    out += std::to_string(st.spec.d) + "," + std::to_string(st.spec.r_hold) + ",";
    out += std::to_string(st.shots) + "," + std::to_string(st.discards) + "," + std::to_string(st.errors) + ",";
    out += detail::fmt_g(st.discard_rate()) + "," + detail::fmt_g(st.error_rate()) + ",";
    out += detail::fmt_g(lo) + "," + detail::fmt_g(hi) + ",";
    out += detail::fmt_g(cost) + ",";
    out += std::to_string(st.seed);
    return out;
}

inline nlohmann::json to_json(const TrialStats &st) {
    auto [lo, hi] = st.error_interval();
    nlohmann::json j;
    j["protocol"] = protocol_name(st.spec.protocol);
    j["state"] = state_name(st.spec.state);
    j["p"] = st.p;
    j["d_inject"] = st.spec.d_inject;
    j["r_inject"] = st.spec.r_inject;
    j["d"] = st.spec.d;
    j["r_hold"] = st.spec.r_hold;
    j["shots"] = st.shots;
    j["discards"] = st.discards;
    j["errors"] = st.errors;
    j["discard_rate"] = st.discard_rate();
    j["error_rate"] = st.error_rate();
    j["err_lo"] = lo;
    j["err_hi"] = hi;
    if (st.discards < st.shots) {
        j["expected_cost_qubit_rounds"] = expected_cost(st.spec.d_inject, st.spec.r_inject, st.discard_rate());
    } else {
        j["expected_cost_qubit_rounds"] = nullptr;
    }
    j["seed"] = st.seed;
    return j;
}

/// Reads rows written by csv_row back into TrialStats. The header must match kCsvHeader exactly.
inline std::vector<TrialStats> read_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("CSV header does not match the harness schema");
    }
    std::vector<TrialStats> out;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        if (f.size() != 16) {
            throw std::runtime_error("CSV line " + std::to_string(line_no) + " has " + std::to_string(f.size()) +
                                     " fields, expected 16");
        }
        TrialStats st;
        st.spec.protocol = parse_protocol(f[0]);
        st.spec.state = parse_state(f[1]);
        st.p = std::stod(f[2]);
        st.spec.d_inject = std::stoi(f[3]);
        st.spec.r_inject = std::stoi(f[4]);
        st.spec.d = std::stoi(f[5]);
        st.spec.r_hold = std::stoi(f[6]);
        st.shots = std::stoull(f[7]);
        st.discards = std::stoull(f[8]);
        st.errors = std::stoull(f[9]);
        st.seed = std::stoull(f[15]);
        out.push_back(st);
    }
    return out;
}

}  // namespace hookinj

#endif
