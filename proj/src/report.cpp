// SPDX-License-Identifier: Apache-2.0
//
// vanoma - vision-assisted user clustering for mmWave-NOMA
// Copyright (C) 2026 The vanoma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "vanoma/report.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <vector>

namespace vanoma {

std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

std::vector<TrialResult> sorted(std::span<const TrialResult> results)
{
    std::vector<TrialResult> rows(results.begin(), results.end());
    std::stable_sort(rows.begin(), rows.end(), result_order);
    return rows;
}

} // namespace

void write_results_csv(std::ostream &out, std::span<const TrialResult> results)
{
    out << kResultCsvHeader << '\n';
    for (const auto &r : sorted(results))
        out << to_string(r.scheme) << ',' << r.seed << ',' << r.sweep_var << ',' << format_number(r.sweep_value) << ','
            << r.n_train << ',' << format_number(r.avg_se) << ',' << format_number(r.beam_accuracy) << ','
            << r.clusters << ',' << r.slots << '\n';
}

void write_slot_csv(std::ostream &out, std::span<const TrialResult> results)
{
    out << "scheme,seed,sweep_value,n_train,slot,sum_se_bps_hz\n";
    for (const auto &r : sorted(results))
        for (std::size_t i = 0; i < r.slot_sum_se.size(); ++i)
            out << to_string(r.scheme) << ',' << r.seed << ',' << format_number(r.sweep_value) << ',' << r.n_train
                << ',' << i << ',' << format_number(r.slot_sum_se[i]) << '\n';
}

void write_summary_csv(std::ostream &out, std::span<const SchemeSummary> summary)
{
    out << "scheme,sweep_value,n_train,trials,mean_se,std_se,mean_acc,std_acc,ratio_to_csi\n";
    for (const auto &s : summary)
        out << to_string(s.scheme) << ',' << format_number(s.sweep_value) << ',' << s.n_train << ',' << s.trials << ','
            << format_number(s.mean_se) << ',' << format_number(s.std_se) << ',' << format_number(s.mean_accuracy)
            << ',' << format_number(s.std_accuracy) << ',' << format_number(s.ratio_to_csi) << '\n';
}

} // namespace vanoma
