// Copyright 2026 The lrvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lrvqe/serialize.hpp"
#include "lrvqe/sweep.hpp"

namespace lrvqe {

inline constexpr const char* kScalingHeader =
    "alpha,lambda,n,ansatz,p_star,extrapolated,fit_a,fit_b,fit_r2,rq_total,params_per_layer,"
    "n_iter_avg,rc_total";
inline constexpr const char* kFitsHeader = "alpha,lambda,ansatz,quantity,model,c2,c1,c0,r2";

/// One ScalingRecord per cell present in `runs`, sorted by cell key.
std::vector<ScalingRecord> build_scaling(const std::vector<RunRecord>& runs, double threshold);

/// `precision` significant digits, '.' decimal separator.
std::string format_number(double v, int precision);

std::string scaling_csv(const std::vector<ScalingRecord>& records, int precision);
/// Linear and quadratic fits of p*, R_Q and R_C against N for every
/// (alpha, lambda, ansatz) series. Series with too few points get NA fields.
std::string fits_csv(const std::vector<ScalingRecord>& records, int precision);

/// Plot-data file name -> two-column contents.
std::vector<std::pair<std::string, std::string>> plot_data(const std::vector<RunRecord>& runs,
                                                           const std::vector<ScalingRecord>& records,
                                                           int precision);

/// Writes scaling.csv, fits.csv and (optionally) plotdata/*.dat into the store
/// directory. Throws IoError when the store has no runs.
void emit_reports(const ResultStore& store, const ConfigFile& cfg);

/// Writes text to a file, throwing IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace lrvqe
