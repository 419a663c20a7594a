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

#include "lrvqe/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

#include "lrvqe/error.hpp"

namespace lrvqe {

namespace fs = std::filesystem;

std::vector<ScalingRecord> build_scaling(const std::vector<RunRecord>& runs, double threshold) {
  std::map<CellKey, std::vector<RunRecord>> by_cell;
  for (const RunRecord& r : runs) by_cell[r.cell].push_back(r);
  std::vector<ScalingRecord> out;
  out.reserve(by_cell.size());
  for (const auto& [cell, records] : by_cell) out.push_back(scaling_record(cell, records, threshold));
  return out;
}

std::string format_number(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

namespace {

std::string opt_number(const std::optional<double>& v, int precision) {
  return v ? format_number(*v, precision) : "NA";
}

std::string series_name(const CellKey& c) {
  return format_key_number(c.alpha) + "_" + format_key_number(c.lambda) + "_" + to_string(c.kind);
}

using SeriesKey = std::tuple<double, double, AnsatzKind>;

std::map<SeriesKey, std::vector<ScalingRecord>> by_series(const std::vector<ScalingRecord>& records) {
  std::map<SeriesKey, std::vector<ScalingRecord>> out;
  for (const ScalingRecord& r : records) out[{r.cell.alpha, r.cell.lambda, r.cell.kind}].push_back(r);
  return out;
}

}  // namespace

std::string scaling_csv(const std::vector<ScalingRecord>& records, int precision) {
  std::string out = std::string(kScalingHeader) + "\n";
  for (const ScalingRecord& r : records) {
    std::optional<double> p_star;
    if (r.p_star.value) p_star = *r.p_star.value;
    std::optional<double> rq;
    if (r.rq_total) rq = *r.rq_total;
    out += format_number(r.cell.alpha, precision) + "," + format_number(r.cell.lambda, precision) +
           "," + std::to_string(r.cell.n) + "," + to_string(r.cell.kind) + "," +
           opt_number(p_star, precision) + "," + (r.p_star.extrapolated ? "true" : "false") + "," +
           opt_number(r.fit ? std::optional(r.fit->a) : std::nullopt, precision) + "," +
           opt_number(r.fit ? std::optional(r.fit->b) : std::nullopt, precision) + "," +
           opt_number(r.fit ? std::optional(r.fit->r2) : std::nullopt, precision) + "," +
           opt_number(rq, precision) + "," + std::to_string(r.params_per_layer) + "," +
           opt_number(r.n_iter_avg, precision) + "," + opt_number(r.rc_total, precision) + "\n";
  }
  return out;
}

std::string fits_csv(const std::vector<ScalingRecord>& records, int precision) {
  std::string out = std::string(kFitsHeader) + "\n";
  for (const auto& [key, series] : by_series(records)) {
    const auto& [alpha, lambda, kind] = key;
    for (ScalingQuantity q : {ScalingQuantity::PStar, ScalingQuantity::RQ, ScalingQuantity::RC}) {
      for (FitModel m : {FitModel::Linear, FitModel::Quadratic}) {
        out += format_number(alpha, precision) + "," + format_number(lambda, precision) + "," +
               to_string(kind) + "," + to_string(q) + "," + to_string(m) + ",";
        try {
          const PolyFit f = scaling_fits(series, q, m);
          out += format_number(f.c2, precision) + "," + format_number(f.c1, precision) + "," +
                 format_number(f.c0, precision) + "," + format_number(f.r2, precision) + "\n";
        } catch (const InsufficientData&) {
          out += "NA,NA,NA,NA\n";
        }
      }
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> plot_data(const std::vector<RunRecord>& runs,
                                                           const std::vector<ScalingRecord>& records,
                                                           int precision) {
  std::vector<std::pair<std::string, std::string>> files;
  std::map<CellKey, std::string> errors;
  for (const RunRecord& r : runs) {
    errors[r.cell] += std::to_string(r.p) + " " + format_number(r.ent_error, precision) + "\n";
  }
  for (const auto& [cell, text] : errors) {
    files.emplace_back("error_" + format_key_number(cell.alpha) + "_" +
                           format_key_number(cell.lambda) + "_" + std::to_string(cell.n) + "_" +
                           to_string(cell.kind) + ".dat",
                       text);
  }
  for (const auto& [key, series] : by_series(records)) {
    std::string pstar;
    std::string rq;
    std::string rc;
    for (const ScalingRecord& r : series) {
      const std::string n = std::to_string(r.cell.n);
      if (r.p_star.value) pstar += n + " " + std::to_string(*r.p_star.value) + "\n";
      if (r.rq_total) rq += n + " " + std::to_string(*r.rq_total) + "\n";
      if (r.rc_total) rc += n + " " + format_number(*r.rc_total, precision) + "\n";
    }
    const std::string name = series_name(series.front().cell);
    files.emplace_back("pstar_" + name + ".dat", pstar);
    files.emplace_back("rq_" + name + ".dat", rq);
    files.emplace_back("rc_" + name + ".dat", rc);
  }
  return files;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

void emit_reports(const ResultStore& store, const ConfigFile& cfg) {
  const std::vector<RestartRecord> restarts = store.load_all();
  if (restarts.empty()) throw IoError("no runs in store " + store.root().string());
  const std::vector<RunRecord> runs = aggregate_store(restarts);
  const std::vector<ScalingRecord> scaling = build_scaling(runs, cfg.sweep.threshold);
  const int precision = cfg.output.precision;
  write_text(store.root() / "scaling.csv", scaling_csv(scaling, precision));
  write_text(store.root() / "fits.csv", fits_csv(scaling, precision));
  if (cfg.output.plot_data) {
    const fs::path dir = store.root() / "plotdata";
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& [name, text] : plot_data(runs, scaling, precision)) write_text(dir / name, text);
  }
}

}  // namespace lrvqe
