// Copyright 2026 The quantum-bottleneck Authors
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

#include "qib/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qib/error.hpp"

namespace qib::io {

namespace {

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw ValidationError((pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

const Json& field(const Json& j, const std::string& pointer, const char* key) {
  if (!j.is_object()) fail(pointer, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(pointer + "/" + key, "missing field");
  return *it;
}

int positive_int(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer() || j.get<long long>() < 1) fail(pointer, "expected a positive integer");
  return j.get<int>();
}

double number(const Json& j, const std::string& pointer) {
  if (!j.is_number()) fail(pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(pointer, "expected a finite number");
  return v;
}

void check_keys(const Json& j, const std::string& pointer, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) fail(pointer + "/" + it.key(), "unknown key");
  }
}

std::vector<DensityOperator> densities(const Json& arr, const std::string& pointer, int dim) {
  if (!arr.is_array() || arr.empty()) fail(pointer, "expected a non-empty array of matrices");
  std::vector<DensityOperator> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = pointer + "/" + std::to_string(i);
    const ComplexMatrix m = matrix_from_json(arr[i], p);
    if (m.rows() != dim) fail(p, "dimension " + std::to_string(m.rows()) + " differs from " +
                                     std::to_string(dim));
    try {
      out.emplace_back(HermitianOperator(m));
    } catch (const ValidationError& e) {
      fail(p, e.what());
    }
  }
  return out;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ir = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ir.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return Json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) fail(pointer, "expected a matrix object");
  check_keys(j, pointer, {"dim", "re", "im"});
  const int dim = positive_int(field(j, pointer, "dim"), pointer + "/dim");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (const char* part : {"re", "im"}) {
    if (!j.contains(part)) {
      if (std::string(part) == "re") fail(pointer + "/re", "missing field");
      continue;
    }
    const std::string p = pointer + "/" + part;
    const Json& rows = j[part];
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dim))
      fail(p, "expected " + std::to_string(dim) + " rows");
    for (int r = 0; r < dim; ++r) {
      const std::string pr = p + "/" + std::to_string(r);
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(dim))
        fail(pr, "expected " + std::to_string(dim) + " entries");
      for (int c = 0; c < dim; ++c) {
        const double v = number(row[static_cast<std::size_t>(c)], pr + "/" + std::to_string(c));
        if (std::string(part) == "re") {
          m(r, c) += v;
        } else {
          m(r, c) += Complex(0.0, v);
        }
      }
    }
  }
  if (hermiticity_residual(m) > kHermitianTol) fail(pointer, "matrix is not Hermitian");
  return m;
}

Json state_to_json(const CQState& state) {
  Json px = Json::array();
  for (Eigen::Index i = 0; i < state.px().size(); ++i) px.push_back(state.px()(i));
  Json rho = Json::array();
  for (const DensityOperator& r : state.rho_y_given_x()) rho.push_back(matrix_to_json(r.matrix()));
  return Json{{"px", std::move(px)}, {"dimY", state.dim_y()}, {"rhoY", std::move(rho)}};
}

CQState state_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) fail(pointer, "expected a state object");
  check_keys(j, pointer, {"px", "dimY", "rhoY"});
  const int dim_y = positive_int(field(j, pointer, "dimY"), pointer + "/dimY");
  const Json& pxj = field(j, pointer, "px");
  if (!pxj.is_array() || pxj.empty()) fail(pointer + "/px", "expected a non-empty array");
  RealVector px(static_cast<Eigen::Index>(pxj.size()));
  for (std::size_t i = 0; i < pxj.size(); ++i) {
    const std::string p = pointer + "/px/" + std::to_string(i);
    px(static_cast<Eigen::Index>(i)) = number(pxj[i], p);
    if (px(static_cast<Eigen::Index>(i)) < 0.0) fail(p, "negative probability");
  }
  if (std::abs(px.sum() - 1.0) > kProbabilityTol)
    fail(pointer + "/px", "probabilities sum to " + format_double(px.sum()));
  std::vector<DensityOperator> rho = densities(field(j, pointer, "rhoY"), pointer + "/rhoY", dim_y);
  if (rho.size() != pxj.size())
    fail(pointer + "/rhoY", "has " + std::to_string(rho.size()) + " entries but px has " +
                                std::to_string(pxj.size()));
  return CQState(std::move(px), std::move(rho));
}

Json channel_to_json(const CQChannel& channel) {
  Json s = Json::array();
  for (const DensityOperator& r : channel.sigma_t_given_x()) s.push_back(matrix_to_json(r.matrix()));
  return Json{{"dimT", channel.dim_t()}, {"classical", channel.classical()}, {"sigmaT", std::move(s)}};
}

CQChannel channel_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_object()) fail(pointer, "expected a channel object");
  check_keys(j, pointer, {"dimT", "classical", "sigmaT"});
  const int dim_t = positive_int(field(j, pointer, "dimT"), pointer + "/dimT");
  bool classical = false;
  if (j.contains("classical")) {
    if (!j["classical"].is_boolean()) fail(pointer + "/classical", "expected a boolean");
    classical = j["classical"].get<bool>();
  }
  std::vector<DensityOperator> s = densities(field(j, pointer, "sigmaT"), pointer + "/sigmaT", dim_t);
  if (classical) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!is_diagonal(s[i].matrix(), kClassicalOffDiagTol))
        fail(pointer + "/sigmaT/" + std::to_string(i), "not diagonal in a classical channel");
  }
  return CQChannel(std::move(s), classical);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string format_double(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

std::vector<std::string> trace_header(bool qdib) {
  std::vector<std::string> h{"iter",  "f_alpha",         "H_T",         "I_TX",
                             "I_TY",  "step_divergence", "gamma_ratio", "fixed_point_residual"};
  if (qdib) h.emplace_back("support_T");
  return h;
}

std::vector<std::string> trace_fields(const IterationRecord& r, bool qdib) {
  std::vector<std::string> f{std::to_string(r.iter),         format_double(r.f),
                             format_double(r.h_t),           format_double(r.i_tx),
                             format_double(r.i_ty),          format_double(r.step_divergence),
                             format_double(r.gamma_ratio),   format_double(r.fixed_point_residual)};
  if (qdib) f.push_back(std::to_string(r.support_t));
  return f;
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace) {
  os << csv_row(trace_header(trace.qdib)) << '\n';
  for (const IterationRecord& r : trace.records) os << csv_row(trace_fields(r, trace.qdib)) << '\n';
  os << "# status=" << to_string(trace.status) << '\n';
}

Json trace_to_json(const IterationTrace& trace) {
  Json records = Json::array();
  for (const IterationRecord& r : trace.records) {
    Json row = Json::object();
    row["iter"] = r.iter;
    auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
    row["f_alpha"] = num(r.f);
    row["H_T"] = num(r.h_t);
    row["I_TX"] = num(r.i_tx);
    row["I_TY"] = num(r.i_ty);
    row["step_divergence"] = num(r.step_divergence);
    row["gamma_ratio"] = num(r.gamma_ratio);
    row["fixed_point_residual"] = num(r.fixed_point_residual);
    if (trace.qdib) row["support_T"] = r.support_t;
    row["violation"] = r.violation;
    records.push_back(std::move(row));
  }
  return Json{{"status", to_string(trace.status)},
              {"reached_tolerance", trace.reached_tolerance},
              {"records", std::move(records)}};
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError(path + ": cannot write file");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ValidationError(path + ": write failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ValidationError(path + ": cannot move temporary file into place");
  }
}

}  // namespace qib::io
