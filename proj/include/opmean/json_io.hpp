// Copyright 2026 The opmean authors
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

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "opmean/channels.hpp"
#include "opmean/classical.hpp"
#include "opmean/matcore.hpp"

namespace opmean {

// Matrix schema: {"dim": n, "re": [row-major reals], "im": [row-major reals]}
// ("im" may be omitted for real matrices). PSD readers symmetrize and
// validate. CpMap schema: {"dim_in", "dim_out", "choi": matrix} or
// {"kraus": [matrix, ...]} (rectangular Kraus carry "rows"/"cols" instead of
// "dim"). Classical instance schema: {"f": [...], "g": [[...]]}.
Mat read_matrix_json(const std::string& text, const std::string& field_prefix = "");
PsdMatrix read_psd_json(const std::string& text, const std::string& field_prefix = "");
CpMap read_cpmap_json(const std::string& text);
ClassicalInstance read_instance_json(const std::string& text);

Mat read_matrix_file(const std::string& path);
PsdMatrix read_psd_file(const std::string& path);
CpMap read_cpmap_file(const std::string& path);
ClassicalInstance read_instance_file(const std::string& path);

std::string matrix_to_json(const Mat& m);

// Deterministic JSON writer: insertion-ordered keys, doubles at 17
// significant digits, so identical runs produce byte-identical reports.
class JsonWriter {
  public:
    JsonWriter();
    ~JsonWriter();

    void begin_object();
    void end_object();
    void begin_array();
    void end_array();
    void key(const std::string& k);
    void value(double v);
    void value(const std::string& v);
    void value(const char* v) { value(std::string(v)); }
    void value(bool v);
    void value_int(long long v);
    void value_raw(const std::string& json_fragment);

    std::string str() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::string format_double(double v);  // %.17g with inf/nan spelled out

}  // namespace opmean
