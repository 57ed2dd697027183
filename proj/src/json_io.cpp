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

#include "opmean/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace opmean {

namespace {

using nlohmann::json;

json parse(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON for " + what + ": " + e.what(), what);
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file '" + path + "'", path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Mat matrix_from_json(const json& j, const std::string& field) {
    std::size_t rows = 0, cols = 0;
    if (j.contains("dim")) {
        if (!j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0)
            throw InputError("matrix 'dim' must be a positive integer", field + ".dim");
        rows = cols = j["dim"].get<std::size_t>();
    } else if (j.contains("rows") && j.contains("cols")) {
        rows = j["rows"].get<std::size_t>();
        cols = j["cols"].get<std::size_t>();
        if (rows == 0 || cols == 0)
            throw InputError("matrix shape must be positive", field + ".rows");
    } else {
        throw InputError("matrix needs 'dim' or 'rows'/'cols'", field);
    }
    if (!j.contains("re") || !j["re"].is_array())
        throw InputError("matrix needs a real part array 're'", field + ".re");
    const auto re = j["re"].get<std::vector<double>>();
    std::vector<double> im(re.size(), 0.0);
    if (j.contains("im")) {
        im = j["im"].get<std::vector<double>>();
        if (im.size() != re.size())
            throw InputError("'im' length differs from 're'", field + ".im");
    }
    if (re.size() != rows * cols)
        throw InputError("matrix entry count does not match shape", field + ".re");
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t k = 0; k < cols; ++k)
            m(i, k) = complexd(re[i * cols + k], im[i * cols + k]);
    return m;
}

}  // namespace

Mat read_matrix_json(const std::string& text, const std::string& field_prefix) {
    return matrix_from_json(parse(text, field_prefix.empty() ? "matrix" : field_prefix),
                            field_prefix);
}

PsdMatrix read_psd_json(const std::string& text, const std::string& field_prefix) {
    Mat m = read_matrix_json(text, field_prefix);
    if (!m.is_square())
        throw InputError("PSD matrix must be square", field_prefix);
    try {
        return PsdMatrix(std::move(m));  // symmetrizes and validates
    } catch (const DomainError& e) {
        throw InputError(std::string("matrix fails PSD validation: ") + e.what(),
                         field_prefix);
    }
}

CpMap read_cpmap_json(const std::string& text) {
    const json j = parse(text, "cpmap");
    if (j.contains("kraus")) {
        if (!j["kraus"].is_array() || j["kraus"].empty())
            throw InputError("'kraus' must be a non-empty array", "kraus");
        std::vector<Mat> ops;
        for (std::size_t i = 0; i < j["kraus"].size(); ++i)
            ops.push_back(matrix_from_json(j["kraus"][i],
                                           "kraus[" + std::to_string(i) + "]"));
        return CpMap::from_kraus(ops);
    }
    if (!j.contains("dim_in") || !j.contains("dim_out") || !j.contains("choi"))
        throw InputError("cpmap needs 'kraus' or 'dim_in'/'dim_out'/'choi'", "cpmap");
    const auto din = j["dim_in"].get<std::size_t>();
    const auto dout = j["dim_out"].get<std::size_t>();
    Mat choi = matrix_from_json(j["choi"], "choi");
    try {
        return CpMap(din, dout, PsdMatrix(std::move(choi)));
    } catch (const DomainError& e) {
        throw InputError(std::string("choi fails PSD validation: ") + e.what(),
                         "choi");
    } catch (const DimensionError& e) {
        throw InputError(e.what(), "choi");
    }
}

ClassicalInstance read_instance_json(const std::string& text) {
    const json j = parse(text, "instance");
    if (!j.contains("f") || !j["f"].is_array())
        throw InputError("instance needs array 'f'", "f");
    if (!j.contains("g") || !j["g"].is_array())
        throw InputError("instance needs matrix 'g'", "g");
    ClassicalInstance inst;
    inst.f = j["f"].get<std::vector<double>>();
    for (const auto& row : j["g"])
        inst.g.push_back(row.get<std::vector<double>>());
    try {
        inst.validate();
    } catch (const Error& e) {
        throw InputError(e.what(), "g");
    }
    return inst;
}

Mat read_matrix_file(const std::string& path) { return read_matrix_json(slurp(path), path); }
PsdMatrix read_psd_file(const std::string& path) { return read_psd_json(slurp(path), path); }
CpMap read_cpmap_file(const std::string& path) { return read_cpmap_json(slurp(path)); }
ClassicalInstance read_instance_file(const std::string& path) {
    return read_instance_json(slurp(path));
}

std::string format_double(double v) {
    if (std::isnan(v)) return "\"nan\"";
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    if (v == 0.0) return "0";  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string matrix_to_json(const Mat& m) {
    JsonWriter w;
    w.begin_object();
    if (m.is_square()) {
        w.key("dim");
        w.value_int(static_cast<long long>(m.rows()));
    } else {
        w.key("rows");
        w.value_int(static_cast<long long>(m.rows()));
        w.key("cols");
        w.value_int(static_cast<long long>(m.cols()));
    }
    w.key("re");
    w.begin_array();
    for (const auto& x : m.data()) w.value(x.real());
    w.end_array();
    w.key("im");
    w.begin_array();
    for (const auto& x : m.data()) w.value(x.imag());
    w.end_array();
    w.end_object();
    return w.str();
}

struct JsonWriter::Impl {
    std::ostringstream out;
    // Stack entries: 'o' object awaiting first key, 'O' object after first,
    // 'a' array awaiting first value, 'A' array after first.
    std::string stack;

    void comma_for_value() {
        if (stack.empty()) return;
        char& top = stack.back();
        if (top == 'A') out << ",";
        if (top == 'a') top = 'A';
    }
};

JsonWriter::JsonWriter() : impl_(std::make_unique<Impl>()) {}
JsonWriter::~JsonWriter() = default;

void JsonWriter::begin_object() {
    impl_->comma_for_value();
    impl_->out << "{";
    impl_->stack.push_back('o');
}

void JsonWriter::end_object() {
    impl_->out << "}";
    impl_->stack.pop_back();
}

void JsonWriter::begin_array() {
    impl_->comma_for_value();
    impl_->out << "[";
    impl_->stack.push_back('a');
}

void JsonWriter::end_array() {
    impl_->out << "]";
    impl_->stack.pop_back();
}

void JsonWriter::key(const std::string& k) {
    char& top = impl_->stack.back();
    if (top == 'O') impl_->out << ",";
    if (top == 'o') top = 'O';
    impl_->out << '"' << k << "\":";
}

void JsonWriter::value(double v) {
    impl_->comma_for_value();
    impl_->out << format_double(v);
}

void JsonWriter::value(const std::string& v) {
    impl_->comma_for_value();
    impl_->out << '"';
    for (char c : v) {
        if (c == '"' || c == '\\') impl_->out << '\\';
        impl_->out << c;
    }
    impl_->out << '"';
}

void JsonWriter::value(bool v) {
    impl_->comma_for_value();
    impl_->out << (v ? "true" : "false");
}

void JsonWriter::value_int(long long v) {
    impl_->comma_for_value();
    impl_->out << v;
}

void JsonWriter::value_raw(const std::string& json_fragment) {
    impl_->comma_for_value();
    impl_->out << json_fragment;
}

std::string JsonWriter::str() const { return impl_->out.str(); }

}  // namespace opmean
