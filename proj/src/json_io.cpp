#include "json_io.hpp"

namespace nctk::jio {

void parse_fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "nc-model", (path.empty() ? std::string("/") : path) + ": " + msg);
}

namespace {

std::string scalar_text(const json& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return j.dump();
    parse_fail(path, "expected a scalar string");
}

}  // namespace

Q read_q(const json& j, const std::string& path) {
    try {
        return parse_rational(scalar_text(j, path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError && e.module() == "exact-linalg") parse_fail(path, e.what());
        throw;
    }
}

QI read_qi(const json& j, const std::string& path) {
    try {
        return parse_gaussian(scalar_text(j, path));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ParseError && e.module() == "exact-linalg") parse_fail(path, e.what());
        throw;
    }
}

Vec<Q> read_vec_q(const json& j, size_t len, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array");
    if (j.size() != len) parse_fail(path, "expected length " + std::to_string(len) + ", got " + std::to_string(j.size()));
    Vec<Q> v;
    for (size_t i = 0; i < len; ++i) v.push_back(read_q(j[i], path + "/" + std::to_string(i)));
    return v;
}

Vec<QI> read_vec_qi(const json& j, size_t len, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array");
    if (j.size() != len) parse_fail(path, "expected length " + std::to_string(len) + ", got " + std::to_string(j.size()));
    Vec<QI> v;
    for (size_t i = 0; i < len; ++i) v.push_back(read_qi(j[i], path + "/" + std::to_string(i)));
    return v;
}

Matrix<Q> read_matrix_q(const json& j, size_t rows, size_t cols, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected a matrix");
    if (j.size() != rows) parse_fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    Matrix<Q> m(rows, cols);
    for (size_t i = 0; i < rows; ++i) {
        auto r = read_vec_q(j[i], cols, path + "/" + std::to_string(i));
        for (size_t c = 0; c < cols; ++c) m(i, c) = r[c];
    }
    return m;
}

int read_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) parse_fail(path, "expected an integer");
    auto v = j.get<long long>();
    if (v < -1000000 || v > 1000000) parse_fail(path, "integer out of range");
    return static_cast<int>(v);
}

json write(const Q& x) { return to_string(x); }
json write(const QI& x) { return to_string(x); }

json write(const IncreasingFiltration& w) {
    json out = json::array();
    for (const auto& [k, v] : w.steps()) out.push_back({{"weight", k}, {"basis", write(v)}});
    return out;
}

json write(const DecreasingFiltration& f) {
    json out = json::array();
    for (const auto& [p, v] : f.steps()) out.push_back({{"p", p}, {"basis", write(v)}});
    return out;
}

json gr_profile(const IncreasingFiltration& w) {
    json out = json::array();
    for (const auto& [k, d] : w.gr_dims())
        if (d) out.push_back({{"weight", k}, {"dim", d}});
    return out;
}

}  // namespace nctk::jio
