// JSON conversion helpers shared by the model reader and the report writers.
#pragma once

#include "nctk/filtration.hpp"

#include <json.hpp>

#include <string>

namespace nctk::jio {

using json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg);

Q read_q(const json& j, const std::string& path);
QI read_qi(const json& j, const std::string& path);
Vec<Q> read_vec_q(const json& j, size_t len, const std::string& path);
Vec<QI> read_vec_qi(const json& j, size_t len, const std::string& path);
Matrix<Q> read_matrix_q(const json& j, size_t rows, size_t cols, const std::string& path);
int read_int(const json& j, const std::string& path);

json write(const Q& x);
json write(const QI& x);
template <class K>
json write(const Vec<K>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(write(x));
    return out;
}
template <class K>
json write(const Matrix<K>& m) {
    json out = json::array();
    for (size_t i = 0; i < m.rows(); ++i) out.push_back(write(m.row(i)));
    return out;
}
template <class K>
json write(const Subspace<K>& s) { return write(s.basis()); }

json write(const IncreasingFiltration& w);
json write(const DecreasingFiltration& f);
json gr_profile(const IncreasingFiltration& w);

}  // namespace nctk::jio
