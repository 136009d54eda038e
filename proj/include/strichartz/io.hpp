#pragma once

#include "strichartz/grid.hpp"
#include "strichartz/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

// Field serialization (JSON for inspection, flat binary for bulk caching)
// plus small text helpers the command line tool shares.

namespace strichartz {

using nlohmann::json;

inline json rat_json(const Rat& x) { return json::array({x.numerator(), x.denominator()}); }

inline Rat rat_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("rational json is [num, den]");
    return Rat(j[0].get<long long>(), j[1].get<long long>());
}

inline json grid_json(const SpatialGrid& g) {
    return {{"dim", g.dim}, {"n", g.n}, {"length", g.length}};
}

inline SpatialGrid grid_from_json(const json& j) {
    return SpatialGrid(j.at("dim").get<int>(), j.at("n").get<int>(), j.at("length").get<double>());
}

inline json field_json(const Field& f) {
    json values = json::array();
    for (const cplx& v : f.values) values.push_back(json::array({v.real(), v.imag()}));
    return {{"grid", grid_json(f.grid)}, {"values", std::move(values)}};
}

inline Field field_from_json(const json& j) {
    Field f(grid_from_json(j.at("grid")));
    const json& values = j.at("values");
    if (values.size() != f.values.size()) throw std::invalid_argument("field value count mismatch");
    for (std::size_t i = 0; i < f.values.size(); ++i)
        f.values[i] = cplx(values[i][0].get<double>(), values[i][1].get<double>());
    return f;
}

namespace detail {

template <class T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) throw std::runtime_error("truncated field file");
    return v;
}

}  // namespace detail

inline constexpr std::uint64_t field_magic = 0x31444c465a525453ull;  // "STRZFLD1"

inline void write_field_binary(const std::string& path, const Field& f) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    detail::put(os, field_magic);
    detail::put(os, std::int32_t(f.grid.dim));
    detail::put(os, std::int32_t(f.grid.n));
    detail::put(os, f.grid.length);
    detail::put(os, std::uint64_t(f.values.size()));
    for (const cplx& v : f.values) {
        detail::put(os, v.real());
        detail::put(os, v.imag());
    }
}

inline Field read_field_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path);
    if (detail::get<std::uint64_t>(is) != field_magic)
        throw std::runtime_error(path + " is not a field file");
    std::int32_t dim = detail::get<std::int32_t>(is);
    std::int32_t n = detail::get<std::int32_t>(is);
    double length = detail::get<double>(is);
    Field f(SpatialGrid(dim, n, length));
    if (detail::get<std::uint64_t>(is) != f.values.size())
        throw std::runtime_error(path + " has a bad value count");
    for (cplx& v : f.values) {
        double re = detail::get<double>(is);
        double im = detail::get<double>(is);
        v = cplx(re, im);
    }
    return f;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << content;
}

}  // namespace strichartz
