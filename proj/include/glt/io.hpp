// Copyright 2026 The glt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef GLT_IO_HPP
#define GLT_IO_HPP

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "glt/error.hpp"
#include "glt/identification.hpp"
#include "glt/matrix.hpp"
#include "glt/postprocess.hpp"
#include "glt/simulate.hpp"
#include "glt/structure.hpp"

namespace glt::io {

using json = nlohmann::json;

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_double(std::string_view field, std::size_t line)
{
    field = trim(field);
    if (!field.empty() && field.front() == '+')
        field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size())
        throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": '" + std::string(field) + "' is not a number");
    if (!std::isfinite(v))
        throw Error(ErrorKind::NonFinite, "line " + std::to_string(line) + ": non-finite value");
    return v;
}

inline std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "' for reading");
    return in;
}

inline std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "' for writing");
    return out;
}

} // namespace detail

/// 17 significant digits, enough for a lossless double round trip.
inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Headerless CSV, one matrix row per line. Blank lines are skipped; ragged
/// rows are rejected.
inline Matrix read_matrix_csv(std::istream& in)
{
    std::vector<double> data;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::string line;
    for (std::size_t ln = 1; std::getline(in, line); ++ln) {
        if (detail::trim(line).empty())
            continue;
        std::size_t n = 0;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            data.push_back(detail::parse_double(rest.substr(0, comma), ln));
            ++n;
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (rows == 0)
            cols = n;
        else if (n != cols)
            throw Error(ErrorKind::Parse, "line " + std::to_string(ln) + ": expected " + std::to_string(cols) +
                                              " fields, found " + std::to_string(n));
        ++rows;
    }
    if (rows == 0)
        throw Error(ErrorKind::Parse, "empty matrix file");
    return Matrix(rows, cols, std::move(data));
}

inline Matrix read_matrix_csv(const std::string& path)
{
    auto in = detail::open_in(path);
    return read_matrix_csv(in);
}

inline void write_matrix_csv(std::ostream& out, const Matrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

inline void write_matrix_csv(const std::string& path, const Matrix& m)
{
    auto out = detail::open_out(path);
    write_matrix_csv(out, m);
}

/// 0/1 CSV.
inline SparsityPattern read_pattern_csv(std::istream& in)
{
    const Matrix m = read_matrix_csv(in);
    SparsityPattern p(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            if (v != 0.0 && v != 1.0)
                throw Error(ErrorKind::Parse, "pattern entries must be 0 or 1");
            p.set(i, j, v == 1.0);
        }
    return p;
}

inline SparsityPattern read_pattern_csv(const std::string& path)
{
    auto in = detail::open_in(path);
    return read_pattern_csv(in);
}

inline void write_pattern_csv(std::ostream& out, const SparsityPattern& p)
{
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = 0; j < p.cols(); ++j)
            out << (j ? "," : "") << (p(i, j) ? '1' : '0');
        out << '\n';
    }
}

/// A vector stored as a single CSV row or a single CSV column.
inline std::vector<double> read_vector_csv(const std::string& path)
{
    const Matrix m = read_matrix_csv(path);
    if (m.rows() != 1 && m.cols() != 1)
        throw Error(ErrorKind::Parse, "'" + path + "' must hold a single row or column");
    return {m.data().begin(), m.data().end()};
}

inline void write_vector_csv(const std::string& path, std::span<const double> v)
{
    auto out = detail::open_out(path);
    for (double x : v)
        out << format_double(x) << '\n';
}

// SignedPermutation <-> {"perm": [...], "signs": [...]} with 1-based perm.
inline json to_json(const SignedPermutation& sp)
{
    json perm = json::array();
    for (std::size_t p : sp.perm)
        perm.push_back(p + 1);
    return {{"perm", perm}, {"signs", sp.signs}};
}

inline SignedPermutation signed_permutation_from_json(const json& j)
{
    SignedPermutation sp;
    try {
        for (const auto& p : j.at("perm")) {
            const auto v = p.get<long long>();
            if (v < 1)
                throw Error(ErrorKind::Parse, "perm entries are 1-based");
            sp.perm.push_back(static_cast<std::size_t>(v - 1));
        }
        sp.signs = j.at("signs").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("signed permutation: ") + e.what());
    }
    sp.validate();
    return sp;
}

inline json to_json(const CountingVerdict& v)
{
    json out{{"satisfied", v.satisfied}, {"checked_subsets", v.checked_subsets}, {"witness", nullptr}};
    if (v.witness) {
        json cols = json::array();
        for (std::size_t c : v.witness->columns)
            cols.push_back(c + 1);
        out["witness"] = {{"q", v.witness->q}, {"columns", cols}, {"nonzero_rows", v.witness->nonzero_rows}};
    }
    return out;
}

inline json to_json(const IdentificationReport& rep)
{
    json out{{"verdict", std::string(to_string(rep.verdict))},
             {"s", rep.s},
             {"is_unordered_glt", rep.is_unordered_glt},
             {"glt_ar_ok", rep.glt_ar_ok},
             {"counting_rule", rep.counting ? to_json(*rep.counting) : json(nullptr)},
             {"exhaustive", rep.exhaustive},
             {"rd_oracle", rep.rd_oracle ? json(*rep.rd_oracle) : json(nullptr)}};
    return out;
}

inline json to_json(const PostprocessSummary& s)
{
    json hist = json::object();
    for (const auto& [r, n] : s.r_histogram)
        hist[std::to_string(r)] = n;
    const bool any = s.draws_kept > 0;
    return {{"m_v", s.m_v},
            {"draws_total", s.draws_total},
            {"draws_kept", s.draws_kept},
            {"r_true", s.r_true ? json(*s.r_true) : json(nullptr)},
            {"r_hat", any ? json(s.r_hat) : json(nullptr)},
            {"ordinate", any ? json(s.ordinate) : json(nullptr)},
            {"ordinate_r_hat", any ? json(s.ordinate_r_hat) : json(nullptr)},
            {"ordinate_r_true", s.ordinate_r_true ? json(*s.ordinate_r_true) : json(nullptr)},
            {"r_histogram", hist},
            {"mse_omega", s.mse_omega ? json(*s.mse_omega) : json(nullptr)}};
}

// Draw archive as JSON lines: a header {"meta": {...}} followed by one
// {"k", "loading", "idio", "pattern"} object per draw. Loadings are row-major
// and the pattern is a row-major string of '0'/'1'.
inline void write_archive(std::ostream& out, const DrawArchive& archive)
{
    const json header{{"meta",
                       {{"m", archive.meta.m},
                        {"k_max", archive.meta.k_max},
                        {"seed", archive.meta.seed},
                        {"scenario", archive.meta.scenario}}}};
    out << header.dump() << '\n';
    for (const Draw& d : archive.draws) {
        std::string bits;
        bits.reserve(d.pattern.rows() * d.pattern.cols());
        for (std::size_t i = 0; i < d.pattern.rows(); ++i)
            for (std::size_t j = 0; j < d.pattern.cols(); ++j)
                bits.push_back(d.pattern(i, j) ? '1' : '0');
        const json line{{"k", d.loading.cols()},
                        {"loading", std::vector<double>(d.loading.data().begin(), d.loading.data().end())},
                        {"idio", d.idio},
                        {"pattern", bits}};
        out << line.dump() << '\n';
    }
}

inline void write_archive(const std::string& path, const DrawArchive& archive)
{
    auto out = detail::open_out(path);
    write_archive(out, archive);
}

inline DrawArchive read_archive(std::istream& in)
{
    DrawArchive archive;
    std::string line;
    bool have_header = false;
    for (std::size_t ln = 1; std::getline(in, line); ++ln) {
        if (detail::trim(line).empty())
            continue;
        try {
            const json j = json::parse(line);
            if (!have_header) {
                const json& meta = j.at("meta");
                archive.meta.m = meta.at("m").get<std::size_t>();
                archive.meta.k_max = meta.at("k_max").get<std::size_t>();
                archive.meta.seed = meta.value("seed", std::uint64_t{0});
                archive.meta.scenario = meta.value("scenario", std::string{});
                have_header = true;
                continue;
            }
            const std::size_t m = archive.meta.m;
            const auto k = j.at("k").get<std::size_t>();
            auto values = j.at("loading").get<std::vector<double>>();
            if (values.size() != m * k)
                throw Error(ErrorKind::Parse, "loading has " + std::to_string(values.size()) + " entries, expected " +
                                                  std::to_string(m * k));
            Draw d;
            d.loading = Matrix(m, k, std::move(values));
            d.idio = j.at("idio").get<std::vector<double>>();
            const auto bits = j.at("pattern").get<std::string>();
            if (bits.size() != m * k)
                throw Error(ErrorKind::Parse, "pattern length differs from m * k");
            d.pattern = SparsityPattern(m, k);
            for (std::size_t n = 0; n < bits.size(); ++n) {
                if (bits[n] != '0' && bits[n] != '1')
                    throw Error(ErrorKind::Parse, "pattern must contain only '0' and '1'");
                d.pattern.set(n / k, n % k, bits[n] == '1');
            }
            archive.draws.push_back(std::move(d));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, "archive line " + std::to_string(ln) + ": " + e.what());
        } catch (const Error& e) {
            throw Error(e.kind(), "archive line " + std::to_string(ln) + ": " + e.message());
        }
    }
    if (!have_header)
        throw Error(ErrorKind::Parse, "archive has no header line");
    archive.validate();
    return archive;
}

inline DrawArchive read_archive(const std::string& path)
{
    auto in = detail::open_in(path);
    return read_archive(in);
}

} // namespace glt::io

#endif // GLT_IO_HPP
