/**************************************************************************
 * text_io.hpp
 *
 * Copyright 2026 The rankcode Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "gabidulin.hpp"
#include "gf.hpp"
#include "linpoly.hpp"

// Text formats:
//   field spec   q=<int> n=<int> mod=<c0,c1,...,cn>     (mod optional)
//   element      c0,c1,...,c_{n-1}                      (optionally wrapped in <>)
//   LinPoly      lp:<fe>;<fe>;...;<fe>
//   word file    one element per line; blank lines and '#' comments skipped
//   twist        eta=<fe> r=<int>                       (or eta=<fe>,r=<int>)

namespace rankcode {

namespace detail {

inline std::string_view strip(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos)
        return {};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

template<typename Int>
Int parse_int(std::string_view s, const char* what) {
    s = strip(s);
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(std::string("bad ") + what + ": '" + std::string(s) + "'");
    return v;
}

inline std::vector<std::uint32_t> parse_digits(std::string_view s) {
    s = strip(s);
    if (s.size() >= 2 && s.front() == '<' && s.back() == '>')
        s = s.substr(1, s.size() - 2);
    std::vector<std::uint32_t> out;
    for (auto part : split(s, ','))
        out.push_back(parse_int<std::uint32_t>(part, "coefficient"));
    return out;
}

} // namespace detail

inline std::string format_u128(u128 v) {
    if (v == 0)
        return "0";
    std::string out;
    for (; v; v /= 10)
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    return out;
}

inline std::string format_fe(const Fe& a) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(a[i]);
    }
    return out;
}

inline Fe parse_fe(const FieldCtx& ctx, std::string_view s) {
    const auto digits = detail::parse_digits(s);
    if (digits.size() != ctx.n())
        throw ParseError("element needs " + std::to_string(ctx.n()) + " coefficients, got "
                         + std::to_string(digits.size()));
    for (auto d : digits)
        if (d >= ctx.q())
            throw ParseError("coefficient " + std::to_string(d) + " not below q = " + std::to_string(ctx.q()));
    return ctx.from_coeffs(digits);
}

inline std::string format_linpoly(const LinPoly& f) {
    std::string out = "lp:";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i)
            out += ';';
        out += format_fe(f[i]);
    }
    return out;
}

inline LinPoly parse_linpoly(const FieldCtx& ctx, std::string_view s) {
    s = detail::strip(s);
    if (s.substr(0, 3) != "lp:")
        throw ParseError("linearized polynomial must start with 'lp:'");
    const auto parts = detail::split(s.substr(3), ';');
    if (parts.size() != ctx.n())
        throw ParseError("linearized polynomial needs n coefficients");
    std::vector<Fe> coeffs;
    for (auto p : parts)
        coeffs.push_back(parse_fe(ctx, p));
    return LinPoly(std::move(coeffs));
}

inline FieldCtx parse_field_spec(std::string_view s) {
    std::uint32_t q = 0;
    std::size_t n = 0;
    std::vector<std::uint32_t> modulus;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError("field spec token '" + tok + "' is not key=value");
        const std::string_view key(tok.data(), eq);
        const std::string_view val(tok.data() + eq + 1, tok.size() - eq - 1);
        if (key == "q")
            q = detail::parse_int<std::uint32_t>(val, "q");
        else if (key == "n")
            n = detail::parse_int<std::size_t>(val, "n");
        else if (key == "mod")
            modulus = detail::parse_digits(val);
        else
            throw ParseError("unknown field spec key '" + std::string(key) + "'");
    }
    if (q == 0 || n == 0)
        throw ParseError("field spec needs q=<int> and n=<int>");
    try {
        if (modulus.empty())
            return FieldCtx::standard(q, n);
        return FieldCtx(q, n, std::move(modulus));
    } catch (const InvalidParameter& e) {
        throw ParseError(e.what());
    }
}

inline std::string format_field_spec(const FieldCtx& ctx) {
    std::string out = "q=" + std::to_string(ctx.q()) + " n=" + std::to_string(ctx.n()) + " mod=";
    for (std::size_t i = 0; i < ctx.modulus().size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(ctx.modulus()[i]);
    }
    return out;
}

inline std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto body = detail::strip(line);
        if (body.empty() || body.front() == '#')
            continue;
        out.emplace_back(body);
    }
    return out;
}

inline Word read_word(const FieldCtx& ctx, std::istream& in) {
    Word out;
    for (const auto& line : read_lines(in))
        out.push_back(parse_fe(ctx, line));
    return out;
}

inline void write_word(std::ostream& os, std::span<const Fe> w) {
    for (const auto& a : w)
        os << format_fe(a) << '\n';
}

struct TwistSpec {
    Fe eta;
    std::size_t r = 0;
};

inline TwistSpec parse_twist(const FieldCtx& ctx, std::string_view s) {
    s = detail::strip(s);
    if (s.substr(0, 4) != "eta=")
        throw ParseError("twist spec must start with 'eta='");
    auto pos = s.rfind("r=");
    if (pos == std::string_view::npos || pos < 5 || (s[pos - 1] != ',' && s[pos - 1] != ' '))
        throw ParseError("twist spec needs 'r=<int>'");
    TwistSpec out;
    out.eta = parse_fe(ctx, s.substr(4, pos - 5));
    out.r = detail::parse_int<std::size_t>(s.substr(pos + 2), "r");
    return out;
}

inline std::string format_twist(const TwistSpec& t) {
    return "eta=" + format_fe(t.eta) + " r=" + std::to_string(t.r);
}

} // namespace rankcode
