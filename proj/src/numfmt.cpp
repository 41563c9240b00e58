#include "ljs/numfmt.hpp"

#include <cassert>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

namespace ljs {

namespace {

// Digits/exponent view of a finite nonzero double: value = 0.d1..dk * 10^n.
struct DigitsExp {
    std::string digits;  // d1..dk, no trailing zeros
    int n = 0;
};

DigitsExp shortest_digits(double v) {
    assert(v > 0 && std::isfinite(v));
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific);
    assert(res.ec == std::errc());
    std::string s(buf, res.ptr);
    // Shape: d[.ddd]e±XX
    size_t epos = s.find('e');
    assert(epos != std::string::npos);
    std::string mant = s.substr(0, epos);
    int exp = std::atoi(s.c_str() + epos + 1);
    size_t dot = mant.find('.');
    std::string digits = dot == std::string::npos
        ? mant
        : mant.substr(0, dot) + mant.substr(dot + 1);
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    // value = digits * 10^(exp - (len-1)) = 0.digits * 10^(exp + 1)
    return DigitsExp{digits, exp + 1};
}

}  // namespace

std::string js_number_to_string(double v) {
    if (std::isnan(v)) return "NaN";
    if (v == 0) return "0";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    if (v < 0) return "-" + js_number_to_string(-v);

    auto [digits, n] = shortest_digits(v);
    int k = static_cast<int>(digits.size());
    std::string out;
    if (k <= n && n <= 21) {
        out = digits;
        out.append(n - k, '0');
    } else if (0 < n && n <= 21) {
        out = digits.substr(0, n) + "." + digits.substr(n);
    } else if (-6 < n && n <= 0) {
        out = "0.";
        out.append(-n, '0');
        out += digits;
    } else {
        out = digits.substr(0, 1);
        if (k > 1) out += "." + digits.substr(1);
        int e = n - 1;
        out += e >= 0 ? "e+" : "e-";
        out += std::to_string(e >= 0 ? e : -e);
    }
    return out;
}

double js_string_to_number(const std::string& s) {
    size_t b = 0, e = s.size();
    auto isspace_js = [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    };
    while (b < e && isspace_js(s[b])) ++b;
    while (e > b && isspace_js(s[e - 1])) --e;
    if (b == e) return 0.0;
    std::string t = s.substr(b, e - b);

    double sign = 1.0;
    size_t i = 0;
    if (t[0] == '+' || t[0] == '-') {
        if (t[0] == '-') sign = -1.0;
        i = 1;
        if (i == t.size()) return std::nan("");
    }
    std::string body = t.substr(i);
    if (body == "Infinity") return sign * HUGE_VAL;

    if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
        if (sign < 0) return std::nan("");  // ToNumber rejects signed hex
        char* end = nullptr;
        errno = 0;
        double hv = static_cast<double>(std::strtoull(body.c_str() + 2, &end, 16));
        if (end == body.c_str() + 2 || *end != '\0') return std::nan("");
        return hv;
    }

    // Decimal: digits [. digits] [e ± digits], at least one digit somewhere.
    // strtod accepts "inf"/"nan" spellings that ToNumber must not.
    bool saw_digit = false;
    for (char c : body) {
        if (c >= '0' && c <= '9') { saw_digit = true; continue; }
        if (c == '.' || c == 'e' || c == 'E' || c == '+' || c == '-') continue;
        return std::nan("");
    }
    if (!saw_digit) return std::nan("");
    char* end = nullptr;
    double d = std::strtod(body.c_str(), &end);
    if (end != body.c_str() + body.size()) return std::nan("");
    return sign * d;
}

}  // namespace ljs
