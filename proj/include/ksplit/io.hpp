#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ksplit/instance.hpp"

namespace ksplit {

/// Instance file format: whitespace-separated base-10 positive integers,
/// lines whose first non-blank character is '#' are comments. k comes from
/// the caller, never from the file.
inline std::vector<long long> parse_instance_values(std::istream& in) {
    std::vector<long long> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            bool digits = !tok.empty();
            for (char ch : tok)
                if (!std::isdigit(static_cast<unsigned char>(ch))) digits = false;
            if (!digits)
                throw ValidationError("parse error at line " + std::to_string(line_no) + ": '" +
                                      tok + "' is not a positive integer");
            errno = 0;
            char* end = nullptr;
            unsigned long long v = std::strtoull(tok.c_str(), &end, 10);
            if (errno != 0 || v > static_cast<unsigned long long>(kMaxTotalValue))
                throw ValidationError("value overflow at line " + std::to_string(line_no) + ": '" +
                                      tok + "'");
            values.push_back(static_cast<long long>(v));
        }
    }
    if (values.empty()) throw ValidationError("empty instance");
    return values;
}

inline std::vector<long long> parse_instance_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file: " + path);
    return parse_instance_values(in);
}

inline Instance parse_instance_file(const std::string& path, u32 k) {
    return validate_instance(parse_instance_values(path), k);
}

/// Error parameters arrive as "num/den" or as a decimal like "0.1"; decimals
/// convert exactly (0.1 -> 1/10), never through binary floating point.
inline Fraction parse_epsilon(const std::string& text) {
    auto fail = [&]() -> Fraction {
        throw ValidationError("epsilon must be a fraction in (0,1), e.g. 1/10 or 0.1; got '" +
                              text + "'");
    };
    if (text.empty()) return fail();

    auto is_digits = [](const std::string& s) {
        if (s.empty()) return false;
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
        return true;
    };

    Fraction eps;
    if (auto slash = text.find('/'); slash != std::string::npos) {
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!is_digits(num) || !is_digits(den) || num.size() > 18 || den.size() > 18) return fail();
        eps = Fraction(std::stoull(num), std::stoull(den));
    } else if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
        if (whole.empty()) whole = "0";
        if (!is_digits(whole) || !is_digits(frac) || frac.empty() || frac.size() > 18) return fail();
        u64 den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        u64 num = std::stoull(frac);
        if (std::stoull(whole) != 0) return fail();  // values >= 1 are out of range anyway
        eps = Fraction(num, den);
    } else if (is_digits(text) && text.size() <= 18) {
        eps = Fraction(std::stoull(text), 1);
    } else {
        return fail();
    }
    if (!eps.in_unit_interval()) return fail();
    require_error_parameter(eps);
    return eps;
}

}  // namespace ksplit
