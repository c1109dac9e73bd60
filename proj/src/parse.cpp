#include "renewt/parse.hpp"

#include <charconv>
#include <vector>

#include "renewt/constructions.hpp"
#include "renewt/errors.hpp"

namespace renewt {

namespace {

// Reads a signed decimal number at `pos`; advances pos past it.
double read_number(const std::string& s, size_t& pos) {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    size_t digits_begin = pos;
    const char* first = s.data() + digits_begin;
    const char* last = s.data() + s.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first)
        throw ParseError("expected a number at '" + s.substr(start) + "'");
    pos = static_cast<size_t>(ptr - s.data());
    return s[start] == '-' ? -value : value;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    size_t begin = 0;
    while (true) {
        size_t end = s.find(sep, begin);
        out.push_back(s.substr(begin, end == std::string::npos ? end : end - begin));
        if (end == std::string::npos) break;
        begin = end + 1;
    }
    return out;
}

int read_int(const std::string& s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("expected an integer, got '" + s + "'");
    return value;
}

} // namespace

Complex parse_complex(const std::string& text) {
    if (text.empty()) throw ParseError("empty complex literal");
    size_t pos = 0;
    double first = read_number(text, pos);
    if (pos == text.size()) return {first, 0.0};
    if (text[pos] == 'i') {
        if (pos + 1 != text.size())
            throw ParseError("trailing characters in complex literal '" + text + "'");
        return {0.0, first};
    }
    if (text[pos] != '+' && text[pos] != '-')
        throw ParseError("malformed complex literal '" + text + "'");
    double second = read_number(text, pos);
    if (pos == text.size() || text[pos] != 'i' || pos + 1 != text.size())
        throw ParseError("malformed complex literal '" + text + "' (expected trailing 'i')");
    return {first, second};
}

Polynomial parse_coeffs(const std::string& text) {
    std::vector<Complex> coeffs;
    for (const std::string& item : split(text, ','))
        coeffs.push_back(parse_complex(item));
    Polynomial p(std::move(coeffs));
    return p;
}

FactoredPolynomial parse_factored(const std::string& text) {
    if (text.empty() || text.front() != '(')
        throw ParseError("factored form must start with '(': '" + text + "'");
    size_t close = text.rfind(')');
    if (close == std::string::npos)
        throw ParseError("factored form missing ')': '" + text + "'");
    Complex leading(1.0);
    if (close + 1 < text.size()) {
        if (text[close + 1] != ';')
            throw ParseError("expected ';leading' after ')' in '" + text + "'");
        leading = parse_complex(text.substr(close + 2));
    }
    std::vector<RootFactor> factors;
    for (const std::string& item : split(text.substr(1, close - 1), ',')) {
        size_t caret = item.rfind('^');
        if (caret == std::string::npos)
            throw ParseError("factor '" + item + "' must be root^multiplicity");
        Complex root = parse_complex(item.substr(0, caret));
        int mult = read_int(item.substr(caret + 1));
        if (mult < 1) throw ParseError("multiplicity must be positive in '" + item + "'");
        factors.push_back({root, mult});
    }
    return {leading, std::move(factors)};
}

FactoredPolynomial parse_class(const std::string& text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos)
        throw ParseError("class expression must be name:params, got '" + text + "'");
    std::string name = text.substr(0, colon);
    std::vector<std::string> args = split(text.substr(colon + 1), ',');
    if (name == "two_root") {
        if (args.size() != 2) throw ParseError("two_root takes k,m");
        return two_root_rep(read_int(args[0]), read_int(args[1]));
    }
    if (name == "unicritical") {
        if (args.size() != 1) throw ParseError("unicritical takes n");
        return unicritical_rep(read_int(args[0]));
    }
    if (name == "composite") {
        if (args.size() != 2) throw ParseError("composite takes m,n");
        return composite_rep(read_int(args[0]), read_int(args[1]));
    }
    throw ParseError("unknown class '" + name + "' (expected two_root, unicritical, composite)");
}

} // namespace renewt
