#include "nctk/scalar.hpp"

#include "nctk/error.hpp"

#include <cctype>

namespace nctk {

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IllDefinedInducedMap: return "IllDefinedInducedMap";
        case ErrorCode::NotNilpotent: return "NotNilpotent";
        case ErrorCode::RelativeMonodromyNonexistent: return "RelativeMonodromyNonexistent";
        case ErrorCode::FiltrationNotPreserved: return "FiltrationNotPreserved";
        case ErrorCode::NonCommutingOperators: return "NonCommutingOperators";
        case ErrorCode::PairingDegenerate: return "PairingDegenerate";
        case ErrorCode::MissingHodgeFiltration: return "MissingHodgeFiltration";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

namespace {

[[noreturn]] void bad_scalar(std::string_view s) {
    throw Error(ErrorCode::ParseError, "exact-linalg",
                "malformed scalar \"" + std::string(s) + "\"");
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

QI QI::operator/(const QI& o) const {
    Q den = o.re * o.re + o.im * o.im;
    if (sgn(den) == 0)
        throw Error(ErrorCode::InvalidArgument, "exact-linalg", "division by zero");
    return {(re * o.re + im * o.im) / den, (im * o.re - re * o.im) / den};
}

Q parse_rational(std::string_view s) {
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        neg = body[0] == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                           : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_scalar(s);
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) bad_scalar(s);
    Q q(n, d);
    q.canonicalize();
    return neg ? Q(-q) : q;
}

QI parse_gaussian(std::string_view s) {
    if (s.empty()) bad_scalar(s);
    std::string_view body = s;
    if (body.back() != 'i') return QI(parse_rational(body));
    body.remove_suffix(1);
    // split into real part and the imaginary coefficient at the last top-level sign
    size_t split = std::string_view::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') { split = k; break; }
    }
    std::string_view re_part = split == std::string_view::npos ? std::string_view() : body.substr(0, split);
    std::string_view im_part = split == std::string_view::npos ? body : body.substr(split);
    if (!im_part.empty() && im_part.back() == '*') im_part.remove_suffix(1);
    else if (!im_part.empty() && im_part != "+" && im_part != "-") bad_scalar(s);
    Q im;
    if (im_part.empty() || im_part == "+") im = 1;
    else if (im_part == "-") im = -1;
    else im = parse_rational(im_part);
    Q re = re_part.empty() ? Q(0) : parse_rational(re_part);
    return {re, im};
}

std::string to_string(const Q& x) { return x.get_str(); }

std::string to_string(const QI& x) {
    if (sgn(x.im) == 0) return x.re.get_str();
    std::string im_str = x.im.get_str() + "*i";
    if (sgn(x.re) == 0) return im_str;
    if (im_str[0] == '-') return x.re.get_str() + im_str;
    return x.re.get_str() + "+" + im_str;
}

}  // namespace nctk
