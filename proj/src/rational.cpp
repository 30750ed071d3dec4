#include "nex/rational.hpp"

#include "nex/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace nex {

Rat pow2(long k) {
    Rat r(1);
    if (k >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(k));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-k));
    }
    return r;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rat pow10(long k) {
    Rat r(1);
    mpz_class ten(10);
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(k >= 0 ? k : -k));
    if (k >= 0)
        r = Rat(p);
    else
        r = Rat(1) / Rat(p);
    return r;
}

} // namespace

Rat parse_rational(const std::string& text) {
    std::string s = text;
    // strip surrounding whitespace
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty rational literal");
    s = s.substr(b, e - b + 1);

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s = s.substr(1);
    }
    if (s.empty()) throw ParseError("bad rational literal '" + text + "'");

    auto fail = [&]() -> Rat { throw ParseError("bad rational literal '" + text + "'"); };

    Rat result;
    if (size_t slash = s.find('/'); slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        Rat q(num + "/" + den);
        if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
        q.canonicalize();
        result = q;
    } else {
        // decimal / scientific form
        long exp10 = 0;
        size_t epos = s.find_first_of("eE");
        if (epos != std::string::npos) {
            std::string es = s.substr(epos + 1);
            s = s.substr(0, epos);
            if (es.empty()) return fail();
            bool eneg = false;
            if (es[0] == '+' || es[0] == '-') {
                eneg = (es[0] == '-');
                es = es.substr(1);
            }
            if (!all_digits(es)) return fail();
            exp10 = std::strtol(es.c_str(), nullptr, 10);
            if (eneg) exp10 = -exp10;
        }
        std::string intpart = s, fracpart;
        if (size_t dot = s.find('.'); dot != std::string::npos) {
            intpart = s.substr(0, dot);
            fracpart = s.substr(dot + 1);
        }
        if (intpart.empty() && fracpart.empty()) return fail();
        if (!intpart.empty() && !all_digits(intpart)) return fail();
        if (!fracpart.empty() && !all_digits(fracpart)) return fail();
        mpz_class mantissa(intpart.empty() ? std::string("0") : intpart);
        for (char c : fracpart) {
            mantissa *= 10;
            mantissa += (c - '0');
        }
        result = Rat(mantissa) * pow10(exp10 - static_cast<long>(fracpart.size()));
    }
    if (negative) result = -result;
    result.canonicalize();
    return result;
}

std::string rat_str(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

} // namespace nex
