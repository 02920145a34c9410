#include "charweb/scalar.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

#include "charweb/errors.hpp"

namespace charweb {

GaussianRational GaussianRational::ratio(long num, long den) {
    if (den == 0) throw SemanticError("rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return GaussianRational(std::move(q));
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw SemanticError("division by zero in Q(i)");
    mpq_class n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
}

namespace {

std::string rat_str(const mpq_class& q) {
    std::ostringstream os;
    os << q.get_num() << "/" << q.get_den();
    return os.str();
}

}  // namespace

std::string GaussianRational::str() const {
    if (im_ == 0) return rat_str(re_);
    std::string out = rat_str(re_);
    out += (im_ > 0) ? '+' : '-';
    out += rat_str(abs(im_));
    out += " i";
    return out;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& v) {
    return os << v.str();
}

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("scalar: " + what + " at offset " + std::to_string(pos), pos);
    }

    // signed rational: [+-] digits [/ digits]
    mpq_class rational() {
        skip_ws();
        std::size_t start = pos;
        if (!done() && (peek() == '+' || peek() == '-')) ++pos;
        std::size_t digits_from = pos;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
        if (pos == digits_from) fail("expected digits");
        std::string num(text.substr(start, pos - start));
        if (!num.empty() && num.front() == '+') num.erase(num.begin());  // gmp rejects '+'
        std::string den = "1";
        if (!done() && peek() == '/') {
            ++pos;
            std::size_t den_from = pos;
            while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
            if (pos == den_from) fail("expected denominator digits");
            den = std::string(text.substr(den_from, pos - den_from));
        }
        mpq_class q(num + "/" + den);
        if (q.get_den() == 0) fail("zero denominator");
        q.canonicalize();
        return q;
    }
};

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
    Cursor c{text};
    mpq_class first = c.rational();
    c.skip_ws();
    if (c.done()) return GaussianRational(std::move(first));

    if (c.peek() == 'i') {  // pure imaginary: "r/t i"
        ++c.pos;
        c.skip_ws();
        if (!c.done()) c.fail("trailing characters");
        return {mpq_class(0), std::move(first)};
    }

    if (c.peek() != '+' && c.peek() != '-') c.fail("expected '+', '-' or 'i'");
    mpq_class second = c.rational();
    c.skip_ws();
    if (c.done() || c.peek() != 'i') c.fail("expected 'i' after imaginary part");
    ++c.pos;
    c.skip_ws();
    if (!c.done()) c.fail("trailing characters");
    return {std::move(first), std::move(second)};
}

}  // namespace charweb
