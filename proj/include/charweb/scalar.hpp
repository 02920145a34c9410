#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <string_view>

namespace charweb {

/// Element of Q(i): a complex number with exact rational real and imaginary
/// parts. All arithmetic in this project runs over this field; there is no
/// floating point anywhere in the core.
///
/// Invariants (maintained by mpq_class canonicalization): both parts are in
/// lowest terms with positive denominator.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(int v) : re_(v), im_(0) {}           // NOLINT implicit
    GaussianRational(long v) : re_(v), im_(0) {}          // NOLINT implicit
    GaussianRational(mpq_class re) : re_(std::move(re)), im_(0) {  // NOLINT implicit
        re_.canonicalize();
    }
    GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    /// Rational a/b with canonicalization (gmp does not reduce on its own
    /// when numerator and denominator are given separately).
    static GaussianRational ratio(long num, long den);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2 as an exact rational; zero iff z is zero.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return {-re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
        return a += b;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
        return a -= b;
    }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) {
        return a *= b;
    }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) {
        return a /= b;
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

    GaussianRational inverse() const;

    /// Canonical text form: "p/q" when the imaginary part is zero, otherwise
    /// "p/q+r/t i" or "p/q-r/t i". Denominators are always printed and
    /// positive, fractions are in lowest terms.
    std::string str() const;

    /// Inverse of str(); also accepts integers without "/q", a bare
    /// imaginary part ("r/t i"), and surrounding whitespace.
    static GaussianRational parse(std::string_view text);

private:
    mpq_class re_;
    mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& v);

using GQ = GaussianRational;

}  // namespace charweb

namespace Eigen {

// Exact scalar: no epsilon, no precision, unit costs are nominal.
template <>
struct NumTraits<charweb::GaussianRational> {
    using Self = charweb::GaussianRational;
    using Real = Self;
    using NonInteger = Self;
    using Literal = Self;
    using Nested = Self;

    enum {
        IsComplex = 0,  // conj() is identity in generic paths; we never take adjoints
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 30,
        MulCost = 60,
    };

    static Self epsilon() { return Self(0); }
    static Self dummy_precision() { return Self(0); }
    static int digits10() { return 0; }
};

}  // namespace Eigen
