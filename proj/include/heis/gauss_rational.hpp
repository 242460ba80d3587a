#ifndef HEIS_GAUSS_RATIONAL_HPP
#define HEIS_GAUSS_RATIONAL_HPP

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace heis {

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element of the field Q(i): re + im*i with arbitrary-precision rational
/// components. mpq_class keeps each component in lowest terms with a
/// positive denominator, so equality is plain componentwise equality.
class GaussRational {
  public:
    GaussRational() : re_(0), im_(0) {}
    GaussRational(long n) : re_(n), im_(0) {}
    GaussRational(const mpq_class &re) : re_(re), im_(0) { canon(); }
    GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) { canon(); }
    GaussRational(long num, long den) : re_(mpq_class(num, den)), im_(0) { canon(); }

    static GaussRational i() { return GaussRational(mpq_class(0), mpq_class(1)); }

    const mpq_class &re() const { return re_; }
    const mpq_class &im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussRational operator-() const { return GaussRational(-re_, -im_); }

    GaussRational operator+(const GaussRational &o) const {
        return GaussRational(re_ + o.re_, im_ + o.im_);
    }
    GaussRational operator-(const GaussRational &o) const {
        return GaussRational(re_ - o.re_, im_ - o.im_);
    }
    GaussRational operator*(const GaussRational &o) const {
        return GaussRational(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    GaussRational operator/(const GaussRational &o) const {
        if (o.is_zero()) throw MathError("division by zero in Q(i)");
        mpq_class n = o.norm_sq();
        return GaussRational((re_ * o.re_ + im_ * o.im_) / n, (im_ * o.re_ - re_ * o.im_) / n);
    }

    GaussRational &operator+=(const GaussRational &o) { return *this = *this + o; }
    GaussRational &operator-=(const GaussRational &o) { return *this = *this - o; }
    GaussRational &operator*=(const GaussRational &o) { return *this = *this * o; }
    GaussRational &operator/=(const GaussRational &o) { return *this = *this / o; }

    bool operator==(const GaussRational &o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussRational &o) const { return !(*this == o); }

    // total order used for deterministic container keys only
    bool operator<(const GaussRational &o) const {
        if (re_ != o.re_) return re_ < o.re_;
        return im_ < o.im_;
    }

    GaussRational inv() const { return GaussRational(1) / *this; }
    GaussRational conj() const { return GaussRational(re_, -im_); }
    /// |z|^2 = re^2 + im^2, an exact rational
    mpq_class norm_sq() const { return re_ * re_ + im_ * im_; }

    std::string str() const;

  private:
    void canon() {
        re_.canonicalize();
        im_.canonicalize();
    }
    mpq_class re_, im_;
};

/// Exact square root in Q: returns nothing if the argument is not a
/// perfect square of a rational.
std::optional<mpq_class> rational_sqrt(const mpq_class &q);

/// Exact square root in Q(i).
std::optional<GaussRational> gauss_sqrt(const GaussRational &z);

std::string rational_str(const mpq_class &q);

} // namespace heis

#endif
